//! Generators for canonical economies.

use serde::{Deserialize, Serialize};

use crate::continuous_time::{ContinuousPath, CumulativeDividend, DEFAULT_GRID_STEP, DEFAULT_HORIZON};
use crate::error::{BubbleError, Result};
use crate::path::DiscretePath;
use crate::tail::TailModel;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(BubbleError::InvalidParameter(format!("{name} must be a positive number, got {v}")))
    }
}

fn horizon_ok(t_max: usize) -> Result<usize> {
    if t_max == 0 {
        return Err(BubbleError::InvalidParameter("horizon must be at least 1".into()));
    }
    Ok(t_max)
}

/// Intrinsically worthless money: constant price, no dividends ever.
pub fn gen_money(p0: f64, t_max: usize) -> Result<DiscretePath> {
    let p0 = positive("P0", p0)?;
    let t_max = horizon_ok(t_max)?;
    DiscretePath::new(vec![p0; t_max + 1], vec![0.0; t_max], TailModel::ZeroDividends)
}

/// Constant price and dividend; the implied gross rate is `(P + D) / P`.
pub fn gen_constant(price: f64, dividend: f64, t_max: usize) -> Result<DiscretePath> {
    let price = positive("P", price)?;
    let dividend = positive("D", dividend)?;
    let t_max = horizon_ok(t_max)?;
    DiscretePath::new(
        vec![price; t_max + 1],
        vec![dividend; t_max],
        TailModel::ConstantLevels { price, dividend },
    )
}

pub fn implied_gross_rate(price: f64, dividend: f64) -> f64 {
    (price + dividend) / price
}

/// Gordon growth: `D_t = D0 g^t`, `P_t = D0 g^{t+1} / (R - g)`, so the
/// yield is constant at `(R - g) / g`.
pub fn gen_gordon(d0: f64, g: f64, r: f64, t_max: usize) -> Result<DiscretePath> {
    let d0 = positive("D0", d0)?;
    let g = positive("g", g)?;
    let r = positive("R", r)?;
    let t_max = horizon_ok(t_max)?;
    if r <= 1.0 {
        return Err(BubbleError::InvalidParameter(format!("gross rate R must exceed 1, got {r}")));
    }
    if g >= r {
        return Err(BubbleError::ParameterOrder { g, r });
    }
    let ln_g = g.ln();
    let scale = d0 / (r - g);
    let prices: Vec<f64> = (0..=t_max).map(|t| scale * ((t + 1) as f64 * ln_g).exp()).collect();
    let dividends: Vec<f64> = (1..=t_max).map(|t| d0 * (t as f64 * ln_g).exp()).collect();
    if prices.iter().chain(&dividends).any(|v| !v.is_finite() || *v <= 0.0) {
        return Err(BubbleError::InvalidParameter(format!(
            "horizon {t_max} overflows or underflows the growth path"
        )));
    }
    DiscretePath::new(prices, dividends, TailModel::ConstantYield { c: (r - g) / g })
}

/// Unit price with dividends `alpha rho^t`: the yield sum converges, so the
/// price carries a bubble of `prod_s (1 + alpha rho^s)^{-1}`.
pub fn gen_convergent_yield(alpha: f64, rho: f64, t_max: usize) -> Result<DiscretePath> {
    let alpha = positive("alpha", alpha)?;
    if !(rho > 0.0 && rho < 1.0) {
        return Err(BubbleError::InvalidParameter(format!("rho must lie in (0, 1), got {rho}")));
    }
    let t_max = horizon_ok(t_max)?;
    let ln_rho = rho.ln();
    let dividends = (1..=t_max).map(|t| alpha * (t as f64 * ln_rho).exp()).collect();
    DiscretePath::new(vec![1.0; t_max + 1], dividends, TailModel::GeometricYield { a: alpha, rho })
}

/// Reduced-form steady-state scenario for a firm valued as `Q K + B`.
///
/// Only the limiting behaviour matters for bubble existence: price and
/// dividend flow approach `P* = Q K + B` and `D` exponentially at rate
/// `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiaoWangScenario {
    /// Marginal value of capital.
    #[serde(rename = "Q")]
    pub q: f64,
    /// Capital stock.
    #[serde(rename = "K")]
    pub k: f64,
    /// The constant that the firm-value formula labels a bubble.
    #[serde(rename = "Bmw")]
    pub b_mw: f64,
    /// Steady-state dividend flow.
    #[serde(rename = "D")]
    pub dividend: f64,
    /// Convergence rate; `inf` jumps to the steady state right after `t = 0`.
    #[serde(with = "rate")]
    pub lambda: f64,
    pub horizon: f64,
    pub grid_step: f64,
    /// Defaults to half the steady-state price.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_price: Option<f64>,
    /// Defaults to half the steady-state dividend.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_dividend: Option<f64>,
}

/// JSON has no infinity, so an infinite rate is written as the string `"inf"`.
mod rate {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Rate {
        Number(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            Rate::Number(*v).serialize(s)
        } else {
            Rate::Text(v.to_string()).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Rate::deserialize(d)? {
            Rate::Number(v) => Ok(v),
            Rate::Text(t) => t
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("rate '{t}' is not a number"))),
        }
    }
}

impl MiaoWangScenario {
    pub const DEFAULT_LAMBDA: f64 = 0.5;

    pub fn new(q: f64, k: f64, b_mw: f64, dividend: f64) -> Self {
        Self {
            q,
            k,
            b_mw,
            dividend,
            lambda: Self::DEFAULT_LAMBDA,
            horizon: DEFAULT_HORIZON,
            grid_step: DEFAULT_GRID_STEP,
            initial_price: None,
            initial_dividend: None,
        }
    }

    pub fn steady_state_price(&self) -> f64 {
        self.q * self.k + self.b_mw
    }

    pub fn validate(&self) -> Result<()> {
        positive("Q", self.q)?;
        positive("K", self.k)?;
        positive("D", self.dividend)?;
        positive("horizon", self.horizon)?;
        positive("grid step", self.grid_step)?;
        if !(self.b_mw.is_finite() && self.b_mw >= 0.0) {
            return Err(BubbleError::InvalidParameter(format!("Bmw must be >= 0, got {}", self.b_mw)));
        }
        if !(self.lambda > 0.0) {
            return Err(BubbleError::InvalidParameter(format!("lambda must be > 0, got {}", self.lambda)));
        }
        if let Some(p) = self.initial_price {
            positive("initial price", p)?;
        }
        if let Some(d) = self.initial_dividend {
            if !(d.is_finite() && d >= 0.0) {
                return Err(BubbleError::InvalidParameter(format!("initial dividend must be >= 0, got {d}")));
            }
        }
        Ok(())
    }
}

pub fn gen_miao_wang(scenario: &MiaoWangScenario) -> Result<ContinuousPath> {
    scenario.validate()?;
    let target_price = scenario.steady_state_price();
    let target_dividend = scenario.dividend;
    let p0 = scenario.initial_price.unwrap_or(0.5 * target_price);
    let d0 = scenario.initial_dividend.unwrap_or(0.5 * target_dividend);

    let cells = (scenario.horizon / scenario.grid_step).round() as usize;
    let decay = |k: usize| {
        if k == 0 {
            1.0
        } else {
            (-scenario.lambda * k as f64 * scenario.grid_step).exp()
        }
    };
    let prices = (0..=cells).map(|k| target_price + (p0 - target_price) * decay(k)).collect();
    let density = (0..=cells).map(|k| target_dividend + (d0 - target_dividend) * decay(k)).collect();
    ContinuousPath::new(
        scenario.grid_step,
        scenario.horizon,
        prices,
        CumulativeDividend::new(density, Vec::new())?,
        TailModel::ConstantYield {
            c: target_dividend / target_price,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterization::{montrucchio_discrete, Classification};
    use crate::continuous_time::{discretize, montrucchio_continuous};
    use crate::series_core::decompose;

    #[test]
    fn money_paths() {
        let d = decompose(&gen_money(1.0, 10).unwrap()).unwrap();
        assert_eq!((d.price, d.fundamental, d.bubble, d.verdict), (1.0, 0.0, 1.0, Classification::Bubble));
        assert_eq!(decompose(&gen_money(7.0, 10).unwrap()).unwrap().bubble, 7.0);
        assert!(gen_money(0.0, 10).is_err());
        assert!(gen_money(1.0, 0).is_err());
    }

    #[test]
    fn constant_paths() {
        assert_eq!(implied_gross_rate(1.0, 1.0), 2.0);
        let d = decompose(&gen_constant(1.0, 1.0, 60).unwrap()).unwrap();
        assert!((d.fundamental - 1.0).abs() < 1e-12);
        let v = montrucchio_discrete(&gen_constant(100.0, 5.0, 10).unwrap()).unwrap();
        assert_eq!(v.classification, Classification::NoBubble);
        assert!(gen_constant(1.0, 0.0, 10).is_err());
    }

    #[test]
    fn gordon_price_matches_present_value_sum() {
        let (d0, g, r) = (1.0, 1.02, 1.05);
        let path = gen_gordon(d0, g, r, 50).unwrap();
        // oracle: P_0 = sum_{t>=1} D0 g^t R^{-t}, 10^4 terms
        let oracle = crate::numerics::compensated_sum((1..=10_000).map(|t| d0 * (g / r).powi(t)));
        assert!((path.price(0) - oracle).abs() < 1e-10);
        assert!((path.price(0) - 34.0).abs() < 1e-12);
        let d = decompose(&path).unwrap();
        assert_eq!(d.verdict, Classification::NoBubble);
        assert_eq!(gen_gordon(1.0, 1.05, 1.05, 10), Err(BubbleError::ParameterOrder { g: 1.05, r: 1.05 }));
    }

    #[test]
    fn gordon_near_the_rate_is_expensive_but_bubbleless() {
        let path = gen_gordon(1.0, 1.05 - 1e-6, 1.05, 100).unwrap();
        assert!(path.price(0) > 1e6);
        assert_eq!(decompose(&path).unwrap().verdict, Classification::NoBubble);
    }

    #[test]
    fn convergent_yield_bubble_tends_to_one_as_alpha_vanishes() {
        let d = decompose(&gen_convergent_yield(1e-9, 0.5, 50).unwrap()).unwrap();
        assert_eq!(d.verdict, Classification::Bubble);
        assert!((d.bubble - 1.0).abs() < 1e-8);
    }

    #[test]
    fn miao_wang_steady_state() {
        let s = MiaoWangScenario {
            horizon: 20.0,
            grid_step: 1e-2,
            ..MiaoWangScenario::new(1.0, 2.0, 0.5, 0.2)
        };
        assert_eq!(s.steady_state_price(), 2.5);
        let path = gen_miao_wang(&s).unwrap();
        assert_eq!(path.prices()[0], 1.25);
        let gap0 = 1.25;
        for (k, p) in path.prices().iter().enumerate() {
            let t = path.time(k);
            assert!((p - 2.5).abs() <= gap0 * (-0.5 * t).exp() * (1.0 + 1e-12) + 4.0 * f64::EPSILON);
        }
        assert_eq!(montrucchio_continuous(&path).unwrap().classification, Classification::NoBubble);
    }

    #[test]
    fn instant_convergence_reduces_to_constant_case() {
        let s = MiaoWangScenario {
            lambda: f64::INFINITY,
            horizon: 10.0,
            grid_step: 1e-2,
            ..MiaoWangScenario::new(1.0, 2.0, 0.5, 0.2)
        };
        let path = gen_miao_wang(&s).unwrap();
        assert!(path.prices()[1..].iter().all(|&p| p == 2.5));
        let dp = discretize(&path, 1.0).unwrap();
        assert!(dp.prices()[1..].iter().all(|&p| p == 2.5));
        assert!(dp.dividends()[1..].iter().all(|&d| (d - 0.2).abs() < 1e-12));
        assert_eq!(
            montrucchio_discrete(&dp).unwrap().classification,
            montrucchio_continuous(&path).unwrap().classification
        );
    }

    #[test]
    fn scenario_validation() {
        let base = MiaoWangScenario::new(1.0, 2.0, 0.5, 0.2);
        for bad in [
            MiaoWangScenario { q: 0.0, ..base },
            MiaoWangScenario { b_mw: -1.0, ..base },
            MiaoWangScenario { dividend: 0.0, ..base },
            MiaoWangScenario { lambda: 0.0, ..base },
            MiaoWangScenario { initial_price: Some(0.0), ..base },
        ] {
            assert!(gen_miao_wang(&bad).is_err(), "{bad:?}");
        }
    }
}
