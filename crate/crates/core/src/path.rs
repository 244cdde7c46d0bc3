use crate::error::{BubbleError, Result};
use crate::tail::TailModel;

/// Sampled ex-dividend prices `P_0..=P_T` and dividends `D_1..=D_T`,
/// together with the declared tail beyond `T`.
///
/// There is no `D_0`: the price at date 0 is quoted after that dividend.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePath {
    prices: Vec<f64>,
    dividends: Vec<f64>,
    tail: TailModel,
}

impl DiscretePath {
    /// `prices` has `T + 1` entries, `dividends` has `T` entries (`D_1..=D_T`).
    pub fn new(prices: Vec<f64>, dividends: Vec<f64>, tail: TailModel) -> Result<Self> {
        if prices.len() < 2 {
            return Err(BubbleError::InvalidPath(format!(
                "need at least two prices (horizon >= 1), got {}",
                prices.len()
            )));
        }
        if dividends.len() + 1 != prices.len() {
            return Err(BubbleError::InvalidPath(format!(
                "{} prices require {} dividends, got {}",
                prices.len(),
                prices.len() - 1,
                dividends.len()
            )));
        }
        for (t, &p) in prices.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(BubbleError::InvalidPath(format!("price P[{t}] = {p} is not a finite non-negative number")));
            }
        }
        for (i, &d) in dividends.iter().enumerate() {
            if !d.is_finite() || d < 0.0 {
                return Err(BubbleError::InvalidPath(format!(
                    "dividend D[{}] = {d} is not a finite non-negative number",
                    i + 1
                )));
            }
            if prices[i + 1] + d <= 0.0 {
                return Err(BubbleError::ZeroDenominator { index: i + 1 });
            }
        }
        tail.validate()?;
        Ok(Self { prices, dividends, tail })
    }

    /// Last sampled date `T`.
    pub fn horizon(&self) -> usize {
        self.dividends.len()
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    /// `D_1..=D_T`; index `i` holds `D_{i+1}`.
    pub fn dividends(&self) -> &[f64] {
        &self.dividends
    }

    pub fn price(&self, t: usize) -> f64 {
        self.prices[t]
    }

    /// Dividend paid at date `t`, `1 <= t <= T`.
    pub fn dividend(&self, t: usize) -> f64 {
        self.dividends[t - 1]
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn with_tail(mut self, tail: TailModel) -> Result<Self> {
        tail.validate()?;
        self.tail = tail;
        Ok(self)
    }

    /// Whether every price, including `P_0`, is strictly positive.
    pub fn strictly_positive(&self) -> bool {
        self.prices.iter().all(|&p| p > 0.0)
    }

    /// The first `horizon + 1` prices; the tail is kept as declared.
    pub fn truncated(&self, horizon: usize) -> Result<Self> {
        if horizon == 0 || horizon > self.horizon() {
            return Err(BubbleError::OutOfRange {
                what: "horizon",
                value: horizon as f64,
                min: 1.0,
                max: self.horizon() as f64,
            });
        }
        Ok(Self {
            prices: self.prices[..=horizon].to_vec(),
            dividends: self.dividends[..horizon].to_vec(),
            tail: self.tail,
        })
    }

    /// Multiply every price and dividend by `factor > 0`. Level tails scale
    /// with the path; yield tails are unit-free.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(BubbleError::InvalidParameter(format!("scale factor must be > 0, got {factor}")));
        }
        let tail = match self.tail {
            TailModel::ConstantLevels { price, dividend } => TailModel::ConstantLevels {
                price: price * factor,
                dividend: dividend * factor,
            },
            TailModel::DeclaredConvergent { tail_sum } => TailModel::DeclaredConvergent {
                tail_sum: tail_sum * factor,
            },
            other => other,
        };
        DiscretePath::new(
            self.prices.iter().map(|p| p * factor).collect(),
            self.dividends.iter().map(|d| d * factor).collect(),
            tail,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_paths() {
        let tail = TailModel::ZeroDividends;
        assert!(DiscretePath::new(vec![1.0], vec![], tail).is_err());
        assert!(DiscretePath::new(vec![1.0, 1.0], vec![], tail).is_err());
        assert!(DiscretePath::new(vec![1.0, -1.0], vec![0.5], tail).is_err());
        assert!(DiscretePath::new(vec![1.0, 1.0], vec![f64::NAN], tail).is_err());
        assert_eq!(
            DiscretePath::new(vec![1.0, 0.0, 1.0], vec![0.0, 1.0], tail),
            Err(BubbleError::ZeroDenominator { index: 1 })
        );
    }

    #[test]
    fn interior_zero_price_is_allowed() {
        let p = DiscretePath::new(vec![1.0, 0.0, 1.0], vec![1.0, 1.0], TailModel::ZeroDividends).unwrap();
        assert!(!p.strictly_positive());
        assert_eq!(p.dividend(2), 1.0);
    }

    #[test]
    fn truncation_keeps_prefix() {
        let p = DiscretePath::new(vec![1.0, 2.0, 3.0], vec![0.1, 0.2], TailModel::DeclaredDivergent).unwrap();
        let t = p.truncated(1).unwrap();
        assert_eq!(t.prices(), &[1.0, 2.0]);
        assert_eq!(t.dividends(), &[0.1]);
        assert!(p.truncated(3).is_err());
    }
}
