//! Discrete-time pricing identities.
//!
//! Given a price/dividend path, the no-arbitrage recursion
//! `q_t P_t = q_{t+1} (P_{t+1} + D_{t+1})` with `q_0 = 1` pins the state
//! prices. Iterating forward gives `P_0 = sum_{t<=T} q_t D_t + q_T P_T`;
//! the sum tends to the fundamental value and `q_T P_T` to the bubble.

use serde::{Deserialize, Serialize};

use crate::characterization::{montrucchio_discrete, Classification, Verdict};
use crate::error::{BubbleError, Result};
use crate::numerics::{geometric_log1p_tail, power_log1p_tail, CompensatedSum};
use crate::path::DiscretePath;
use crate::tail::TailModel;

/// A bubble is reported only above `EPS_BUBBLE * P_0`.
pub const EPS_BUBBLE: f64 = 1e-9;

/// Default relative tolerance of [`check_no_arbitrage`].
pub const DEFAULT_NO_ARBITRAGE_TOL: f64 = 1e-9;

/// State prices `q_0..=q_T`, held as logarithms. `q_0 = 1`.
///
/// A zero price at some interior date forces every later state price to
/// zero; those entries are `-inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deflators {
    log_q: Vec<f64>,
}

impl Deflators {
    pub fn from_log(log_q: Vec<f64>) -> Result<Self> {
        match log_q.first() {
            Some(&first) if first == 0.0 => {}
            _ => return Err(BubbleError::InvalidParameter("log deflators must start at log q_0 = 0".into())),
        }
        if log_q.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(BubbleError::InvalidParameter("log deflators must be finite or -inf".into()));
        }
        Ok(Self { log_q })
    }

    /// Normalises linear state prices by `q_0`.
    pub fn from_linear(q: &[f64]) -> Result<Self> {
        let q0 = q.first().copied().unwrap_or(0.0);
        if !(q0.is_finite() && q0 > 0.0) {
            return Err(BubbleError::InvalidParameter(format!("q_0 must be positive, got {q0}")));
        }
        if let Some(bad) = q.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(BubbleError::InvalidParameter(format!("deflator {bad} is not finite and non-negative")));
        }
        let ln_q0 = q0.ln();
        let mut log_q: Vec<f64> = q.iter().map(|v| v.ln() - ln_q0).collect();
        log_q[0] = 0.0;
        Ok(Self { log_q })
    }

    pub fn horizon(&self) -> usize {
        self.log_q.len() - 1
    }

    pub fn log_q(&self, t: usize) -> f64 {
        self.log_q[t]
    }

    pub fn q(&self, t: usize) -> f64 {
        self.log_q[t].exp()
    }

    pub fn as_log_slice(&self) -> &[f64] {
        &self.log_q
    }

    /// `q_t P_t`, evaluated without leaving the log domain until the end.
    pub fn deflated_price(&self, path: &DiscretePath, t: usize) -> f64 {
        (self.log_q[t] + path.price(t).ln()).exp()
    }
}

fn ensure_same_horizon(path: &DiscretePath, deflators: &Deflators) -> Result<()> {
    if path.horizon() != deflators.horizon() {
        return Err(BubbleError::HorizonMismatch {
            path: path.horizon(),
            deflators: deflators.horizon(),
        });
    }
    Ok(())
}

/// State prices implied by the path itself.
///
/// `log q_t = log(q_{t-1} P_{t-1}) - log(P_t + D_t)`, where the deflated
/// price `log(q_t P_t) = log P_0 - sum_{s<=t} log(1 + D_s/P_s)` is carried
/// as a compensated sum so rounding does not build up over long horizons.
pub fn implied_deflators(path: &DiscretePath) -> Result<Deflators> {
    let p0 = path.price(0);
    if p0 <= 0.0 {
        return Err(BubbleError::ZeroInitialPrice);
    }
    let horizon = path.horizon();
    let mut log_q = Vec::with_capacity(horizon + 1);
    log_q.push(0.0);

    let ln_p0 = p0.ln();
    let mut yield_logs = CompensatedSum::new();
    let mut log_deflated = ln_p0;
    for t in 1..=horizon {
        let (p, d) = (path.price(t), path.dividend(t));
        let total = p + d;
        if total <= 0.0 {
            return Err(BubbleError::ZeroDenominator { index: t });
        }
        log_q.push(log_deflated - total.ln());
        if log_deflated == f64::NEG_INFINITY || p == 0.0 {
            log_deflated = f64::NEG_INFINITY;
        } else {
            yield_logs.add((d / p).ln_1p());
            log_deflated = ln_p0 - yield_logs.value();
        }
    }
    Ok(Deflators { log_q })
}

/// Largest relative residual of the recursion, with the date where it occurs.
pub fn no_arbitrage_residual(path: &DiscretePath, deflators: &Deflators) -> Result<(usize, f64)> {
    ensure_same_horizon(path, deflators)?;
    let mut worst = (0usize, 0.0f64);
    for t in 0..path.horizon() {
        let (lq, lq_next) = (deflators.log_q(t), deflators.log_q(t + 1));
        let p = path.price(t);
        let cum = path.price(t + 1) + path.dividend(t + 1);
        let residual = if lq == f64::NEG_INFINITY || p == 0.0 {
            // q_t P_t = 0 demands q_{t+1} = 0
            if lq_next == f64::NEG_INFINITY {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            ((lq_next - lq).exp() * cum / p - 1.0).abs()
        };
        if residual > worst.1 || residual.is_nan() {
            worst = (t, if residual.is_nan() { f64::INFINITY } else { residual });
        }
    }
    Ok(worst)
}

/// `|q_t P_t - q_{t+1}(P_{t+1} + D_{t+1})| <= tol * q_t P_t` for every `t < T`.
pub fn check_no_arbitrage(path: &DiscretePath, deflators: &Deflators, tol: f64) -> Result<bool> {
    let (_, residual) = no_arbitrage_residual(path, deflators)?;
    Ok(residual <= tol)
}

/// Running present values `sum_{t<=T} q_t D_t` for `T = 0..=horizon`.
pub fn cumulative_present_values(path: &DiscretePath, deflators: &Deflators) -> Result<Vec<f64>> {
    ensure_same_horizon(path, deflators)?;
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(path.horizon() + 1);
    out.push(0.0);
    for t in 1..=path.horizon() {
        let d = path.dividend(t);
        if d > 0.0 {
            acc.add(deflators.q(t) * d);
        }
        out.push(acc.value());
    }
    Ok(out)
}

/// `sum_{t=1}^{horizon} q_t D_t`.
pub fn partial_value(path: &DiscretePath, deflators: &Deflators, horizon: usize) -> Result<f64> {
    ensure_same_horizon(path, deflators)?;
    if horizon == 0 || horizon > path.horizon() {
        return Err(BubbleError::OutOfRange {
            what: "T",
            value: horizon as f64,
            min: 1.0,
            max: path.horizon() as f64,
        });
    }
    let mut acc = CompensatedSum::new();
    for t in 1..=horizon {
        let d = path.dividend(t);
        if d > 0.0 {
            acc.add(deflators.q(t) * d);
        }
    }
    Ok(acc.value())
}

/// Pieces of the date-0 valuation.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Valuation {
    partial: f64,
    tail: f64,
    terminal: f64,
    fundamental: f64,
}

impl Valuation {
    fn raw_bubble(&self, p0: f64) -> f64 {
        p0 - self.fundamental
    }
}

fn valuation(path: &DiscretePath, deflators: &Deflators) -> Result<Valuation> {
    let horizon = path.horizon();
    let p0 = path.price(0);
    let partial = partial_value(path, deflators, horizon)?;
    let terminal = deflators.deflated_price(path, horizon);
    let next = horizon as u64 + 1;

    let from_log_tail = |log_tail: Option<f64>| -> Result<f64> {
        let log_tail = log_tail.ok_or_else(|| BubbleError::TailUnsupported(path.tail().to_string()))?;
        Ok(terminal * -(-log_tail).exp_m1())
    };

    let tail = match *path.tail() {
        TailModel::ZeroDividends => 0.0,
        TailModel::ConstantLevels { dividend, .. } if dividend == 0.0 => 0.0,
        TailModel::ConstantLevels { price, dividend } => {
            // q_{T+k} = q_T P_T / (P + D) * r^{k-1}, r = P / (P + D)
            let first = terminal * dividend / (price + dividend);
            let one_minus_ratio = dividend / (price + dividend);
            first / one_minus_ratio
        }
        TailModel::GeometricYield { a, rho } => from_log_tail(geometric_log1p_tail(a, rho, next))?,
        TailModel::PowerYield { a, p } if p > 1.0 => from_log_tail(power_log1p_tail(a, p, next))?,
        TailModel::ConstantYield { .. } | TailModel::PowerYield { .. } | TailModel::DeclaredDivergent => {
            // divergent yield sum: the deflated price vanishes, so V_0 = P_0
            return Ok(Valuation {
                partial,
                tail: p0 - partial,
                terminal,
                fundamental: p0,
            });
        }
        TailModel::DeclaredConvergent { tail_sum } => {
            if tail_sum > terminal + EPS_BUBBLE * p0 {
                return Err(BubbleError::TailExceedsPrice {
                    tail_sum,
                    available: terminal,
                });
            }
            tail_sum
        }
    };
    Ok(Valuation {
        partial,
        tail,
        terminal,
        fundamental: partial + tail,
    })
}

/// `V_0`: sampled present value plus the closed-form tail.
pub fn fundamental_value(path: &DiscretePath, deflators: &Deflators) -> Result<f64> {
    Ok(valuation(path, deflators)?.fundamental)
}

/// `B_0 = P_0 - V_0`, clipped at zero against rounding.
pub fn bubble_component(path: &DiscretePath, deflators: &Deflators) -> Result<f64> {
    let v = valuation(path, deflators)?;
    Ok(v.raw_bubble(path.price(0)).max(0.0))
}

pub fn tvc_holds(path: &DiscretePath, deflators: &Deflators) -> Result<bool> {
    Ok(bubble_component(path, deflators)? <= EPS_BUBBLE * path.price(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: f64,
    pub partial_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDiagnostics {
    pub checkpoints: Vec<Checkpoint>,
    pub tail_contribution: f64,
    /// `q_T P_T` at the last sampled date.
    pub deflated_terminal_price: f64,
    /// Set when the yield classifier and the bubble magnitude disagreed
    /// inside the tolerance band and the tie went to `NoBubble`.
    pub boundary: bool,
    /// Absent when some price is zero and the classifier does not apply.
    pub classifier: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub price: f64,
    pub fundamental: f64,
    pub bubble: f64,
    pub verdict: Classification,
    pub diagnostics: DecompositionDiagnostics,
}

impl Decomposition {
    /// Tolerance for `price = fundamental + bubble`.
    pub const REPORTING_TOL: f64 = 1e-9;

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let finite = [self.price, self.fundamental, self.bubble].iter().all(|v| v.is_finite());
        if !finite {
            return Err("non-finite component".into());
        }
        if self.fundamental < 0.0 || self.bubble < 0.0 {
            return Err(format!("negative component (fundamental {}, bubble {})", self.fundamental, self.bubble));
        }
        let gap = (self.price - self.fundamental - self.bubble).abs();
        if gap > Self::REPORTING_TOL * self.price.abs().max(f64::MIN_POSITIVE) {
            return Err(format!("price {} != fundamental {} + bubble {}", self.price, self.fundamental, self.bubble));
        }
        let expected = if self.bubble > EPS_BUBBLE * self.price {
            Classification::Bubble
        } else {
            Classification::NoBubble
        };
        if expected != self.verdict {
            return Err(format!("verdict {} does not match bubble {}", self.verdict, self.bubble));
        }
        Ok(())
    }
}

/// Settle the verdict from the bubble magnitude and the yield classifier.
///
/// Returns `(verdict, boundary)`.
pub(crate) fn reconcile(
    price: f64,
    bubble: f64,
    classifier: Option<&Verdict>,
) -> Result<(Classification, bool)> {
    let above = bubble > EPS_BUBBLE * price;
    match (classifier.map(|v| v.classification), above) {
        (Some(Classification::NoBubble), true) => Err(BubbleError::InconsistentClassification {
            bubble,
            classifier: Classification::NoBubble,
        }),
        (Some(Classification::Bubble), false) => Ok((Classification::NoBubble, true)),
        (_, true) => Ok((Classification::Bubble, false)),
        (_, false) => Ok((Classification::NoBubble, false)),
    }
}

/// Dates at which partial sums are reported: `T/4`, `T/2`, `T`.
pub fn checkpoint_dates(horizon: usize) -> Vec<usize> {
    let mut dates: Vec<usize> = [horizon / 4, horizon / 2, horizon]
        .into_iter()
        .map(|t| t.max(1))
        .collect();
    dates.dedup();
    dates
}

pub fn decompose(path: &DiscretePath) -> Result<Decomposition> {
    let deflators = implied_deflators(path)?;
    let v = valuation(path, &deflators)?;
    let price = path.price(0);
    let bubble = v.raw_bubble(price).max(0.0);

    let classifier = if path.strictly_positive() {
        Some(montrucchio_discrete(path)?)
    } else {
        None
    };
    let (verdict, boundary) = reconcile(price, bubble, classifier.as_ref())?;

    let cumulative = cumulative_present_values(path, &deflators)?;
    let checkpoints = checkpoint_dates(path.horizon())
        .into_iter()
        .map(|t| Checkpoint {
            t: t as f64,
            partial_sum: cumulative[t],
        })
        .collect();

    Ok(Decomposition {
        price,
        fundamental: v.fundamental,
        bubble,
        verdict,
        diagnostics: DecompositionDiagnostics {
            checkpoints,
            tail_contribution: v.tail,
            deflated_terminal_price: v.terminal,
            boundary,
            classifier,
        },
    })
}

/// Aggregate independent assets (e.g. firms) by summing their components.
pub fn ensemble_decompose(members: &[Decomposition]) -> Result<Decomposition> {
    if members.is_empty() {
        return Err(BubbleError::EmptyEnsemble);
    }
    for (index, m) in members.iter().enumerate() {
        m.check_invariants()
            .map_err(|reason| BubbleError::InvalidMember { index, reason })?;
    }
    let sum = |f: fn(&Decomposition) -> f64| members.iter().map(f).collect::<CompensatedSum>().value();
    let price = sum(|m| m.price);
    let fundamental = sum(|m| m.fundamental);
    let bubble = sum(|m| m.bubble);
    let verdict = if bubble > EPS_BUBBLE * price {
        Classification::Bubble
    } else {
        Classification::NoBubble
    };
    Ok(Decomposition {
        price,
        fundamental,
        bubble,
        verdict,
        diagnostics: DecompositionDiagnostics {
            checkpoints: Vec::new(),
            tail_contribution: sum(|m| m.diagnostics.tail_contribution),
            deflated_terminal_price: sum(|m| m.diagnostics.deflated_terminal_price),
            boundary: members.iter().any(|m| m.diagnostics.boundary),
            classifier: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(p: f64, d: f64, n: usize, tail: TailModel) -> DiscretePath {
        DiscretePath::new(vec![p; n + 1], vec![d; n], tail).unwrap()
    }

    fn levels(p: f64, d: f64) -> TailModel {
        TailModel::ConstantLevels { price: p, dividend: d }
    }

    #[test]
    fn constant_levels_give_geometric_deflators() {
        let path = constant(100.0, 5.0, 10, levels(100.0, 5.0));
        let q = implied_deflators(&path).unwrap();
        assert_eq!(q.log_q(0), 0.0);
        assert!((q.q(1) - 100.0 / 105.0).abs() < 1e-15);
        for t in 0..=10 {
            let expected = (100.0f64 / 105.0).powi(t as i32);
            assert!((q.q(t) / expected - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unit_ratio_and_doubling_prices() {
        let q = implied_deflators(&constant(1.0, 0.0, 5, TailModel::ZeroDividends)).unwrap();
        assert!((0..=5).all(|t| q.q(t) == 1.0));

        let path = DiscretePath::new(vec![1.0, 2.0, 4.0, 8.0], vec![0.0; 3], TailModel::ZeroDividends).unwrap();
        let q = implied_deflators(&path).unwrap();
        for (t, expected) in [1.0, 0.5, 0.25, 0.125].into_iter().enumerate() {
            assert!((q.q(t) / expected - 1.0).abs() < 1e-15);
            assert!((q.deflated_price(&path, t) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_initial_price_is_rejected() {
        let path = DiscretePath::new(vec![0.0, 1.0], vec![1.0], TailModel::DeclaredDivergent).unwrap();
        assert_eq!(implied_deflators(&path), Err(BubbleError::ZeroInitialPrice));
    }

    #[test]
    fn interior_zero_price_kills_later_state_prices() {
        let path = DiscretePath::new(vec![1.0, 0.0, 2.0, 2.0], vec![1.0, 1.0, 0.5], TailModel::ZeroDividends).unwrap();
        let q = implied_deflators(&path).unwrap();
        assert_eq!(q.q(1), 1.0);
        assert_eq!(q.log_q(2), f64::NEG_INFINITY);
        assert!(check_no_arbitrage(&path, &q, 1e-12).unwrap());
        let d = decompose(&path).unwrap();
        assert_eq!(d.fundamental, 1.0);
        assert_eq!(d.bubble, 0.0);
        assert!(d.diagnostics.classifier.is_none());
    }

    #[test]
    fn no_arbitrage_check() {
        let path = constant(100.0, 5.0, 20, levels(100.0, 5.0));
        let implied = implied_deflators(&path).unwrap();
        assert!(check_no_arbitrage(&path, &implied, DEFAULT_NO_ARBITRAGE_TOL).unwrap());

        let halving: Vec<f64> = (0..=20).map(|t| 0.5f64.powi(t)).collect();
        let wrong = Deflators::from_linear(&halving).unwrap();
        assert!(!check_no_arbitrage(&path, &wrong, DEFAULT_NO_ARBITRAGE_TOL).unwrap());

        let mut perturbed: Vec<f64> = (0..=20).map(|t| (100.0f64 / 105.0).powi(t)).collect();
        assert!(check_no_arbitrage(&path, &Deflators::from_linear(&perturbed).unwrap(), 1e-9).unwrap());
        perturbed[7] *= 1.0 + 1e-3;
        let (at, residual) = no_arbitrage_residual(&path, &Deflators::from_linear(&perturbed).unwrap()).unwrap();
        assert!(at == 6 || at == 7);
        assert!(residual > 9e-4);
        assert!(!check_no_arbitrage(&path, &Deflators::from_linear(&perturbed).unwrap(), 1e-9).unwrap());

        let short = Deflators::from_linear(&halving[..5]).unwrap();
        assert_eq!(
            check_no_arbitrage(&path, &short, 1e-9),
            Err(BubbleError::HorizonMismatch { path: 20, deflators: 4 })
        );
    }

    #[test]
    fn partial_value_examples() {
        let path = constant(100.0, 5.0, 500, levels(100.0, 5.0));
        let q = implied_deflators(&path).unwrap();
        assert!((partial_value(&path, &q, 1).unwrap() - 5.0 * 100.0 / 105.0).abs() < 1e-13);
        assert!(matches!(partial_value(&path, &q, 0), Err(BubbleError::OutOfRange { .. })));
        assert!(matches!(partial_value(&path, &q, 501), Err(BubbleError::OutOfRange { .. })));

        let money = constant(2.0, 0.0, 30, TailModel::ZeroDividends);
        let qm = implied_deflators(&money).unwrap();
        assert_eq!(partial_value(&money, &qm, 17).unwrap(), 0.0);
    }

    #[test]
    fn constant_asset_has_no_bubble() {
        let path = constant(100.0, 5.0, 500, levels(100.0, 5.0));
        let q = implied_deflators(&path).unwrap();
        assert!((fundamental_value(&path, &q).unwrap() - 100.0).abs() < 1e-9 * 100.0);
        assert!(bubble_component(&path, &q).unwrap() <= 1e-9 * 100.0);
        assert!(tvc_holds(&path, &q).unwrap());
        let d = decompose(&path).unwrap();
        assert_eq!(d.verdict, Classification::NoBubble);
        assert!(!d.diagnostics.boundary);
        d.check_invariants().unwrap();
    }

    #[test]
    fn money_is_pure_bubble() {
        let path = constant(1.0, 0.0, 40, TailModel::ZeroDividends);
        let q = implied_deflators(&path).unwrap();
        assert_eq!(fundamental_value(&path, &q).unwrap(), 0.0);
        assert_eq!(bubble_component(&path, &q).unwrap(), 1.0);
        assert!(!tvc_holds(&path, &q).unwrap());
        let d = decompose(&path).unwrap();
        assert_eq!((d.price, d.fundamental, d.bubble, d.verdict), (1.0, 0.0, 1.0, Classification::Bubble));
    }

    #[test]
    fn divergent_tails_price_at_fundamentals() {
        let path = DiscretePath::new(vec![1.0, 1.1, 0.9, 1.3], vec![0.02, 0.01, 0.03], TailModel::ConstantYield { c: 0.02 }).unwrap();
        let q = implied_deflators(&path).unwrap();
        assert_eq!(fundamental_value(&path, &q).unwrap(), 1.0);
        assert_eq!(bubble_component(&path, &q).unwrap(), 0.0);
    }

    #[test]
    fn declared_convergent_tail() {
        let path = constant(1.0, 0.0, 3, TailModel::DeclaredConvergent { tail_sum: 0.25 });
        let q = implied_deflators(&path).unwrap();
        assert_eq!(fundamental_value(&path, &q).unwrap(), 0.25);
        assert_eq!(bubble_component(&path, &q).unwrap(), 0.75);

        let greedy = constant(1.0, 0.0, 3, TailModel::DeclaredConvergent { tail_sum: 2.0 });
        let q = implied_deflators(&greedy).unwrap();
        assert!(matches!(fundamental_value(&greedy, &q), Err(BubbleError::TailExceedsPrice { .. })));
    }

    #[test]
    fn tie_resolves_to_no_bubble_with_flag() {
        // tail PV consumes the whole deflated price: classifier says convergent, bubble is 0
        let path = constant(1.0, 0.0, 3, TailModel::DeclaredConvergent { tail_sum: 1.0 });
        let d = decompose(&path).unwrap();
        assert_eq!(d.verdict, Classification::NoBubble);
        assert!(d.diagnostics.boundary);
    }

    #[test]
    fn ensemble_sums_members() {
        let member = |p: f64, v: f64, b: f64| Decomposition {
            price: p,
            fundamental: v,
            bubble: b,
            verdict: if b > EPS_BUBBLE * p { Classification::Bubble } else { Classification::NoBubble },
            diagnostics: DecompositionDiagnostics {
                checkpoints: vec![],
                tail_contribution: 0.0,
                deflated_terminal_price: 0.0,
                boundary: false,
                classifier: None,
            },
        };
        let agg = ensemble_decompose(&[member(1.0, 1.0, 0.0), member(1.0, 1.0, 0.0), member(1.0, 1.0, 0.0)]).unwrap();
        assert_eq!((agg.price, agg.fundamental, agg.bubble, agg.verdict), (3.0, 3.0, 0.0, Classification::NoBubble));

        let agg = ensemble_decompose(&[member(1.0, 0.9, 0.1), member(1.0, 1.0, 0.0)]).unwrap();
        assert!((agg.bubble - 0.1).abs() < 1e-15);
        assert_eq!(agg.verdict, Classification::Bubble);

        assert_eq!(ensemble_decompose(&[]), Err(BubbleError::EmptyEnsemble));
        let broken = member(1.0, 0.5, 0.1);
        assert!(matches!(ensemble_decompose(&[broken]), Err(BubbleError::InvalidMember { index: 0, .. })));
    }

    #[test]
    fn checkpoints() {
        assert_eq!(checkpoint_dates(1), vec![1]);
        assert_eq!(checkpoint_dates(3), vec![1, 3]);
        assert_eq!(checkpoint_dates(100), vec![25, 50, 100]);
    }
}
