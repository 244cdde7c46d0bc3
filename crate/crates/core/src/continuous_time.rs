//! Continuous-time paths: a price function sampled on a uniform grid and a
//! cumulative dividend measure `F` made of a density plus discrete jumps.
//!
//! No arbitrage reads `-d(q P) = q dF`. Dividing by `q P` and integrating,
//! `q_T P_T = P_0 exp(-int_0^T dF / P)` for the continuous part of `F`, so
//! a bubble survives exactly when `int_0^inf dF / P` is finite.
//!
//! A jump of size `dF` at a date where the ex-dividend price is `P` scales
//! the deflated price by `1 / (1 + dF / P)` rather than `exp(-dF / P)`; the
//! exponential form is exact only between jumps. [`deflated_price_identity`]
//! reports both sides so the gap is visible.

use serde::{Deserialize, Serialize};

use crate::characterization::{first_non_positive, verdict_for_tail, Classification, TailClass, Verdict};
use crate::error::{BubbleError, Result};
use crate::numerics::CompensatedSum;
use crate::path::DiscretePath;
use crate::series_core::{reconcile, Checkpoint, Decomposition, DecompositionDiagnostics, EPS_BUBBLE};
use crate::tail::TailModel;

pub const DEFAULT_GRID_STEP: f64 = 1e-3;
pub const DEFAULT_HORIZON: f64 = 100.0;

/// Relative slack when matching times to grid points.
const GRID_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub t: f64,
    #[serde(rename = "dF")]
    pub size: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeDividend {
    density: Vec<f64>,
    jumps: Vec<Jump>,
}

impl CumulativeDividend {
    pub fn new(density: Vec<f64>, jumps: Vec<Jump>) -> Result<Self> {
        if let Some((k, d)) = density.iter().enumerate().find(|(_, d)| !(d.is_finite() && **d >= 0.0)) {
            return Err(BubbleError::InvalidPath(format!("dividend density d[{k}] = {d} must be finite and >= 0")));
        }
        let mut last = 0.0;
        for (i, j) in jumps.iter().enumerate() {
            if !(j.t.is_finite() && j.t > last) {
                return Err(BubbleError::InvalidPath(format!(
                    "jump {i} at t = {} must be after {last} (jumps strictly increasing, none at t = 0)",
                    j.t
                )));
            }
            if !(j.size.is_finite() && j.size >= 0.0) {
                return Err(BubbleError::InvalidPath(format!("jump {i} has size {} < 0", j.size)));
            }
            last = j.t;
        }
        Ok(Self { density, jumps })
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }
}

/// Which grid sample prices a dividend jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JumpPriceSide {
    /// The sample at the jump date itself (ex-dividend, right limit).
    #[default]
    Right,
    /// The last sample strictly before the jump date.
    Left,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousPath {
    grid_step: f64,
    horizon: f64,
    prices: Vec<f64>,
    dividends: CumulativeDividend,
    tail: TailModel,
}

impl ContinuousPath {
    pub fn new(
        grid_step: f64,
        horizon: f64,
        prices: Vec<f64>,
        dividends: CumulativeDividend,
        tail: TailModel,
    ) -> Result<Self> {
        if !(grid_step.is_finite() && grid_step > 0.0) {
            return Err(BubbleError::InvalidParameter(format!("grid step must be > 0, got {grid_step}")));
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(BubbleError::InvalidParameter(format!("horizon must be > 0, got {horizon}")));
        }
        let cells = (horizon / grid_step).round();
        if cells < 1.0 || (cells * grid_step - horizon).abs() > GRID_SLACK * horizon {
            return Err(BubbleError::StepMismatch {
                step: horizon,
                grid_step,
            });
        }
        let samples = cells as usize + 1;
        if prices.len() != samples || dividends.density.len() != samples {
            return Err(BubbleError::InvalidPath(format!(
                "expected {samples} price and density samples, got {} and {}",
                prices.len(),
                dividends.density.len()
            )));
        }
        if let Some(index) = first_non_positive(&prices) {
            return Err(BubbleError::NonPositivePrice { index });
        }
        if prices.iter().any(|p| !p.is_finite()) {
            return Err(BubbleError::InvalidPath("prices must be finite".into()));
        }
        if let Some(j) = dividends.jumps.last() {
            if j.t > horizon * (1.0 + GRID_SLACK) {
                return Err(BubbleError::InvalidPath(format!("jump at t = {} lies beyond the horizon {horizon}", j.t)));
            }
        }
        tail.validate()?;
        Ok(Self {
            grid_step,
            horizon,
            prices,
            dividends,
            tail,
        })
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of grid cells.
    pub fn cells(&self) -> usize {
        self.prices.len() - 1
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn dividends(&self) -> &CumulativeDividend {
        &self.dividends
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.grid_step
    }

    /// Index of the first grid point at or after `t`.
    fn grid_index_at_or_after(&self, t: f64) -> usize {
        ((t / self.grid_step) - GRID_SLACK).ceil().max(0.0) as usize
    }

    fn jump_price(&self, jump: &Jump, side: JumpPriceSide) -> f64 {
        let k = self.grid_index_at_or_after(jump.t).min(self.cells());
        match side {
            JumpPriceSide::Right => self.prices[k],
            JumpPriceSide::Left => self.prices[k.saturating_sub(1)],
        }
    }

    fn yield_density(&self, k: usize) -> f64 {
        self.dividends.density[k] / self.prices[k]
    }

    fn jumps_until(&self, t: f64) -> impl Iterator<Item = &Jump> {
        let limit = t + GRID_SLACK * self.grid_step;
        self.dividends.jumps.iter().take_while(move |j| j.t <= limit)
    }

    /// Split `[0, t]` into whole cells plus a trailing fraction of a cell.
    fn cell_span(&self, t: f64) -> Result<(usize, f64)> {
        if !(t > 0.0 && t <= self.horizon * (1.0 + GRID_SLACK)) {
            return Err(BubbleError::OutOfRange {
                what: "T",
                value: t,
                min: 0.0,
                max: self.horizon,
            });
        }
        let exact = t / self.grid_step;
        let whole = ((exact + GRID_SLACK).floor() as usize).min(self.cells());
        let frac = exact - whole as f64;
        let frac = if frac <= GRID_SLACK || whole == self.cells() { 0.0 } else { frac };
        Ok((whole, frac))
    }

    /// `F` at every grid point, by the trapezoidal rule plus jumps.
    pub fn cumulative_dividends(&self) -> Vec<f64> {
        let h = self.grid_step;
        let d = &self.dividends.density;
        let mut acc = CompensatedSum::new();
        let mut jumps = self.dividends.jumps.iter().peekable();
        let mut out = Vec::with_capacity(self.prices.len());
        out.push(0.0);
        for k in 1..=self.cells() {
            acc.add(0.5 * h * (d[k - 1] + d[k]));
            while let Some(j) = jumps.next_if(|j| self.grid_index_at_or_after(j.t) <= k) {
                acc.add(j.size);
            }
            out.push(acc.value());
        }
        out
    }
}

/// `int_0^T dF_t / P_t`: trapezoidal rule on `d/P` plus `dF_j / P(t_j)`.
pub fn integrate_df_over_p(cpath: &ContinuousPath, t: f64) -> Result<f64> {
    integrate_df_over_p_with(cpath, t, JumpPriceSide::Right)
}

pub fn integrate_df_over_p_with(cpath: &ContinuousPath, t: f64, side: JumpPriceSide) -> Result<f64> {
    let (whole, frac) = cpath.cell_span(t)?;
    let h = cpath.grid_step;
    let mut acc = CompensatedSum::new();
    for k in 0..whole {
        acc.add(0.5 * h * (cpath.yield_density(k) + cpath.yield_density(k + 1)));
    }
    if frac > 0.0 {
        let (f0, f1) = (cpath.yield_density(whole), cpath.yield_density(whole + 1));
        let f_end = f0 + frac * (f1 - f0);
        acc.add(0.5 * frac * h * (f0 + f_end));
    }
    for j in cpath.jumps_until(t) {
        acc.add(j.size / cpath.jump_price(j, side));
    }
    Ok(acc.value())
}

/// Both sides of the deflated-price identity at `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeflatedPriceIdentity {
    /// `q_T P_T` from stepping `-d(qP) = q dF` forward on the grid.
    pub lhs: f64,
    /// `q_0 P_0 exp(-int_0^T dF/P)`.
    pub rhs: f64,
}

impl DeflatedPriceIdentity {
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs
    }
}

/// `log(q_T P_T)` by evolving the no-arbitrage condition cell by cell.
///
/// On a cell of width `w` the yield density enters through the
/// trapezoidal (Crank-Nicolson) factor `(1 - w f_k / 2) / (1 + w f_{k+1} / 2)`;
/// each jump divides by `1 + dF / P`.
fn evolve_log_deflated_price(cpath: &ContinuousPath, t: f64, side: JumpPriceSide) -> Result<f64> {
    let (whole, frac) = cpath.cell_span(t)?;
    let h = cpath.grid_step;
    let step = |w: f64, f0: f64, f1: f64| -> Result<f64> {
        let half = 0.5 * w * f0;
        if half >= 1.0 {
            return Err(BubbleError::InvalidParameter(format!(
                "grid step {h} is too coarse for yield density {f0}"
            )));
        }
        Ok((-half).ln_1p() - (0.5 * w * f1).ln_1p())
    };
    let mut acc = CompensatedSum::new();
    acc.add(cpath.prices[0].ln());
    for k in 0..whole {
        acc.add(step(h, cpath.yield_density(k), cpath.yield_density(k + 1))?);
    }
    if frac > 0.0 {
        let (f0, f1) = (cpath.yield_density(whole), cpath.yield_density(whole + 1));
        acc.add(step(frac * h, f0, f0 + frac * (f1 - f0))?);
    }
    for j in cpath.jumps_until(t) {
        acc.add(-(j.size / cpath.jump_price(j, side)).ln_1p());
    }
    Ok(acc.value())
}

pub fn deflated_price_identity(cpath: &ContinuousPath, t: f64) -> Result<DeflatedPriceIdentity> {
    deflated_price_identity_with(cpath, t, JumpPriceSide::Right)
}

pub fn deflated_price_identity_with(
    cpath: &ContinuousPath,
    t: f64,
    side: JumpPriceSide,
) -> Result<DeflatedPriceIdentity> {
    let lhs = evolve_log_deflated_price(cpath, t, side)?.exp();
    let integral = integrate_df_over_p_with(cpath, t, side)?;
    let rhs = cpath.prices[0] * (-integral).exp();
    Ok(DeflatedPriceIdentity { lhs, rhs })
}

pub fn montrucchio_continuous(cpath: &ContinuousPath) -> Result<Verdict> {
    montrucchio_continuous_with(cpath, JumpPriceSide::Right)
}

pub fn montrucchio_continuous_with(cpath: &ContinuousPath, side: JumpPriceSide) -> Result<Verdict> {
    if let Some(index) = first_non_positive(&cpath.prices) {
        return Err(BubbleError::NonPositivePrice { index });
    }
    let integral = integrate_df_over_p_with(cpath, cpath.horizon, side)?;
    Ok(verdict_for_tail(&cpath.tail, integral, "integral of dF/P"))
}

/// Sample every `step` time units: `P_t` at the right end of each interval,
/// `D_t = F(t) - F(t - step)` including any jumps in `(t - step, t]`.
pub fn discretize(cpath: &ContinuousPath, step: f64) -> Result<DiscretePath> {
    let ratio = step / cpath.grid_step;
    let per = ratio.round();
    if !(per >= 1.0) || (per - ratio).abs() > GRID_SLACK * ratio {
        return Err(BubbleError::StepMismatch {
            step,
            grid_step: cpath.grid_step,
        });
    }
    let per = per as usize;
    let periods = cpath.cells() / per;
    if periods == 0 {
        return Err(BubbleError::StepMismatch {
            step,
            grid_step: cpath.grid_step,
        });
    }
    let cumulative = cpath.cumulative_dividends();
    let prices = (0..=periods).map(|i| cpath.prices[i * per]).collect();
    let dividends = (1..=periods)
        .map(|i| (cumulative[i * per] - cumulative[(i - 1) * per]).max(0.0))
        .collect();
    DiscretePath::new(prices, dividends, cpath.tail.rescaled_for_step(step))
}

/// `int_T^inf` of the tail yield density, for convergent tails.
fn tail_yield_integral(tail: &TailModel, horizon: f64) -> Option<f64> {
    match *tail {
        TailModel::ZeroDividends => Some(0.0),
        TailModel::ConstantLevels { dividend, .. } if dividend == 0.0 => Some(0.0),
        TailModel::GeometricYield { a, rho } => Some(a * rho.powf(horizon) / -rho.ln()),
        TailModel::PowerYield { a, p } if p > 1.0 => Some(a * horizon.powf(1.0 - p) / (p - 1.0)),
        _ => None,
    }
}

/// Date-0 decomposition of a continuous path, using the grid evolution of
/// `q P` to the horizon and the declared tail beyond it.
pub fn decompose_continuous(cpath: &ContinuousPath, side: JumpPriceSide) -> Result<Decomposition> {
    let price = cpath.prices[0];
    let terminal = evolve_log_deflated_price(cpath, cpath.horizon, side)?.exp();
    let partial = (price - terminal).max(0.0);

    let (fundamental, tail) = match (*cpath.tail(), crate::characterization::classify_tail(cpath.tail())) {
        (TailModel::DeclaredConvergent { tail_sum }, _) => {
            if tail_sum > terminal + EPS_BUBBLE * price {
                return Err(BubbleError::TailExceedsPrice {
                    tail_sum,
                    available: terminal,
                });
            }
            (partial + tail_sum, tail_sum)
        }
        (tail_model, TailClass::Convergent) => {
            let integral = tail_yield_integral(&tail_model, cpath.horizon)
                .ok_or_else(|| BubbleError::TailUnsupported(tail_model.to_string()))?;
            let tail = terminal * -(-integral).exp_m1();
            (partial + tail, tail)
        }
        (_, TailClass::Divergent) => (price, price - partial),
    };
    let bubble = (price - fundamental).max(0.0);

    let classifier = montrucchio_continuous_with(cpath, side)?;
    let (verdict, boundary) = reconcile(price, bubble, Some(&classifier))?;

    let mut checkpoints = Vec::new();
    for frac in [0.25, 0.5, 1.0] {
        let k = ((cpath.cells() as f64 * frac).round() as usize).max(1);
        let t = cpath.time(k).min(cpath.horizon);
        let m = evolve_log_deflated_price(cpath, t, side)?.exp();
        if checkpoints.last().is_none_or(|c: &Checkpoint| c.t < t) {
            checkpoints.push(Checkpoint {
                t,
                partial_sum: (price - m).max(0.0),
            });
        }
    }

    Ok(Decomposition {
        price,
        fundamental,
        bubble,
        verdict,
        diagnostics: DecompositionDiagnostics {
            checkpoints,
            tail_contribution: tail,
            deflated_terminal_price: terminal,
            boundary,
            classifier: Some(classifier),
        },
    })
}

/// Convenience: classification only.
pub fn classify_continuous(cpath: &ContinuousPath) -> Result<Classification> {
    Ok(montrucchio_continuous(cpath)?.classification)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(p: f64, d: f64, h: f64, horizon: f64, jumps: Vec<Jump>, tail: TailModel) -> ContinuousPath {
        let n = (horizon / h).round() as usize + 1;
        ContinuousPath::new(h, horizon, vec![p; n], CumulativeDividend::new(vec![d; n], jumps).unwrap(), tail).unwrap()
    }

    fn exp_density(h: f64, horizon: f64) -> ContinuousPath {
        let n = (horizon / h).round() as usize + 1;
        let density = (0..n).map(|k| (-(k as f64 * h)).exp()).collect();
        ContinuousPath::new(
            h,
            horizon,
            vec![1.0; n],
            CumulativeDividend::new(density, vec![]).unwrap(),
            TailModel::GeometricYield { a: 1.0, rho: (-1.0f64).exp() },
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_paths() {
        let dens = || CumulativeDividend::new(vec![0.0; 11], vec![]).unwrap();
        assert!(matches!(
            ContinuousPath::new(0.1, 1.0, vec![1.0; 10], dens(), TailModel::ZeroDividends),
            Err(BubbleError::InvalidPath(_))
        ));
        let mut prices = vec![1.0; 11];
        prices[4] = 0.0;
        assert_eq!(
            ContinuousPath::new(0.1, 1.0, prices, dens(), TailModel::ZeroDividends),
            Err(BubbleError::NonPositivePrice { index: 4 })
        );
        assert!(CumulativeDividend::new(vec![1.0], vec![Jump { t: 0.0, size: 1.0 }]).is_err());
        assert!(CumulativeDividend::new(vec![1.0], vec![Jump { t: 2.0, size: 1.0 }, Jump { t: 1.0, size: 1.0 }]).is_err());
        assert!(CumulativeDividend::new(vec![-1.0], vec![]).is_err());
        assert!(ContinuousPath::new(
            0.1,
            1.0,
            vec![1.0; 11],
            CumulativeDividend::new(vec![0.0; 11], vec![Jump { t: 2.0, size: 1.0 }]).unwrap(),
            TailModel::ZeroDividends
        )
        .is_err());
    }

    #[test]
    fn constant_flow_integral_is_linear() {
        let path = flat(2.5, 0.2, 1e-3, 10.0, vec![], TailModel::ConstantYield { c: 0.08 });
        for t in [1.0, 2.5, 10.0, 3.3335] {
            let got = integrate_df_over_p(&path, t).unwrap();
            assert!((got - 0.2 * t / 2.5).abs() < 1e-12, "{t}: {got}");
        }
        assert!(matches!(integrate_df_over_p(&path, 0.0), Err(BubbleError::OutOfRange { .. })));
        assert!(matches!(integrate_df_over_p(&path, 10.5), Err(BubbleError::OutOfRange { .. })));
    }

    #[test]
    fn no_dividends_integrate_to_zero() {
        let path = flat(1.0, 0.0, 1e-2, 5.0, vec![], TailModel::ZeroDividends);
        assert_eq!(integrate_df_over_p(&path, 5.0).unwrap(), 0.0);
        for t in [0.5, 2.0, 5.0] {
            let id = deflated_price_identity(&path, t).unwrap();
            assert_eq!((id.lhs, id.rhs), (1.0, 1.0));
        }
    }

    #[test]
    fn exponential_density_integral() {
        let path = exp_density(1e-3, 20.0);
        let got = integrate_df_over_p(&path, 20.0).unwrap();
        let exact = 1.0 - (-20.0f64).exp();
        // trapezoid error ~ h^2/12 * (f'(0) - f'(T))
        assert!((got - exact).abs() < 1e-7, "{got} vs {exact}");
    }

    #[test]
    fn constant_flow_identity_matches_exponential_solution() {
        let (p, d, t) = (2.5, 0.2, 50.0);
        let path = flat(p, d, 1e-3, t, vec![], TailModel::ConstantYield { c: d / p });
        let id = deflated_price_identity(&path, t).unwrap();
        let exact = p * (-d * t / p).exp();
        assert!((id.rhs - exact).abs() / exact < 1e-12);
        assert!(id.relative_gap() < 1e-6);
    }

    #[test]
    fn jump_arithmetic() {
        // price drops from P to P/e when a dividend of P (e - 1)/e is paid at t = 1
        let h = 0.5;
        let big = 3.0;
        let e = std::f64::consts::E;
        let prices = vec![big, big, big / e, big / e, big / e];
        let size = big * (e - 1.0) / e;
        let divs = CumulativeDividend::new(vec![0.0; 5], vec![Jump { t: 1.0, size }]).unwrap();
        let path = ContinuousPath::new(h, 2.0, prices, divs, TailModel::ZeroDividends).unwrap();

        let before = deflated_price_identity(&path, 0.5).unwrap();
        let after = deflated_price_identity(&path, 1.0).unwrap();
        assert!((after.lhs / before.lhs - 1.0 / e).abs() < 1e-15);
        // hand oracle: the jump enters the integral as dF / P(t_1) with the ex-dividend price
        let x = size / (big / e);
        assert!((integrate_df_over_p(&path, 1.0).unwrap() - x).abs() < 1e-15);
        assert!((after.rhs / before.rhs - (-x).exp()).abs() < 1e-15);

        // left-limit pricing uses the pre-jump sample
        let x_left = size / big;
        assert!((integrate_df_over_p_with(&path, 2.0, JumpPriceSide::Left).unwrap() - x_left).abs() < 1e-15);
    }

    #[test]
    fn montrucchio_continuous_examples() {
        let v = montrucchio_continuous(&flat(2.5, 0.2, 1e-2, 10.0, vec![], TailModel::ConstantYield { c: 0.08 })).unwrap();
        assert_eq!(v.classification, Classification::NoBubble);
        let v = montrucchio_continuous(&flat(1.0, 0.0, 1e-2, 10.0, vec![], TailModel::ZeroDividends)).unwrap();
        assert_eq!(v.classification, Classification::Bubble);
        assert_eq!(v.partial_sum, 0.0);
        let path = exp_density(1e-3, 30.0);
        let v = montrucchio_continuous(&path).unwrap();
        assert_eq!(v.classification, Classification::Bubble);
        let id = deflated_price_identity(&path, 30.0).unwrap();
        assert!((id.lhs - (-1.0f64).exp()).abs() < 1e-6);
        let d = decompose_continuous(&path, JumpPriceSide::Right).unwrap();
        assert_eq!(d.verdict, Classification::Bubble);
        assert!((d.bubble - (-1.0f64).exp()).abs() < 1e-6);
        d.check_invariants().unwrap();
    }

    #[test]
    fn discretize_uniform_flow() {
        let path = flat(2.0, 0.5, 1e-3, 5.0, vec![], TailModel::ConstantLevels { price: 2.0, dividend: 0.5 });
        let dp = discretize(&path, 1.0).unwrap();
        assert_eq!(dp.horizon(), 5);
        assert!(dp.prices().iter().all(|&p| p == 2.0));
        assert!(dp.dividends().iter().all(|&d| (d - 0.5).abs() < 1e-12));
        assert_eq!(*dp.tail(), TailModel::ConstantLevels { price: 2.0, dividend: 0.5 });
    }

    #[test]
    fn discretize_places_jump_in_its_interval() {
        let path = flat(1.0, 0.0, 1e-3, 5.0, vec![Jump { t: 2.5, size: 0.3 }], TailModel::ZeroDividends);
        let dp = discretize(&path, 1.0).unwrap();
        for t in 1..=5 {
            let expected = if t == 3 { 0.3 } else { 0.0 };
            assert_eq!(dp.dividend(t), expected, "t = {t}");
        }
    }

    #[test]
    fn discretize_exponential_density() {
        let path = exp_density(1e-3, 10.0);
        let dp = discretize(&path, 0.5).unwrap();
        for i in 1..=dp.horizon() {
            let t = i as f64 * 0.5;
            let exact = (-(t - 0.5)).exp() - (-t).exp();
            assert!((dp.dividend(i) - exact).abs() < 1e-7 * exact.max(1e-3), "{i}");
        }
        let discrete = crate::characterization::montrucchio_discrete(&dp).unwrap();
        assert_eq!(discrete.classification, classify_continuous(&path).unwrap());
    }

    #[test]
    fn discretize_rejects_non_multiple_steps() {
        let path = flat(1.0, 0.0, 1e-2, 1.0, vec![], TailModel::ZeroDividends);
        assert!(matches!(discretize(&path, 0.015), Err(BubbleError::StepMismatch { .. })));
        assert!(matches!(discretize(&path, 2.0), Err(BubbleError::StepMismatch { .. })));
        assert!(discretize(&path, 0.05).is_ok());
    }
}
