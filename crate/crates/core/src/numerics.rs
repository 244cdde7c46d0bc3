//! Numerical building blocks: compensated summation and closed-form
//! evaluation of the infinite log-products that appear in yield tails.

use std::ops::AddAssign;

/// Running sum with Neumaier's improvement of Kahan compensation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator of floats.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// Terms `x >= SERIES_SWITCH` are summed explicitly; below it the
/// alternating `log1p` series converges at least as fast as `0.1^k`.
const SERIES_SWITCH: f64 = 0.1;

/// Explicit terms allowed before a tail is declared intractable.
pub const MAX_EXPLICIT_TERMS: u64 = 10_000_000;

/// Smallest index from which power-law tails are handed to Euler-Maclaurin.
const EULER_MACLAURIN_START: u64 = 1_000;

/// `sum_{t >= start} ln(1 + a * rho^t)` for `a > 0`, `0 < rho < 1`.
///
/// Returns `None` when more than [`MAX_EXPLICIT_TERMS`] explicit terms
/// would be needed before the series expansion takes over.
pub fn geometric_log1p_tail(a: f64, rho: f64, start: u64) -> Option<f64> {
    let ln_rho = rho.ln();
    let term = |t: u64| (a.ln() + t as f64 * ln_rho).exp();

    let mut acc = CompensatedSum::new();
    let mut t = start;
    let mut x = term(t);
    let mut explicit = 0u64;
    while x >= SERIES_SWITCH {
        acc.add(x.ln_1p());
        t += 1;
        explicit += 1;
        if explicit > MAX_EXPLICIT_TERMS {
            return None;
        }
        x = term(t);
    }

    // sum_{j>=0} ln(1 + x rho^j) = sum_k (-1)^{k+1} x^k / (k (1 - rho^k))
    let mut xk = 1.0;
    for k in 1..=200u32 {
        xk *= x;
        let denom = -(f64::from(k) * ln_rho).exp_m1();
        let piece = xk / (f64::from(k) * denom);
        if k % 2 == 1 {
            acc.add(piece);
        } else {
            acc.add(-piece);
        }
        if piece <= f64::EPSILON * 1e-3 * acc.value().abs() || piece == 0.0 {
            break;
        }
    }
    Some(acc.value())
}

/// `sum_{t >= n} t^{-s}` for `s > 1` and `n >= 1`, by Euler-Maclaurin with
/// three Bernoulli corrections. Accurate to `O(n^{-s-7})`.
pub fn zeta_tail(s: f64, n: u64) -> f64 {
    let n = n as f64;
    let f = n.powf(-s);
    let integral = n * f / (s - 1.0);
    let c1 = s / (12.0 * n) * f;
    let c3 = s * (s + 1.0) * (s + 2.0) / (720.0 * n.powi(3)) * f;
    let c5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / (30_240.0 * n.powi(5)) * f;
    integral + 0.5 * f + c1 - c3 + c5
}

/// `sum_{t >= start} ln(1 + a * t^{-p})` for `a > 0`, `p > 1`, `start >= 1`.
pub fn power_log1p_tail(a: f64, p: f64, start: u64) -> Option<f64> {
    let start = start.max(1);
    let mut acc = CompensatedSum::new();
    let mut t = start;
    let mut explicit = 0u64;
    loop {
        let x = a * (t as f64).powf(-p);
        if t >= EULER_MACLAURIN_START && x < SERIES_SWITCH {
            break;
        }
        acc.add(x.ln_1p());
        t += 1;
        explicit += 1;
        if explicit > MAX_EXPLICIT_TERMS {
            return None;
        }
    }

    let mut ak = 1.0;
    for k in 1..=200u32 {
        ak *= a;
        let piece = ak * zeta_tail(f64::from(k) * p, t) / f64::from(k);
        if k % 2 == 1 {
            acc.add(piece);
        } else {
            acc.add(-piece);
        }
        if piece <= f64::EPSILON * 1e-3 * acc.value().abs() || piece == 0.0 {
            break;
        }
    }
    Some(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut naive = 1.0f64;
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            naive += 1e-16;
            acc.add(1e-16);
        }
        assert_eq!(naive, 1.0);
        assert!((acc.value() - (1.0 + 1e-10)).abs() < 1e-22);
    }

    #[test]
    fn neumaier_handles_large_cancellation() {
        let v = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(v, 2.0);
    }

    #[test]
    fn geometric_tail_matches_brute_force() {
        for &(a, rho, start) in &[(0.5f64, 0.5f64, 1u64), (2.0, 0.9, 1), (5.0, 0.99, 10), (0.01, 0.3, 0)] {
            let brute = compensated_sum((start..start + 20_000).map(|t| (a * rho.powi(t as i32)).ln_1p()));
            let tail = geometric_log1p_tail(a, rho, start).unwrap();
            assert!((tail - brute).abs() <= 1e-13 * brute.abs().max(1e-300), "{a} {rho}: {tail} vs {brute}");
        }
    }

    #[test]
    fn zeta_tail_matches_known_values() {
        // zeta(2) = pi^2 / 6
        let head = compensated_sum((1..1000).map(|t| (t as f64).powi(-2)));
        let z2 = head + zeta_tail(2.0, 1000);
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
        // zeta(4) = pi^4 / 90
        let head = compensated_sum((1..20).map(|t| (t as f64).powi(-4)));
        let z4 = head + zeta_tail(4.0, 20);
        assert!((z4 - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn power_tail_matches_long_direct_sum() {
        // direct sum to 2e6 plus the leading integral remainder
        for &(a, p) in &[(1.0, 2.0), (3.0, 1.5)] {
            let n = 2_000_000u64;
            let direct = compensated_sum((1..n).map(|t| (a * (t as f64).powf(-p)).ln_1p()));
            let nf = n as f64;
            let rest = a * nf.powf(1.0 - p) / (p - 1.0) + 0.5 * a * nf.powf(-p);
            let tail = power_log1p_tail(a, p, 1).unwrap();
            assert!((tail - (direct + rest)).abs() < 1e-9, "{a} {p}: {tail} vs {}", direct + rest);
        }
    }

    #[test]
    fn intractable_tail_is_reported() {
        assert!(geometric_log1p_tail(1e6, 1.0 - 1e-9, 0).is_none());
    }
}
