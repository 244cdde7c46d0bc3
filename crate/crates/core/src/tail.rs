//! Declared asymptotic behaviour of the dividend yield beyond the sample.
//!
//! A finite sample can never decide whether `sum D_t / P_t` converges, so
//! every analysis carries an explicit [`TailModel`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{BubbleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TailSpec", into = "TailSpec")]
pub enum TailModel {
    /// Price and dividend stay at `(price, dividend)` forever.
    ConstantLevels { price: f64, dividend: f64 },
    /// Yield tends to `c > 0`.
    ConstantYield { c: f64 },
    /// Yield behaves like `a * rho^t`.
    GeometricYield { a: f64, rho: f64 },
    /// Yield behaves like `a * t^{-p}`.
    PowerYield { a: f64, p: f64 },
    ZeroDividends,
    DeclaredDivergent,
    /// Present value (at date 0) of all dividends after the sample.
    DeclaredConvergent { tail_sum: f64 },
}

impl TailModel {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(BubbleError::InvalidParameter(msg));
        match *self {
            TailModel::ConstantLevels { price, dividend } => {
                if !(price.is_finite() && price > 0.0) {
                    return bad(format!("constant-levels price must be > 0, got {price}"));
                }
                if !(dividend.is_finite() && dividend >= 0.0) {
                    return bad(format!("constant-levels dividend must be >= 0, got {dividend}"));
                }
            }
            TailModel::ConstantYield { c } => {
                if !(c.is_finite() && c > 0.0) {
                    return bad(format!("constant-yield c must be > 0, got {c}"));
                }
            }
            TailModel::GeometricYield { a, rho } => {
                if !(a.is_finite() && a > 0.0) {
                    return bad(format!("geometric-yield a must be > 0, got {a}"));
                }
                if !(rho > 0.0 && rho < 1.0) {
                    return bad(format!("geometric-yield rho must lie in (0, 1), got {rho}"));
                }
            }
            TailModel::PowerYield { a, p } => {
                if !(a.is_finite() && a > 0.0) {
                    return bad(format!("power-yield a must be > 0, got {a}"));
                }
                if !(p.is_finite() && p > 0.0) {
                    return bad(format!("power-yield p must be > 0, got {p}"));
                }
            }
            TailModel::DeclaredConvergent { tail_sum } => {
                if !(tail_sum.is_finite() && tail_sum >= 0.0) {
                    return bad(format!("convergent tail_sum must be >= 0, got {tail_sum}"));
                }
            }
            TailModel::ZeroDividends | TailModel::DeclaredDivergent => {}
        }
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            TailModel::ConstantLevels { .. } => "constant-levels",
            TailModel::ConstantYield { .. } => "constant-yield",
            TailModel::GeometricYield { .. } => "geometric-yield",
            TailModel::PowerYield { .. } => "power-yield",
            TailModel::ZeroDividends => "zero-dividends",
            TailModel::DeclaredDivergent => "divergent",
            TailModel::DeclaredConvergent { .. } => "convergent",
        }
    }

    /// Re-express the tail for a discrete path obtained by sampling a
    /// continuous yield density every `step` time units.
    pub fn rescaled_for_step(&self, step: f64) -> TailModel {
        match *self {
            TailModel::ConstantLevels { price, dividend } => TailModel::ConstantLevels {
                price,
                dividend: dividend * step,
            },
            TailModel::ConstantYield { c } => TailModel::ConstantYield { c: c * step },
            TailModel::GeometricYield { a, rho } => {
                // integral of a rho^s over (t - step, t], written as a' (rho^step)^k
                let ln_rho = rho.ln();
                let a_step = a * ((-step * ln_rho).exp_m1()) / (-ln_rho);
                TailModel::GeometricYield {
                    a: a_step,
                    rho: rho.powf(step),
                }
            }
            TailModel::PowerYield { a, p } => TailModel::PowerYield {
                a: a * step.powf(1.0 - p),
                p,
            },
            other => other,
        }
    }
}

impl fmt::Display for TailModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = TailSpec::from(*self);
        f.write_str(&spec.kind)?;
        let mut sep = ':';
        for (k, v) in &spec.params {
            write!(f, "{sep}{k}={v}")?;
            sep = ',';
        }
        Ok(())
    }
}

/// Wire form of a tail: `{"kind": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl From<TailModel> for TailSpec {
    fn from(tail: TailModel) -> Self {
        let params: Vec<(&str, f64)> = match tail {
            TailModel::ConstantLevels { price, dividend } => vec![("P", price), ("D", dividend)],
            TailModel::ConstantYield { c } => vec![("c", c)],
            TailModel::GeometricYield { a, rho } => vec![("a", a), ("rho", rho)],
            TailModel::PowerYield { a, p } => vec![("a", a), ("p", p)],
            TailModel::DeclaredConvergent { tail_sum } => vec![("tail_sum", tail_sum)],
            TailModel::ZeroDividends | TailModel::DeclaredDivergent => vec![],
        };
        TailSpec {
            kind: tail.kind().to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

impl TryFrom<TailSpec> for TailModel {
    type Error = BubbleError;

    fn try_from(spec: TailSpec) -> Result<Self> {
        TailDeclaration::from(spec).resolve(None)
    }
}

/// A tail as written by a user: the kind plus whatever parameters were
/// given. Missing parameters of `constant-levels` and `constant-yield`
/// default to the last sampled observation.
#[derive(Debug, Clone, PartialEq)]
pub struct TailDeclaration {
    kind: String,
    params: BTreeMap<String, f64>,
}

impl From<TailSpec> for TailDeclaration {
    fn from(spec: TailSpec) -> Self {
        TailDeclaration {
            kind: spec.kind,
            params: spec.params,
        }
    }
}

impl FromStr for TailDeclaration {
    type Err = BubbleError;

    /// Parses `kind[:key=value[,key=value...]]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k, Some(r)),
            None => (s, None),
        };
        let mut params = BTreeMap::new();
        if let Some(rest) = rest {
            for item in rest.split(',').filter(|i| !i.trim().is_empty()) {
                let (k, v) = item.split_once('=').ok_or_else(|| {
                    BubbleError::InvalidParameter(format!("tail parameter '{item}' is not key=value"))
                })?;
                let value: f64 = v.trim().parse().map_err(|_| {
                    BubbleError::InvalidParameter(format!("tail parameter {k} = '{v}' is not a number"))
                })?;
                params.insert(k.trim().to_string(), value);
            }
        }
        Ok(TailDeclaration {
            kind: kind.trim().to_string(),
            params,
        })
    }
}

impl TailDeclaration {
    /// Build the model. `last` is the final sampled `(P, D)`, used for defaults.
    pub fn resolve(&self, last: Option<(f64, f64)>) -> Result<TailModel> {
        let get = |key: &str, fallback: Option<f64>| -> Result<f64> {
            self.params.get(key).copied().or(fallback).ok_or_else(|| {
                BubbleError::InvalidParameter(format!("tail '{}' needs parameter '{key}'", self.kind))
            })
        };
        let tail = match self.kind.as_str() {
            "constant-levels" => TailModel::ConstantLevels {
                price: get("P", last.map(|l| l.0))?,
                dividend: get("D", last.map(|l| l.1))?,
            },
            "constant-yield" => TailModel::ConstantYield {
                c: get("c", last.filter(|l| l.0 > 0.0).map(|l| l.1 / l.0))?,
            },
            "geometric-yield" => TailModel::GeometricYield {
                a: get("a", None)?,
                rho: get("rho", None)?,
            },
            "power-yield" => TailModel::PowerYield {
                a: get("a", None)?,
                p: get("p", None)?,
            },
            "zero-dividends" => TailModel::ZeroDividends,
            "divergent" => TailModel::DeclaredDivergent,
            "convergent" => TailModel::DeclaredConvergent {
                tail_sum: get("tail_sum", None)?,
            },
            other => {
                return Err(BubbleError::InvalidParameter(format!("unknown tail kind '{other}'")));
            }
        };
        tail.validate()?;
        Ok(tail)
    }
}
