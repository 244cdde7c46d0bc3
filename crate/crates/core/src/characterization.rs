//! Bubble existence via the dividend-yield criterion.
//!
//! With strictly positive prices and no aggregate uncertainty, a price path
//! carries a bubble exactly when `sum_t D_t / P_t` is finite. The finite
//! sample never settles that; the declared tail does.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BubbleError, Result};
use crate::numerics::compensated_sum;
use crate::path::DiscretePath;
use crate::tail::TailModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Bubble,
    NoBubble,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Bubble => "Bubble",
            Classification::NoBubble => "NoBubble",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailClass {
    Convergent,
    Divergent,
}

/// `y_t = D_t / P_t` for `t = 1..=T`.
#[derive(Debug, Clone, PartialEq)]
pub struct YieldSeries {
    values: Vec<f64>,
    tail: TailModel,
}

impl YieldSeries {
    /// Index `i` holds `y_{i+1}`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn partial_sum(&self) -> f64 {
        compensated_sum(self.values.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub classification: Classification,
    /// Sum (or integral) of yields over the sampled horizon.
    pub partial_sum: f64,
    pub tail_class: TailClass,
    pub rationale: String,
}

pub fn first_non_positive(prices: &[f64]) -> Option<usize> {
    prices.iter().position(|&p| p.is_nan() || p <= 0.0)
}

pub fn dividend_yield_series(path: &DiscretePath) -> Result<YieldSeries> {
    if let Some(index) = first_non_positive(path.prices()) {
        return Err(BubbleError::NonPositivePrice { index });
    }
    let values = path
        .dividends()
        .iter()
        .zip(&path.prices()[1..])
        .map(|(d, p)| d / p)
        .collect();
    Ok(YieldSeries {
        values,
        tail: *path.tail(),
    })
}

pub fn classify_tail(tail: &TailModel) -> TailClass {
    match *tail {
        TailModel::ConstantLevels { dividend, .. } if dividend > 0.0 => TailClass::Divergent,
        TailModel::ConstantLevels { .. } => TailClass::Convergent,
        TailModel::ConstantYield { .. } => TailClass::Divergent,
        TailModel::GeometricYield { .. } => TailClass::Convergent,
        TailModel::PowerYield { p, .. } if p > 1.0 => TailClass::Convergent,
        TailModel::PowerYield { .. } => TailClass::Divergent,
        TailModel::ZeroDividends => TailClass::Convergent,
        TailModel::DeclaredDivergent => TailClass::Divergent,
        TailModel::DeclaredConvergent { .. } => TailClass::Convergent,
    }
}

pub(crate) fn verdict_for_tail(tail: &TailModel, partial_sum: f64, sampled: &str) -> Verdict {
    let tail_class = classify_tail(tail);
    let (classification, reading) = match tail_class {
        TailClass::Convergent => (Classification::Bubble, "converges, so the deflated price keeps a positive limit"),
        TailClass::Divergent => (Classification::NoBubble, "diverges, so the deflated price vanishes"),
    };
    Verdict {
        classification,
        partial_sum,
        tail_class,
        rationale: format!("{sampled} over the sample = {partial_sum}; declared tail {tail} {reading}"),
    }
}

pub fn montrucchio_discrete(path: &DiscretePath) -> Result<Verdict> {
    let yields = dividend_yield_series(path)?;
    Ok(verdict_for_tail(&yields.tail, yields.partial_sum(), "sum of D_t/P_t"))
}
