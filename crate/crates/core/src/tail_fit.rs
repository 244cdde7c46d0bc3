//! Least-squares suggestion of a tail model from the end of a sample.
//!
//! The suggestion is advisory only; analysis never applies it unless asked.

use serde::{Deserialize, Serialize};

use crate::characterization::dividend_yield_series;
use crate::error::{BubbleError, Result};
use crate::path::DiscretePath;
use crate::tail::TailModel;

/// Fraction of the sample, counted from the end, used for the fit.
pub const FIT_WINDOW_FRACTION: f64 = 0.2;

/// Total drift of `log y` across the window below which the yield counts as flat.
pub const FLAT_DRIFT: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub suggestion: TailModel,
    /// First and last date of the fitting window.
    pub window: (usize, usize),
    /// Number of strictly positive yields used.
    pub points: usize,
    pub residuals: FitResiduals,
}

/// Residual sums of squares of `log y` under each candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResiduals {
    pub constant: f64,
    pub geometric: f64,
    pub power: f64,
}

struct LineFit {
    intercept: f64,
    slope: f64,
    rss: f64,
}

fn fit_line(xs: &[f64], ys: &[f64]) -> LineFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    LineFit { intercept, slope, rss }
}

pub fn suggest_tail(path: &DiscretePath) -> Result<TailFit> {
    let yields = dividend_yield_series(path)?;
    let horizon = path.horizon();
    let width = ((horizon as f64 * FIT_WINDOW_FRACTION).ceil() as usize).clamp(horizon.min(3), horizon);
    let first = horizon - width + 1;

    let window: Vec<(f64, f64)> = (first..=horizon)
        .map(|t| (t as f64, yields.values()[t - 1]))
        .collect();
    let positive: Vec<(f64, f64)> = window.iter().copied().filter(|&(_, y)| y > 0.0).collect();

    if positive.is_empty() {
        return Ok(TailFit {
            suggestion: TailModel::ZeroDividends,
            window: (first, horizon),
            points: 0,
            residuals: FitResiduals { constant: 0.0, geometric: 0.0, power: 0.0 },
        });
    }

    let ts: Vec<f64> = positive.iter().map(|p| p.0).collect();
    let log_ts: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let log_ys: Vec<f64> = positive.iter().map(|p| p.1.ln()).collect();

    let mean = log_ys.iter().sum::<f64>() / log_ys.len() as f64;
    let constant_rss: f64 = log_ys.iter().map(|y| (y - mean).powi(2)).sum();
    let geometric = fit_line(&ts, &log_ys);
    let power = fit_line(&log_ts, &log_ys);
    let residuals = FitResiduals {
        constant: constant_rss,
        geometric: geometric.rss,
        power: power.rss,
    };

    let span = ts[ts.len() - 1] - ts[0];
    let suggestion = if positive.len() < 3 || (geometric.slope * span).abs() < FLAT_DRIFT {
        TailModel::ConstantYield { c: mean.exp() }
    } else if geometric.slope > 0.0 {
        TailModel::DeclaredDivergent
    } else if geometric.rss <= power.rss {
        TailModel::GeometricYield {
            a: geometric.intercept.exp(),
            rho: geometric.slope.exp(),
        }
    } else {
        TailModel::PowerYield {
            a: power.intercept.exp(),
            p: -power.slope,
        }
    };
    suggestion.validate().map_err(|e| match e {
        BubbleError::InvalidParameter(msg) => BubbleError::InvalidParameter(format!("tail fit produced {msg}")),
        other => other,
    })?;

    Ok(TailFit {
        suggestion,
        window: (first, horizon),
        points: positive.len(),
        residuals,
    })
}
