//! Machine-readable analysis reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::characterization::{Classification, Verdict};
use crate::continuous_time::{decompose_continuous, deflated_price_identity_with, DeflatedPriceIdentity, JumpPriceSide};
use crate::error::Result;
use crate::models::MiaoWangScenario;
use crate::path::DiscretePath;
use crate::series_core::{
    cumulative_present_values, decompose, implied_deflators, no_arbitrage_residual, Checkpoint, Decomposition, Deflators,
};
use crate::tail::TailModel;
use crate::tail_fit::TailFit;

use super::json_path::ContinuousInput;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathKind {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailSource {
    Flag,
    Embedded,
    Suggestion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    /// File name, or `-` for standard input.
    pub source: String,
    pub kind: PathKind,
    pub samples: usize,
    pub horizon: f64,
    pub tail: TailModel,
    pub tail_source: TailSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDecomposition {
    pub price: f64,
    pub fundamental: f64,
    pub bubble: f64,
    pub verdict: Classification,
    /// Same as `bubble`; named to sit beside `interpreted_component`.
    pub rational_bubble: f64,
    /// The constant a firm-value formula `Q K + B` calls a bubble, when the
    /// path came from such a scenario.
    pub interpreted_component: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDiagnostics {
    pub checkpoints: Vec<Checkpoint>,
    pub tail_contribution: f64,
    pub deflated_terminal_price: f64,
    pub no_arbitrage_residual_max: Option<f64>,
    pub boundary: bool,
    pub classifier: Option<Verdict>,
    pub tail_fit: Option<TailFit>,
    pub identity: Option<DeflatedPriceIdentity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub tol: f64,
    pub horizon: Option<f64>,
    pub jump_side: JumpPriceSide,
    pub tail_suggest: bool,
    pub accept_suggestion: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputDigest,
    pub decomposition: ReportDecomposition,
    pub diagnostics: ReportDiagnostics,
    pub version: String,
    pub config: ReportConfig,
}

fn report_decomposition(d: &Decomposition, interpreted_component: Option<f64>) -> ReportDecomposition {
    ReportDecomposition {
        price: d.price,
        fundamental: d.fundamental,
        bubble: d.bubble,
        verdict: d.verdict,
        rational_bubble: d.bubble,
        interpreted_component,
    }
}

impl AnalysisReport {
    pub fn discrete(
        source: &str,
        path: &DiscretePath,
        tail_source: TailSource,
        tail_fit: Option<TailFit>,
        config: ReportConfig,
    ) -> Result<Self> {
        let d = decompose(path)?;
        let deflators = implied_deflators(path)?;
        let (_, residual) = no_arbitrage_residual(path, &deflators)?;
        Ok(AnalysisReport {
            input: InputDigest {
                source: source.to_string(),
                kind: PathKind::Discrete,
                samples: path.prices().len(),
                horizon: path.horizon() as f64,
                tail: *path.tail(),
                tail_source,
            },
            decomposition: report_decomposition(&d, None),
            diagnostics: ReportDiagnostics {
                checkpoints: d.diagnostics.checkpoints,
                tail_contribution: d.diagnostics.tail_contribution,
                deflated_terminal_price: d.diagnostics.deflated_terminal_price,
                no_arbitrage_residual_max: Some(residual),
                boundary: d.diagnostics.boundary,
                classifier: d.diagnostics.classifier,
                tail_fit,
                identity: None,
            },
            version: VERSION.to_string(),
            config,
        })
    }

    pub fn continuous(
        source: &str,
        input: &ContinuousInput,
        tail_source: TailSource,
        tail_fit: Option<TailFit>,
        config: ReportConfig,
    ) -> Result<Self> {
        let path = &input.path;
        let d = decompose_continuous(path, config.jump_side)?;
        let identity = deflated_price_identity_with(path, path.horizon(), config.jump_side)?;
        Ok(AnalysisReport {
            input: InputDigest {
                source: source.to_string(),
                kind: PathKind::Continuous,
                samples: path.prices().len(),
                horizon: path.horizon(),
                tail: *path.tail(),
                tail_source,
            },
            decomposition: report_decomposition(&d, input.scenario.as_ref().map(|s: &MiaoWangScenario| s.b_mw)),
            diagnostics: ReportDiagnostics {
                checkpoints: d.diagnostics.checkpoints,
                tail_contribution: d.diagnostics.tail_contribution,
                deflated_terminal_price: d.diagnostics.deflated_terminal_price,
                no_arbitrage_residual_max: None,
                boundary: d.diagnostics.boundary,
                classifier: d.diagnostics.classifier,
                tail_fit,
                identity: Some(identity),
            },
            version: VERSION.to_string(),
            config,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let d = &self.decomposition;
        let _ = writeln!(out, "source:       {} ({:?}, {} samples)", self.input.source, self.input.kind, self.input.samples);
        let _ = writeln!(out, "tail:         {} [{:?}]", self.input.tail, self.input.tail_source);
        let _ = writeln!(out, "price:        {}", d.price);
        let _ = writeln!(out, "fundamental:  {}", d.fundamental);
        let _ = writeln!(out, "bubble:       {}", d.bubble);
        if let Some(b) = d.interpreted_component {
            let _ = writeln!(out, "interpreted component (not a rational bubble): {b}");
        }
        let _ = writeln!(out, "verdict:      {}{}", d.verdict, if self.diagnostics.boundary { " (boundary)" } else { "" });
        if let Some(v) = &self.diagnostics.classifier {
            let _ = writeln!(out, "rationale:    {}", v.rationale);
        }
        for c in &self.diagnostics.checkpoints {
            let _ = writeln!(out, "partial sum at t = {}: {}", c.t, c.partial_sum);
        }
        if let Some(fit) = &self.diagnostics.tail_fit {
            let _ = writeln!(out, "suggested tail: {} (window {}..={}, {} points)", fit.suggestion, fit.window.0, fit.window.1, fit.points);
        }
        if let Some(id) = &self.diagnostics.identity {
            let _ = writeln!(out, "identity gap: {:e}", id.relative_gap());
        }
        out
    }
}

/// Outcome of `check-identity`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub source: String,
    pub kind: PathKind,
    /// Largest `|P_0 - sum q D - q_T P_T| / P_0` over all horizons (discrete).
    pub telescoping_error_max: Option<f64>,
    pub no_arbitrage_residual_max: Option<f64>,
    /// Both sides of the exponential identity at the horizon (continuous).
    pub identity: Option<DeflatedPriceIdentity>,
    pub relative_gap: Option<f64>,
    pub jumps: usize,
    pub tol: f64,
    pub holds: bool,
    pub version: String,
}

impl IdentityReport {
    /// `supplied` replaces the implied deflators when the input carried its own.
    pub fn discrete(source: &str, path: &DiscretePath, supplied: Option<Deflators>, tol: f64) -> Result<Self> {
        let deflators = match supplied {
            Some(q) => q,
            None => implied_deflators(path)?,
        };
        let (_, residual) = no_arbitrage_residual(path, &deflators)?;
        let cumulative = cumulative_present_values(path, &deflators)?;
        let p0 = path.price(0);
        let worst = (1..=path.horizon())
            .map(|t| (p0 - cumulative[t] - deflators.deflated_price(path, t)).abs() / p0)
            .fold(0.0, f64::max);
        Ok(IdentityReport {
            source: source.to_string(),
            kind: PathKind::Discrete,
            telescoping_error_max: Some(worst),
            no_arbitrage_residual_max: Some(residual),
            identity: None,
            relative_gap: None,
            jumps: 0,
            tol,
            holds: worst <= tol && residual <= tol,
            version: VERSION.to_string(),
        })
    }

    pub fn continuous(source: &str, input: &ContinuousInput, side: JumpPriceSide, tol: f64) -> Result<Self> {
        let path = &input.path;
        let identity = deflated_price_identity_with(path, path.horizon(), side)?;
        let gap = identity.relative_gap();
        Ok(IdentityReport {
            source: source.to_string(),
            kind: PathKind::Continuous,
            telescoping_error_max: None,
            no_arbitrage_residual_max: None,
            identity: Some(identity),
            relative_gap: Some(gap),
            jumps: path.dividends().jumps().len(),
            tol,
            holds: gap <= tol,
            version: VERSION.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "source: {} ({:?})", self.source, self.kind);
        if let Some(e) = self.telescoping_error_max {
            let _ = writeln!(out, "max telescoping error: {e:e}");
        }
        if let Some(r) = self.no_arbitrage_residual_max {
            let _ = writeln!(out, "max no-arbitrage residual: {r:e}");
        }
        if let Some(id) = &self.identity {
            let _ = writeln!(out, "lhs = {}, rhs = {}, gap = {:e}, jumps = {}", id.lhs, id.rhs, id.relative_gap(), self.jumps);
        }
        let _ = writeln!(out, "{} (tol {:e})", if self.holds { "identity holds" } else { "identity FAILS" }, self.tol);
        out
    }
}
