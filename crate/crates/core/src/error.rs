use thiserror::Error;

use crate::characterization::Classification;

pub type Result<T> = std::result::Result<T, BubbleError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BubbleError {
    #[error("P[{index}] + D[{index}] is zero; the deflator recursion is undefined")]
    ZeroDenominator { index: usize },

    #[error("initial price P[0] is zero; deflators cannot be normalised")]
    ZeroInitialPrice,

    #[error("horizon mismatch: path has {path} periods, deflators cover {deflators}")]
    HorizonMismatch { path: usize, deflators: usize },

    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("tail model {0} has no closed-form present value")]
    TailUnsupported(String),

    #[error("declared tail present value {tail_sum} exceeds the deflated terminal price {available}")]
    TailExceedsPrice { tail_sum: f64, available: f64 },

    #[error("bubble component {bubble} contradicts the yield classifier verdict {classifier:?}")]
    InconsistentClassification {
        bubble: f64,
        classifier: Classification,
    },

    #[error("cannot aggregate an empty ensemble")]
    EmptyEnsemble,

    #[error("ensemble member {index} is invalid: {reason}")]
    InvalidMember { index: usize, reason: String },

    #[error("price at index {index} is not strictly positive")]
    NonPositivePrice { index: usize },

    #[error("step {step} is not a positive integer multiple of the grid step {grid_step}")]
    StepMismatch { step: f64, grid_step: f64 },

    #[error("growth factor g = {g} must be below the gross rate R = {r}")]
    ParameterOrder { g: f64, r: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("validation error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Validation { line: Option<u64>, message: String },

    #[error("supplied deflators violate the no-arbitrage recursion at t = {index} (relative residual {residual:e})")]
    Arbitrage { index: usize, residual: f64 },

    #[error("no tail model declared; pass --tail <spec> (or --tail-suggest --accept-suggestion)")]
    MissingTail,

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl BubbleError {
    /// True for errors caused by bad input rather than by the analysis itself.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            BubbleError::InconsistentClassification { .. } | BubbleError::TailUnsupported(_)
        )
    }
}
