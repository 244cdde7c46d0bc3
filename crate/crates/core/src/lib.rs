//! Present-value decomposition of asset price paths into a fundamental
//! value and a rational bubble, with a dividend-yield test for whether a
//! bubble can exist at all.
//!
//! ```
//! use bubblekit::{decompose, gen_constant, Classification};
//!
//! let path = gen_constant(100.0, 5.0, 500).unwrap();
//! let d = decompose(&path).unwrap();
//! assert_eq!(d.verdict, Classification::NoBubble);
//! assert!((d.fundamental - 100.0).abs() < 1e-9);
//! ```

pub mod characterization;
pub mod cli_io;
pub mod continuous_time;
pub mod error;
pub mod models;
pub mod numerics;
pub mod path;
pub mod series_core;
pub mod tail;
pub mod tail_fit;

pub use characterization::{classify_tail, dividend_yield_series, montrucchio_discrete, Classification, TailClass, Verdict};
pub use continuous_time::{
    classify_continuous, decompose_continuous, deflated_price_identity, discretize, integrate_df_over_p,
    montrucchio_continuous, ContinuousPath, CumulativeDividend, Jump, JumpPriceSide,
};
pub use error::{BubbleError, Result};
pub use models::{gen_constant, gen_convergent_yield, gen_gordon, gen_miao_wang, gen_money, MiaoWangScenario};
pub use numerics::{compensated_sum, CompensatedSum};
pub use path::DiscretePath;
pub use series_core::{
    bubble_component, check_no_arbitrage, decompose, ensemble_decompose, fundamental_value, implied_deflators,
    partial_value, tvc_holds, Decomposition, Deflators, EPS_BUBBLE,
};
pub use tail::{TailDeclaration, TailModel};
pub use tail_fit::{suggest_tail, TailFit};
