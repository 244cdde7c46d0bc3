//! Command-line front end: path ingestion, scenario generation and reports.

pub mod cli;
pub mod csv_path;
pub mod json_path;
pub mod report;

pub use cli::{run, Cli, EXIT_BUBBLE, EXIT_INPUT, EXIT_INTERNAL, EXIT_NO_BUBBLE};
pub use csv_path::{parse_path_csv, read_csv_table, write_path_csv, CsvTable};
pub use json_path::{parse_continuous_json, parse_scenario_json, write_continuous_json, ContinuousInput, ContinuousPathDoc};
pub use report::{AnalysisReport, IdentityReport, ReportConfig, TailSource};
