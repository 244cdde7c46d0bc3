//! The `bubblekit` command line.
//!
//! Exit codes: 0 no bubble, 10 bubble, 2 invalid input, 1 internal error.
//! `check-identity` exits 0 when the identity holds and 1 when it does not.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::characterization::Classification;
use crate::continuous_time::{discretize, JumpPriceSide};
use crate::error::{BubbleError, Result};
use crate::models::{gen_constant, gen_convergent_yield, gen_gordon, gen_miao_wang, gen_money, MiaoWangScenario};
use crate::series_core::{Deflators, DEFAULT_NO_ARBITRAGE_TOL};
use crate::tail::{TailDeclaration, TailModel};
use crate::tail_fit::{suggest_tail, TailFit};

use super::csv_path::{read_csv_table, write_path_csv, CsvTable, TailOrigin};
use super::json_path::{parse_scenario_json, read_continuous_doc, write_continuous_json, ContinuousPathDoc};
use super::report::{AnalysisReport, IdentityReport, ReportConfig, TailSource};

pub const EXIT_NO_BUBBLE: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUBBLE: i32 = 10;

/// Default horizon for generated discrete paths.
pub const DEFAULT_GENERATED_PERIODS: usize = 500;

/// Default tolerance for the exponential identity on continuous paths.
pub const DEFAULT_CONTINUOUS_IDENTITY_TOL: f64 = 1e-6;

const STDIN_NAME: &str = "-";

#[derive(Debug, Parser)]
#[command(name = "bubblekit", version, about = "Fundamental value and rational-bubble analysis of price paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose price paths into fundamental value and bubble.
    Analyze(AnalyzeArgs),
    /// Write a path from one of the built-in economies to standard output.
    Generate(GenerateArgs),
    /// Check the present-value identities on a path.
    CheckIdentity(CheckIdentityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Right,
    Left,
}

impl From<Side> for JumpPriceSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Right => JumpPriceSide::Right,
            Side::Left => JumpPriceSide::Left,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// CSV (discrete) or JSON (continuous) files; `-` or nothing reads standard input.
    pub files: Vec<PathBuf>,
    /// Tail model, e.g. `constant-levels`, `geometric-yield:a=0.5,rho=0.9`.
    #[arg(long)]
    pub tail: Option<TailDeclaration>,
    /// Fit a tail model to the end of the sample and report it.
    #[arg(long)]
    pub tail_suggest: bool,
    /// Use the fitted tail model.
    #[arg(long, requires = "tail_suggest", conflicts_with = "tail")]
    pub accept_suggestion: bool,
    /// Analyse only the first N periods (time units for continuous paths).
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Tolerance for supplied deflators.
    #[arg(long, env = "BUBBLEKIT_TOL")]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Price used to value a dividend jump.
    #[arg(long, value_enum, default_value_t = Side::Right)]
    pub jump_side: Side,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub model: Model,
    /// Number of periods (discrete) or time span (continuous).
    #[arg(long, global = true)]
    pub horizon: Option<f64>,
    /// Grid step of continuous paths.
    #[arg(long, global = true)]
    pub grid_step: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Model {
    /// Worthless money: constant price, no dividends.
    Money {
        #[arg(long = "P0")]
        p0: f64,
    },
    /// Constant price and dividend.
    Constant {
        #[arg(long = "P")]
        price: f64,
        #[arg(long = "D")]
        dividend: f64,
    },
    /// Gordon growth with dividend growth g and gross rate R.
    Gordon {
        #[arg(long = "D0")]
        d0: f64,
        #[arg(long)]
        g: f64,
        #[arg(long = "R")]
        r: f64,
    },
    /// Unit price with dividends alpha * rho^t.
    ConvergentYield {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rho: f64,
    },
    /// Continuous firm path converging to the steady state Q K + Bmw.
    MiaoWang(MiaoWangArgs),
}

#[derive(Debug, Args)]
pub struct MiaoWangArgs {
    /// Scenario JSON document; flags override its fields.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long = "Q", required_unless_present = "scenario")]
    pub q: Option<f64>,
    #[arg(long = "K", required_unless_present = "scenario")]
    pub k: Option<f64>,
    #[arg(long = "Bmw", required_unless_present = "scenario")]
    pub b_mw: Option<f64>,
    #[arg(long = "D", required_unless_present = "scenario")]
    pub dividend: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub initial_price: Option<f64>,
    #[arg(long)]
    pub initial_dividend: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CheckIdentityArgs {
    /// Path file; `-` or nothing reads standard input.
    pub file: Option<PathBuf>,
    /// Maximum error accepted (default 1e-9 discrete, 1e-6 continuous).
    #[arg(long, env = "BUBBLEKIT_TOL")]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Side::Right)]
    pub jump_side: Side,
}

fn exit_for_error(e: &BubbleError) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_INTERNAL
    }
}

fn exit_for_verdict(v: Classification) -> i32 {
    match v {
        Classification::Bubble => EXIT_BUBBLE,
        Classification::NoBubble => EXIT_NO_BUBBLE,
    }
}

/// Internal errors outrank input errors, which outrank a bubble verdict.
fn combine_exit(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        EXIT_INTERNAL => 3,
        EXIT_INPUT => 2,
        EXIT_BUBBLE => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn check_tol(tol: f64) -> Result<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(BubbleError::InvalidParameter(format!("tolerance must be a positive number, got {tol}")))
    }
}

fn is_json(bytes: &[u8]) -> bool {
    bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{')
}

struct Input {
    name: String,
    bytes: Result<Vec<u8>>,
}

fn gather_inputs(files: &[PathBuf], stdin: &mut dyn Read) -> Vec<Input> {
    let mut stdin_bytes: Option<Result<Vec<u8>>> = None;
    let mut read_stdin = || {
        stdin_bytes
            .get_or_insert_with(|| {
                let mut buf = Vec::new();
                stdin.read_to_end(&mut buf).map(|_| buf).map_err(|e| BubbleError::Io {
                    path: STDIN_NAME.into(),
                    message: e.to_string(),
                })
            })
            .clone()
    };
    if files.is_empty() {
        return vec![Input {
            name: STDIN_NAME.into(),
            bytes: read_stdin(),
        }];
    }
    let stdin_copy = files.iter().any(|f| f.as_os_str() == STDIN_NAME).then(&mut read_stdin);
    files
        .par_iter()
        .map(|file| {
            let name = file.display().to_string();
            let bytes = if file.as_os_str() == STDIN_NAME {
                stdin_copy.clone().expect("standard input was read")
            } else {
                std::fs::read(file).map_err(|e| BubbleError::Io {
                    path: name.clone(),
                    message: e.to_string(),
                })
            };
            Input { name, bytes }
        })
        .collect()
}

fn periods(horizon: f64) -> Result<usize> {
    if horizon.is_finite() && horizon >= 1.0 && horizon.fract() == 0.0 {
        Ok(horizon as usize)
    } else {
        Err(BubbleError::InvalidParameter(format!(
            "horizon of a discrete path must be a positive integer, got {horizon}"
        )))
    }
}

fn truncate_table(mut table: CsvTable, horizon: f64) -> Result<CsvTable> {
    let n = periods(horizon)?;
    if n > table.dividends.len() {
        return Err(BubbleError::OutOfRange {
            what: "horizon",
            value: horizon,
            min: 1.0,
            max: table.dividends.len() as f64,
        });
    }
    table.prices.truncate(n + 1);
    table.dividends.truncate(n);
    table.lines.truncate(n + 1);
    if let Some(q) = table.deflators.as_mut() {
        q.truncate(n + 1);
    }
    Ok(table)
}

fn truncate_doc(mut doc: ContinuousPathDoc, horizon: f64) -> Result<ContinuousPathDoc> {
    let out_of_range = || BubbleError::OutOfRange {
        what: "horizon",
        value: horizon,
        min: doc.grid_step,
        max: doc.horizon,
    };
    if !(horizon.is_finite() && horizon > 0.0 && doc.grid_step > 0.0) {
        return Err(out_of_range());
    }
    let cells = (horizon / doc.grid_step).round() as usize;
    if cells == 0 || cells + 1 > doc.prices.len() || cells + 1 > doc.density.len() {
        return Err(out_of_range());
    }
    doc.prices.truncate(cells + 1);
    doc.density.truncate(cells + 1);
    doc.jumps.retain(|j| j.t <= horizon * (1.0 + 1e-9));
    doc.horizon = horizon;
    Ok(doc)
}

/// Placeholder tail for steps that never look at the tail.
const UNUSED_TAIL: TailModel = TailModel::DeclaredDivergent;

fn fit_or_note(path: Result<crate::path::DiscretePath>, notes: &mut Vec<String>, required: bool) -> Result<Option<TailFit>> {
    match path.and_then(|p| suggest_tail(&p)) {
        Ok(fit) => {
            notes.push(format!(
                "suggested tail: {} (fitted on t = {}..={}, residuals constant {:e}, geometric {:e}, power {:e})",
                fit.suggestion, fit.window.0, fit.window.1, fit.residuals.constant, fit.residuals.geometric, fit.residuals.power
            ));
            Ok(Some(fit))
        }
        Err(e) if required => Err(e),
        Err(e) => {
            notes.push(format!("no tail suggestion: {e}"));
            Ok(None)
        }
    }
}

fn analyze_bytes(name: &str, bytes: &[u8], args: &AnalyzeArgs, notes: &mut Vec<String>) -> Result<AnalysisReport> {
    let tol = check_tol(args.tol.unwrap_or(DEFAULT_NO_ARBITRAGE_TOL))?;
    let config = ReportConfig {
        tol,
        horizon: args.horizon,
        jump_side: args.jump_side.into(),
        tail_suggest: args.tail_suggest,
        accept_suggestion: args.accept_suggestion,
    };
    let missing = |notes: &mut Vec<String>, fit: &Option<TailFit>| {
        if let Some(fit) = fit {
            notes.push(format!("rerun with --tail {} or --accept-suggestion to use it", fit.suggestion));
        }
        BubbleError::MissingTail
    };

    if is_json(bytes) {
        let mut doc = read_continuous_doc(bytes)?;
        if let Some(h) = args.horizon {
            doc = truncate_doc(doc, h)?;
        }
        let fit = if args.tail_suggest {
            let sampled = doc.clone().into_input(UNUSED_TAIL).and_then(|i| discretize(&i.path, 1.0));
            fit_or_note(sampled, notes, args.accept_suggestion)?
        } else {
            None
        };
        let (tail, source) = if args.accept_suggestion {
            (fit.as_ref().expect("fit is required when accepting").suggestion, TailSource::Suggestion)
        } else {
            let source = if args.tail.is_some() { TailSource::Flag } else { TailSource::Embedded };
            match doc.resolve_tail(args.tail.as_ref())? {
                Some(t) => (t, source),
                None => return Err(missing(notes, &fit)),
            }
        };
        let input = doc.into_input(tail)?;
        return AnalysisReport::continuous(name, &input, source, fit, config);
    }

    let mut table = read_csv_table(bytes)?;
    if let Some(h) = args.horizon {
        table = truncate_table(table, h)?;
    }
    let fit = if args.tail_suggest {
        fit_or_note(table.clone().into_path(UNUSED_TAIL, tol), notes, args.accept_suggestion)?
    } else {
        None
    };
    let (tail, source) = if args.accept_suggestion {
        (fit.as_ref().expect("fit is required when accepting").suggestion, TailSource::Suggestion)
    } else {
        match table.resolve_tail(args.tail.as_ref())? {
            Some((t, TailOrigin::Flag)) => (t, TailSource::Flag),
            Some((t, TailOrigin::Embedded)) => (t, TailSource::Embedded),
            None => return Err(missing(notes, &fit)),
        }
    };
    let path = table.into_path(tail, tol)?;
    AnalysisReport::discrete(name, &path, source, fit, config)
}

fn render(format: Format, json: impl FnOnce() -> String, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = json();
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn analyze(args: &AnalyzeArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let inputs = gather_inputs(&args.files, stdin);
    // Notes (tail suggestions) go to stderr ahead of each file's report.
    let results: Vec<(String, Vec<String>, Result<AnalysisReport>)> = inputs
        .into_par_iter()
        .map(|input| {
            let mut notes = Vec::new();
            let result = input
                .bytes
                .and_then(|bytes| analyze_bytes(&input.name, &bytes, args, &mut notes));
            (input.name, notes, result)
        })
        .collect();

    let mut code = EXIT_NO_BUBBLE;
    for (name, notes, result) in results {
        for note in notes {
            let _ = writeln!(stderr, "{name}: {note}");
        }
        match result {
            Ok(report) => {
                let _ = stdout.write_all(render(args.format, || report.to_json(), || report.to_text()).as_bytes());
                code = combine_exit(code, exit_for_verdict(report.decomposition.verdict));
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {name}: {e}");
                code = combine_exit(code, exit_for_error(&e));
            }
        }
    }
    code
}

fn generated_horizon(args: &GenerateArgs) -> Result<usize> {
    args.horizon.map_or(Ok(DEFAULT_GENERATED_PERIODS), periods)
}

fn miao_wang_scenario(args: &MiaoWangArgs, stdin: &mut dyn Read) -> Result<MiaoWangScenario> {
    let mut scenario = match &args.scenario {
        Some(file) => {
            let bytes = if file.as_os_str() == STDIN_NAME {
                let mut buf = Vec::new();
                stdin.read_to_end(&mut buf).map(|_| buf)
            } else {
                std::fs::read(file)
            }
            .map_err(|e| BubbleError::Io {
                path: file.display().to_string(),
                message: e.to_string(),
            })?;
            parse_scenario_json(&bytes)?
        }
        None => {
            let need = |v: Option<f64>| v.expect("clap enforces scenario parameters");
            MiaoWangScenario::new(need(args.q), need(args.k), need(args.b_mw), need(args.dividend))
        }
    };
    if args.scenario.is_some() {
        scenario.q = args.q.unwrap_or(scenario.q);
        scenario.k = args.k.unwrap_or(scenario.k);
        scenario.b_mw = args.b_mw.unwrap_or(scenario.b_mw);
        scenario.dividend = args.dividend.unwrap_or(scenario.dividend);
    }
    if let Some(l) = args.lambda {
        scenario.lambda = l;
    }
    if args.initial_price.is_some() {
        scenario.initial_price = args.initial_price;
    }
    if args.initial_dividend.is_some() {
        scenario.initial_dividend = args.initial_dividend;
    }
    Ok(scenario)
}

fn generate_text(args: &GenerateArgs, stdin: &mut dyn Read) -> Result<String> {
    if args.grid_step.is_some() && !matches!(args.model, Model::MiaoWang(_)) {
        return Err(BubbleError::InvalidParameter("--grid-step applies to continuous models only".into()));
    }
    let discrete = match &args.model {
        Model::Money { p0 } => gen_money(*p0, generated_horizon(args)?)?,
        Model::Constant { price, dividend } => gen_constant(*price, *dividend, generated_horizon(args)?)?,
        Model::Gordon { d0, g, r } => gen_gordon(*d0, *g, *r, generated_horizon(args)?)?,
        Model::ConvergentYield { alpha, rho } => gen_convergent_yield(*alpha, *rho, generated_horizon(args)?)?,
        Model::MiaoWang(mw) => {
            let mut scenario = miao_wang_scenario(mw, stdin)?;
            if let Some(h) = args.horizon {
                scenario.horizon = h;
            }
            if let Some(h) = args.grid_step {
                scenario.grid_step = h;
            }
            let path = gen_miao_wang(&scenario)?;
            let mut out = write_continuous_json(&path, Some(scenario));
            out.push('\n');
            return Ok(out);
        }
    };
    Ok(write_path_csv(&discrete))
}

fn generate(args: &GenerateArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match generate_text(args, stdin) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => EXIT_NO_BUBBLE,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                EXIT_INTERNAL
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_for_error(&e)
        }
    }
}

fn identity_report(name: &str, bytes: &[u8], args: &CheckIdentityArgs) -> Result<IdentityReport> {
    if is_json(bytes) {
        let tol = check_tol(args.tol.unwrap_or(DEFAULT_CONTINUOUS_IDENTITY_TOL))?;
        let doc = read_continuous_doc(bytes)?;
        let tail = doc.resolve_tail(None)?.unwrap_or(UNUSED_TAIL);
        let input = doc.into_input(tail)?;
        return IdentityReport::continuous(name, &input, args.jump_side.into(), tol);
    }
    let tol = check_tol(args.tol.unwrap_or(DEFAULT_NO_ARBITRAGE_TOL))?;
    let mut table = read_csv_table(bytes)?;
    let supplied = table.deflators.take().map(|q| Deflators::from_linear(&q)).transpose()?;
    let tail = table.resolve_tail(None)?.map_or(UNUSED_TAIL, |(t, _)| t);
    let path = table.into_path(tail, tol)?;
    IdentityReport::discrete(name, &path, supplied, tol)
}

fn check_identity(args: &CheckIdentityArgs, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let files: Vec<PathBuf> = args.file.iter().cloned().collect();
    let input = gather_inputs(&files, stdin).remove(0);
    match input.bytes.and_then(|b| identity_report(&input.name, &b, args)) {
        Ok(report) => {
            let _ = stdout.write_all(render(args.format, || report.to_json(), || report.to_text()).as_bytes());
            if report.holds {
                EXIT_NO_BUBBLE
            } else {
                EXIT_INTERNAL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", input.name);
            exit_for_error(&e)
        }
    }
}

/// Parse `args` (program name first) and execute; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_NO_BUBBLE };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match &cli.command {
        Command::Analyze(a) => analyze(a, stdin, stdout, stderr),
        Command::Generate(g) => generate(g, stdin, stdout, stderr),
        Command::CheckIdentity(c) => check_identity(c, stdin, stdout, stderr),
    }
}
