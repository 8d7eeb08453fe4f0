//! Command runners behind the `qfit` binary.
//!
//! All arithmetic lives in the library modules; this layer resolves
//! configuration, invokes them, and formats the results. Output is fully
//! deterministic: identical configurations produce identical bytes.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use crate::curve::{self, Curve};
use crate::derivation;
use crate::error::Error;
use crate::logquad;
use crate::tuner;
use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Bounds,
    Derive,
    Tune,
    Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Table,
}

/// Resolved invocation: one command plus every knob it may consult.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Matching horizon; required by `derive` and `profile`.
    pub t: Option<f64>,
    pub x_max: f64,
    pub step: f64,
    /// Sample count for `profile`.
    pub n: usize,
    pub output_path: Option<PathBuf>,
    /// Defaults to CSV for `profile` and a table elsewhere.
    pub format: Option<OutputFormat>,
    pub t_lo: f64,
    pub t_hi: f64,
    pub tol_t: f64,
    /// Restrict `bounds` to one registered curve.
    pub only: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            t: None,
            x_max: 10.0,
            step: 1e-3,
            n: 1001,
            output_path: None,
            format: None,
            t_lo: 0.5,
            t_hi: 3.0,
            tol_t: 1e-4,
            only: None,
        }
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}

/// Errors surfaced to the binary, already sorted by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or arguments; exit code 2.
    Usage(String),
    /// Filesystem failure; exit code 3.
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

/// Whether the command's checks all held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    ViolationFound,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Verified => 0,
            Outcome::ViolationFound => 1,
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Bounds => cmd_bounds(cfg, out),
        Command::Derive => cmd_derive(cfg, out),
        Command::Tune => cmd_tune(cfg, out),
        Command::Profile => cmd_profile(cfg, out),
    }
}

fn require_t(cfg: &RunConfig) -> Result<f64, CliError> {
    cfg.t
        .ok_or_else(|| CliError::Usage("this command requires --t <horizon>".to_string()))
}

fn cmd_bounds(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let curves: Vec<Box<dyn Curve>> = match &cfg.only {
        Some(name) => vec![curve::builtin(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown curve {name:?}; registered: {}",
                curve::BUILTIN_NAMES.join(", ")
            ))
        })?],
        None => curve::builtins(),
    };
    let report = verify::verify_bounds(&curves, cfg.x_max, cfg.step)?;

    let rendered = match cfg.format_or(OutputFormat::Table) {
        OutputFormat::Table => render_bounds_table(&report),
        OutputFormat::Csv => render_bounds_csv(&report),
    };
    out.write_all(rendered.as_bytes())?;

    if report.passed() {
        Ok(Outcome::Verified)
    } else {
        Ok(Outcome::ViolationFound)
    }
}

fn cmd_derive(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let t = require_t(cfg)?;
    let derived = derivation::build_approx(t)?;
    let report = tuner::sup_abs_error(&derived.params, cfg.x_max, cfg.step)?;

    let mut s = String::new();
    match cfg.format_or(OutputFormat::Table) {
        OutputFormat::Table => {
            let _ = writeln!(s, "derived parameters at t = {t}");
            let _ = writeln!(s, "a = {}", sig12(derived.a_star));
            let _ = writeln!(s, "b = {}", sig12(derived.b_star));
            let _ = writeln!(s, "c = {} (ln 2)", sig12(derived.params.c()));
            let _ = writeln!(
                s,
                "sup |Q - Qhat| on [0, {}] = {} at x = {}",
                cfg.x_max,
                report.max_abs_err,
                report.argmax_x
            );
            let _ = writeln!(s, "tail certified: {}", report.tail_certified);
        }
        OutputFormat::Csv => {
            let _ = writeln!(s, "key,value");
            let _ = writeln!(s, "t,{t}");
            let _ = writeln!(s, "a,{}", sig12(derived.a_star));
            let _ = writeln!(s, "b,{}", sig12(derived.b_star));
            let _ = writeln!(s, "c,{}", sig12(derived.params.c()));
            let _ = writeln!(s, "sup_abs_err,{}", report.max_abs_err);
            let _ = writeln!(s, "argmax_x,{}", report.argmax_x);
            let _ = writeln!(s, "tail_certified,{}", report.tail_certified);
        }
    }
    out.write_all(s.as_bytes())?;
    Ok(Outcome::Verified)
}

fn cmd_tune(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let result = tuner::optimize_t(cfg.t_lo, cfg.t_hi, cfg.tol_t)?;

    let mut s = String::new();
    match cfg.format_or(OutputFormat::Table) {
        OutputFormat::Table => {
            let _ = writeln!(
                s,
                "minimax horizon search on [{}, {}], tol {}",
                cfg.t_lo, cfg.t_hi, cfg.tol_t
            );
            let _ = writeln!(s, "t_opt = {}", result.t_opt);
            let _ = writeln!(s, "a = {}", sig12(result.derived.a_star));
            let _ = writeln!(s, "b = {}", sig12(result.derived.b_star));
            let _ = writeln!(s, "c = {} (ln 2)", sig12(result.derived.params.c()));
            let _ = writeln!(
                s,
                "minimax |Q - Qhat| = {} at x = {}",
                result.report.max_abs_err, result.report.argmax_x
            );
            let _ = writeln!(s, "search trace length = {}", result.search_trace.len());
            if result.multimodal_warning {
                let _ = writeln!(s, "warning: prescan saw multiple local minima");
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(s, "key,value");
            let _ = writeln!(s, "t_opt,{}", result.t_opt);
            let _ = writeln!(s, "a,{}", sig12(result.derived.a_star));
            let _ = writeln!(s, "b,{}", sig12(result.derived.b_star));
            let _ = writeln!(s, "c,{}", sig12(result.derived.params.c()));
            let _ = writeln!(s, "minimax_err,{}", result.report.max_abs_err);
            let _ = writeln!(s, "argmax_x,{}", result.report.argmax_x);
            let _ = writeln!(s, "trace_len,{}", result.search_trace.len());
            let _ = writeln!(s, "multimodal_warning,{}", result.multimodal_warning);
        }
    }
    out.write_all(s.as_bytes())?;
    Ok(Outcome::Verified)
}

/// One fully assembled profile row, including the comparison bounds.
#[derive(Debug, Clone, Copy)]
pub struct FullProfileRow {
    pub x: f64,
    pub q_ref: f64,
    pub q_hat: f64,
    pub err_signed: f64,
    pub lb_thm1: f64,
    pub ub_thm1: f64,
    pub chernoff: f64,
}

/// Assemble the profile emitted by the `profile` command.
pub fn profile_rows(t: f64, x_max: f64, n: usize) -> Result<Vec<FullProfileRow>, Error> {
    let derived = derivation::build_approx(t)?;
    let rows = tuner::error_profile(&derived.params, x_max, n)?;
    let lower = logquad::thm1_lower();
    let upper = logquad::thm1_upper();
    let chern = logquad::chernoff();
    rows.into_iter()
        .map(|r| {
            Ok(FullProfileRow {
                x: r.x,
                q_ref: r.q_ref,
                q_hat: r.q_hat,
                err_signed: r.err_signed,
                lb_thm1: lower.eval(r.x)?,
                ub_thm1: upper.eval(r.x)?,
                chernoff: chern.eval(r.x)?,
            })
        })
        .collect()
}

/// Render the profile CSV: UTF-8, LF line endings, shortest-roundtrip
/// decimal numbers, no trailing separator.
pub fn render_profile_csv(rows: &[FullProfileRow]) -> String {
    let mut s = String::with_capacity(rows.len() * 64 + 64);
    s.push_str("x,q_ref,q_hat,err_signed,lb_thm1,ub_thm1,chernoff\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.x, r.q_ref, r.q_hat, r.err_signed, r.lb_thm1, r.ub_thm1, r.chernoff
        );
    }
    s
}

fn render_profile_table(rows: &[FullProfileRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>10}  {:>24}  {:>24}  {:>24}",
        "x", "q_ref", "q_hat", "err_signed"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>10}  {:>24}  {:>24}  {:>24}",
            r.x,
            format!("{:e}", r.q_ref),
            format!("{:e}", r.q_hat),
            format!("{:e}", r.err_signed)
        );
    }
    s
}

fn cmd_profile(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let t = require_t(cfg)?;
    let rows = profile_rows(t, cfg.x_max, cfg.n)?;
    let rendered = match cfg.format_or(OutputFormat::Csv) {
        OutputFormat::Csv => render_profile_csv(&rows),
        OutputFormat::Table => render_profile_table(&rows),
    };
    match &cfg.output_path {
        Some(path) => std::fs::write(path, rendered.as_bytes())?,
        None => out.write_all(rendered.as_bytes())?,
    }
    Ok(Outcome::Verified)
}

fn render_bounds_table(report: &verify::BoundsReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "bound verification on [0, {}] step {} plus log tail to {}",
        report.x_max,
        report.step,
        verify::TAIL_X_END
    );
    let _ = writeln!(
        s,
        "{:<12} {:<7} {:>13} {:>9} {:>23} {:>9}  tail",
        "curve", "side", "max_violation", "at_x", "max_gap", "at_x"
    );
    for c in &report.curves {
        let _ = writeln!(
            s,
            "{:<12} {:<7} {:>13e} {:>9.4} {:>23e} {:>9.4}  {}",
            c.name,
            c.side.as_str(),
            c.max_violation,
            c.violation_x,
            c.max_gap,
            c.gap_x,
            if c.tail_ok { "ok" } else { "VIOLATED" }
        );
    }
    let _ = writeln!(s, "sample gaps (curve - Q):");
    for c in &report.curves {
        let gaps: Vec<String> = c
            .sample_gaps
            .iter()
            .map(|(x, g)| format!("x={x}: {g:e}"))
            .collect();
        let _ = writeln!(s, "  {:<12} {}", c.name, gaps.join("  "));
    }
    let r = &report.residuals;
    let _ = writeln!(
        s,
        "residual-lower min {:e} at x = {} (slack {:e})",
        r.lower_min,
        r.lower_min_x,
        verify::RESIDUAL_SLACK
    );
    let _ = writeln!(
        s,
        "residual-upper max {:e} at x = {} (slack {:e})",
        r.upper_max,
        r.upper_max_x,
        verify::RESIDUAL_SLACK
    );
    let _ = writeln!(
        s,
        "substitution identity max {:e} at x = {} (tol {:e})",
        r.identity_max,
        r.identity_max_x,
        verify::IDENTITY_SLACK
    );
    match report.first_violation() {
        None => {
            let _ = writeln!(s, "result: verified");
        }
        Some((name, x)) => {
            let _ = writeln!(s, "result: VIOLATION of {name} at x = {x}");
        }
    }
    s
}

fn render_bounds_csv(report: &verify::BoundsReport) -> String {
    let mut s = String::new();
    s.push_str("check,side,max_violation,violation_x,max_gap,gap_x,ok\n");
    for c in &report.curves {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            c.name,
            c.side.as_str(),
            c.max_violation,
            c.violation_x,
            c.max_gap,
            c.gap_x,
            c.passed()
        );
    }
    let r = &report.residuals;
    let _ = writeln!(
        s,
        "residual-lower,residual,{},{},{},{},{}",
        (-r.lower_min).max(0.0),
        r.lower_min_x,
        r.lower_min,
        r.lower_min_x,
        r.lower_min >= -verify::RESIDUAL_SLACK
    );
    let _ = writeln!(
        s,
        "residual-upper,residual,{},{},{},{},{}",
        r.upper_max.max(0.0),
        r.upper_max_x,
        r.upper_max,
        r.upper_max_x,
        r.upper_max <= verify::RESIDUAL_SLACK
    );
    let _ = writeln!(
        s,
        "substitution-identity,residual,{},{},{},{},{}",
        r.identity_max,
        r.identity_max_x,
        r.identity_max,
        r.identity_max_x,
        r.identity_max <= verify::IDENTITY_SLACK
    );
    s
}

/// Twelve significant digits.
fn sig12(v: f64) -> String {
    format!("{v:.11e}")
}
