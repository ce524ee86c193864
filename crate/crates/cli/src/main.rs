//! `struve`: evaluate special functions and verify integral identities.
//!
//! Exit codes: 0 success or all cases pass, 1 some case failed, 2 usage,
//! parse or domain error, 3 series or quadrature did not converge in `eval`.

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod casefile;
mod eval;
mod grid;
mod literal;
mod output;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use struve_core::identities::Variant;
use struve_core::quadrature::QuadControl;
use struve_core::series::SeriesControl;

use crate::casefile::{parse_case_file, Controls};
use crate::report::{run_cases, write_csv, write_json, Settings};

const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "struve", version, about = "Generalized Struve series, Lauricella functions and integral identity checks")]
struct Cli {
    /// Relative tolerance for comparing the two sides of an identity
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Relative tolerance for quadrature
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    /// Term (or shell) budget for series evaluation
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    /// Write results here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report format for `verify`
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for `verify` (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function, e.g. `eval struve_w p=0 b=0 c=0 z=2`
    Eval {
        /// struve_h, struve_l, struve_w, fox_wright, pfq, lauricella or oberhettinger
        function: String,
        /// Parameters as key=value
        params: Vec<String>,
    },
    /// Verify every case in a case file
    Verify {
        input: PathBuf,
    },
    /// Generate a case file from parameter values and start:end:step ranges
    Grid {
        #[arg(long)]
        variant: String,
        /// Number of variables (default: length of the first --p vector)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Comma-separated components; `;` separates alternative vectors
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Comma-separated components; `;` separates alternative vectors
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => File::create(p)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn series_control(rel_tol: Option<f64>, max_terms: Option<usize>) -> Result<SeriesControl, Failure> {
    let mut ctl = SeriesControl::default();
    if let Some(t) = rel_tol {
        ctl = ctl.with_rel_tol(t).map_err(|e| Failure::usage(format!("series tolerance: {e}")))?;
    }
    if let Some(m) = max_terms {
        ctl = ctl.with_max_terms(m).map_err(|e| Failure::usage(format!("--max-terms: {e}")))?;
    }
    Ok(ctl)
}

/// Command-line flags win over file controls, which win over defaults.
fn settings(cli: &Cli, file: &Controls) -> Result<Settings, Failure> {
    let mut quad = QuadControl::default();
    if let Some(panels) = file.max_panels {
        quad = QuadControl::new(quad.rel_tol, quad.abs_tol, panels)
            .map_err(|e| Failure::usage(format!("controls.max_panels: {e}")))?;
    }
    if let Some(t) = cli.quad_tol.or(file.quad_tol) {
        quad = quad.with_rel_tol(t).map_err(|e| Failure::usage(format!("--quad-tol: {e}")))?;
    }
    let series = series_control(file.series_tol, cli.max_terms.or(file.max_terms))?;
    let tol = cli.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0) {
        return Err(Failure::usage("--tol: must be positive"));
    }
    if cli.jobs == Some(0) {
        return Err(Failure::usage("--jobs: must be at least 1"));
    }
    Ok(Settings {
        quad,
        series,
        tol,
        jobs: cli.jobs,
    })
}

fn cmd_eval(cli: &Cli, function: &str, params: &[String]) -> Result<u8, Failure> {
    let ctl = series_control(None, cli.max_terms)?;
    let out = eval::run(function, params, &ctl).map_err(|e| Failure {
        code: e.exit_code as u8,
        message: e.message,
    })?;
    let mut w = open_output(cli.output.as_ref())?;
    w.write_all(out.render().as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Failure::usage(format!("write failed: {e}")))?;
    Ok(0)
}

fn cmd_verify(cli: &Cli, input: &PathBuf) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", input.display())))?;
    let file = parse_case_file(&text).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let settings = settings(cli, &file.controls)?;
    let report = run_cases(&file.cases, &settings).map_err(Failure::usage)?;
    let mut w = open_output(cli.output.as_ref())?;
    match cli.format {
        Format::Json => write_json(&report, &mut w),
        Format::Csv => write_csv(&report, &mut w),
    }
    .and_then(|_| w.flush().map_err(|e| e.to_string()))
    .map_err(|e| Failure::usage(format!("write failed: {e}")))?;
    let s = &report.summary;
    eprintln!("{} cases: {} passed, {} failed", s.total, s.passed, s.failed);
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn cmd_grid(cli: &Cli, spec: grid::GridSpec) -> Result<u8, Failure> {
    let g = grid::build(&spec).map_err(Failure::usage)?;
    if g.skipped > 0 {
        eprintln!(
            "warning: skipped {} parameter combinations that violate the {} conditions",
            g.skipped,
            spec.variant.name()
        );
    }
    if g.cases.cases.is_empty() {
        eprintln!("warning: no valid cases");
    }
    let mut w = open_output(cli.output.as_ref())?;
    serde_json::to_writer_pretty(&mut w, &g.cases)
        .map_err(|e| e.to_string())
        .and_then(|_| writeln!(w).and_then(|_| w.flush()).map_err(|e| e.to_string()))
        .map_err(|e| Failure::usage(format!("write failed: {e}")))?;
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Eval { function, params } => cmd_eval(cli, function, params),
        Command::Verify { input } => cmd_verify(cli, input),
        Command::Grid {
            variant,
            n,
            a,
            lambda,
            mu,
            b,
            c,
            p,
            y,
        } => {
            let variant: Variant = variant
                .parse()
                .map_err(|e| Failure::usage(format!("--variant: {e}")))?;
            let spec = grid::GridSpec {
                variant,
                n: *n,
                a: a.clone(),
                lambda: lambda.clone(),
                mu: mu.clone(),
                b: b.clone(),
                c: c.clone(),
                p: p.clone(),
                y: y.clone(),
            };
            cmd_grid(cli, spec)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
