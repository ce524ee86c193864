//! Running case files and writing run reports.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use struve_core::identities::{verify_case, VerificationReport};
use struve_core::quadrature::QuadControl;
use struve_core::series::SeriesControl;

use crate::casefile::{CaseOut, CaseRecord};
use crate::output::{ComplexOut, Num};

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub quad: QuadControl,
    pub series: SeriesControl,
    pub tol: f64,
    pub jobs: Option<usize>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum CaseField {
    Parsed(CaseOut),
    /// Input record as given, for cases that never became valid.
    Raw(Value),
}

#[derive(Debug, Serialize)]
pub struct Diagnostics {
    pub quad_error_estimate: Option<Num>,
    pub quad_panels: Option<usize>,
    pub quad_cutoff_theta: Option<Num>,
    pub quad_converged: Option<bool>,
    pub series_shells: Option<usize>,
    pub series_tail_estimate: Option<Num>,
    pub series_rounding_estimate: Option<Num>,
}

#[derive(Debug, Serialize)]
pub struct CaseReport {
    pub case: CaseField,
    pub lhs: Option<ComplexOut>,
    pub rhs: Option<ComplexOut>,
    pub abs_err: Num,
    pub rel_err: Num,
    pub pass: bool,
    pub tolerance_used: Num,
    pub diagnostics: Diagnostics,
    pub wall_clock_s: Num,
    pub reason: Option<String>,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub timestamp: String,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

fn from_verification(r: VerificationReport, wall: f64) -> CaseReport {
    let diagnostics = Diagnostics {
        quad_error_estimate: r.lhs.map(|q| Num(q.error_estimate)),
        quad_panels: r.lhs.map(|q| q.panels_used),
        quad_cutoff_theta: r.lhs.map(|q| Num(q.cutoff_theta)),
        quad_converged: r.lhs.map(|q| q.converged),
        series_shells: r.rhs.map(|s| s.terms),
        series_tail_estimate: r.rhs.map(|s| Num(s.tail_estimate)),
        series_rounding_estimate: r.rhs.map(|s| Num(s.rounding_estimate)),
    };
    CaseReport {
        case: CaseField::Parsed(CaseOut::from(&r.case)),
        lhs: r.lhs.map(|q| q.value.into()),
        rhs: r.rhs.map(|s| s.value.into()),
        abs_err: Num(r.abs_err),
        rel_err: Num(r.rel_err),
        pass: r.pass,
        tolerance_used: Num(r.tolerance_used),
        diagnostics,
        wall_clock_s: Num(wall),
        reason: r.note,
    }
}

fn rejected(record: &CaseRecord, reason: &str, tol: f64) -> CaseReport {
    CaseReport {
        case: CaseField::Raw(record.raw.clone()),
        lhs: None,
        rhs: None,
        abs_err: Num(f64::NAN),
        rel_err: Num(f64::NAN),
        pass: false,
        tolerance_used: Num(tol),
        diagnostics: Diagnostics {
            quad_error_estimate: None,
            quad_panels: None,
            quad_cutoff_theta: None,
            quad_converged: None,
            series_shells: None,
            series_tail_estimate: None,
            series_rounding_estimate: None,
        },
        wall_clock_s: Num(0.0),
        reason: Some(reason.to_string()),
    }
}

fn run_one(record: &CaseRecord, s: &Settings) -> CaseReport {
    match &record.case {
        Ok(case) => {
            let start = Instant::now();
            let r = verify_case(case, &s.quad, &s.series, s.tol);
            from_verification(r, start.elapsed().as_secs_f64())
        }
        Err(reason) => rejected(record, reason, s.tol),
    }
}

/// Verifies every case, in parallel, keeping input order.
pub fn run_cases(records: &[CaseRecord], settings: &Settings) -> Result<RunReport, String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = settings.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| format!("cannot start worker pool: {e}"))?;
    let cases: Vec<CaseReport> =
        pool.install(|| records.par_iter().map(|r| run_one(r, settings)).collect());
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(RunReport {
        version: env!("CARGO_PKG_VERSION"),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        summary: Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        },
        cases,
    })
}

pub fn write_json(report: &RunReport, out: &mut dyn Write) -> Result<(), String> {
    serde_json::to_writer_pretty(&mut *out, report).map_err(|e| e.to_string())?;
    writeln!(out).map_err(|e| e.to_string())
}

fn sci(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

fn complex_cells(v: Option<&ComplexOut>) -> [String; 2] {
    match v {
        Some(z) => [sci(z.re.0), sci(z.im.0)],
        None => [String::new(), String::new()],
    }
}

fn case_cells(field: &CaseField) -> Vec<String> {
    match field {
        CaseField::Parsed(c) => {
            let join_c = |v: &[ComplexOut]| {
                v.iter()
                    .map(|z| format!("{}{:+}i", z.re.0, z.im.0))
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let mut row = vec![c.variant.to_string(), c.p.len().to_string(), sci(c.a.0)];
            for z in [&c.lambda, &c.mu, &c.b, &c.c] {
                row.extend(complex_cells(Some(z)));
            }
            row.push(join_c(&c.p));
            row.push(c.y.iter().map(|v| v.0.to_string()).collect::<Vec<_>>().join(";"));
            row
        }
        CaseField::Raw(v) => {
            let mut row = vec![
                v.get("variant").and_then(Value::as_str).unwrap_or("").to_string(),
            ];
            row.resize(13, String::new());
            row
        }
    }
}

/// One row per case; complex numbers split into re/im columns.
pub fn write_csv(report: &RunReport, out: &mut dyn Write) -> Result<(), String> {
    let mut w = csv::Writer::from_writer(out);
    let header = [
        "index", "variant", "n", "a", "lambda_re", "lambda_im", "mu_re", "mu_im", "b_re", "b_im",
        "c_re", "c_im", "p", "y", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err",
        "pass", "tolerance_used", "wall_clock_s", "reason",
    ];
    w.write_record(header).map_err(|e| e.to_string())?;
    for (i, c) in report.cases.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(case_cells(&c.case));
        row.extend(complex_cells(c.lhs.as_ref()));
        row.extend(complex_cells(c.rhs.as_ref()));
        row.push(sci(c.abs_err.0));
        row.push(sci(c.rel_err.0));
        row.push(c.pass.to_string());
        row.push(sci(c.tolerance_used.0));
        row.push(sci(c.wall_clock_s.0));
        row.push(c.reason.clone().unwrap_or_default());
        w.write_record(&row).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}
