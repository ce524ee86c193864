//! `struve grid`: Cartesian products of parameter values as a case file.
//!
//! Scalar flags take comma-separated values, each a literal or a
//! `start:end:step` range. Vector flags (`--p`, `--y`) take comma-separated
//! components, each a literal or a range; `;` separates alternative vectors.

use struve_core::identities::{IntegralCase, Variant};
use struve_core::{Complex64, SpecialError};

use crate::casefile::{CaseFileOut, CaseOut};
use crate::literal::parse_range;

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub variant: Variant,
    pub n: Option<usize>,
    pub a: String,
    pub lambda: String,
    pub mu: String,
    pub b: String,
    pub c: String,
    pub p: String,
    pub y: String,
}

#[derive(Debug)]
pub struct Grid {
    pub cases: CaseFileOut,
    pub skipped: usize,
}

fn scalar_values(flag: &str, spec: &str) -> Result<Vec<Complex64>, String> {
    let mut out = Vec::new();
    for item in spec.split(',') {
        out.extend(parse_range(item).map_err(|e| format!("--{flag}: {e}"))?);
    }
    Ok(out)
}

fn cartesian<T: Clone>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect()
    })
}

fn vector_values(flag: &str, spec: &str) -> Result<Vec<Vec<Complex64>>, String> {
    let mut out = Vec::new();
    for alternative in spec.split(';') {
        let axes = alternative
            .split(',')
            .map(|c| parse_range(c).map_err(|e| format!("--{flag}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        out.extend(cartesian(&axes));
    }
    Ok(out)
}

fn real_only(flag: &str, z: Complex64) -> Result<f64, String> {
    if z.im == 0.0 {
        Ok(z.re)
    } else {
        Err(format!("--{flag}: values must be real, got {z}"))
    }
}

pub fn build(spec: &GridSpec) -> Result<Grid, String> {
    let a = scalar_values("a", &spec.a)?
        .into_iter()
        .map(|z| real_only("a", z))
        .collect::<Result<Vec<_>, _>>()?;
    let lambda = scalar_values("lambda", &spec.lambda)?;
    let mu = scalar_values("mu", &spec.mu)?;
    let b = scalar_values("b", &spec.b)?;
    let c = scalar_values("c", &spec.c)?;
    let p = vector_values("p", &spec.p)?;
    let y = vector_values("y", &spec.y)?
        .into_iter()
        .map(|v| v.into_iter().map(|z| real_only("y", z)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let n = spec.n.unwrap_or(p[0].len());
    if n == 0 {
        return Err("--n: must be at least 1".into());
    }
    if let Some(bad) = p.iter().find(|v| v.len() != n) {
        return Err(format!("--p: expected {n} components, got {}", bad.len()));
    }
    if let Some(bad) = y.iter().find(|v| v.len() != n) {
        return Err(format!("--y: expected {n} components, got {}", bad.len()));
    }
    let mut cases = Vec::new();
    let mut skipped = 0;
    for &a in &a {
        for &lambda in &lambda {
            for &mu in &mu {
                for &b in &b {
                    for &c in &c {
                        for pv in &p {
                            for yv in &y {
                                match IntegralCase::new(spec.variant, a, lambda, mu, b, c, pv.clone(), yv.clone()) {
                                    Ok(case) => cases.push(CaseOut::from(&case)),
                                    Err(SpecialError::ConditionViolated(_)) => skipped += 1,
                                    Err(e) => return Err(e.to_string()),
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Grid {
        cases: CaseFileOut { cases },
        skipped,
    })
}
