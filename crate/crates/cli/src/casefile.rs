//! Case files: a list of integral cases plus optional control overrides.
//!
//! ```json
//! {
//!   "cases": [
//!     {"variant": "theorem1", "a": 1, "lambda": 2, "mu": "0.6+0.2i",
//!      "b": 1, "c": 1, "p": [1], "y": [1]}
//!   ],
//!   "controls": {"tol": 1e-6, "quad_tol": 1e-11, "series_tol": 1e-16,
//!                "max_terms": 10000, "max_panels": 2000}
//! }
//! ```
//!
//! Complex entries may be JSON numbers, literal strings (`"1.5+0.25i"`) or
//! `{"re": .., "im": ..}` objects.

use serde::Serialize;
use serde_json::{Map, Value};
use struve_core::identities::{IntegralCase, Variant};
use struve_core::{Complex64, SpecialError};

use crate::literal::parse_complex;
use crate::output::{ComplexOut, Num};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Controls {
    pub tol: Option<f64>,
    pub quad_tol: Option<f64>,
    pub series_tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub max_panels: Option<usize>,
}

/// A case whose fields parsed. `case` is `Err` with the message when the
/// values violate the theorem's conditions; `raw` keeps the input record.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    pub raw: Value,
    pub case: Result<IntegralCase, String>,
}

#[derive(Debug, Clone)]
pub struct CaseFile {
    pub cases: Vec<CaseRecord>,
    pub controls: Controls,
}

pub(crate) fn complex_value(v: &Value, path: &str) -> Result<Complex64, String> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(|x| Complex64::new(x, 0.0))
            .ok_or_else(|| format!("{path}: number out of range")),
        Value::String(s) => parse_complex(s).map_err(|e| format!("{path}: {e}")),
        Value::Object(o) => {
            let part = |key: &str| match o.get(key) {
                None => Ok(0.0),
                Some(Value::Number(n)) => n.as_f64().ok_or_else(|| format!("{path}.{key}: out of range")),
                Some(_) => Err(format!("{path}.{key}: expected a number")),
            };
            if let Some(extra) = o.keys().find(|k| *k != "re" && *k != "im") {
                return Err(format!("{path}: unexpected key {extra:?}"));
            }
            Ok(Complex64::new(part("re")?, part("im")?))
        }
        _ => Err(format!("{path}: expected a number, a literal like \"1.5+0.25i\" or {{\"re\", \"im\"}}")),
    }
}

pub(crate) fn real_value(v: &Value, path: &str) -> Result<f64, String> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| format!("{path}: number out of range")),
        Value::String(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("{path}: {s:?} is not a real number")),
        _ => Err(format!("{path}: expected a real number")),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, String> {
    obj.get(key).ok_or_else(|| format!("{path}.{key}: missing"))
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Vec<Value>, String> {
    field(obj, key, path)?
        .as_array()
        .ok_or_else(|| format!("{path}.{key}: expected an array"))
}

const CASE_KEYS: [&str; 8] = ["variant", "a", "lambda", "mu", "b", "c", "p", "y"];

fn parse_case(v: &Value, path: &str) -> Result<CaseRecord, String> {
    let obj = v.as_object().ok_or_else(|| format!("{path}: expected an object"))?;
    if let Some(extra) = obj.keys().find(|k| !CASE_KEYS.contains(&k.as_str())) {
        return Err(format!("{path}: unexpected key {extra:?}"));
    }
    let variant: Variant = field(obj, "variant", path)?
        .as_str()
        .ok_or_else(|| format!("{path}.variant: expected a string"))?
        .parse()
        .map_err(|e: SpecialError| format!("{path}.variant: {e}"))?;
    let a = real_value(field(obj, "a", path)?, &format!("{path}.a"))?;
    let cx = |key: &str| complex_value(field(obj, key, path)?, &format!("{path}.{key}"));
    let (lambda, mu, b, c) = (cx("lambda")?, cx("mu")?, cx("b")?, cx("c")?);
    let p = array(obj, "p", path)?
        .iter()
        .enumerate()
        .map(|(j, v)| complex_value(v, &format!("{path}.p[{j}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let y = array(obj, "y", path)?
        .iter()
        .enumerate()
        .map(|(j, v)| real_value(v, &format!("{path}.y[{j}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let case = match IntegralCase::new(variant, a, lambda, mu, b, c, p, y) {
        Ok(case) => Ok(case),
        Err(e @ SpecialError::ConditionViolated(_)) => Err(e.to_string()),
        Err(e) => return Err(format!("{path}: {e}")),
    };
    Ok(CaseRecord { raw: v.clone(), case })
}

fn parse_controls(v: &Value) -> Result<Controls, String> {
    let obj = v.as_object().ok_or("controls: expected an object")?;
    let mut c = Controls::default();
    for (key, val) in obj {
        let path = format!("controls.{key}");
        let positive = |x: f64| {
            if x > 0.0 {
                Ok(x)
            } else {
                Err(format!("{path}: must be positive"))
            }
        };
        let count = || {
            val.as_u64()
                .filter(|&n| n > 0)
                .map(|n| n as usize)
                .ok_or_else(|| format!("{path}: expected a positive integer"))
        };
        match key.as_str() {
            "tol" => c.tol = Some(positive(real_value(val, &path)?)?),
            "quad_tol" => c.quad_tol = Some(positive(real_value(val, &path)?)?),
            "series_tol" => c.series_tol = Some(positive(real_value(val, &path)?)?),
            "max_terms" => c.max_terms = Some(count()?),
            "max_panels" => c.max_panels = Some(count()?),
            _ => return Err(format!("{path}: unknown control")),
        }
    }
    Ok(c)
}

pub fn parse_case_file(text: &str) -> Result<CaseFile, String> {
    let root: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = root.as_object().ok_or("top level: expected an object")?;
    if let Some(extra) = obj.keys().find(|k| *k != "cases" && *k != "controls") {
        return Err(format!("top level: unexpected key {extra:?}"));
    }
    let cases = array(obj, "cases", "top level")
        .map_err(|_| "cases: expected an array of case objects".to_string())?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_case(v, &format!("cases[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let controls = match obj.get("controls") {
        Some(v) => parse_controls(v)?,
        None => Controls::default(),
    };
    Ok(CaseFile { cases, controls })
}

/// Serialized form of a case, readable back by [`parse_case_file`].
#[derive(Debug, Clone, Serialize)]
pub struct CaseOut {
    pub variant: &'static str,
    pub a: Num,
    pub lambda: ComplexOut,
    pub mu: ComplexOut,
    pub b: ComplexOut,
    pub c: ComplexOut,
    pub p: Vec<ComplexOut>,
    pub y: Vec<Num>,
}

impl From<&IntegralCase> for CaseOut {
    fn from(c: &IntegralCase) -> Self {
        Self {
            variant: c.variant().name(),
            a: Num(c.a()),
            lambda: c.lambda().into(),
            mu: c.mu().into(),
            b: c.b().into(),
            c: c.c().into(),
            p: c.p().iter().map(|&z| z.into()).collect(),
            y: c.y().iter().map(|&v| Num(v)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CaseFileOut {
    pub cases: Vec<CaseOut>,
}
