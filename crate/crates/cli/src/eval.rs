//! `struve eval <function> key=value ...`

use std::collections::BTreeMap;

use serde_json::Value;
use struve_core::lauricella::{lauricella_eval, GlobalParam, LauricellaSpec, LocalParam};
use struve_core::quadrature::oberhettinger_closed_form;
use struve_core::series::{
    fox_wright, pfq, struve_h_paper, struve_l_paper, struve_w, FoxWrightSpec, SeriesControl,
    SeriesSum, StruveParams,
};
use struve_core::{Complex64, SpecialError};

use crate::casefile::{complex_value, real_value};
use crate::literal::{parse_complex, parse_complex_list, parse_f64, parse_weighted_list};
use crate::output::{format_complex, format_real};

pub const FUNCTIONS: [&str; 7] = [
    "struve_h",
    "struve_l",
    "struve_w",
    "fox_wright",
    "pfq",
    "lauricella",
    "oberhettinger",
];

#[derive(Debug)]
pub struct EvalError {
    pub exit_code: i32,
    pub message: String,
}

impl EvalError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            exit_code: 2,
            message: message.into(),
        }
    }

    fn from_library(function: &str, e: SpecialError) -> Self {
        Self {
            exit_code: if e.is_convergence_failure() { 3 } else { 2 },
            message: format!("{function}: {e}"),
        }
    }
}

struct Params<'a> {
    values: BTreeMap<&'a str, &'a str>,
}

impl<'a> Params<'a> {
    fn parse(function: &str, raw: &'a [String], allowed: &[&str]) -> Result<Self, EvalError> {
        let mut values = BTreeMap::new();
        for item in raw {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| EvalError::usage(format!("expected key=value, got {item:?}")))?;
            if !allowed.contains(&k) {
                return Err(EvalError::usage(format!(
                    "unknown parameter `{k}` for {function} (expected {})",
                    allowed.join(", ")
                )));
            }
            if values.insert(k, v).is_some() {
                return Err(EvalError::usage(format!("parameter `{k}` given twice")));
            }
        }
        if let Some(missing) = allowed.iter().find(|k| !values.contains_key(*k)) {
            return Err(EvalError::usage(format!("missing parameter `{missing}` for {function}")));
        }
        Ok(Self { values })
    }

    fn get<T>(&self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<T, EvalError> {
        parse(self.values[key]).map_err(|e| EvalError::usage(format!("parameter `{key}`: {e}")))
    }

    fn positive(&self, key: &str) -> Result<f64, EvalError> {
        let v = self.get(key, parse_f64)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(EvalError::usage(format!("parameter `{key}`: must be positive, got {v}")))
        }
    }
}

/// Value line followed by diagnostic lines.
#[derive(Debug)]
pub struct EvalOutput {
    pub value: Complex64,
    pub diagnostics: Vec<(String, String)>,
}

impl EvalOutput {
    pub fn render(&self) -> String {
        let mut s = format_complex(self.value);
        s.push('\n');
        for (k, v) in &self.diagnostics {
            s.push_str(&format!("{k}: {v}\n"));
        }
        s
    }
}

fn series_output(r: SeriesSum, count_label: &str) -> EvalOutput {
    EvalOutput {
        value: r.value,
        diagnostics: vec![
            (count_label.to_string(), r.terms.to_string()),
            ("tail_estimate".into(), format_real(r.tail_estimate)),
            ("rounding_estimate".into(), format_real(r.rounding_estimate)),
        ],
    }
}

fn indexed<T>(
    v: &Value,
    path: &str,
    each: impl Fn(&Value, &str) -> Result<T, String>,
) -> Result<Vec<T>, String> {
    v.as_array()
        .ok_or_else(|| format!("{path}: expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| each(x, &format!("{path}[{i}]")))
        .collect()
}

fn global_param(v: &Value, path: &str) -> Result<GlobalParam, String> {
    let value = complex_value(v.get("value").ok_or(format!("{path}.value: missing"))?, &format!("{path}.value"))?;
    let weights = indexed(
        v.get("weights").ok_or(format!("{path}.weights: missing"))?,
        &format!("{path}.weights"),
        real_value,
    )?;
    Ok(GlobalParam::new(value, weights))
}

fn local_param(v: &Value, path: &str) -> Result<LocalParam, String> {
    let value = complex_value(v.get("value").ok_or(format!("{path}.value: missing"))?, &format!("{path}.value"))?;
    let weight = match v.get("weight") {
        Some(w) => real_value(w, &format!("{path}.weight"))?,
        None => 1.0,
    };
    Ok(LocalParam::new(value, weight))
}

/// Lauricella structure as JSON (inline or a file path):
/// `{"n": 2, "global_upper": [{"value": 1.5, "weights": [2, 2]}], "global_lower": [],
///   "per_var_upper": [[{"value": 1, "weight": 1}], []], "per_var_lower": [[], []]}`.
fn parse_lauricella_spec(text: &str) -> Result<LauricellaSpec, String> {
    let body = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).map_err(|e| format!("cannot read {text:?}: {e}"))?
    };
    let v: Value = serde_json::from_str(&body).map_err(|e| format!("invalid JSON: {e}"))?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or("n: expected a positive integer")? as usize;
    let block = |key: &str| v.get(key).cloned().unwrap_or(Value::Array(vec![]));
    let per_var = |key: &str| -> Result<Vec<Vec<LocalParam>>, String> {
        match v.get(key) {
            None => Ok(vec![Vec::new(); n]),
            Some(b) => indexed(b, key, |x, p| indexed(x, p, local_param)),
        }
    };
    LauricellaSpec::new(
        n,
        indexed(&block("global_upper"), "global_upper", global_param)?,
        indexed(&block("global_lower"), "global_lower", global_param)?,
        per_var("per_var_upper")?,
        per_var("per_var_lower")?,
    )
    .map_err(|e| e.to_string())
}

pub fn run(function: &str, raw: &[String], ctl: &SeriesControl) -> Result<EvalOutput, EvalError> {
    let lib = |e| EvalError::from_library(function, e);
    match function {
        "struve_h" | "struve_l" => {
            let p = Params::parse(function, raw, &["nu", "z"])?;
            let nu = p.get("nu", parse_complex)?;
            let z = p.positive("z")?;
            let r = if function == "struve_h" {
                struve_h_paper(nu, z, ctl)
            } else {
                struve_l_paper(nu, z, ctl)
            };
            Ok(series_output(r.map_err(lib)?, "terms"))
        }
        "struve_w" => {
            let p = Params::parse(function, raw, &["p", "b", "c", "z"])?;
            let params = StruveParams::new(
                p.get("p", parse_complex)?,
                p.get("b", parse_complex)?,
                p.get("c", parse_complex)?,
            );
            let z = p.positive("z")?;
            Ok(series_output(struve_w(&params, z, ctl).map_err(lib)?, "terms"))
        }
        "fox_wright" => {
            let p = Params::parse(function, raw, &["upper", "lower", "z"])?;
            let spec = FoxWrightSpec::new(
                p.get("upper", parse_weighted_list)?,
                p.get("lower", parse_weighted_list)?,
            )
            .map_err(lib)?;
            let z = p.get("z", parse_complex)?;
            Ok(series_output(fox_wright(&spec, z, ctl).map_err(lib)?, "terms"))
        }
        "pfq" => {
            let p = Params::parse(function, raw, &["upper", "lower", "z"])?;
            let upper = p.get("upper", parse_complex_list)?;
            let lower = p.get("lower", parse_complex_list)?;
            let z = p.get("z", parse_complex)?;
            Ok(series_output(pfq(&upper, &lower, z, ctl).map_err(lib)?, "terms"))
        }
        "lauricella" => {
            let p = Params::parse(function, raw, &["spec", "z"])?;
            let spec = p.get("spec", parse_lauricella_spec)?;
            let z = p.get("z", parse_complex_list)?;
            Ok(series_output(lauricella_eval(&spec, &z, ctl).map_err(lib)?, "shells"))
        }
        "oberhettinger" => {
            let p = Params::parse(function, raw, &["a", "mu", "lambda"])?;
            let a = p.positive("a")?;
            let value =
                oberhettinger_closed_form(a, p.get("mu", parse_complex)?, p.get("lambda", parse_complex)?)
                    .map_err(lib)?;
            Ok(EvalOutput {
                value,
                diagnostics: Vec::new(),
            })
        }
        other => Err(EvalError::usage(format!(
            "unknown function {other:?} (expected one of {})",
            FUNCTIONS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(f: &str, args: &[&str]) -> Result<EvalOutput, EvalError> {
        let raw: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run(f, &raw, &SeriesControl::default())
    }

    fn first_line(f: &str, args: &[&str]) -> String {
        eval(f, args).unwrap().render().lines().next().unwrap().to_string()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(first_line("oberhettinger", &["a=1", "mu=1", "lambda=2"]), "3.333333333333333e-1");
        assert_eq!(first_line("struve_w", &["p=0", "b=0", "c=0", "z=2"]), "1.128379167095513");
        assert_eq!(first_line("pfq", &["upper=2", "lower=", "z=0.5"]), "4.0");
    }

    #[test]
    fn other_functions() {
        assert_eq!(first_line("fox_wright", &["upper=1:1", "lower=1:1", "z=1"]), "2.718281828459045");
        let spec = r#"spec={"n": 1, "per_var_upper": [[{"value": 2}]]}"#;
        // log-space terms: agreement to a few ulp, not digit for digit
        let v = eval("lauricella", &[spec, "z=0.5"]).unwrap().value;
        assert!((v - 4.0).norm() < 1e-14);
        assert!(eval("struve_h", &["nu=0.5", "z=1"]).unwrap().render().contains("terms: "));
        assert!(eval("struve_l", &["nu=0", "z=1"]).is_ok());
    }

    #[test]
    fn errors_name_parameters_and_set_codes() {
        let e = eval("struve_w", &["p=0", "b=0", "c=0"]).unwrap_err();
        assert_eq!(e.exit_code, 2);
        assert!(e.message.contains("`z`"));
        let e = eval("struve_w", &["p=0", "b=0", "c=0", "z=-1"]).unwrap_err();
        assert!(e.message.contains("parameter `z`"));
        let e = eval("oberhettinger", &["a=1", "mu=2", "lambda=1"]).unwrap_err();
        assert_eq!(e.exit_code, 2);
        let e = eval("pfq", &["upper=1", "lower=", "z=0.5", "q=1"]).unwrap_err();
        assert!(e.message.contains("unknown parameter `q`"));
        let e = eval("bessel", &[]).unwrap_err();
        assert_eq!(e.exit_code, 2);
        let tight = SeriesControl::new(1e-16, 3, 3).unwrap();
        let raw = vec!["nu=0".to_string(), "z=5".to_string()];
        assert_eq!(run("struve_h", &raw, &tight).unwrap_err().exit_code, 3);
    }
}
