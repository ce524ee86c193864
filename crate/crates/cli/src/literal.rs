//! Text forms accepted on the command line and in case files.

use struve_core::Complex64;

/// Parses `"1.5"`, `"1.5+0.25i"`, `"-2e-3-1i"` or `"0.5i"` (no spaces).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty value".into());
    }
    let bad = || format!("{s:?} is not a number (expected e.g. 1.5 or 1.5+0.25i)");
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(t).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (parse_real(&body[..i]).map_err(|_| bad())?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Result<f64, ()> {
    let v: f64 = s.parse().map_err(|_| ())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(())
    }
}

/// Real-valued parameter.
pub fn parse_f64(s: &str) -> Result<f64, String> {
    parse_real(s.trim()).map_err(|_| format!("{s:?} is not a finite real number"))
}

/// Comma-separated complex list; the empty string is the empty list.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_complex).collect()
}

/// Comma-separated `value:weight` pairs; a missing weight means 1.
pub fn parse_weighted_list(s: &str) -> Result<Vec<(Complex64, f64)>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| match item.split_once(':') {
            Some((v, w)) => Ok((parse_complex(v)?, parse_f64(w)?)),
            None => Ok((parse_complex(item)?, 1.0)),
        })
        .collect()
}

/// `start:end:step` (inclusive of `end` up to rounding) or a single value.
pub fn parse_range(s: &str) -> Result<Vec<Complex64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse_complex(single)?]),
        [start, end, step] => {
            let (start, end, step) = (parse_f64(start)?, parse_f64(end)?, parse_f64(step)?);
            if !(step > 0.0) {
                return Err(format!("range {s:?}: step must be positive"));
            }
            if start > end {
                return Err(format!("range {s:?}: start exceeds end"));
            }
            let count = ((end - start) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(format!("range {s:?} has too many points"));
            }
            Ok((0..count)
                .map(|i| Complex64::new(start + i as f64 * step, 0.0))
                .collect())
        }
        _ => Err(format!("{s:?} is neither a value nor a start:end:step range")),
    }
}
