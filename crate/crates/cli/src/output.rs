//! Number rendering for terminal output and report files.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use struve_core::Complex64;

/// Sixteen significant digits, trailing zeros dropped, plain notation when
/// the decimal exponent is zero: `4.0`, `1.128379167095513`,
/// `3.333333333333333e-1`.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.15e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let mut m = mantissa.trim_end_matches('0').to_string();
    if m.ends_with('.') {
        m.push('0');
    }
    if exp == "0" {
        m
    } else {
        format!("{m}e{exp}")
    }
}

/// Real values print as reals; otherwise `re+imi` in the literal syntax
/// accepted on input.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return format_real(z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", format_real(z.re), format_real(z.im.abs()))
}

/// A float serialized with 17 significant digits; non-finite values become
/// `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexOut {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for ComplexOut {
    fn from(z: Complex64) -> Self {
        Self {
            re: Num(z.re),
            im: Num(z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_renderings() {
        assert_eq!(format_real(1.0 / 3.0), "3.333333333333333e-1");
        assert_eq!(format_real(std::f64::consts::FRAC_2_SQRT_PI), "1.128379167095513");
        assert_eq!(format_real(4.0), "4.0");
        assert_eq!(format_real(-2.5e10), "-2.5e10");
        assert_eq!(format_complex(Complex64::new(1.0, -0.5)), "1.0-5.0e-1i");
    }

    #[test]
    fn json_numbers_round_trip() {
        let x = 0.1 + 0.2;
        let s = serde_json::to_string(&Num(x)).unwrap();
        assert_eq!(s, "3.0000000000000004e-1");
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
    }
}
