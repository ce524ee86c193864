//! Single-variable series: Struve `H`/`L` in the normalization used by the
//! integral formulas, the generalized Struve function `W_{p,b,c}`, the
//! Fox-Wright function `pPsi_q`, and the generalized hypergeometric `pF_q`.
//!
//! All sums run over ascending `k` with compensated accumulation and share
//! one stopping rule ([`SeriesControl`]).
//!
//! Note on normalization: [`struve_h_paper`] and [`struve_l_paper`] use
//! `Gamma(k + nu + 1/2)` as the second denominator gamma, so that
//! `W_{p,-1,1} = struve_h_paper(p, .)`. The textbook Struve function
//! `H_nu`, which solves the inhomogeneous Bessel equation, is
//! `W_{nu,1,1}`.

use num_complex::Complex64;

use crate::error::{SpecialError, SpecialResult};
use crate::gamma::{gamma, log_gamma, pole_at};
use crate::sum::ComplexSum;
use crate::{real, ComplexValue};

/// Truncation policy for every infinite series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    rel_tol: f64,
    max_terms: usize,
    consecutive_small: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-16,
            max_terms: 10_000,
            consecutive_small: 3,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize, consecutive_small: usize) -> SpecialResult<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(SpecialError::Domain(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if max_terms == 0 || consecutive_small == 0 {
            return Err(SpecialError::Domain(
                "max_terms and consecutive_small must be at least 1".into(),
            ));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            consecutive_small,
        })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn consecutive_small(&self) -> usize {
        self.consecutive_small
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> SpecialResult<Self> {
        Self::new(rel_tol, self.max_terms, self.consecutive_small)
    }

    pub fn with_max_terms(self, max_terms: usize) -> SpecialResult<Self> {
        Self::new(self.rel_tol, max_terms, self.consecutive_small)
    }
}

/// A truncated series value with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: ComplexValue,
    /// Number of terms (or, for multi-variable series, shells) summed.
    pub terms: usize,
    /// Estimated magnitude of the discarded tail.
    pub tail_estimate: f64,
    /// Rounding-level uncertainty of the accumulated sum.
    pub rounding_estimate: f64,
}

impl SeriesSum {
    pub fn error_bound(&self) -> f64 {
        self.tail_estimate + self.rounding_estimate
    }

    pub(crate) fn scaled(mut self, factor: ComplexValue) -> Self {
        let s = factor.norm();
        self.value *= factor;
        self.tail_estimate *= s;
        self.rounding_estimate *= s;
        self
    }
}

/// Shared stopping-rule state for term-by-term summation.
pub(crate) struct Accumulator<'a> {
    ctl: &'a SeriesControl,
    sum: ComplexSum,
    abs_sum: f64,
    small_run: usize,
    count: usize,
    last: f64,
    prev: f64,
}

impl<'a> Accumulator<'a> {
    pub(crate) fn new(ctl: &'a SeriesControl) -> Self {
        Self {
            ctl,
            sum: ComplexSum::new(),
            abs_sum: 0.0,
            small_run: 0,
            count: 0,
            last: 0.0,
            prev: 0.0,
        }
    }

    /// Adds one term; returns true once the stopping rule has fired.
    pub(crate) fn push(&mut self, term: Complex64) -> SpecialResult<bool> {
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(SpecialError::NonFinite(format!("series term {}", self.count)));
        }
        self.sum.add(term);
        self.count += 1;
        let mag = term.norm();
        self.abs_sum += mag;
        self.prev = self.last;
        self.last = mag;
        let partial = self.sum.value().norm();
        // a zero term only counts as small once the partial sum is nonzero
        if partial > 0.0 && mag <= self.ctl.rel_tol * partial {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        Ok(self.small_run >= self.ctl.consecutive_small)
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.count >= self.ctl.max_terms
    }

    pub(crate) fn finish(self) -> SeriesSum {
        let value = self.sum.value();
        let ratio = if self.prev > 0.0 {
            self.last / self.prev
        } else {
            0.0
        };
        let tail = if ratio < 1.0 {
            self.last * ratio / (1.0 - ratio)
        } else {
            self.last * self.ctl.consecutive_small as f64
        };
        SeriesSum {
            value,
            terms: self.count,
            tail_estimate: tail,
            rounding_estimate: f64::EPSILON * self.abs_sum.max(value.norm()),
        }
    }
}

/// Sums `term(k)` for k = 0, 1, ... under the stopping rule.
pub(crate) fn sum_terms<F>(ctl: &SeriesControl, mut term: F) -> SpecialResult<SeriesSum>
where
    F: FnMut(usize) -> SpecialResult<Complex64>,
{
    let mut acc = Accumulator::new(ctl);
    let mut k = 0;
    loop {
        if acc.push(term(k)?)? {
            return Ok(acc.finish());
        }
        k += 1;
        if acc.exhausted() {
            return Err(SpecialError::NonConvergence { terms: k });
        }
    }
}

/// Parameters `(p, b, c)` of the generalized Struve function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StruveParams {
    pub p: ComplexValue,
    pub b: ComplexValue,
    pub c: ComplexValue,
}

impl StruveParams {
    pub fn new(p: ComplexValue, b: ComplexValue, c: ComplexValue) -> Self {
        Self { p, b, c }
    }

    /// Textbook Struve H_nu: W_{nu,1,1}.
    pub fn standard_h(nu: ComplexValue) -> Self {
        Self::new(nu, real(1.0), real(1.0))
    }

    /// The shift `p + (b+2)/2` of the second denominator gamma.
    pub fn beta(&self) -> ComplexValue {
        self.p + (self.b + 2.0) / 2.0
    }
}

fn check_positive_argument(z: f64) -> SpecialResult<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(SpecialError::Domain(format!(
            "Struve argument must be a positive real, got {z}"
        )))
    }
}

/// A Struve-type series with its normalization precomputed:
/// `sum_k sign^k (z/2)^(2k + order + 1) / (Gamma(k + 3/2) Gamma(k + beta))`.
///
/// Cheap to evaluate repeatedly, e.g. inside a quadrature integrand.
#[derive(Debug, Clone, Copy)]
pub struct PreparedStruve {
    order: ComplexValue,
    beta: ComplexValue,
    step: ComplexValue,
    ln_norm: ComplexValue,
    /// `1 / (Gamma(3/2) Gamma(beta))` when representable.
    norm: Option<ComplexValue>,
}

impl PreparedStruve {
    fn new(order: ComplexValue, beta: ComplexValue, sign: ComplexValue) -> SpecialResult<Self> {
        if let Some(pole) = pole_at(beta) {
            return Err(SpecialError::Pole(pole));
        }
        let norm = (gamma(real(1.5))? * gamma(beta)?).inv();
        Ok(Self {
            order,
            beta,
            step: sign,
            ln_norm: -log_gamma(real(1.5))? - log_gamma(beta)?,
            norm: (norm.is_finite() && norm != ComplexValue::new(0.0, 0.0)).then_some(norm),
        })
    }

    /// `W_{p,b,c}` ready for repeated evaluation.
    pub fn generalized(params: &StruveParams) -> SpecialResult<Self> {
        Self::new(params.p, params.beta(), -params.c)
    }

    pub fn eval(&self, z: f64, ctl: &SeriesControl) -> SpecialResult<SeriesSum> {
        self.eval_derivative(z, 0, ctl)
    }

    fn eval_derivative(&self, z: f64, derivative: u32, ctl: &SeriesControl) -> SpecialResult<SeriesSum> {
        check_positive_argument(z)?;
        let half = z / 2.0;
        let direct = match self.norm {
            Some(norm) if self.order.im == 0.0 => norm * half.powf(self.order.re + 1.0),
            _ => ComplexValue::new(0.0, 0.0),
        };
        let mut term = if direct.is_finite() && direct.norm() > f64::MIN_POSITIVE {
            direct
        } else {
            ((self.order + 1.0) * half.ln() + self.ln_norm).exp()
        };
        let step = self.step * half * half;
        let beta = self.beta;
        let order = self.order;
        sum_terms(ctl, |k| {
            let kf = k as f64;
            if k > 0 {
                term *= step / ((kf + 0.5) * (beta + (kf - 1.0)));
            }
            let power = order + 2.0 * kf + 1.0;
            let t = match derivative {
                0 => term,
                1 => term * power / z,
                _ => term * power * (power - 1.0) / (z * z),
            };
            Ok(t)
        })
    }
}

/// `H_nu(z)` summed with `Gamma(k + nu + 1/2)` as the second gamma.
pub fn struve_h_paper(
    nu: ComplexValue,
    z: f64,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    PreparedStruve::new(nu, nu + 0.5, real(-1.0))?.eval(z, ctl)
}

/// Non-alternating companion of [`struve_h_paper`].
pub fn struve_l_paper(
    nu: ComplexValue,
    z: f64,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    PreparedStruve::new(nu, nu + 0.5, real(1.0))?.eval(z, ctl)
}

/// Generalized Struve function
/// `W_{p,b,c}(z) = sum_k (-c)^k (z/2)^(2k+p+1) / (Gamma(k+3/2) Gamma(k+p+(b+2)/2))`
/// for real `z > 0` (principal branch of the power).
pub fn struve_w(params: &StruveParams, z: f64, ctl: &SeriesControl) -> SpecialResult<SeriesSum> {
    PreparedStruve::generalized(params)?.eval(z, ctl)
}

/// First or second derivative of `W_{p,b,c}` in `z`, differentiated term by
/// term.
pub fn struve_w_derivative(
    params: &StruveParams,
    z: f64,
    order: u32,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    if !(1..=2).contains(&order) {
        return Err(SpecialError::Domain(format!(
            "derivative order must be 1 or 2, got {order}"
        )));
    }
    PreparedStruve::generalized(params)?.eval_derivative(z, order, ctl)
}

/// Upper and lower `(parameter, weight)` pairs of a Fox-Wright function.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxWrightSpec {
    upper: Vec<(ComplexValue, f64)>,
    lower: Vec<(ComplexValue, f64)>,
}

impl FoxWrightSpec {
    /// Weights must be positive. The convergence margin may be negative
    /// here; [`fox_wright`] rejects such series.
    pub fn new(
        upper: Vec<(ComplexValue, f64)>,
        lower: Vec<(ComplexValue, f64)>,
    ) -> SpecialResult<Self> {
        for &(_, w) in upper.iter().chain(lower.iter()) {
            if !(w > 0.0) || !w.is_finite() {
                return Err(SpecialError::Domain(format!(
                    "Fox-Wright weights must be positive reals, got {w}"
                )));
            }
        }
        Ok(Self { upper, lower })
    }

    /// Unit weights: the `pF_q`-like special case.
    pub fn unit(upper: &[ComplexValue], lower: &[ComplexValue]) -> Self {
        Self {
            upper: upper.iter().map(|&a| (a, 1.0)).collect(),
            lower: lower.iter().map(|&b| (b, 1.0)).collect(),
        }
    }

    pub fn upper(&self) -> &[(ComplexValue, f64)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(ComplexValue, f64)] {
        &self.lower
    }

    /// `1 + sum B_j - sum A_j`.
    pub fn margin(&self) -> f64 {
        1.0 + self.lower.iter().map(|p| p.1).sum::<f64>() - self.upper.iter().map(|p| p.1).sum::<f64>()
    }

    /// Radius of convergence `prod A^-A * prod B^B` for a zero margin.
    pub fn radius(&self) -> f64 {
        let up: f64 = self.upper.iter().map(|&(_, a)| a.powf(-a)).product();
        let lo: f64 = self.lower.iter().map(|&(_, b)| b.powf(b)).product();
        up * lo
    }
}

/// Fraction of the radius of convergence accepted when the margin is zero.
pub const RADIUS_SAFETY: f64 = 0.9;

/// `pPsi_q(z) = sum_k prod Gamma(alpha_j + A_j k) / prod Gamma(beta_j + B_j k) z^k / k!`.
///
/// With integer weights each term follows from the previous one by an exact
/// product of linear factors; otherwise (and at k = 0, or right after a zero
/// term) the term is assembled in log space. A pole in a lower gamma makes the
/// term zero; a pole in an upper gamma is an error.
pub fn fox_wright(
    spec: &FoxWrightSpec,
    z: ComplexValue,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    let margin = spec.margin();
    if margin < 0.0 {
        return Err(SpecialError::Divergence(format!(
            "Fox-Wright margin 1 + sum B - sum A = {margin} is negative"
        )));
    }
    if margin == 0.0 && z.norm() >= RADIUS_SAFETY * spec.radius() {
        return Err(SpecialError::Divergence(format!(
            "|z| = {} outside the accepted radius {}",
            z.norm(),
            RADIUS_SAFETY * spec.radius()
        )));
    }
    let integer_weights = spec
        .upper
        .iter()
        .chain(spec.lower.iter())
        .all(|&(_, w)| w.fract() == 0.0 && w <= MAX_RECURRENCE_WEIGHT);
    let ln_z = if z.norm() > 0.0 { Some(z.ln()) } else { None };
    let mut prev: Option<Complex64> = None;
    sum_terms(ctl, |k| {
        if k > 0 && ln_z.is_none() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let kf = k as f64;
        if spec.lower.iter().any(|&(beta, b)| pole_at(beta + b * kf).is_some()) {
            prev = None;
            return Ok(Complex64::new(0.0, 0.0));
        }
        let term = match prev {
            Some(t) if integer_weights => t * fox_wright_step(spec, z, k),
            _ => fox_wright_log_term(spec, ln_z, k)?,
        };
        prev = (term != Complex64::new(0.0, 0.0)).then_some(term);
        Ok(term)
    })
}

const MAX_RECURRENCE_WEIGHT: f64 = 64.0;

/// Ratio of term `k` to term `k - 1` for integer weights.
fn fox_wright_step(spec: &FoxWrightSpec, z: ComplexValue, k: usize) -> Complex64 {
    let base = (k - 1) as f64;
    let mut r = z / k as f64;
    for &(alpha, a) in &spec.upper {
        let start = alpha + a * base;
        for i in 0..a as usize {
            r *= start + i as f64;
        }
    }
    for &(beta, b) in &spec.lower {
        let start = beta + b * base;
        for i in 0..b as usize {
            r /= start + i as f64;
        }
    }
    r
}

fn fox_wright_log_term(
    spec: &FoxWrightSpec,
    ln_z: Option<Complex64>,
    k: usize,
) -> SpecialResult<Complex64> {
    let kf = k as f64;
    let power = match (k, ln_z) {
        (0, _) => Complex64::new(0.0, 0.0),
        (_, None) => return Ok(Complex64::new(0.0, 0.0)),
        (_, Some(l)) => l * kf,
    };
    let mut ln_term = power - log_gamma(real(kf + 1.0))?;
    for &(alpha, a) in &spec.upper {
        ln_term += log_gamma(alpha + a * kf)?;
    }
    for &(beta, b) in &spec.lower {
        ln_term -= log_gamma(beta + b * kf)?;
    }
    if ln_term.re > 709.0 {
        return Err(SpecialError::Range(format!("Fox-Wright term {k} overflows")));
    }
    Ok(ln_term.exp())
}

/// `pF_q(upper; lower; z) = sum_k prod (a_j)_k / prod (b_j)_k z^k / k!`,
/// evaluated by the term ratio recurrence.
pub fn pfq(
    upper: &[ComplexValue],
    lower: &[ComplexValue],
    z: ComplexValue,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    if let Some(pole) = lower.iter().find_map(|&b| pole_at(b)) {
        return Err(SpecialError::Domain(format!(
            "lower parameter at non-positive integer {pole}"
        )));
    }
    let (p, q) = (upper.len(), lower.len());
    if z.norm() > 0.0 {
        if p > q + 1 {
            return Err(SpecialError::Divergence(format!(
                "{p}F{q} diverges for z != 0"
            )));
        }
        if p == q + 1 && z.norm() >= 1.0 {
            return Err(SpecialError::Divergence(format!(
                "{p}F{q} requires |z| < 1, got {}",
                z.norm()
            )));
        }
    }
    let mut term = Complex64::new(1.0, 0.0);
    sum_terms(ctl, |k| {
        if k > 0 {
            let j = (k - 1) as f64;
            let mut r = z / k as f64;
            for &a in upper {
                r *= a + j;
            }
            for &b in lower {
                r /= b + j;
            }
            term *= r;
        }
        Ok(term)
    })
}
