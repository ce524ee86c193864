//! Both sides of the product-of-Struve integral formulas.
//!
//! For `K(x) = x + a + sqrt(x^2 + 2ax)`:
//!
//! ```text
//! Theorem1:  int_0^inf x^(mu-1) K^-lambda prod_j W_{p_j,b,c}(y_j / K) dx
//!              = A * F^{2:1;..;1}_{2:2;..;2}(-c y_1^2/(4a^2), ..)
//! Theorem2:  int_0^inf x^(mu-1) K^-lambda prod_j W_{p_j,b,c}(x y_j / K) dx
//!              = B * F^{2:1;..;1}_{2:2;..;2}(-c y_1^2/16, ..)
//! ```
//!
//! The left side is integrated numerically with the Struve product evaluated
//! pointwise; the right side is a prefactor times a Srivastava-Daoust series.
//! The two routes share nothing but the Struve/gamma kernels, so agreement
//! certifies the term-wise integration that produces the right side.
//!
//! The one-variable specializations are also available in their printed
//! `4F5` / `3Psi4` forms through [`rhs_corollary`].

use std::f64::consts::LN_2;

use num_complex::Complex64;

use crate::error::{SpecialError, SpecialResult};
use crate::gamma::{log_gamma, pole_at};
use crate::lauricella::{lauricella_eval, GlobalParam, LauricellaSpec, LocalParam};
use crate::quadrature::{integrate_kernel, QuadControl, QuadResult};
use crate::series::{fox_wright, pfq, FoxWrightSpec, PreparedStruve, SeriesControl, SeriesSum, StruveParams};
use crate::{real, ComplexValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Struve arguments `y_j / K(x)`.
    Theorem1,
    /// Struve arguments `x y_j / K(x)`.
    Theorem2,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Theorem1 => "theorem1",
            Variant::Theorem2 => "theorem2",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = SpecialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "theorem1" | "1" => Ok(Variant::Theorem1),
            "theorem2" | "2" => Ok(Variant::Theorem2),
            other => Err(SpecialError::Domain(format!(
                "unknown variant {other:?} (expected theorem1 or theorem2)"
            ))),
        }
    }
}

/// One instance of either integral formula. Construction enforces the
/// formula's parameter conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralCase {
    variant: Variant,
    a: f64,
    lambda: ComplexValue,
    mu: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    p: Vec<ComplexValue>,
    y: Vec<f64>,
    p_sum: ComplexValue,
}

fn finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl IntegralCase {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        variant: Variant,
        a: f64,
        lambda: ComplexValue,
        mu: ComplexValue,
        b: ComplexValue,
        c: ComplexValue,
        p: Vec<ComplexValue>,
        y: Vec<f64>,
    ) -> SpecialResult<Self> {
        if p.is_empty() {
            return Err(SpecialError::Domain("at least one Struve factor is required".into()));
        }
        if p.len() != y.len() {
            return Err(SpecialError::Domain(format!(
                "p has {} entries but y has {}",
                p.len(),
                y.len()
            )));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(SpecialError::Domain(format!("a must be a positive real, got {a}")));
        }
        if let Some((j, yj)) = y.iter().enumerate().find(|(_, &v)| !(v > 0.0 && v.is_finite())) {
            return Err(SpecialError::Domain(format!(
                "y_{} must be a positive real, got {yj}",
                j + 1
            )));
        }
        if ![lambda, mu, b, c].iter().chain(p.iter()).all(|&z| finite(z)) {
            return Err(SpecialError::Domain("parameters must be finite".into()));
        }
        let n = p.len() as f64;
        let p_sum: ComplexValue = p.iter().sum();
        match variant {
            Variant::Theorem1 => {
                if !(mu.re > 0.0) {
                    return Err(SpecialError::ConditionViolated(format!(
                        "0 < Re(mu) fails (Re(mu) = {})",
                        mu.re
                    )));
                }
                if !(mu.re < (lambda + p_sum).re + n) {
                    return Err(SpecialError::ConditionViolated(format!(
                        "Re(mu) < Re(lambda + p) + n fails ({} >= {})",
                        mu.re,
                        (lambda + p_sum).re + n
                    )));
                }
            }
            Variant::Theorem2 => {
                if !((mu + p_sum).re > -n) {
                    return Err(SpecialError::ConditionViolated(format!(
                        "Re(mu + p) > -n fails ({} <= {})",
                        (mu + p_sum).re,
                        -n
                    )));
                }
                if !(lambda.re > mu.re) {
                    return Err(SpecialError::ConditionViolated(format!(
                        "Re(lambda) > Re(mu) fails ({} <= {})",
                        lambda.re, mu.re
                    )));
                }
                let g = 2.0 * mu + 2.0 * p_sum + 2.0 * n;
                if !(g.re > 0.0) {
                    return Err(SpecialError::ConditionViolated(format!(
                        "Re(2mu + 2p + 2n) > 0 fails ({})",
                        g.re
                    )));
                }
            }
        }
        Ok(Self {
            variant,
            a,
            lambda,
            mu,
            b,
            c,
            p,
            y,
            p_sum,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn lambda(&self) -> ComplexValue {
        self.lambda
    }

    pub fn mu(&self) -> ComplexValue {
        self.mu
    }

    pub fn b(&self) -> ComplexValue {
        self.b
    }

    pub fn c(&self) -> ComplexValue {
        self.c
    }

    pub fn p(&self) -> &[ComplexValue] {
        &self.p
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// Sum of the Struve orders.
    pub fn p_sum(&self) -> ComplexValue {
        self.p_sum
    }

    /// Same case with `(b, c)` replaced.
    pub fn with_bc(&self, b: ComplexValue, c: ComplexValue) -> SpecialResult<Self> {
        Self::new(
            self.variant,
            self.a,
            self.lambda,
            self.mu,
            b,
            c,
            self.p.clone(),
            self.y.clone(),
        )
    }

    pub fn struve_params(&self, j: usize) -> StruveParams {
        StruveParams::new(self.p[j], self.b, self.c)
    }

    /// `x + a + sqrt(x^2 + 2ax)`.
    pub fn kernel_base(&self, x: f64) -> f64 {
        x + self.a + (x * (x + 2.0 * self.a)).sqrt()
    }

    /// Argument of the `j`-th Struve factor at `x`.
    pub fn struve_argument(&self, j: usize, x: f64) -> f64 {
        let k = self.kernel_base(x);
        match self.variant {
            Variant::Theorem1 => self.y[j] / k,
            Variant::Theorem2 => x * self.y[j] / k,
        }
    }
}

fn ln_gamma_sum(args: &[ComplexValue]) -> SpecialResult<ComplexValue> {
    args.iter().try_fold(Complex64::new(0.0, 0.0), |acc, &z| Ok(acc + log_gamma(z)?))
}

fn finish_prefactor(lead: ComplexValue, ln_rest: ComplexValue, what: &str) -> SpecialResult<ComplexValue> {
    if ln_rest.re > 709.0 {
        return Err(SpecialError::Range(format!("{what} overflows")));
    }
    let v = lead * ln_rest.exp();
    if finite(v) {
        Ok(v)
    } else {
        Err(SpecialError::NonFinite(what.into()))
    }
}

/// `(p_j + 1) ln y_j` summed, minus `n ln Gamma(3/2) + sum ln Gamma(p_j + (b+2)/2)`.
fn ln_struve_normalization(case: &IntegralCase) -> SpecialResult<ComplexValue> {
    let mut acc = Complex64::new(0.0, 0.0);
    let ln_g32 = log_gamma(real(1.5))?;
    for j in 0..case.n() {
        let beta = case.struve_params(j).beta();
        if let Some(pole) = pole_at(beta) {
            return Err(SpecialError::Pole(pole));
        }
        acc += (case.p[j] + 1.0) * case.y[j].ln() - ln_g32 - log_gamma(beta)?;
    }
    Ok(acc)
}

fn require_variant(case: &IntegralCase, variant: Variant) -> SpecialResult<()> {
    if case.variant == variant {
        Ok(())
    } else {
        Err(SpecialError::Domain(format!(
            "expected a {} case, got {}",
            variant.name(),
            case.variant.name()
        )))
    }
}

/// The prefactor `A` of the first formula.
pub fn prefactor_theorem1(case: &IntegralCase) -> SpecialResult<ComplexValue> {
    require_variant(case, Variant::Theorem1)?;
    let n = case.n() as f64;
    let (lambda, mu) = (case.lambda, case.mu);
    let s = lambda + case.p_sum + n;
    let ln_rest = (1.0 - mu - case.p_sum - n) * LN_2
        + (mu - s) * case.a.ln()
        + ln_gamma_sum(&[2.0 * mu, s - mu])?
        - log_gamma(1.0 + s + mu)?
        + ln_struve_normalization(case)?;
    finish_prefactor(s, ln_rest, "Theorem 1 prefactor")
}

/// The prefactor `B` of the second formula.
pub fn prefactor_theorem2(case: &IntegralCase) -> SpecialResult<ComplexValue> {
    require_variant(case, Variant::Theorem2)?;
    let n = case.n() as f64;
    let (lambda, mu, ps) = (case.lambda, case.mu, case.p_sum);
    let ln_rest = (1.0 - mu - 2.0 * ps - 2.0 * n) * LN_2
        + (mu - lambda) * case.a.ln()
        + ln_gamma_sum(&[lambda - mu, 2.0 * mu + 2.0 * ps + 2.0 * n])?
        - log_gamma(1.0 + lambda + mu + 2.0 * ps + 2.0 * n)?
        + ln_struve_normalization(case)?;
    finish_prefactor(lambda + ps + n, ln_rest, "Theorem 2 prefactor")
}

fn per_variable_blocks(case: &IntegralCase) -> (Vec<Vec<LocalParam>>, Vec<Vec<LocalParam>>) {
    let upper = (0..case.n()).map(|_| vec![LocalParam::new(real(1.0), 1.0)]).collect();
    let lower = (0..case.n())
        .map(|j| {
            vec![
                LocalParam::new(real(1.5), 1.0),
                LocalParam::new(case.struve_params(j).beta(), 1.0),
            ]
        })
        .collect();
    (upper, lower)
}

/// Series structure and arguments of the first formula's right side.
pub fn rhs_spec_theorem1(case: &IntegralCase) -> SpecialResult<(LauricellaSpec, Vec<ComplexValue>)> {
    require_variant(case, Variant::Theorem1)?;
    let n = case.n();
    let s = case.lambda + case.p_sum + n as f64;
    let two = vec![2.0; n];
    let (pu, pl) = per_variable_blocks(case);
    let spec = LauricellaSpec::new(
        n,
        vec![
            GlobalParam::new(1.0 + s, two.clone()),
            GlobalParam::new(s - case.mu, two.clone()),
        ],
        vec![
            GlobalParam::new(s, two.clone()),
            GlobalParam::new(1.0 + s + case.mu, two),
        ],
        pu,
        pl,
    )?;
    let a2 = 4.0 * case.a * case.a;
    let z = case.y.iter().map(|&y| -case.c * (y * y) / a2).collect();
    Ok((spec, z))
}

/// Series structure and arguments of the second formula's right side.
pub fn rhs_spec_theorem2(case: &IntegralCase) -> SpecialResult<(LauricellaSpec, Vec<ComplexValue>)> {
    require_variant(case, Variant::Theorem2)?;
    let n = case.n();
    let nf = n as f64;
    let (lambda, mu, ps) = (case.lambda, case.mu, case.p_sum);
    let two = vec![2.0; n];
    let four = vec![4.0; n];
    let (pu, pl) = per_variable_blocks(case);
    let spec = LauricellaSpec::new(
        n,
        vec![
            GlobalParam::new(2.0 * mu + 2.0 * ps + 2.0 * nf, four.clone()),
            GlobalParam::new(1.0 + lambda + ps + nf, two.clone()),
        ],
        vec![
            GlobalParam::new(1.0 + lambda + mu + 2.0 * ps + 2.0 * nf, four),
            GlobalParam::new(lambda + ps + nf, two),
        ],
        pu,
        pl,
    )?;
    let z = case.y.iter().map(|&y| -case.c * (y * y) / 16.0).collect();
    Ok((spec, z))
}

/// Prefactor times the multi-variable series.
pub fn rhs_theorem(case: &IntegralCase, ctl: &SeriesControl) -> SpecialResult<SeriesSum> {
    let (pre, (spec, z)) = match case.variant {
        Variant::Theorem1 => (prefactor_theorem1(case)?, rhs_spec_theorem1(case)?),
        Variant::Theorem2 => (prefactor_theorem2(case)?, rhs_spec_theorem2(case)?),
    };
    Ok(lauricella_eval(&spec, &z, ctl)?.scaled(pre))
}

/// The four one-factor specializations in their printed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    /// First formula at `n = 1`, as a prefactor times `4F5`.
    One,
    /// Second formula at `n = 1`, as a prefactor times `3Psi4`.
    Two,
    /// [`Corollary::One`] with `b = -1, c = 1` (Struve `H_p`).
    Three,
    /// [`Corollary::Two`] with `b = -1, c = 1`.
    Four,
}

impl TryFrom<u8> for Corollary {
    type Error = SpecialError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Corollary::One),
            2 => Ok(Corollary::Two),
            3 => Ok(Corollary::Three),
            4 => Ok(Corollary::Four),
            _ => Err(SpecialError::Domain(format!("no corollary {v}"))),
        }
    }
}

/// `4F5` route: shared by the general and the `b = -1, c = 1` forms, which
/// differ only in the Struve lower parameter and the argument.
fn one_factor_4f5(
    case: &IntegralCase,
    struve_beta: ComplexValue,
    arg: ComplexValue,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    let (lambda, mu, p, a, y) = (case.lambda, case.mu, case.p[0], case.a, case.y[0]);
    let h = (lambda + p) / 2.0;
    let ln_rest = (-mu - p) * LN_2
        + (mu - 1.0 - lambda - p) * a.ln()
        + (p + 1.0) * y.ln()
        + ln_gamma_sum(&[2.0 * mu, 1.0 + lambda + p - mu])?
        - ln_gamma_sum(&[real(1.5), 2.0 + lambda + p + mu, struve_beta])?;
    let pre = finish_prefactor(1.0 + lambda + p, ln_rest, "4F5 prefactor")?;
    let upper = [1.5 + h, 0.5 + h - mu / 2.0, 1.0 + h - mu / 2.0, real(1.0)];
    let lower = [0.5 + h, 1.0 + h + mu / 2.0, 1.5 + h + mu / 2.0, struve_beta, real(1.5)];
    Ok(pfq(&upper, &lower, arg, ctl)?.scaled(pre))
}

fn one_factor_3psi4(
    case: &IntegralCase,
    struve_beta: ComplexValue,
    arg: ComplexValue,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    let (lambda, mu, p, a, y) = (case.lambda, case.mu, case.p[0], case.a, case.y[0]);
    let ln_rest = (-mu - 2.0 * p - 1.0) * LN_2
        + (mu - lambda) * a.ln()
        + (p + 1.0) * y.ln()
        + log_gamma(lambda - mu)?;
    let pre = finish_prefactor(real(1.0), ln_rest, "3Psi4 prefactor")?;
    let spec = FoxWrightSpec::new(
        vec![
            (real(1.0), 1.0),
            (lambda + p + 2.0, 2.0),
            (2.0 * mu + 2.0 * p + 2.0, 4.0),
        ],
        vec![
            (real(1.5), 1.0),
            (struve_beta, 1.0),
            (lambda + p + 1.0, 2.0),
            (lambda + mu + 2.0 * p + 3.0, 4.0),
        ],
    )?;
    Ok(fox_wright(&spec, arg, ctl)?.scaled(pre))
}

/// Right side of a one-factor specialization in its printed closed form.
///
/// Corollaries three and four require `b = -1, c = 1` and use `Gamma(p + 1/2)`
/// and the lower parameter `p + 1/2` throughout.
pub fn rhs_corollary(
    case: &IntegralCase,
    which: Corollary,
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    if case.n() != 1 {
        return Err(SpecialError::Domain(format!(
            "one-factor forms need n = 1, got n = {}",
            case.n()
        )));
    }
    let struve_h = matches!(which, Corollary::Three | Corollary::Four);
    if struve_h && (case.b != real(-1.0) || case.c != real(1.0)) {
        return Err(SpecialError::Domain(format!(
            "this form requires b = -1 and c = 1, got b = {}, c = {}",
            case.b, case.c
        )));
    }
    let (y, a, p) = (case.y[0], case.a, case.p[0]);
    match which {
        Corollary::One => {
            require_variant(case, Variant::Theorem1)?;
            let beta = 1.0 + case.b / 2.0 + p;
            one_factor_4f5(case, beta, -case.c * (y * y) / (4.0 * a * a), ctl)
        }
        Corollary::Three => {
            require_variant(case, Variant::Theorem1)?;
            one_factor_4f5(case, p + 0.5, real(-(y * y) / (4.0 * a * a)), ctl)
        }
        Corollary::Two => {
            require_variant(case, Variant::Theorem2)?;
            let beta = p + (case.b + 2.0) / 2.0;
            one_factor_3psi4(case, beta, -case.c * (y * y) / 16.0, ctl)
        }
        Corollary::Four => {
            require_variant(case, Variant::Theorem2)?;
            one_factor_3psi4(case, p + 0.5, real(-(y * y) / 16.0), ctl)
        }
    }
}

/// Pointwise product of the Struve factors at `x`.
struct StruveProduct<'a> {
    case: &'a IntegralCase,
    factors: Vec<PreparedStruve>,
    ctl: SeriesControl,
}

impl<'a> StruveProduct<'a> {
    fn new(case: &'a IntegralCase, ctl: &SeriesControl) -> SpecialResult<Self> {
        let factors = (0..case.n())
            .map(|j| PreparedStruve::generalized(&case.struve_params(j)))
            .collect::<SpecialResult<_>>()?;
        Ok(Self {
            case,
            factors,
            ctl: *ctl,
        })
    }

    fn eval(&self, x: f64) -> SpecialResult<ComplexValue> {
        let mut prod = real(1.0);
        for (j, w) in self.factors.iter().enumerate() {
            let u = self.case.struve_argument(j, x);
            if u == 0.0 {
                return Ok(real(0.0));
            }
            prod *= w.eval(u, &self.ctl)?.value;
        }
        Ok(prod)
    }
}

/// Full left-side integrand `x^(mu-1) K(x)^-lambda prod_j W(u_j(x))`.
pub fn lhs_integrand(case: &IntegralCase, x: f64, ctl: &SeriesControl) -> SpecialResult<ComplexValue> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(SpecialError::Domain(format!("x must be a positive real, got {x}")));
    }
    let g = StruveProduct::new(case, ctl)?.eval(x)?;
    let k = case.kernel_base(x);
    Ok(((case.mu - 1.0) * x.ln() - case.lambda * k.ln()).exp() * g)
}

/// Left side by quadrature.
pub fn lhs_quadrature(
    case: &IntegralCase,
    qctl: &QuadControl,
    sctl: &SeriesControl,
) -> SpecialResult<QuadResult> {
    let product = StruveProduct::new(case, sctl)?;
    integrate_kernel(|x| product.eval(x), case.a, case.mu, case.lambda, qctl)
}

/// Below this |rhs| the comparison switches to absolute error.
pub const RELATIVE_FLOOR: f64 = 1e-300;
/// Absolute tolerance used below [`RELATIVE_FLOOR`].
pub const ABSOLUTE_FLOOR: f64 = 1e-12;

/// Outcome of comparing the two sides of one case.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub case: IntegralCase,
    pub lhs: Option<QuadResult>,
    pub rhs: Option<SeriesSum>,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
    pub tolerance_used: f64,
    /// Why a side could not be evaluated, or a note on a non-converged side.
    pub note: Option<String>,
}

/// Evaluates both sides independently and compares them.
pub fn verify_case(
    case: &IntegralCase,
    qctl: &QuadControl,
    sctl: &SeriesControl,
    tol: f64,
) -> VerificationReport {
    let lhs = lhs_quadrature(case, qctl, sctl);
    let rhs = rhs_theorem(case, sctl);
    let mut report = VerificationReport {
        case: case.clone(),
        lhs: lhs.as_ref().ok().copied(),
        rhs: rhs.as_ref().ok().copied(),
        abs_err: f64::NAN,
        rel_err: f64::NAN,
        pass: false,
        tolerance_used: tol,
        note: None,
    };
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let abs_err = (l.value - r.value).norm();
            let scale = r.value.norm();
            report.abs_err = abs_err;
            report.rel_err = abs_err / scale.max(RELATIVE_FLOOR);
            report.pass = if scale < RELATIVE_FLOOR {
                abs_err <= ABSOLUTE_FLOOR
            } else {
                report.rel_err <= tol
            };
            if !l.converged {
                report.note = Some(format!(
                    "quadrature tolerance not met (error estimate {:.3e})",
                    l.error_estimate
                ));
            }
        }
        (Err(e), _) => report.note = Some(format!("left side failed: {e}")),
        (_, Err(e)) => report.note = Some(format!("right side failed: {e}")),
    }
    report
}
