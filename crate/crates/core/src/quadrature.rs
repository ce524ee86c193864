//! Semi-infinite quadrature for Oberhettinger-type integrals
//!
//! ```text
//! I = int_0^inf x^(mu-1) (x + a + sqrt(x^2 + 2ax))^(-lambda) g(x) dx
//! ```
//!
//! The substitution `x = a (cosh t - 1)` turns the kernel into `(a e^t)^-lambda`
//! and `dx` into `a sinh t dt`, leaving an integrand that decays like
//! `e^((mu - lambda) t)` and behaves like `t^(2mu - 1)` at the origin. The
//! `t`-axis is covered by unit panels out to a certified cutoff plus a graded
//! set of panels toward `t = 0`; panels are refined by bisection, worst error
//! first, using 32- and 16-point Gauss-Legendre rules as an embedded pair.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{SpecialError, SpecialResult};
use crate::gamma::gamma;
use crate::sum::{ComplexSum, NeumaierSum};
use crate::ComplexValue;

/// How far out along `t` the integral is carried.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailPolicy {
    /// Decay rate used in the remainder bound; defaults to `Re(lambda - mu)`.
    pub decay_rate: Option<f64>,
    /// Multiplier on the sampled integrand magnitude in the remainder bound.
    pub safety: f64,
    /// Hard cap on the cutoff.
    pub theta_max: f64,
}

impl Default for TailPolicy {
    fn default() -> Self {
        Self {
            decay_rate: None,
            safety: 2.0,
            theta_max: 200.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub tail: TailPolicy,
}

impl Default for QuadControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-30,
            max_panels: 2000,
            tail: TailPolicy::default(),
        }
    }
}

impl QuadControl {
    pub fn new(rel_tol: f64, abs_tol: f64, max_panels: usize) -> SpecialResult<Self> {
        let ctl = Self {
            rel_tol,
            abs_tol,
            max_panels,
            ..Self::default()
        };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> SpecialResult<Self> {
        let ctl = Self { rel_tol, ..self };
        ctl.validate()?;
        Ok(ctl)
    }

    fn validate(&self) -> SpecialResult<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(SpecialError::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_panels == 0 {
            return Err(SpecialError::Domain("max_panels must be at least 1".into()));
        }
        if !(self.tail.safety > 0.0 && self.tail.theta_max > 0.0) {
            return Err(SpecialError::Domain("tail policy parameters must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: ComplexValue,
    pub error_estimate: f64,
    pub panels_used: usize,
    pub cutoff_theta: f64,
    /// False when the tolerance was not reached within `max_panels`; `value`
    /// is then the best estimate available.
    pub converged: bool,
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(32), gauss_legendre(16)))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn integrate_panel<F>(f: &F, lo: f64, hi: f64) -> SpecialResult<Panel>
where
    F: Fn(f64) -> SpecialResult<Complex64>,
{
    let (high, low) = rules();
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut g32 = ComplexSum::new();
    for (x, w) in high.nodes.iter().zip(&high.weights) {
        g32.add(f(mid + half * x)? * (w * half));
    }
    let mut g16 = ComplexSum::new();
    for (x, w) in low.nodes.iter().zip(&low.weights) {
        g16.add(f(mid + half * x)? * (w * half));
    }
    let value = g32.value();
    Ok(Panel {
        lo,
        hi,
        value,
        error: (value - g16.value()).norm(),
    })
}

/// Levels of geometric grading (ratio 1/2) placed toward `t = 0` up front.
const INITIAL_GRADING: usize = 8;

/// Consecutive non-shrinking bisections of the origin panel that mark the
/// integral as divergent there.
const DIVERGENCE_STRIKES: usize = 8;

/// `int_0^inf x^(mu-1) (x + a + sqrt(x^2+2ax))^(-lambda_eff) g(x) dx`.
///
/// The caller certifies integrability at `x = 0` (through `mu` and the small-`x`
/// behaviour of `g`); a tail with `Re(lambda_eff - mu) <= 0` is rejected.
pub fn integrate_kernel<G>(
    g: G,
    a: f64,
    mu: ComplexValue,
    lambda_eff: ComplexValue,
    ctl: &QuadControl,
) -> SpecialResult<QuadResult>
where
    G: Fn(f64) -> SpecialResult<ComplexValue>,
{
    ctl.validate()?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(SpecialError::Domain(format!("a must be a positive real, got {a}")));
    }
    let decay = ctl.tail.decay_rate.unwrap_or((lambda_eff - mu).re);
    if !(decay > 0.0) {
        return Err(SpecialError::Domain(format!(
            "integrand does not decay: Re(lambda - mu) = {}",
            (lambda_eff - mu).re
        )));
    }
    let ln_a = a.ln();
    let ln_2 = std::f64::consts::LN_2;
    let f = |t: f64| -> SpecialResult<Complex64> {
        let sh = (0.5 * t).sinh();
        // x = a (cosh t - 1) = 2a sinh^2(t/2)
        let x = 2.0 * a * sh * sh;
        if x == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let gx = g(x)?;
        if gx == Complex64::new(0.0, 0.0) {
            return Ok(gx);
        }
        let ln_x = ln_a + ln_2 + 2.0 * sh.ln();
        let ln_jac = ln_a + t.sinh().ln();
        let ln_f = (mu - 1.0) * ln_x - lambda_eff * (ln_a + t) + ln_jac;
        let v = ln_f.exp() * gx;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(SpecialError::NonFinite(format!("integrand at t = {t}")))
        }
    };
    let target = |value: f64| ctl.abs_tol.max(ctl.rel_tol * value);

    // Unit panels outward until the sampled envelope certifies the tail.
    let mut panels: Vec<Panel> = Vec::new();
    let mut running = ComplexSum::new();
    let mut cutoff: f64 = 0.0;
    let mut tail_bound;
    loop {
        let lo = cutoff;
        let hi = (cutoff + 1.0).min(ctl.tail.theta_max);
        let p = integrate_panel(&f, lo, hi)?;
        running.add(p.value);
        panels.push(p);
        cutoff = hi;
        let envelope = f(cutoff)?.norm().max(f(cutoff - 0.5)?.norm());
        tail_bound = ctl.tail.safety * envelope / decay;
        let out_of_budget = panels.len() + INITIAL_GRADING + 1 >= ctl.max_panels;
        if tail_bound < target(running.value().norm()) / 10.0
            || cutoff >= ctl.tail.theta_max
            || out_of_budget
        {
            break;
        }
    }

    // Graded split of the first panel toward the origin.
    let first = panels.remove(0);
    let mut graded = Vec::new();
    let mut hi = first.hi;
    let levels = INITIAL_GRADING.min(ctl.max_panels.saturating_sub(panels.len() + 1));
    for _ in 0..levels {
        let lo = 0.5 * hi;
        graded.push(integrate_panel(&f, lo, hi)?);
        hi = lo;
    }
    graded.push(integrate_panel(&f, 0.0, hi)?);
    panels.extend(graded);

    let mut heap: BinaryHeap<Panel> = panels.into_iter().collect();
    let total = |heap: &BinaryHeap<Panel>| {
        let mut v = ComplexSum::new();
        let mut e = NeumaierSum::new();
        for p in heap.iter() {
            v.add(p.value);
            e.add(p.error);
        }
        (v.value(), e.value())
    };
    let (mut value, mut err) = total(&heap);
    let mut origin_strikes = 0;
    while err + tail_bound > target(value.norm()) && heap.len() < ctl.max_panels {
        let worst = heap.pop().expect("non-empty panel set");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = integrate_panel(&f, worst.lo, mid)?;
        let right = integrate_panel(&f, mid, worst.hi)?;
        if worst.lo == 0.0 {
            if left.value.norm() >= 0.999 * worst.value.norm() && worst.value.norm() > 0.0 {
                origin_strikes += 1;
                if origin_strikes >= DIVERGENCE_STRIKES {
                    return Err(SpecialError::NonIntegrable);
                }
            } else {
                origin_strikes = 0;
            }
        }
        heap.push(left);
        heap.push(right);
        let (v, e) = total(&heap);
        value = v;
        err = e;
    }

    // final value summed in position order for reproducibility
    let mut ordered = heap.into_vec();
    ordered.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    let mut v = ComplexSum::new();
    let mut e = NeumaierSum::new();
    for p in &ordered {
        v.add(p.value);
        e.add(p.error);
    }
    let value = v.value();
    let error_estimate = e.value() + tail_bound;
    Ok(QuadResult {
        value,
        error_estimate,
        panels_used: ordered.len(),
        cutoff_theta: cutoff,
        converged: error_estimate <= target(value.norm()),
    })
}

/// Closed form `2 lambda a^-lambda (a/2)^mu Gamma(2mu) Gamma(lambda-mu) / Gamma(1+lambda+mu)`,
/// valid for `0 < Re(mu) < Re(lambda)`.
pub fn oberhettinger_closed_form(
    a: f64,
    mu: ComplexValue,
    lambda: ComplexValue,
) -> SpecialResult<ComplexValue> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(SpecialError::Domain(format!("a must be a positive real, got {a}")));
    }
    if !(mu.re > 0.0 && mu.re < lambda.re) {
        return Err(SpecialError::Domain(format!(
            "requires 0 < Re(mu) < Re(lambda), got mu = {mu}, lambda = {lambda}"
        )));
    }
    let ln_a = a.ln();
    let powers = (-lambda * ln_a + mu * (ln_a - std::f64::consts::LN_2)).exp();
    let v = 2.0 * lambda * powers * gamma(2.0 * mu)? * gamma(lambda - mu)? / gamma(1.0 + lambda + mu)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(SpecialError::NonFinite("Oberhettinger closed form".into()))
    }
}
