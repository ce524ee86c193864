//! Srivastava-Daoust generalized Lauricella series in `n` variables.
//!
//! ```text
//! F(z_1..z_n) = sum_{k_1..k_n >= 0} Omega(k) z_1^k_1/k_1! ... z_n^k_n/k_n!
//! ```
//!
//! where `Omega(k)` is a ratio of Pochhammer symbols whose subscripts are
//! linear forms in `k` (global blocks) or multiples of a single `k_m`
//! (per-variable blocks). The sum is taken shell by shell in total degree
//! `|k| = k_1 + ... + k_n`, in [`ShellIter`] order inside a shell.

use num_complex::Complex64;

use crate::error::{SpecialError, SpecialResult};
use crate::gamma::{ln_pochhammer, log_gamma, pole_at};
use crate::series::{SeriesControl, SeriesSum};
use crate::sum::ComplexSum;
use crate::{real, ComplexValue};

/// A global Pochhammer parameter with one exponent per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalParam {
    pub value: ComplexValue,
    pub weights: Vec<f64>,
}

/// A per-variable Pochhammer parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalParam {
    pub value: ComplexValue,
    pub weight: f64,
}

impl GlobalParam {
    pub fn new(value: ComplexValue, weights: Vec<f64>) -> Self {
        Self { value, weights }
    }

    fn subscript(&self, k: &[usize]) -> f64 {
        self.weights.iter().zip(k).map(|(w, &km)| w * km as f64).sum()
    }
}

impl LocalParam {
    pub fn new(value: ComplexValue, weight: f64) -> Self {
        Self { value, weight }
    }
}

/// Full parameter structure of an `n`-variable series.
#[derive(Debug, Clone, PartialEq)]
pub struct LauricellaSpec {
    n: usize,
    global_upper: Vec<GlobalParam>,
    global_lower: Vec<GlobalParam>,
    per_var_upper: Vec<Vec<LocalParam>>,
    per_var_lower: Vec<Vec<LocalParam>>,
}

fn check_weight(w: f64, block: &str) -> SpecialResult<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(SpecialError::Domain(format!(
            "{block} exponents must be positive reals, got {w}"
        )))
    }
}

impl LauricellaSpec {
    /// Validates exponent positivity, vector lengths, and a non-negative
    /// per-variable convergence margin.
    pub fn new(
        n: usize,
        global_upper: Vec<GlobalParam>,
        global_lower: Vec<GlobalParam>,
        per_var_upper: Vec<Vec<LocalParam>>,
        per_var_lower: Vec<Vec<LocalParam>>,
    ) -> SpecialResult<Self> {
        if n == 0 {
            return Err(SpecialError::Domain("number of variables must be positive".into()));
        }
        for (block, params) in [("global upper", &global_upper), ("global lower", &global_lower)] {
            for g in params {
                if g.weights.len() != n {
                    return Err(SpecialError::Domain(format!(
                        "{block} exponent vector has length {}, expected {n}",
                        g.weights.len()
                    )));
                }
                for &w in &g.weights {
                    check_weight(w, block)?;
                }
            }
        }
        for (block, lists) in [("per-variable upper", &per_var_upper), ("per-variable lower", &per_var_lower)] {
            if lists.len() != n {
                return Err(SpecialError::Domain(format!(
                    "{block} has {} variable lists, expected {n}",
                    lists.len()
                )));
            }
            for l in lists.iter().flatten() {
                check_weight(l.weight, block)?;
            }
        }
        let spec = Self {
            n,
            global_upper,
            global_lower,
            per_var_upper,
            per_var_lower,
        };
        for m in 0..n {
            let margin = spec.margin(m);
            if margin < 0.0 {
                return Err(SpecialError::Divergence(format!(
                    "convergence margin of variable {} is {margin}",
                    m + 1
                )));
            }
        }
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn global_upper(&self) -> &[GlobalParam] {
        &self.global_upper
    }

    pub fn global_lower(&self) -> &[GlobalParam] {
        &self.global_lower
    }

    pub fn per_var_upper(&self) -> &[Vec<LocalParam>] {
        &self.per_var_upper
    }

    pub fn per_var_lower(&self) -> &[Vec<LocalParam>] {
        &self.per_var_lower
    }

    /// `1 + sum psi^(m) + sum delta^(m) - sum theta^(m) - sum phi^(m)`.
    pub fn margin(&self, m: usize) -> f64 {
        let g = |ps: &[GlobalParam]| ps.iter().map(|p| p.weights[m]).sum::<f64>();
        let l = |ps: &[LocalParam]| ps.iter().map(|p| p.weight).sum::<f64>();
        1.0 + g(&self.global_lower) + l(&self.per_var_lower[m])
            - g(&self.global_upper)
            - l(&self.per_var_upper[m])
    }

    /// Single-variable radius of convergence in variable `m` for a zero
    /// margin (the Fox-Wright radius of the `m`-th coordinate series).
    fn radius(&self, m: usize) -> f64 {
        let up: f64 = self
            .global_upper
            .iter()
            .map(|p| p.weights[m])
            .chain(self.per_var_upper[m].iter().map(|p| p.weight))
            .map(|w| w.powf(-w))
            .product();
        let lo: f64 = self
            .global_lower
            .iter()
            .map(|p| p.weights[m])
            .chain(self.per_var_lower[m].iter().map(|p| p.weight))
            .map(|w| w.powf(w))
            .product();
        up * lo
    }

    /// Reorders the variables: variable `m` of the result is variable
    /// `perm[m]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> SpecialResult<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || !perm.iter().all(|&i| i < self.n && !std::mem::replace(&mut seen[i], true)) {
            return Err(SpecialError::Domain("not a permutation of the variables".into()));
        }
        let remap = |ps: &[GlobalParam]| {
            ps.iter()
                .map(|p| GlobalParam::new(p.value, perm.iter().map(|&i| p.weights[i]).collect()))
                .collect()
        };
        Ok(Self {
            n: self.n,
            global_upper: remap(&self.global_upper),
            global_lower: remap(&self.global_lower),
            per_var_upper: perm.iter().map(|&i| self.per_var_upper[i].clone()).collect(),
            per_var_lower: perm.iter().map(|&i| self.per_var_lower[i].clone()).collect(),
        })
    }
}

/// A point of the summation lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }
}

/// All multi-indices of a fixed total degree in ascending lexicographic
/// order, e.g. `(0,2), (1,1), (2,0)` for `n = 2, d = 2`.
#[derive(Debug, Clone)]
pub struct ShellIter {
    current: Option<Vec<usize>>,
}

impl Iterator for ShellIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let k = self.current.take()?;
        let n = k.len();
        // successor: bump the last position that still has mass to its right
        let mut right = 0;
        let mut next = None;
        for j in (0..n.saturating_sub(1)).rev() {
            right += k[j + 1];
            if right > 0 {
                let mut s = k.clone();
                s[j] += 1;
                for x in &mut s[j + 1..] {
                    *x = 0;
                }
                s[n - 1] = right - 1;
                next = Some(s);
                break;
            }
        }
        self.current = next;
        Some(MultiIndex(k))
    }
}

pub fn shell_iterator(n: usize, total_degree: usize) -> ShellIter {
    if n == 0 {
        return ShellIter { current: None };
    }
    let mut start = vec![0; n];
    start[n - 1] = total_degree;
    ShellIter {
        current: Some(start),
    }
}

fn describe(block: &str, j: usize, m: Option<usize>) -> String {
    match m {
        Some(m) => format!("{block} #{} of variable {}", j + 1, m + 1),
        None => format!("{block} #{}", j + 1),
    }
}

/// log of a numerator block, `None` if it vanishes.
fn ln_upper(value: ComplexValue, nu: f64) -> SpecialResult<Option<Complex64>> {
    ln_pochhammer(value, nu)
}

/// log of a denominator block; a vanishing denominator is an error.
fn ln_lower(value: ComplexValue, nu: f64, block: String) -> SpecialResult<Complex64> {
    let pole_err = || {
        let pole = pole_at(value)
            .or_else(|| pole_at(value + nu))
            .unwrap_or_else(|| crate::GammaPole::new(0).expect("0 is a pole"));
        SpecialError::BlockPole { block: block.clone(), pole }
    };
    match ln_pochhammer(value, nu) {
        Ok(Some(l)) => Ok(l),
        Ok(None) => Err(pole_err()),
        Err(SpecialError::Pole(_)) => Err(pole_err()),
        Err(e) => Err(e),
    }
}

/// Per-variable factor `prod (b)_{k phi} / prod (d)_{k delta}` in log space,
/// or `None` when a numerator block vanishes.
fn ln_local(spec: &LauricellaSpec, m: usize, km: usize) -> SpecialResult<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, p) in spec.per_var_upper[m].iter().enumerate() {
        match ln_upper(p.value, p.weight * km as f64) {
            Ok(Some(l)) => acc += l,
            Ok(None) => return Ok(None),
            Err(SpecialError::Pole(pole)) => {
                return Err(SpecialError::BlockPole {
                    block: describe("per-variable upper", j, Some(m)),
                    pole,
                })
            }
            Err(e) => return Err(e),
        }
    }
    for (j, p) in spec.per_var_lower[m].iter().enumerate() {
        acc -= ln_lower(p.value, p.weight * km as f64, describe("per-variable lower", j, Some(m)))?;
    }
    Ok(Some(acc))
}

fn ln_global(spec: &LauricellaSpec, k: &[usize]) -> SpecialResult<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, p) in spec.global_upper.iter().enumerate() {
        match ln_upper(p.value, p.subscript(k)) {
            Ok(Some(l)) => acc += l,
            Ok(None) => return Ok(None),
            Err(SpecialError::Pole(pole)) => {
                return Err(SpecialError::BlockPole {
                    block: describe("global upper", j, None),
                    pole,
                })
            }
            Err(e) => return Err(e),
        }
    }
    for (j, p) in spec.global_lower.iter().enumerate() {
        acc -= ln_lower(p.value, p.subscript(k), describe("global lower", j, None))?;
    }
    Ok(Some(acc))
}

fn check_index(spec: &LauricellaSpec, k: &MultiIndex) -> SpecialResult<()> {
    if k.0.len() == spec.n {
        Ok(())
    } else {
        Err(SpecialError::Domain(format!(
            "multi-index has {} components, expected {}",
            k.0.len(),
            spec.n
        )))
    }
}

/// The coefficient `Omega(k)` (without the `z^k / k!` factors).
pub fn omega(spec: &LauricellaSpec, k: &MultiIndex) -> SpecialResult<ComplexValue> {
    check_index(spec, k)?;
    let Some(mut ln) = ln_global(spec, &k.0)? else {
        return Ok(real(0.0));
    };
    for (m, &km) in k.0.iter().enumerate() {
        match ln_local(spec, m, km)? {
            Some(l) => ln += l,
            None => return Ok(real(0.0)),
        }
    }
    exp_checked(ln)
}

fn exp_checked(ln: Complex64) -> SpecialResult<Complex64> {
    if ln.re > 709.0 {
        return Err(SpecialError::Range("Lauricella coefficient overflows".into()));
    }
    Ok(ln.exp())
}

/// Default cap on the total degree of summed shells.
pub const DEFAULT_MAX_DEGREE: usize = 400;

/// Number of trailing shells inspected by the stopping rule.
pub const SHELL_WINDOW: usize = 3;

/// Memoized per-variable factor `local block(k_m) z_m^k_m / k_m!`, kept as
/// a log-magnitude part and a unit phase. The phase is built by repeated
/// multiplication so real arguments keep exact signs.
struct LocalCache<'a> {
    spec: &'a LauricellaSpec,
    /// `(ln |z_m|, z_m / |z_m|)`, or `None` for `z_m = 0`.
    polar: Vec<Option<(f64, Complex64)>>,
    values: Vec<Vec<Option<(Complex64, Complex64)>>>,
}

impl<'a> LocalCache<'a> {
    fn get(&mut self, m: usize, km: usize) -> SpecialResult<Option<(Complex64, Complex64)>> {
        while self.values[m].len() <= km {
            let j = self.values[m].len();
            let v = match (j, self.polar[m]) {
                (0, _) => ln_local(self.spec, m, 0)?.map(|l| (l, real(1.0))),
                (_, None) => None,
                (_, Some((ln_abs, unit))) => {
                    let ln_fact = log_gamma(real(j as f64 + 1.0))?.re;
                    let phase = match self.values[m][j - 1] {
                        Some((_, ph)) => ph * unit,
                        None => unit_power(unit, j),
                    };
                    ln_local(self.spec, m, j)?.map(|l| (l + ln_abs * j as f64 - ln_fact, phase))
                }
            };
            self.values[m].push(v);
        }
        Ok(self.values[m][km])
    }
}

fn unit_power(unit: Complex64, j: usize) -> Complex64 {
    (0..j).fold(real(1.0), |acc, _| acc * unit)
}

/// Evaluates the series at `z` with the default degree cap.
pub fn lauricella_eval(
    spec: &LauricellaSpec,
    z: &[ComplexValue],
    ctl: &SeriesControl,
) -> SpecialResult<SeriesSum> {
    lauricella_eval_with_cap(spec, z, ctl, DEFAULT_MAX_DEGREE)
}

/// Shell-by-shell summation; stops once the absolute mass of each of the
/// last [`SHELL_WINDOW`] shells is at most `rel_tol * |partial sum|`.
///
/// `SeriesSum::terms` counts shells summed.
pub fn lauricella_eval_with_cap(
    spec: &LauricellaSpec,
    z: &[ComplexValue],
    ctl: &SeriesControl,
    max_degree: usize,
) -> SpecialResult<SeriesSum> {
    if z.len() != spec.n {
        return Err(SpecialError::Domain(format!(
            "expected {} arguments, got {}",
            spec.n,
            z.len()
        )));
    }
    for (m, zm) in z.iter().enumerate() {
        if !(zm.re.is_finite() && zm.im.is_finite()) {
            return Err(SpecialError::Domain(format!("argument {} is not finite", m + 1)));
        }
        if spec.margin(m) == 0.0 && zm.norm() >= crate::series::RADIUS_SAFETY * spec.radius(m) {
            return Err(SpecialError::Divergence(format!(
                "|z_{}| = {} outside the accepted radius",
                m + 1,
                zm.norm()
            )));
        }
    }
    let mut cache = LocalCache {
        spec,
        polar: z
            .iter()
            .map(|zm| (zm.norm() > 0.0).then(|| (zm.norm().ln(), zm / zm.norm())))
            .collect(),
        values: vec![Vec::new(); spec.n],
    };
    let mut total = ComplexSum::new();
    let mut weighted_mass = 0.0;
    let mut shell_mass: Vec<f64> = Vec::new();
    for degree in 0..=max_degree {
        let mut mass = 0.0;
        for k in shell_iterator(spec.n, degree) {
            let Some(mut ln) = ln_global(spec, &k.0)? else {
                continue;
            };
            let mut phase = real(1.0);
            let mut zero = false;
            for (m, &km) in k.0.iter().enumerate() {
                match cache.get(m, km)? {
                    Some((l, ph)) => {
                        ln += l;
                        phase *= ph;
                    }
                    None => {
                        zero = true;
                        break;
                    }
                }
            }
            if zero {
                continue;
            }
            let term = exp_checked(ln)? * phase;
            total.add(term);
            mass += term.norm();
            // each coefficient carries a relative error of order eps * |ln|
            weighted_mass += term.norm() * (1.0 + ln.norm());
        }
        shell_mass.push(mass);
        let partial = total.value().norm();
        let window = &shell_mass[shell_mass.len().saturating_sub(SHELL_WINDOW)..];
        if window.len() == SHELL_WINDOW
            && window.iter().all(|&s| s <= ctl.rel_tol() * partial)
            && partial > 0.0
        {
            let last = window[SHELL_WINDOW - 1];
            let prev = window[SHELL_WINDOW - 2];
            let ratio = if prev > 0.0 { last / prev } else { 0.0 };
            let tail = if ratio < 1.0 {
                last * ratio / (1.0 - ratio)
            } else {
                window.iter().sum()
            };
            let value = total.value();
            return Ok(SeriesSum {
                value,
                terms: degree + 1,
                tail_estimate: tail,
                rounding_estimate: f64::EPSILON * weighted_mass.max(value.norm()),
            });
        }
    }
    Err(SpecialError::NonConvergence {
        terms: max_degree + 1,
    })
}
