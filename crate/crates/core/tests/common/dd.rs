//! Double-double arithmetic (about 32 significant digits), used only as a
//! reference for the double-precision library.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact ratio of two integers (to double-double rounding).
    pub fn ratio(num: i64, den: i64) -> Self {
        Dd::new(num as f64) / Dd::new(den as f64)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // one Newton step from the double approximation doubles the precision
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        Dd { hi, lo }
    }

    pub fn powi(self, n: i32) -> Self {
        if n < 0 {
            return Dd::ONE / self.powi(-n);
        }
        let mut acc = Dd::ONE;
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    /// `Gamma(x)` for `x` a positive integer or half-integer.
    pub fn gamma_half_integer(x: f64) -> Self {
        let twice = (2.0 * x).round();
        assert!(twice == 2.0 * x && twice > 0.0, "not a positive half-integer: {x}");
        let (mut acc, mut t) = if twice as i64 % 2 == 0 {
            (Dd::ONE, 1.0)
        } else {
            (Dd::PI.sqrt(), 0.5)
        };
        while t < x {
            acc = acc * Dd::new(t);
            t += 1.0;
        }
        acc
    }

    /// Rising factorial `(x)_k` for exactly representable `x`.
    pub fn pochhammer(x: f64, k: usize) -> Self {
        (0..k).fold(Dd::ONE, |acc, j| acc * Dd::new(x + j as f64))
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[test]
fn sqrt_two_squares_back() {
    let r = Dd::new(2.0).sqrt();
    assert!((r * r - Dd::new(2.0)).abs().hi < 1e-31);
    let third = Dd::ratio(1, 3);
    assert!((third * Dd::new(3.0) - Dd::ONE).abs().hi < 1e-31);
}
