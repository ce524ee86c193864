//! Generalized Struve functions, Fox-Wright and generalized hypergeometric
//! series, Srivastava-Daoust (generalized Lauricella) multi-variable series,
//! and a semi-infinite quadrature for the kernel
//! `x^(mu-1) (x + a + sqrt(x^2 + 2ax))^(-lambda)`.
//!
//! The [`identities`] module ties these together: it evaluates both sides of
//! the two product-of-Struve integral formulas (and their one-factor
//! corollaries) by independent routes and reports the discrepancy.

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gamma;
pub mod identities;
pub mod lauricella;
pub mod quadrature;
pub mod series;
pub mod sum;

pub use error::{GammaPole, SpecialError, SpecialResult};
pub use num_complex::Complex64;

/// The scalar type used throughout the library.
pub type ComplexValue = Complex64;

/// Shorthand for a complex number with zero imaginary part.
#[inline]
pub fn real(x: f64) -> ComplexValue {
    Complex64::new(x, 0.0)
}
