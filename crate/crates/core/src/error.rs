//! Error types shared by every module.

use std::fmt;

use thiserror::Error;

/// A non-positive integer at which the gamma function has a pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaPole {
    location: i64,
}

impl GammaPole {
    /// Returns `None` unless `location <= 0`.
    pub fn new(location: i64) -> Option<Self> {
        (location <= 0).then_some(Self { location })
    }

    pub fn location(&self) -> i64 {
        self.location
    }
}

impl fmt::Display for GammaPole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.location)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("gamma function pole at {0}")]
    Pole(GammaPole),

    #[error("gamma pole in {block} parameter block (at {pole})")]
    BlockPole { block: String, pole: GammaPole },

    #[error("result out of range: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("condition violated: {0}")]
    ConditionViolated(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("integrand is not integrable at the origin (estimate grows under refinement)")]
    NonIntegrable,
}

impl SpecialError {
    /// True for failures of an iterative process (as opposed to bad input).
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            SpecialError::NonConvergence { .. } | SpecialError::NonIntegrable
        )
    }
}

pub type SpecialResult<T> = Result<T, SpecialError>;
