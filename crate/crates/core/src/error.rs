use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {z} lies within pole tolerance of a non-positive integer")]
    Pole { z: Complex64 },

    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("weight at index {k} is {value}, not a positive real number")]
    NonPositiveWeight { k: usize, value: Complex64 },

    #[error("point {z} lies outside the open unit disc")]
    Domain { z: Complex64 },

    #[error("coefficient magnitude {value} at index {k} is out of range")]
    CoefficientOutOfRange { k: usize, value: f64 },

    #[error("degenerate denominator at {} grid point(s)", points.len())]
    DegenerateDenominator { points: Vec<Complex64> },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
