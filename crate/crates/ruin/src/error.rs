//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be a finite number, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    #[error("{name} must be non-negative, got {value}")]
    NegativeProbability { name: &'static str, value: f64 },

    #[error("pr + pl + pp must equal 1 within 1e-12 in strict mode, got {sum}")]
    SimplexViolation { sum: f64 },

    #[error("pr + pl must equal 1 within 1e-12, got {sum}")]
    PairNotNormalized { sum: f64 },

    #[error("series 2F1({a}, {b}; ...) does not terminate: neither parameter is a non-positive integer")]
    NonTerminatingSeries { a: f64, b: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("moment diverges: pl - pr = {delta_p} is not positive")]
    DivergentMoment { delta_p: f64 },

    #[error("grid of {cells} cells exceeds the memory budget of {budget} cells")]
    Capacity { cells: u128, budget: u128 },

    #[error("floating-point solve residual {residual} exceeds 1e-10; use the rational mode")]
    Precision { residual: f64 },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
