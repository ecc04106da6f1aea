//! Directed-rounding interval arithmetic over dyadic endpoints, rigorous
//! constants, and a heuristic quadrature used for cross-checks.

mod ball;
mod consts;
mod dyadic;
mod quad;

pub use ball::{format_sci, Ball};
pub use consts::{const_log, const_pi, const_sqrt};
pub use dyadic::{Dyadic, Round};
pub use quad::{quad_integrate, quad_integrate_with, QuadOptions, QuadResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("division by an enclosure containing zero: {0}")]
    DivisionByZero(String),
    #[error("logarithm of a non-positive enclosure: {0}")]
    LogDomain(String),
    #[error("square root of an enclosure with negative points: {0}")]
    SqrtDomain(String),
    #[error("quadrature did not converge after {evaluations} evaluations (best {best:e}, estimated error {error_estimate:e})")]
    NoConvergence { best: f64, error_estimate: f64, evaluations: usize },
}

/// Bits needed for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u64 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u64
}
