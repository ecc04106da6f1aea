//! Truncated power series and exact facts about `f(x) = Σ C(4k,k) x^k` and
//! `G_m(x) = Σ C(mk,k) x^k/((m-1)k+1)`, plus the number fields generated by
//! `f` at the special arguments.

mod checks;
mod contexts;
mod trunc;

pub use checks::{
    check_binomial_sum_gm, check_derivatives_f, check_f_log, check_gm, check_lagrange, check_log_gm,
    check_quartic_f, check_quartic_with, coeffs_f, coeffs_gm, SeriesCheck,
};
pub use contexts::{
    eval_f, f_prime, f_second, g4_of, make_alpha, make_beta, make_quartic_context, quartic_at, AlphaContext,
    BetaContext, QuarticContext,
};
pub use trunc::TruncSeries;

use crate::exact::ExactError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenfuncError {
    #[error("series has zero constant term and is not invertible")]
    NotInvertible,
    #[error("logarithm needs constant term 1")]
    LogConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    ComposeConstantTerm,
    #[error("argument {0} outside |x| < 27/256")]
    Domain(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
