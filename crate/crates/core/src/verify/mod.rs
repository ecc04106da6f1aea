//! Runs the catalog and the exact suites and renders their reports.

mod crosscheck;
mod exact_suite;
mod numeric;
mod record;

pub use crosscheck::{crosscheck, crosscheck_with_budget, representation_integral, CrossCheckRecord};
pub use exact_suite::{exact_check_names, run_exact_checks};
pub use numeric::{evaluate_lhs, verify_all, verify_entry, DEFAULT_DIGITS};
pub use record::{
    render_crosscheck, render_exact, render_verification, ExactCheckRecord, ReportFormat, Status,
    VerificationRecord,
};

use crate::numerics::NumericError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
