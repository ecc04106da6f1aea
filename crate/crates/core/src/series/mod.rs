//! Rigorous summation of `Σ x^k C(4k,k)^{±1} (Σ_j N_j(k) H_{jk}) / Π(a_i k + b_i)`.

mod spec;
mod sum;
mod tail;
mod term;

pub use spec::{BinomialPower, LinearFactor, SeriesSpec};
pub use sum::{choose_cutoff, partial_sum_ball, sum_series, sum_series_with, SeriesSum, SumOptions};
pub use tail::{binomial_ratio, ratio_bound, tail_bound, tail_bound_exact};
pub use term::{harmonic, term_exact, term_value, TermState};

use crate::numerics::Ball;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("invalid series: {0}")]
    InvalidSpec(String),
    #[error("series at x = {0} is outside the certified convergence region")]
    Divergent(String),
    #[error("index {0} excluded: a denominator factor vanishes or k precedes the start index")]
    IndexExcluded(u64),
    #[error("cutoff {cutoff} is below the certified index; need K >= {required}")]
    CutoffTooSmall { cutoff: u64, required: u64 },
    #[error("tail bound not reached within {0} terms")]
    TooManyTerms(u64),
    #[error("could not reach radius 1e-{digits}; best enclosure {best}")]
    PrecisionExhausted { digits: u32, best: Box<Ball> },
}
