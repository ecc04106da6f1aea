use num_bigint::BigInt;
use num_traits::One;

use super::spec::SeriesSpec;
use super::tail::tail_bound_exact;
use super::term::{term_exact, TermState};
use super::SeriesError;
use crate::exact::{rat, Rational};
use crate::numerics::{bits_for_digits, Ball};

/// Escalation limits for [`sum_series_with`].
#[derive(Clone, Copy, Debug)]
pub struct SumOptions {
    /// Extra decimal digits of working precision over the target.
    pub guard_digits: u32,
    /// Precision increases of 64 bits attempted before giving up.
    pub max_retries: u32,
    /// Largest cutoff the engine will try.
    pub max_terms: u64,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { guard_digits: 20, max_retries: 6, max_terms: 1 << 20 }
    }
}

/// Enclosure with the cutoff and working precision that produced it.
#[derive(Clone, Debug)]
pub struct SeriesSum {
    pub value: Ball,
    pub cutoff: u64,
    pub prec: u64,
    pub tail: Rational,
}

pub(crate) fn ten_pow_neg(d: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(d))
}

/// Ball containing the full sum with radius at most `10^-digits`.
pub fn sum_series(spec: &SeriesSpec, digits: u32) -> Result<Ball, SeriesError> {
    Ok(sum_series_with(spec, digits, SumOptions::default())?.value)
}

/// Smallest cutoff whose certified tail is below `target`.
pub fn choose_cutoff(spec: &SeriesSpec, target: &Rational, max_terms: u64) -> Result<u64, SeriesError> {
    let floor = spec.k0().saturating_sub(1).max(spec.start());
    let below = |k: u64| -> Result<bool, SeriesError> { Ok(tail_bound_exact(spec, k)? < *target) };
    if below(floor)? {
        return Ok(floor);
    }
    let mut hi = floor.max(8);
    while !below(hi)? {
        if hi > max_terms {
            return Err(SeriesError::TooManyTerms(max_terms));
        }
        hi *= 2;
    }
    let mut lo = (hi / 2).max(floor);
    if hi == floor.max(8) {
        lo = floor;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Sums `start..=cutoff` exactly term by term, rounding each exact term into
/// a ball at `prec` bits.
pub fn partial_sum_ball(spec: &SeriesSpec, cutoff: u64, prec: u64) -> Result<Ball, SeriesError> {
    let x = spec.x();
    let mut state = TermState::at(x, spec.start());
    let mut acc = Ball::zero(prec);
    while state.k <= cutoff {
        let t = term_exact(spec, &state)?;
        acc = &acc + &Ball::from_rational(&t, prec);
        state.advance(x);
    }
    Ok(acc)
}

pub fn sum_series_with(spec: &SeriesSpec, digits: u32, opts: SumOptions) -> Result<SeriesSum, SeriesError> {
    let budget = ten_pow_neg(digits);
    let bits = bits_for_digits(digits + opts.guard_digits);
    if spec.channels().is_empty() {
        return Ok(SeriesSum { value: Ball::zero(bits), cutoff: spec.start(), prec: bits, tail: rat(0) });
    }
    let half = &budget / rat(2);
    let cutoff = choose_cutoff(spec, &half, opts.max_terms)?;
    let tail = tail_bound_exact(spec, cutoff)?;
    let mut prec = bits + 64 - u64::from(cutoff.leading_zeros());
    let mut best: Option<Ball> = None;
    for _ in 0..=opts.max_retries {
        let value = partial_sum_ball(spec, cutoff, prec)?.inflate(&tail);
        if value.rad() <= budget {
            return Ok(SeriesSum { value, cutoff, prec, tail });
        }
        best = Some(value);
        prec += 64;
    }
    Err(SeriesError::PrecisionExhausted { digits, best: Box::new(best.expect("at least one attempt")) })
}
