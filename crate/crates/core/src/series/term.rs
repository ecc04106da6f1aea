use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::spec::{BinomialPower, SeriesSpec};
use super::SeriesError;
use crate::exact::{binomial, rat, Rational};
use crate::numerics::Ball;

/// `H_n = Σ_{0<i<=n} 1/i`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, i| acc + Rational::new(BigInt::one(), BigInt::from(i)))
}

/// Exact ingredients of the summand at index `k`, advanced by recurrences.
#[derive(Clone, Debug, PartialEq)]
pub struct TermState {
    pub k: u64,
    /// `C(4k, k)`.
    pub binom: BigInt,
    /// `x^k`.
    pub power: Rational,
    /// `[H_k, H_2k, H_3k, H_4k]`.
    pub harmonics: [Rational; 4],
}

impl TermState {
    /// Direct evaluation at index `k`.
    pub fn at(x: &Rational, k: u64) -> Self {
        TermState {
            k,
            binom: binomial(4 * k, k),
            power: x.pow(k as i32),
            harmonics: [harmonic(k), harmonic(2 * k), harmonic(3 * k), harmonic(4 * k)],
        }
    }

    /// Moves from `k` to `k + 1`.
    pub fn advance(&mut self, x: &Rational) {
        let k = self.k;
        let num: BigInt = (1..=4u64).map(|i| BigInt::from(4 * k + i)).product();
        let den = BigInt::from(k + 1)
            * BigInt::from(3 * k + 1)
            * BigInt::from(3 * k + 2)
            * BigInt::from(3 * k + 3);
        self.binom = &self.binom * num / den;
        self.power = &self.power * x;
        for (idx, h) in self.harmonics.iter_mut().enumerate() {
            let j = idx as u64 + 1;
            for i in 1..=j {
                *h += Rational::new(BigInt::one(), BigInt::from(j * k + i));
            }
        }
        self.k = k + 1;
    }

    /// `H_{jk}` for `j` in `1..=4`, and `1` for channel `0`.
    pub fn channel_weight(&self, j: u8) -> Rational {
        if j == 0 {
            rat(1)
        } else {
            self.harmonics[j as usize - 1].clone()
        }
    }
}

/// Exact summand at `state.k`.
pub fn term_exact(spec: &SeriesSpec, state: &TermState) -> Result<Rational, SeriesError> {
    let k = state.k;
    if k < spec.start() {
        return Err(SeriesError::IndexExcluded(k));
    }
    let mut den = BigInt::one();
    for f in spec.factors() {
        let v = f.eval(k);
        if v == 0 {
            return Err(SeriesError::IndexExcluded(k));
        }
        den *= v;
    }
    let kq = rat(k as i64);
    let mut inner = Rational::zero();
    for (&j, p) in spec.channels() {
        inner += p.eval(&kq) * state.channel_weight(j);
    }
    if inner.is_zero() || state.power.is_zero() {
        return Ok(Rational::zero());
    }
    let b = Rational::from_integer(state.binom.clone());
    let scaled = match spec.power() {
        BinomialPower::Plus => &state.power * b,
        BinomialPower::Minus => &state.power / b,
    };
    Ok(scaled * inner / Rational::from_integer(den))
}

/// Ball enclosure of the summand; the exact form is [`term_exact`].
pub fn term_value(spec: &SeriesSpec, state: &TermState, prec: u64) -> Result<Ball, SeriesError> {
    Ok(Ball::from_rational(&term_exact(spec, state)?, prec))
}
