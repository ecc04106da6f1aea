//! Exact arithmetic: rationals, dense univariate polynomials over any ring,
//! rational functions, Sturm root isolation, real algebraic numbers and
//! number fields `Q[t]/(p(t))` with a distinguished real embedding.
//!
//! Nothing in this module rounds.

mod algebraic;
mod field;
mod poly;
mod ratfunc;
mod ring;
mod sturm;

pub use algebraic::AlgebraicReal;
pub use field::{
    is_irreducible, nf_reduce, rational_roots, resultant_linear, split_depressed_quartic,
    sqrt_in_field, NFElem, NFPoly, NumberField, QuarticSplit,
};
pub use poly::{Poly, RatPoly};
pub use ratfunc::RatFunc;
pub use ring::{ConstRing, Field, Ring};
pub use sturm::{count_closed, count_roots, sturm_isolate, sturm_sequence};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("polynomial is not squarefree; divide by gcd(p, p') before isolating roots")]
    NotSquarefree,
    #[error("modulus {0} is reducible over Q")]
    Reducible(String),
    #[error("irreducibility of degree-{0} moduli is not supported (degree must be 1..=4)")]
    UnsupportedDegree(usize),
    #[error("interval does not isolate exactly one root ({0} roots found)")]
    NotIsolating(usize),
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` with decimal digits.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::ParseRational(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All positive divisors of `|n|` (n nonzero), ascending.
pub(crate) fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Exact square root of a nonnegative rational if it is a perfect square.
pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
