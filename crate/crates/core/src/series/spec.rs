use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::tail::certified_k0;
use super::SeriesError;
use crate::exact::{format_rational, rat, ratio, RatPoly, Rational};

/// Exponent of `C(4k, k)` in the summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinomialPower {
    Plus,
    Minus,
}

impl BinomialPower {
    pub fn as_i32(self) -> i32 {
        match self {
            BinomialPower::Plus => 1,
            BinomialPower::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(BinomialPower::Plus),
            -1 => Some(BinomialPower::Minus),
            _ => None,
        }
    }
}

/// `a·k + b`, one of the denominator factors the engine supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFactor {
    pub a: i64,
    pub b: i64,
}

impl LinearFactor {
    pub const ALLOWED: [LinearFactor; 9] = [
        LinearFactor { a: 1, b: 0 },
        LinearFactor { a: 1, b: 1 },
        LinearFactor { a: 2, b: -1 },
        LinearFactor { a: 3, b: -1 },
        LinearFactor { a: 3, b: -2 },
        LinearFactor { a: 3, b: 1 },
        LinearFactor { a: 3, b: 2 },
        LinearFactor { a: 4, b: -1 },
        LinearFactor { a: 4, b: -3 },
    ];

    pub fn new(a: i64, b: i64) -> Result<Self, SeriesError> {
        let f = LinearFactor { a, b };
        if LinearFactor::ALLOWED.contains(&f) {
            Ok(f)
        } else {
            Err(SeriesError::InvalidSpec(format!("unsupported denominator factor {f}")))
        }
    }

    pub fn eval(&self, k: u64) -> i64 {
        self.a * k as i64 + self.b
    }

    pub fn as_poly(&self) -> RatPoly {
        RatPoly::from_ints(&[self.b, self.a])
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a != 1 {
            write!(f, "{}", self.a)?;
        }
        write!(f, "k")?;
        match self.b.signum() {
            1 => write!(f, "+{}", self.b),
            -1 => write!(f, "{}", self.b),
            _ => Ok(()),
        }
    }
}

impl FromStr for LinearFactor {
    type Err = SeriesError;

    /// Accepts `k`, `k+1`, `3k-2`, ... (spaces ignored).
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        let bad = || SeriesError::InvalidSpec(format!("cannot parse denominator factor {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, tail) = t.split_once('k').ok_or_else(bad)?;
        let a = if head.is_empty() { 1 } else { head.parse().map_err(|_| bad())? };
        let b = if tail.is_empty() { 0 } else { tail.parse().map_err(|_| bad())? };
        if tail.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(bad());
        }
        LinearFactor::new(a, b)
    }
}

/// Declarative summand
/// `x^k · C(4k,k)^{±1} · (Σ_j N_j(k) H_{jk}) / Π(a_i k + b_i)` for
/// `k >= start`, with channel `j = 0` carrying no harmonic number.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    x: Rational,
    power: BinomialPower,
    start: u64,
    channels: BTreeMap<u8, RatPoly>,
    factors: Vec<LinearFactor>,
    k0: u64,
}

impl SeriesSpec {
    /// Validates the shape and certifies a term-ratio bound below one.
    pub fn new(
        x: Rational,
        power: BinomialPower,
        start: u64,
        channels: BTreeMap<u8, RatPoly>,
        factors: Vec<LinearFactor>,
    ) -> Result<Self, SeriesError> {
        if start > 1 {
            return Err(SeriesError::InvalidSpec(format!("start index must be 0 or 1, got {start}")));
        }
        if let Some(j) = channels.keys().find(|&&j| j > 4) {
            return Err(SeriesError::InvalidSpec(format!("harmonic channel {j} outside 0..=4")));
        }
        for f in &factors {
            LinearFactor::new(f.a, f.b)?;
            if start == 0 && f.eval(0) == 0 {
                return Err(SeriesError::InvalidSpec(format!(
                    "factor {f} vanishes at k = 0; start index must be 1"
                )));
            }
        }
        let limit = match power {
            BinomialPower::Plus => x.abs() * ratio(256, 27),
            BinomialPower::Minus => x.abs() * ratio(27, 256),
        };
        if limit >= rat(1) {
            return Err(SeriesError::Divergent(format_rational(&x)));
        }
        let channels: BTreeMap<u8, RatPoly> =
            channels.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        let mut spec = SeriesSpec { x, power, start, channels, factors, k0: 0 };
        spec.k0 = certified_k0(&spec)?;
        Ok(spec)
    }

    /// Single-channel convenience constructor without harmonic numbers.
    pub fn simple(
        x: Rational,
        power: BinomialPower,
        start: u64,
        numerator: RatPoly,
        factors: Vec<LinearFactor>,
    ) -> Result<Self, SeriesError> {
        SeriesSpec::new(x, power, start, BTreeMap::from([(0, numerator)]), factors)
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn power(&self) -> BinomialPower {
        self.power
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// Nonzero channels only.
    pub fn channels(&self) -> &BTreeMap<u8, RatPoly> {
        &self.channels
    }

    pub fn factors(&self) -> &[LinearFactor] {
        &self.factors
    }

    /// Smallest index from which the certified ratio bound is below one.
    pub fn k0(&self) -> u64 {
        self.k0
    }

    pub fn has_harmonics(&self) -> bool {
        self.channels.keys().any(|&j| j > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.channels.is_empty() || self.x.is_zero() && self.start > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_parsing() {
        assert_eq!("3k+1".parse::<LinearFactor>().unwrap(), LinearFactor { a: 3, b: 1 });
        assert_eq!("k".parse::<LinearFactor>().unwrap(), LinearFactor { a: 1, b: 0 });
        assert_eq!(" 4k - 3 ".parse::<LinearFactor>().unwrap(), LinearFactor { a: 4, b: -3 });
        assert!("5k+1".parse::<LinearFactor>().is_err());
        assert!("k2".parse::<LinearFactor>().is_err());
        for f in LinearFactor::ALLOWED {
            assert_eq!(f.to_string().parse::<LinearFactor>().unwrap(), f);
        }
    }

    #[test]
    fn radius_violation_rejected() {
        let p = RatPoly::from_ints(&[1]);
        let e = SeriesSpec::simple(ratio(1, 8), BinomialPower::Plus, 0, p.clone(), vec![]);
        assert!(matches!(e, Err(SeriesError::Divergent(_))));
        let e = SeriesSpec::simple(ratio(27, 256), BinomialPower::Plus, 0, p.clone(), vec![]);
        assert!(matches!(e, Err(SeriesError::Divergent(_))));
        assert!(SeriesSpec::simple(rat(8), BinomialPower::Minus, 1, p, vec![]).is_ok());
    }

    #[test]
    fn factor_k_needs_start_one() {
        let p = RatPoly::from_ints(&[1]);
        let k = LinearFactor::new(1, 0).unwrap();
        assert!(SeriesSpec::simple(ratio(1, 16), BinomialPower::Plus, 0, p.clone(), vec![k]).is_err());
        assert!(SeriesSpec::simple(ratio(1, 16), BinomialPower::Plus, 1, p, vec![k]).is_ok());
    }
}
