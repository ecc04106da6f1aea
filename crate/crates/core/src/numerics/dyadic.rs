use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// `m · 2^e`, canonical with `m` odd (or zero with `e = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        Dyadic { m: m >> tz, e: e + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Position of the most significant bit: `|self| ∈ [2^(k-1), 2^k)`.
    pub fn magnitude_bits(&self) -> i64 {
        self.m.bits() as i64 + self.e
    }

    pub fn neg(&self) -> Self {
        Dyadic { m: -&self.m, e: self.e }
    }

    pub fn abs(&self) -> Self {
        Dyadic { m: self.m.abs(), e: self.e }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dyadic::new(&self.m * &o.m, self.e + o.e)
    }

    /// `self · 2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { m: self.m.clone(), e: self.e + k }
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u64, dir: Round) -> Self {
        let bits = self.m.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let m = match dir {
            Round::Down => floor_shr(&self.m, shift),
            Round::Up => -floor_shr(&-&self.m, shift),
        };
        Dyadic::new(m, self.e + shift as i64)
    }

    /// Directed rounding of a rational to `prec` significant bits.
    pub fn from_rational(q: &Rational, prec: u64, dir: Round) -> Self {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = (q.numer(), q.denom());
        let s = prec as i64 + 1 - (n.bits() as i64 - d.bits() as i64);
        let (num, den) = if s >= 0 {
            (n << s as u64, d.clone())
        } else {
            (n.clone(), d << (-s) as u64)
        };
        let (fl, r) = num.div_mod_floor(&den);
        let m = if dir == Round::Up && !r.is_zero() { fl + 1 } else { fl };
        Dyadic::new(m, -s).round(prec, dir)
    }

    /// Exact value.
    pub fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << self.e as u64)
        } else {
            Rational::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.m >> shift as u64).to_f64().unwrap_or(0.0);
        top * 2f64.powi((self.e + shift).clamp(-2000, 2000) as i32)
    }

    /// Floor of the value as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as u64
        } else {
            floor_shr(&self.m, (-self.e) as u64)
        }
    }
}

/// Floor division by `2^k`.
fn floor_shr(m: &BigInt, k: u64) -> BigInt {
    // BigInt's >> on negatives rounds toward -inf.
    m >> k
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.m, self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(BigInt::from(12), 0);
        assert_eq!((d.mantissa().clone(), d.exponent()), (BigInt::from(3), 2));
    }

    #[test]
    fn directed_rounding_of_third() {
        let q = ratio(1, 3);
        let lo = Dyadic::from_rational(&q, 20, Round::Down);
        let hi = Dyadic::from_rational(&q, 20, Round::Up);
        assert!(lo.to_rational() < q && q < hi.to_rational());
        assert!(hi.to_rational() - lo.to_rational() <= ratio(1, 1 << 20));
    }

    #[test]
    fn negative_rounding() {
        let d = Dyadic::from_int(-7); // -111b
        assert_eq!(d.round(2, Round::Down), Dyadic::from_int(-8));
        assert_eq!(d.round(2, Round::Up), Dyadic::from_int(-6));
    }

    #[test]
    fn exact_values_unchanged() {
        let q = ratio(-5, 8);
        assert_eq!(Dyadic::from_rational(&q, 10, Round::Up).to_rational(), q);
        assert_eq!(Dyadic::from_int(3).floor_int(), BigInt::from(3));
        assert_eq!(Dyadic::from_rational(&ratio(-3, 2), 8, Round::Down).floor_int(), BigInt::from(-2));
        assert!(Dyadic::from_int(2) > Dyadic::from_rational(&rat(1), 5, Round::Up));
    }
}
