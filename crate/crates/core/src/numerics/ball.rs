use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, Round};
use super::{consts, NumericError};
use crate::exact::{rat, Rational};

/// Closed real interval `[lo, hi]` with dyadic endpoints. Every operation
/// rounds its endpoints outward to `prec` significant bits, so the true
/// value is never lost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    lo: Dyadic,
    hi: Dyadic,
    prec: u64,
}

impl Ball {
    /// Interval from endpoints; panics if `lo > hi`.
    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u64) -> Self {
        assert!(lo <= hi, "inverted interval");
        Ball { lo, hi, prec }
    }

    pub fn from_rational(q: &Rational, prec: u64) -> Self {
        Ball {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Smallest ball containing the rational interval `[a, b]`.
    pub fn from_rational_interval(a: &Rational, b: &Rational, prec: u64) -> Self {
        Ball {
            lo: Dyadic::from_rational(a, prec, Round::Down),
            hi: Dyadic::from_rational(b, prec, Round::Up),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u64) -> Self {
        let d = Dyadic::from_int(n);
        Ball { lo: d.clone(), hi: d, prec }
    }

    pub fn zero(prec: u64) -> Self {
        Ball::from_int(0, prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u64 {
        self.prec
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        Ball {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
            prec,
        }
    }

    /// Exact center.
    pub fn mid(&self) -> Rational {
        (self.lo.to_rational() + self.hi.to_rational()) / rat(2)
    }

    /// Exact radius.
    pub fn rad(&self) -> Rational {
        (self.hi.to_rational() - self.lo.to_rational()) / rat(2)
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> Rational {
        self.hi.to_rational() - self.lo.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains_ball(&self, o: &Ball) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn intersects(&self, o: &Ball) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Convex hull.
    pub fn hull(&self, o: &Ball) -> Ball {
        Ball {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.prec.max(o.prec),
        }
    }

    /// Widens by `r >= 0` on both sides.
    pub fn inflate(&self, r: &Rational) -> Ball {
        let rd = Dyadic::from_rational(r, self.prec, Round::Up);
        Ball {
            lo: self.lo.sub(&rd).round(self.prec, Round::Down),
            hi: self.hi.add(&rd).round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    fn p(&self, o: &Ball) -> u64 {
        self.prec.max(o.prec)
    }

    fn make(lo: Dyadic, hi: Dyadic, prec: u64) -> Ball {
        Ball { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn add_ball(&self, o: &Ball) -> Ball {
        Ball::make(self.lo.add(&o.lo), self.hi.add(&o.hi), self.p(o))
    }

    pub fn sub_ball(&self, o: &Ball) -> Ball {
        Ball::make(self.lo.sub(&o.hi), self.hi.sub(&o.lo), self.p(o))
    }

    pub fn neg_ball(&self) -> Ball {
        Ball { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn mul_ball(&self, o: &Ball) -> Ball {
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Ball::make(lo, hi, self.p(o))
    }

    /// Fails when `o` contains zero.
    pub fn div_ball(&self, o: &Ball) -> Result<Ball, NumericError> {
        if o.contains_zero() {
            return Err(NumericError::DivisionByZero(o.to_string()));
        }
        let prec = self.p(o) + 2;
        let inv_lo = Dyadic::from_rational(&o.hi.to_rational().recip(), prec, Round::Down);
        let inv_hi = Dyadic::from_rational(&o.lo.to_rational().recip(), prec, Round::Up);
        let inv = Ball { lo: inv_lo, hi: inv_hi, prec };
        Ok(self.mul_ball(&inv).with_prec(self.p(o)))
    }

    pub fn mul_rational(&self, q: &Rational) -> Ball {
        self.mul_ball(&Ball::from_rational(q, self.prec))
    }

    pub fn add_rational(&self, q: &Rational) -> Ball {
        self.add_ball(&Ball::from_rational(q, self.prec))
    }

    /// `self^n` with the even-power case kept nonnegative.
    pub fn powi(&self, n: u32) -> Ball {
        if n == 0 {
            return Ball::from_int(1, self.prec);
        }
        let base = if n.is_multiple_of(2) { self.abs() } else { self.clone() };
        let mut acc: Option<Ball> = None;
        let mut b = base;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul_ball(&b),
                    None => b.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ball(&b);
            }
        }
        acc.unwrap()
    }

    pub fn abs(&self) -> Ball {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg_ball()
        } else {
            Ball { lo: Dyadic::zero(), hi: self.hi.clone().max(self.lo.neg()), prec: self.prec }
        }
    }

    /// Square root; fails if the ball has negative points.
    pub fn sqrt(&self) -> Result<Ball, NumericError> {
        if self.lo.signum() < 0 {
            return Err(NumericError::SqrtDomain(self.to_string()));
        }
        let prec = self.prec;
        Ok(Ball {
            lo: sqrt_dyadic(&self.lo, prec, Round::Down),
            hi: sqrt_dyadic(&self.hi, prec, Round::Up),
            prec,
        })
    }

    /// Natural logarithm; fails unless the ball is strictly positive.
    pub fn ln(&self) -> Result<Ball, NumericError> {
        if !self.is_positive() {
            return Err(NumericError::LogDomain(self.to_string()));
        }
        let prec = self.prec;
        let lo = consts::log_uncached(&self.lo.to_rational(), prec)?;
        if self.lo == self.hi {
            return Ok(lo);
        }
        let hi = consts::log_uncached(&self.hi.to_rational(), prec)?;
        Ok(Ball { lo: lo.lo, hi: hi.hi, prec })
    }

    /// `mid ± rad` with `digits` significant digits of center and an
    /// upward-rounded two-digit radius.
    pub fn to_mid_rad_string(&self, digits: usize) -> String {
        format!(
            "{} ± {}",
            format_sci(&self.mid(), digits.max(1), false),
            format_sci(&self.rad(), 2, true)
        )
    }
}

fn sqrt_dyadic(d: &Dyadic, prec: u64, dir: Round) -> Dyadic {
    if d.is_zero() {
        return Dyadic::zero();
    }
    // sqrt(m·2^e) with an even exponent and enough mantissa bits.
    let mut m = d.mantissa().clone();
    let mut e = d.exponent();
    let want = 2 * (prec as i64 + 2);
    let extra = (want - m.bits() as i64).max(0);
    let mut shift = extra;
    if (e - shift) % 2 != 0 {
        shift += 1;
    }
    m <<= shift as u64;
    e -= shift;
    let s = m.sqrt();
    let s = if dir == Round::Up && &s * &s != m { s + 1 } else { s };
    Dyadic::new(s, e / 2).round(prec, dir)
}

/// Scientific notation with `sig` significant digits; rounds to nearest
/// or, with `up`, away from zero.
pub fn format_sci(q: &Rational, sig: usize, up: bool) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(ten.pow(k as u32))
        } else {
            Rational::new(BigInt::one(), ten.pow((-k) as u32))
        }
    };
    while a >= pow10(e + 1) {
        e += 1;
    }
    while a < pow10(e) {
        e -= 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - e);
    let mut n = if up {
        scaled.ceil().to_integer()
    } else {
        (scaled + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
    };
    if n >= ten.pow(sig as u32) {
        n = n.div_floor(&ten);
        e += 1;
    }
    let digits = n.to_string();
    let (head, tail) = digits.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl Add for &Ball {
    type Output = Ball;
    fn add(self, o: &Ball) -> Ball {
        self.add_ball(o)
    }
}

impl Sub for &Ball {
    type Output = Ball;
    fn sub(self, o: &Ball) -> Ball {
        self.sub_ball(o)
    }
}

impl Mul for &Ball {
    type Output = Ball;
    fn mul(self, o: &Ball) -> Ball {
        self.mul_ball(o)
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        self.neg_ball()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn exact_sum() {
        let s = &Ball::from_int(2, 64) + &Ball::from_int(3, 64);
        assert!(s.contains(&rat(5)));
        assert!(s.rad().is_zero());
    }

    #[test]
    fn sqrt_two() {
        let r = Ball::from_int(2, 64).sqrt().unwrap();
        // Bisection-style oracle: lo^2 <= 2 <= hi^2.
        let (lo, hi) = (r.lo().to_rational(), r.hi().to_rational());
        assert!(&lo * &lo <= rat(2) && &hi * &hi >= rat(2));
        assert!(r.width() < ratio(1, 1 << 60));
    }

    #[test]
    fn log_additivity() {
        let four = Ball::from_int(4, 128).ln().unwrap();
        let two = Ball::from_int(2, 128).ln().unwrap();
        assert!((&four - &two.mul_rational(&rat(2))).contains_zero());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            Ball::from_int(1, 32).div_ball(&Ball::zero(32)),
            Err(NumericError::DivisionByZero(_))
        ));
        assert!(matches!(Ball::from_int(-1, 32).ln(), Err(NumericError::LogDomain(_))));
        assert!(matches!(Ball::from_int(-1, 32).sqrt(), Err(NumericError::SqrtDomain(_))));
    }

    #[test]
    fn division_contains_quotient() {
        let q = Ball::from_int(1, 80).div_ball(&Ball::from_int(3, 80)).unwrap();
        assert!(q.contains(&ratio(1, 3)));
    }

    #[test]
    fn even_power_of_straddling_ball() {
        let b = Ball::from_rational_interval(&rat(-1), &rat(2), 32);
        let sq = b.powi(2);
        assert_eq!(sq.lo().to_rational(), rat(0));
        assert_eq!(sq.hi().to_rational(), rat(4));
    }

    #[test]
    fn scientific_format() {
        assert_eq!(format_sci(&rat(-5), 4, false), "-5.000e0");
        assert_eq!(format_sci(&ratio(1, 3), 3, false), "3.33e-1");
        assert_eq!(format_sci(&ratio(1, 3), 2, true), "3.4e-1");
        assert_eq!(format_sci(&ratio(999, 1000), 2, false), "1.0e0");
        assert_eq!(format_sci(&rat(0), 2, true), "0");
    }
}
