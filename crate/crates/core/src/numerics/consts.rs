//! Enclosures of `π`, `log q` and `√n` from fixed-point series with explicit
//! error accounting in units of the last place (ulp = `2^-W`).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;
use super::dyadic::Dyadic;
use super::NumericError;
use crate::exact::{format_rational, rat, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Pi,
    Log(Rational),
    Sqrt(u64),
}

fn cache() -> &'static Mutex<HashMap<(Key, u64), Ball>> {
    static CACHE: OnceLock<Mutex<HashMap<(Key, u64), Ball>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Computes outside the lock; the first stored value wins so every caller
/// sees the same ball for a given key and precision.
fn cached(key: Key, prec: u64, f: impl FnOnce() -> Ball) -> Ball {
    if let Some(b) = cache().lock().unwrap().get(&(key.clone(), prec)) {
        return b.clone();
    }
    let b = f();
    cache()
        .lock()
        .unwrap()
        .entry((key, prec))
        .or_insert(b)
        .clone()
}

fn guard_bits(prec: u64) -> u64 {
    prec + 20 + u64::BITS as u64 - prec.leading_zeros() as u64
}

fn fixed_ball(center: &BigInt, err: &BigInt, w: u64, prec: u64) -> Ball {
    let lo = Dyadic::new(center - err, -(w as i64));
    let hi = Dyadic::new(center + err, -(w as i64));
    Ball::from_endpoints(lo, hi, prec)
}

/// `atan(1/n)·2^w` as `(S, E)` with the true value in `[S - E, S + E]`.
fn atan_inv_fixed(n: u64, w: u64) -> (BigInt, BigInt) {
    let n2 = BigInt::from(n * n);
    // P_k = floor(2^w / n^(2k+1)) exactly, by nested floors.
    let mut p = (BigInt::one() << w) / BigInt::from(n);
    let mut s = BigInt::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        let t = &p / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            s += t;
        } else {
            s -= t;
        }
        p /= &n2;
        k += 1;
    }
    // Each term is off by less than 1; the alternating tail is below the
    // first omitted term, which is below 1.
    (s, BigInt::from(k + 1))
}

fn pi_uncached(prec: u64) -> Ball {
    let w = guard_bits(prec);
    let (s5, e5) = atan_inv_fixed(5, w);
    let (s239, e239) = atan_inv_fixed(239, w);
    let s = BigInt::from(16) * s5 - BigInt::from(4) * s239;
    let e = BigInt::from(16) * e5 + BigInt::from(4) * e239;
    fixed_ball(&s, &e, w, prec)
}

/// Enclosure of `π` with radius at most `2^(8 - prec)`.
pub fn const_pi(prec: u64) -> Ball {
    cached(Key::Pi, prec, || pi_uncached(prec))
}

/// `atanh(a/b)·2^w` for `0 <= a/b <= 1/5` as `(S, E)` with the true value in
/// `[S, S + E]`.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u64) -> (BigInt, BigInt) {
    let a2 = a * a;
    let b2 = b * b;
    // P_k approximates 2^w·u^(2k+1) from below with error < 1/(1-u^2).
    let mut p = (a << w) / b;
    let mut s = BigInt::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        s += &p / BigInt::from(2 * k + 1);
        p = &p * &a2 / &b2;
        k += 1;
    }
    // Each term is below the truth by less than 3; once P_N = 0 the
    // remaining tail is below 2.
    (s, BigInt::from(3 * k + 2))
}

/// `2·atanh(u)` as a ball, for rational `|u| <= 1/5`.
fn two_atanh(u: &Rational, w: u64, prec: u64) -> Ball {
    let neg = u.is_negative();
    let a = u.numer().abs();
    let (s, e) = atanh_fixed(&a, u.denom(), w);
    let lo = Dyadic::new(BigInt::from(2) * &s, -(w as i64));
    let hi = Dyadic::new(BigInt::from(2) * (s + e), -(w as i64));
    let b = Ball::from_endpoints(lo, hi, prec);
    if neg {
        -&b
    } else {
        b
    }
}

/// Uncached logarithm; used for arbitrary ball endpoints.
pub(crate) fn log_uncached(q: &Rational, prec: u64) -> Result<Ball, NumericError> {
    if !q.is_positive() {
        return Err(NumericError::LogDomain(format_rational(q)));
    }
    if q.is_one() {
        return Ok(Ball::zero(prec));
    }
    // q = 2^e·r with r in [2/3, 4/3].
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    let pow2 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(BigInt::one() << k as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-k) as u64)
        }
    };
    let mut r = q / pow2(e);
    while r > Rational::new(4.into(), 3.into()) {
        e += 1;
        r = q / pow2(e);
    }
    while r < Rational::new(2.into(), 3.into()) {
        e -= 1;
        r = q / pow2(e);
    }
    let ebits = 64 - e.unsigned_abs().leading_zeros() as u64;
    let w = prec + 24 + ebits;
    let u = (&r - rat(1)) / (&r + rat(1));
    let mut acc = two_atanh(&u, w, w);
    if e != 0 {
        let log2 = two_atanh(&Rational::new(1.into(), 3.into()), w, w);
        acc = &acc + &log2.mul_rational(&rat(e));
    }
    Ok(Ball::from_endpoints(acc.lo().clone(), acc.hi().clone(), prec))
}

/// Enclosure of `log q` for `q > 0`; exact zero at `q = 1`.
pub fn const_log(q: &Rational, prec: u64) -> Result<Ball, NumericError> {
    if q.is_positive() && q.denom().is_one() && *q <= rat(1000) {
        let v = log_uncached(q, prec)?;
        return Ok(cached(Key::Log(q.clone()), prec, || v));
    }
    log_uncached(q, prec)
}

/// Enclosure of `√n` for a positive integer `n`.
pub fn const_sqrt(n: u64, prec: u64) -> Result<Ball, NumericError> {
    if n == 0 {
        return Err(NumericError::SqrtDomain("0".into()));
    }
    Ok(cached(Key::Sqrt(n), prec, || {
        let w = guard_bits(prec);
        let target = BigInt::from(n) << (2 * w);
        let s = target.sqrt();
        let exact = &s * &s == target;
        let lo = Dyadic::new(s.clone(), -(w as i64));
        let hi = if exact { lo.clone() } else { Dyadic::new(s + 1, -(w as i64)) };
        Ball::from_endpoints(lo, hi, prec)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn rad_ok(b: &Ball, prec: u64) -> bool {
        b.rad() <= Rational::new(BigInt::one(), BigInt::one() << (prec - 8))
    }

    /// Independent oracle: arctan(1) = 4·arctan(1/5) - arctan(1/239)
    /// evaluated with exact rational partial sums and an alternating bound.
    fn atan_oracle(n: i64, terms: u32) -> (Rational, Rational) {
        let x = ratio(1, n);
        let mut s = rat(0);
        for k in 0..terms {
            let t = x.pow(2 * k as i32 + 1) / rat(2 * k as i64 + 1);
            if k.is_multiple_of(2) {
                s += t;
            } else {
                s -= t;
            }
        }
        let next = x.pow(2 * terms as i32 + 1) / rat(2 * terms as i64 + 1);
        (s, next)
    }

    #[test]
    fn pi_64_bits() {
        let p = const_pi(64);
        let (a, ea) = atan_oracle(5, 20);
        let (b, eb) = atan_oracle(239, 8);
        let approx = rat(16) * a - rat(4) * b;
        let err = rat(16) * ea + rat(4) * eb;
        assert!(p.intersects(&Ball::from_rational_interval(&(&approx - &err), &(&approx + &err), 128)));
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(rad_ok(&p, 64));
    }

    #[test]
    fn log_one_is_exact_zero() {
        let z = const_log(&rat(1), 200).unwrap();
        assert!(z.rad().is_zero() && z.contains(&rat(0)));
    }

    #[test]
    fn log_two_against_alternating_series() {
        // log 2 = sum (-1)^(k+1)/(k 2^k)·... use log 2 = -log(1/2) = sum 1/(k 2^k).
        let mut s = rat(0);
        for k in 1..80 {
            s += Rational::new(BigInt::one(), BigInt::from(k) << k as u64);
        }
        // Tail below 2/(80·2^80).
        let tail = Rational::new(BigInt::from(2), BigInt::from(80) << 80u64);
        let b = const_log(&rat(2), 64).unwrap();
        assert!(b.intersects(&Ball::from_rational_interval(&s, &(&s + &tail), 128)));
        assert!((b.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(rad_ok(&b, 64));
    }

    #[test]
    fn log_domain() {
        assert!(const_log(&rat(0), 64).is_err());
        assert!(const_log(&rat(-3), 64).is_err());
    }

    #[test]
    fn log_large_and_small() {
        for q in [ratio(1, 1000), rat(1) / rat(7), ratio(123456, 7), rat(8)] {
            let b = const_log(&q, 100).unwrap();
            let f = (num_traits::ToPrimitive::to_f64(&q).unwrap()).ln();
            assert!((b.to_f64() - f).abs() < 1e-12, "{q}");
            assert!(rad_ok(&b, 100));
        }
    }

    #[test]
    fn sqrt_constants() {
        let s = const_sqrt(2, 64).unwrap();
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(const_sqrt(9, 64).unwrap().rad().is_zero());
        assert!(const_sqrt(0, 64).is_err());
    }

    #[test]
    fn radius_shrinks_with_precision() {
        for p in [64u64, 200] {
            assert!(const_pi(p + 64).rad() < const_pi(p).rad());
            let l = const_log(&rat(3), p).unwrap();
            assert!(const_log(&rat(3), p + 64).unwrap().rad() < l.rad());
        }
    }

    #[test]
    fn cache_returns_identical_values() {
        assert_eq!(const_pi(300), const_pi(300));
        assert_eq!(const_log(&rat(5), 300).unwrap(), const_log(&rat(5), 300).unwrap());
    }
}
