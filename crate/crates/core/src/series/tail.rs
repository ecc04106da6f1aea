//! Certified tail bounds.
//!
//! For `k >= K'` every summand is dominated by the majorant
//! `M_k = |x|^k B_k^σ Σ_j (S_j / L) k^(n_j - d) h_j(k)` where `S_j` is the sum
//! of absolute coefficients of channel `j`, `n_j` its degree, `d` the number
//! of denominator factors, `L = Π(a_i - |b_i|/K')`, `h_0 = 1` and
//! `h_j = H_{jk}`. Consecutive majorants satisfy `M_{k+1} <= q̄ M_k` with
//! `q̄ = |x| R ((K'+1)/K')^(e+) (1 + 1/K')`, the last factor only when a
//! harmonic channel is present (`H_{j(k+1)} <= H_{jk} (1 + 1/k)`), and
//! `R` bounding the binomial ratio `r(k) = B_{k+1}/B_k`: `256/27` for
//! `σ = +1`, `1/r(K')` for `σ = -1`. Both need `r` increasing with limit
//! `256/27`, certified once by Sturm sequences.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use super::spec::{BinomialPower, SeriesSpec};
use super::term::harmonic;
use super::SeriesError;
use crate::exact::{binomial, count_roots, rat, ratio, sturm_sequence, RatPoly, Rational};
use crate::numerics::Ball;

fn ratio_parts() -> (RatPoly, RatPoly) {
    let lin = |a, b| RatPoly::from_ints(&[b, a]);
    let num = &(&lin(4, 1) * &lin(4, 2)) * &(&lin(4, 3) * &lin(4, 4));
    let den = &(&lin(1, 1) * &lin(3, 1)) * &(&lin(3, 2) * &lin(3, 3));
    (num, den)
}

/// True when `p` is positive on `[0, ∞)`.
fn positive_on_half_line(p: &RatPoly) -> bool {
    let sf = p.squarefree_part();
    let seq = sturm_sequence(&sf);
    let b = sf.root_bound();
    p.eval(&rat(0)).is_positive() && sf.sign_at(&rat(0)) != 0 && count_roots(&seq, &rat(0), &b) == 0
}

/// Certifies once that `r(k)` increases on `[0, ∞)` and stays below `256/27`.
fn binomial_ratio_certified() -> bool {
    static CERT: OnceLock<bool> = OnceLock::new();
    *CERT.get_or_init(|| {
        let (num, den) = ratio_parts();
        let deriv = &(&num.derivative() * &den) - &(&num * &den.derivative());
        let gap = &den.scale(&rat(256)) - &num.scale(&rat(27));
        positive_on_half_line(&deriv) && positive_on_half_line(&gap)
    })
}

/// `C(4k+4, k+1) / C(4k, k)`.
pub fn binomial_ratio(k: u64) -> Rational {
    let (num, den) = ratio_parts();
    let kq = rat(k as i64);
    num.eval(&kq) / den.eval(&kq)
}

fn abs_coeff_sum(p: &RatPoly) -> Rational {
    p.coeffs().iter().fold(Rational::zero(), |a, c| a + c.abs())
}

/// `Π(a_i - |b_i|/K)`, or `None` when some factor is not yet positive.
fn lower_factor(spec: &SeriesSpec, kp: u64) -> Option<Rational> {
    let kq = rat(kp as i64);
    let mut l = rat(1);
    for f in spec.factors() {
        let v = rat(f.a) - rat(f.b.abs()) / &kq;
        if !v.is_positive() {
            return None;
        }
        l *= v;
    }
    Some(l)
}

fn excess_degree(spec: &SeriesSpec) -> u32 {
    let d = spec.factors().len() as i64;
    spec.channels()
        .values()
        .map(|p| p.degree().unwrap_or(0) as i64 - d)
        .max()
        .unwrap_or(0)
        .max(0) as u32
}

/// Certified ratio bound `q̄(K')`; `None` below the range where the majorant
/// is defined.
pub fn ratio_bound(spec: &SeriesSpec, kp: u64) -> Option<Rational> {
    if kp == 0 || lower_factor(spec, kp).is_none() {
        return None;
    }
    assert!(binomial_ratio_certified(), "binomial ratio monotonicity certificate failed");
    let kq = rat(kp as i64);
    let r = match spec.power() {
        BinomialPower::Plus => ratio(256, 27),
        BinomialPower::Minus => binomial_ratio(kp).recip(),
    };
    let step = (&kq + rat(1)) / &kq;
    let mut q = spec.x().abs() * r * step.pow(excess_degree(spec) as i32);
    if spec.has_harmonics() {
        q *= step;
    }
    Some(q)
}

/// Smallest `K' >= max(start, 1)` with `q̄(K') < 1`.
pub(crate) fn certified_k0(spec: &SeriesSpec) -> Result<u64, SeriesError> {
    let ok = |k: u64| ratio_bound(spec, k).is_some_and(|q| q < rat(1));
    let base = spec.start().max(1);
    if ok(base) {
        return Ok(base);
    }
    let mut hi = base.max(2);
    while !ok(hi) {
        hi *= 2;
        if hi > 1 << 40 {
            return Err(SeriesError::Divergent(spec.x().to_string()));
        }
    }
    let mut lo = hi / 2; // !ok(lo)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Exact majorant `M_k` with the factor bound taken at `K' = k`.
fn majorant(spec: &SeriesSpec, k: u64) -> Rational {
    let l = lower_factor(spec, k).expect("k within certified range");
    let d = spec.factors().len() as i32;
    let kq = rat(k as i64);
    let b = Rational::from_integer(binomial(4 * k, k));
    let base = spec.x().abs().pow(k as i32)
        * match spec.power() {
            BinomialPower::Plus => b,
            BinomialPower::Minus => b.recip(),
        };
    let mut acc = Rational::zero();
    for (&j, p) in spec.channels() {
        let n = p.degree().unwrap_or(0) as i32;
        let h = if j == 0 { rat(1) } else { harmonic(j as u64 * k) };
        acc += abs_coeff_sum(p) / &l * kq.pow(n - d) * h;
    }
    base * acc
}

/// Exact upper bound on `|Σ_{k>K} term_k|`.
pub fn tail_bound_exact(spec: &SeriesSpec, cutoff: u64) -> Result<Rational, SeriesError> {
    if spec.x().is_zero() || spec.channels().is_empty() {
        return Ok(Rational::zero());
    }
    let next = cutoff + 1;
    if next < spec.k0() {
        return Err(SeriesError::CutoffTooSmall { cutoff, required: spec.k0() - 1 });
    }
    let q = ratio_bound(spec, next).expect("certified index");
    Ok(majorant(spec, next) / (rat(1) - q))
}

/// Ball whose upper endpoint bounds the tail magnitude after `cutoff`.
pub fn tail_bound(spec: &SeriesSpec, cutoff: u64, prec: u64) -> Result<Ball, SeriesError> {
    let t = tail_bound_exact(spec, cutoff)?;
    Ok(Ball::from_rational(&t, prec))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::term::{term_exact, TermState};
    use crate::series::LinearFactor;
    use std::collections::BTreeMap;

    #[test]
    fn certificate_holds() {
        assert!(binomial_ratio_certified());
        assert_eq!(binomial_ratio(2), ratio(55, 7));
    }

    fn one_series(x: Rational) -> SeriesSpec {
        SeriesSpec::simple(x, BinomialPower::Plus, 0, RatPoly::from_ints(&[1]), vec![]).unwrap()
    }

    #[test]
    fn bound_dominates_long_partial_remainder() {
        let s = one_series(ratio(1, 16));
        let mut st = TermState::at(s.x(), 11);
        let mut rem = rat(0);
        for _ in 11..=200 {
            rem += term_exact(&s, &st).unwrap();
            st.advance(s.x());
        }
        let t = tail_bound_exact(&s, 10).unwrap();
        assert!(t >= rem);
    }

    #[test]
    fn zero_argument_has_zero_tail() {
        let s = one_series(rat(0));
        assert_eq!(tail_bound_exact(&s, 0).unwrap(), rat(0));
    }

    #[test]
    fn strictly_decreasing_in_cutoff() {
        let s = one_series(ratio(-1, 256));
        for k in [3u64, 20, 50] {
            assert!(tail_bound_exact(&s, k + 10).unwrap() < tail_bound_exact(&s, k).unwrap());
        }
    }

    #[test]
    fn cutoff_below_k0_reports_requirement() {
        let f = |a, b| LinearFactor::new(a, b).unwrap();
        let s = SeriesSpec::new(
            ratio(1, 10),
            BinomialPower::Plus,
            1,
            BTreeMap::from([(4u8, RatPoly::from_ints(&[0, 0, 0, 5]))]),
            vec![f(1, 0)],
        )
        .unwrap();
        assert!(s.k0() > 2);
        match tail_bound_exact(&s, 0) {
            Err(SeriesError::CutoffTooSmall { required, .. }) => assert_eq!(required, s.k0() - 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reciprocal_ratio_bound_decreases() {
        let f = |a, b| LinearFactor::new(a, b).unwrap();
        let s = SeriesSpec::simple(
            rat(8),
            BinomialPower::Minus,
            1,
            RatPoly::from_ints(&[1, -4, 5]),
            vec![f(1, 0), f(3, -1), f(3, -2)],
        )
        .unwrap();
        let q0 = ratio_bound(&s, s.k0()).unwrap();
        assert!(q0 < rat(1));
        assert!(ratio_bound(&s, s.k0() + 5).unwrap() < q0);
    }
}
