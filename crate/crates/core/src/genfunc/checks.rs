use num_bigint::BigInt;

use super::trunc::TruncSeries;
use crate::exact::{binomial, rat, Rational};

/// Outcome of an exact series identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCheck {
    pub passed: bool,
    /// Lowest order where the residual is nonzero.
    pub first_failure: Option<usize>,
    pub residual: TruncSeries,
}

impl SeriesCheck {
    fn from_residual(residual: TruncSeries) -> Self {
        let first_failure = residual.first_nonzero();
        SeriesCheck { passed: first_failure.is_none(), first_failure, residual }
    }
}

fn q(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `f(x) = Σ C(4k,k) x^k` through order `order`.
pub fn coeffs_f(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |k| q(binomial(4 * k as u64, k as u64)))
}

/// `G_m(x) = Σ C(mk,k)/((m-1)k+1) x^k`.
pub fn coeffs_gm(m: u32, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |k| {
        let k = k as u64;
        q(binomial(u64::from(m) * k, k)) / rat(((u64::from(m) - 1) * k + 1) as i64)
    })
}

/// `Σ_{k>=1} C(mk,k)/k x^k`.
fn log_target(m: u32, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |k| {
        if k == 0 {
            rat(0)
        } else {
            q(binomial(u64::from(m) * k as u64, k as u64)) / rat(k as i64)
        }
    })
}

/// `27f^4 - 18f^2 - 8f - 1 - 256x f^4` for a candidate `f`.
pub fn check_quartic_with(f: &TruncSeries) -> SeriesCheck {
    let n = f.order();
    let f2 = f * f;
    let f4 = &f2 * &f2;
    let x = TruncSeries::x(n);
    let lhs = &(&f4.scale(&rat(27)) - &f2.scale(&rat(18))) - &(&f.scale(&rat(8)) + &TruncSeries::constant(rat(1), n));
    SeriesCheck::from_residual(&lhs - &(&x * &f4).scale(&rat(256)))
}

pub fn check_quartic_f(order: usize) -> SeriesCheck {
    check_quartic_with(&coeffs_f(order))
}

/// `G_m = 1 + x G_m^m`.
pub fn check_gm(m: u32, order: usize) -> SeriesCheck {
    let g = coeffs_gm(m, order);
    let rhs = &TruncSeries::constant(rat(1), order) + &(&TruncSeries::x(order) * &g.pow(m));
    SeriesCheck::from_residual(&g - &rhs)
}

/// `m log G_m = Σ C(mk,k)/k x^k`.
pub fn check_log_gm(m: u32, order: usize) -> SeriesCheck {
    let g = coeffs_gm(m, order);
    let l = g.log().expect("constant term one").scale(&rat(i64::from(m)));
    SeriesCheck::from_residual(&l - &log_target(m, order))
}

/// `Σ C(mk,k) x^k = G_m + (m-1) x G_m' = G_m / (m - (m-1) G_m)`; both
/// equalities must hold.
pub fn check_binomial_sum_gm(m: u32, order: usize) -> SeriesCheck {
    let g = coeffs_gm(m, order);
    let target = TruncSeries::from_fn(order, |k| q(binomial(u64::from(m) * k as u64, k as u64)));
    let mm = rat(i64::from(m));
    let deriv = TruncSeries::new(g.derivative().coeffs().to_vec(), order);
    let first = &g + &(&TruncSeries::x(order) * &deriv).scale(&(&mm - rat(1)));
    let den = &TruncSeries::constant(mm.clone(), order) - &g.scale(&(&mm - rat(1)));
    let second = g.div(&den).expect("constant term one");
    let r1 = &first - &target;
    if !r1.is_zero() {
        return SeriesCheck::from_residual(r1);
    }
    SeriesCheck::from_residual(&second - &target)
}

/// `Σ C(4k,k)/k x^k = 4 log(4f/(3f+1))`.
pub fn check_f_log(order: usize) -> SeriesCheck {
    let f = coeffs_f(order);
    let den = &f.scale(&rat(3)) + &TruncSeries::constant(rat(1), order);
    let inner = f.scale(&rat(4)).div(&den).expect("unit");
    let l = inner.log().expect("constant term one").scale(&rat(4));
    SeriesCheck::from_residual(&l - &log_target(4, order))
}

/// `f' = 64 f^5/(3f+1)^2` through order `K-1` and
/// `f'' = 4096 f^9 (9f+5)/(3f+1)^5` through order `K-2`.
pub fn check_derivatives_f(order: usize) -> SeriesCheck {
    assert!(order >= 2, "need order >= 2");
    let f = coeffs_f(order);
    let one = TruncSeries::constant(rat(1), order);
    let t = &f.scale(&rat(3)) + &one;
    let d1 = f.pow(5).scale(&rat(64)).div(&t.pow(2)).expect("unit");
    let r1 = &f.derivative() - &d1.truncate(order - 1);
    if !r1.is_zero() {
        return SeriesCheck::from_residual(r1);
    }
    let nine_f_5 = &f.scale(&rat(9)) + &one.scale(&rat(5));
    let d2 = (&f.pow(9) * &nine_f_5).scale(&rat(4096)).div(&t.pow(5)).expect("unit");
    SeriesCheck::from_residual(&f.derivative().derivative() - &d2.truncate(order - 2))
}

/// `[x^k] G_m^n = (n/k) C(mk+n-1, k-1)` for `1 <= k <= K`.
pub fn check_lagrange(m: u32, n: u32, order: usize) -> SeriesCheck {
    let p = coeffs_gm(m, order).pow(n);
    let target = TruncSeries::from_fn(order, |k| {
        if k == 0 {
            rat(1)
        } else {
            let k64 = k as u64;
            rat(i64::from(n)) / rat(k as i64)
                * q(binomial(u64::from(m) * k64 + u64::from(n) - 1, k64 - 1))
        }
    });
    SeriesCheck::from_residual(&p - &target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients_of_f() {
        let f = coeffs_f(4);
        let expect: Vec<Rational> = [1, 4, 28, 220, 1820].iter().map(|&c| rat(c)).collect();
        assert_eq!(f.coeffs(), &expect[..]);
        assert_eq!(coeffs_f(0).coeffs(), &[rat(1)]);
        assert_eq!(f.coeff(3) / f.coeff(2), Rational::new(55.into(), 7.into()));
    }

    #[test]
    fn quartic_low_and_high_order() {
        // Order-1 oracle: 27·16 − 18·8 − 8·4 − 256 = 0.
        assert_eq!(27 * 16 - 18 * 8 - 8 * 4 - 256, 0);
        assert!(check_quartic_f(1).passed);
        assert!(check_quartic_f(64).passed);
    }

    #[test]
    fn perturbed_coefficient_fails_at_order_one() {
        let mut c = coeffs_f(6).coeffs().to_vec();
        c[1] = rat(5);
        let r = check_quartic_with(&TruncSeries::new(c, 6));
        assert!(!r.passed);
        assert_eq!(r.first_failure, Some(1));
    }

    #[test]
    fn catalan_and_geometric() {
        assert!(check_gm(1, 10).passed);
        let g2 = coeffs_gm(2, 12);
        // Catalan recurrence oracle: C_{n+1} = Σ C_i C_{n-i}.
        for n in 0..12 {
            let s: Rational = (0..=n).map(|i| g2.coeff(i) * g2.coeff(n - i)).sum();
            assert_eq!(*g2.coeff(n + 1), s);
        }
        assert!(check_gm(2, 12).passed);
    }

    #[test]
    fn log_checks() {
        assert!(check_f_log(12).passed);
        let f = coeffs_f(3);
        let den = &f.scale(&rat(3)) + &TruncSeries::constant(rat(1), 3);
        let l = f.scale(&rat(4)).div(&den).unwrap().log().unwrap().scale(&rat(4));
        assert_eq!(*l.coeff(1), rat(4));
        for m in 1..=5 {
            assert!(check_log_gm(m, 16).passed, "m={m}");
            assert!(check_binomial_sum_gm(m, 16).passed, "m={m}");
        }
    }

    #[test]
    fn derivative_closed_forms() {
        let f = coeffs_f(4);
        assert_eq!(*f.derivative().coeff(0), rat(4));
        assert_eq!(*f.derivative().derivative().coeff(0), rat(56));
        assert_eq!(rat(4096) * rat(14) / rat(1024), rat(56));
        assert!(check_derivatives_f(24).passed);
    }

    #[test]
    fn lagrange_small_cases() {
        assert_eq!(*coeffs_gm(4, 2).coeff(1), rat(1));
        assert_eq!(*coeffs_gm(4, 2).pow(2).coeff(1), rat(2));
        assert!(check_lagrange(4, 3, 32).passed);
    }
}
