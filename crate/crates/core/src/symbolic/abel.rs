use num_traits::Zero;

use super::{show_poly, CheckOutcome};
use crate::exact::{binomial, format_rational, rat, RatFunc, RatPoly, Rational};

/// The two summation-by-parts identities: weight `w_A(k) = 8(2k+1)(4k+1)(4k+3)/(3k+1)`
/// and `w_B(k) = w_A(k)/(3k+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelVariant {
    A,
    B,
}

type Rf = RatFunc<Rational>;

fn rf(n: RatPoly, d: RatPoly) -> Rf {
    RatFunc::new(n, d).expect("nonzero denominator")
}

impl AbelVariant {
    fn den(self) -> RatPoly {
        match self {
            AbelVariant::A => RatPoly::from_ints(&[1, 3]),
            AbelVariant::B => &RatPoly::from_ints(&[1, 3]) * &RatPoly::from_ints(&[2, 3]),
        }
    }

    fn weight(self) -> Rf {
        let num = &(&RatPoly::from_ints(&[8, 16]) * &RatPoly::from_ints(&[1, 4])) * &RatPoly::from_ints(&[3, 4]);
        rf(num, self.den())
    }

    /// Summand numerator split as `N(m, k) = N0(k) + m·N1(k)`.
    fn numerator(self) -> (RatPoly, RatPoly) {
        let n0 = RatPoly::from_ints(&[24, 176, 384, 256]);
        let n1 = match self {
            AbelVariant::A => RatPoly::from_ints(&[0, 3, 0, -27]),
            AbelVariant::B => RatPoly::from_ints(&[0, -6, -27, -27]),
        };
        (n0, n1)
    }

    fn w_at(self, k: u64) -> Rational {
        self.weight().eval(&rat(k as i64)).expect("no pole at nonnegative k")
    }
}

/// `ρ(k) = C(4k,k)/C(4k-4,k-1)`.
fn binomial_ratio() -> Rf {
    let num = [[-3, 4], [-2, 4], [-1, 4], [0, 4]].iter().fold(RatPoly::from_ints(&[1]), |a, f| &a * &RatPoly::from_ints(f));
    let den = [[0, 1], [-2, 3], [-1, 3], [0, 3]].iter().fold(RatPoly::from_ints(&[1]), |a, f| &a * &RatPoly::from_ints(f));
    rf(num, den)
}

/// Verifies `w(k) - m·w(k-1)/ρ(k) = N(m,k)/D(k)` in `Q(m, k)`. Both sides are
/// affine in `m` over `Q(k)`, so the identity holds iff the `m^0` and `m^1`
/// coefficients agree as rational functions of `k`. The note records the
/// boundary term that the finite-sum form needs at `k = 0`.
pub fn check_abel_step(v: AbelVariant) -> CheckOutcome {
    let w = v.weight();
    let shift = rf(RatPoly::from_ints(&[-1, 1]), RatPoly::from_ints(&[1]));
    let w_prev = w.compose(&shift);
    let lhs1 = w_prev.div(&binomial_ratio()).expect("ρ is nonzero").neg();
    let (n0, n1) = v.numerator();
    let rhs0 = rf(n0, v.den());
    let rhs1 = rf(n1, v.den());
    let d0 = w.sub(&rhs0);
    let d1 = lhs1.sub(&rhs1);
    let mut out = if d0.is_zero() && d1.is_zero() {
        CheckOutcome::pass()
    } else {
        CheckOutcome::fail(format!(
            "m^0: ({})/({}); m^1: ({})/({})",
            show_poly(&d0.num, "k"),
            show_poly(&d0.den, "k"),
            show_poly(&d1.num, "k"),
            show_poly(&d1.den, "k")
        ))
    };
    if let Some(d) = abel_boundary_discrepancy(v) {
        out = out.with_note(format!(
            "finite-sum form with ψ ≡ 1, n = 1: lhs - rhs = {} for every m, i.e. the k = 0 boundary term -w(0)ψ(0)",
            format_rational(&d)
        ));
    }
    out
}

/// `lhs - rhs` of the finite-sum identity
/// `Σ_{k=1}^n C(4k,k)ψ(k)N(m,k)/(D(k)m^k) = w(n)C(4n,n)ψ(n)/m^n - Σ_{k=0}^{n-1} w(k)C(4k,k)Δψ(k)/m^k`
/// as a polynomial in `u = 1/m`.
pub fn check_abel_sum(v: AbelVariant, n: u64, psi: &dyn Fn(u64) -> Rational) -> RatPoly {
    let (n0, n1) = v.numerator();
    let den = v.den();
    let mono = |c: Rational, e: u64| RatPoly::monomial(c, e as usize);
    let mut diff = RatPoly::zero();
    for k in 1..=n {
        let kk = rat(k as i64);
        let base = Rational::from_integer(binomial(4 * k, k)) * psi(k) / den.eval(&kk);
        diff = &diff + &mono(&base * n0.eval(&kk), k);
        diff = &diff + &mono(&base * n1.eval(&kk), k - 1);
    }
    let b = |k: u64| Rational::from_integer(binomial(4 * k, k));
    diff = &diff - &mono(v.w_at(n) * b(n) * psi(n), n);
    for k in 0..n {
        diff = &diff + &mono(v.w_at(k) * b(k) * (psi(k + 1) - psi(k)), k);
    }
    diff
}

/// The constant `lhs - rhs` for `ψ ≡ 1`, `n = 1`, or `None` if it depends on `m`.
pub fn abel_boundary_discrepancy(v: AbelVariant) -> Option<Rational> {
    let d = check_abel_sum(v, 1, &|_| rat(1));
    match d.degree() {
        None => Some(Rational::zero()),
        Some(0) => d.coeff(0).cloned(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::harmonic;
    use proptest::prelude::*;

    #[test]
    fn per_step_identities_hold() {
        for v in [AbelVariant::A, AbelVariant::B] {
            let out = check_abel_step(v);
            assert!(out.passed, "{v:?}: {}", out.witness);
            assert_eq!(out.notes.len(), 1);
        }
    }

    #[test]
    fn boundary_discrepancies() {
        assert_eq!(abel_boundary_discrepancy(AbelVariant::A), Some(rat(-24)));
        assert_eq!(abel_boundary_discrepancy(AbelVariant::B), Some(rat(-12)));
    }

    #[test]
    fn harmonic_spot_check() {
        // Direct finite sums at m = 16, n = 2 with ψ = H_k, ψ(0) = 0.
        let m = rat(16);
        let n = 2u64;
        let b = |k: u64| Rational::from_integer(binomial(4 * k, k));
        let lhs: Rational = (1..=n)
            .map(|k| {
                let k_ = k as i64;
                let num = (rat(256) - rat(27) * &m) * rat(k_.pow(3)) + rat(384 * k_ * k_) + (rat(176) + rat(3) * &m) * rat(k_) + rat(24);
                b(k) * harmonic(k) * num / rat(3 * k_ + 1) / m.pow(k as i32)
            })
            .sum();
        let w = |k: u64| AbelVariant::A.w_at(k);
        let rhs = w(n) * b(n) * harmonic(n) / m.pow(n as i32)
            - (0..n).map(|k| w(k) * b(k) * (harmonic(k + 1) - harmonic(k)) / m.pow(k as i32)).sum::<Rational>();
        assert_eq!(lhs, rhs);
        let d = check_abel_sum(AbelVariant::A, n, &harmonic);
        assert!(d.eval(&(rat(1) / m)).is_zero());
    }

    proptest! {
        #[test]
        fn discrepancy_is_minus_boundary_term(n in 1u64..6, a in -5i64..5, b in -5i64..5, c in -5i64..5) {
            let psi = move |k: u64| rat(a + b * k as i64 + c * (k * k) as i64);
            for v in [AbelVariant::A, AbelVariant::B] {
                let d = check_abel_sum(v, n, &psi);
                prop_assert_eq!(d, RatPoly::constant(-v.w_at(0) * psi(0)));
            }
        }
    }
}
