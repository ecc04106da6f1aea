use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::GenfuncError;
use crate::exact::{
    rat, ratio, resultant_linear, split_depressed_quartic, sqrt_in_field, sturm_isolate, AlgebraicReal, Field,
    NFElem, NumberField, RatPoly, Rational, Ring,
};
use crate::numerics::Ball;
use crate::series::{sum_series, BinomialPower, SeriesSpec};

/// `(27 - 256x) t^4 - 18 t^2 - 8 t - 1`, the quartic satisfied by `f(x)`.
pub fn quartic_at(x: &Rational) -> RatPoly {
    RatPoly::new(vec![rat(-1), rat(-8), rat(-18), rat(0), rat(27) - rat(256) * x])
}

/// `f' = 64 f^5 / (3f+1)^2` in a field containing `f`.
pub fn f_prime(f: &NFElem) -> NFElem {
    let t = f.mul_ref(&f.from_rational_like(&rat(3))).add_ref(&f.one_like());
    f.pow(5).mul_ref(&f.from_rational_like(&rat(64))).mul_ref(&t.pow(2).inv().expect("3f+1 != 0"))
}

/// `f'' = 4096 f^9 (9f+5) / (3f+1)^5`.
pub fn f_second(f: &NFElem) -> NFElem {
    let lin = |a: i64, b: i64| f.mul_ref(&f.from_rational_like(&rat(a))).add_ref(&f.from_rational_like(&rat(b)));
    f.pow(9)
        .mul_ref(&lin(9, 5))
        .mul_ref(&f.from_rational_like(&rat(4096)))
        .mul_ref(&lin(3, 1).pow(5).inv().expect("3f+1 != 0"))
}

/// `G_4 = 4f/(3f+1)`.
pub fn g4_of(f: &NFElem) -> NFElem {
    let t = f.mul_ref(&f.from_rational_like(&rat(3))).add_ref(&f.one_like());
    f.mul_ref(&f.from_rational_like(&rat(4))).mul_ref(&t.inv().expect("3f+1 != 0"))
}

/// `α = f(1/16)` with its exact derivatives in `Q(α)`.
#[derive(Clone, Debug)]
pub struct AlphaContext {
    pub field: Arc<NumberField>,
    pub alpha: AlgebraicReal,
    pub alpha_elem: NFElem,
    pub alpha_p: NFElem,
    pub alpha_pp: NFElem,
}

impl AlphaContext {
    /// `(11/128) α'' - (35/8) α' + 11 α + 5` in `Q(α)`; zero by construction.
    pub fn relation_residual(&self) -> NFElem {
        let k = &self.field;
        self.alpha_pp
            .mul_ref(&k.from_rational(ratio(11, 128)))
            .sub_ref(&self.alpha_p.mul_ref(&k.from_rational(ratio(35, 8))))
            .add_ref(&self.alpha_elem.mul_ref(&k.from_rational(rat(11))))
            .add_ref(&k.from_rational(rat(5)))
    }
}

/// Builds `Q(α)` from the quartic at `x = 1/16` after removing its rational
/// root `-1`, and fails unless the second-order relation vanishes exactly.
pub fn make_alpha() -> Result<AlphaContext, GenfuncError> {
    let quartic = quartic_at(&ratio(1, 16));
    let cubic = quartic
        .div_exact(&RatPoly::from_ints(&[1, 1]))?
        .ok_or_else(|| GenfuncError::Invariant("t = -1 is not a root of the quartic at 1/16".into()))?
        .primitive_integer();
    if cubic != RatPoly::from_ints(&[-1, -7, -11, 11]) {
        return Err(GenfuncError::Invariant(format!("unexpected cubic factor {cubic}")));
    }
    let roots = sturm_isolate(&cubic, Some(&rat(0)), None)?;
    let [(lo, hi)] = roots.as_slice() else {
        return Err(GenfuncError::Invariant(format!("expected one positive root, found {}", roots.len())));
    };
    let field = NumberField::new("a", cubic.clone(), lo.clone(), hi.clone())?;
    let alpha = AlgebraicReal::new(cubic, lo.clone(), hi.clone())?;
    let a = field.generator();
    let ctx = AlphaContext {
        alpha_p: f_prime(&a),
        alpha_pp: f_second(&a),
        alpha_elem: a,
        alpha,
        field,
    };
    let r = ctx.relation_residual();
    if !r.is_zero() {
        return Err(GenfuncError::Invariant(format!("second-order relation residual {r}")));
    }
    Ok(ctx)
}

/// `f(x)` as the generator of `Q[t]/(quartic_at(x))` for an `x` where the
/// quartic is irreducible and splits over `Q(√d)`; the embedding is the
/// unique positive root.
#[derive(Clone, Debug)]
pub struct QuarticContext {
    pub x: Rational,
    pub field: Arc<NumberField>,
    pub f: NFElem,
    pub d: BigInt,
    /// Positive square root of `d` inside the field.
    pub sqrt_d: NFElem,
}

impl QuarticContext {
    /// `x f'(x) = Σ k C(4k,k) x^k`.
    pub fn theta(&self) -> NFElem {
        f_prime(&self.f).mul_ref(&self.field.from_rational(self.x.clone()))
    }

    /// `G_4(x) = Σ C(4k,k) x^k/(3k+1)`.
    pub fn g(&self) -> NFElem {
        g4_of(&self.f)
    }
}

pub fn make_quartic_context(x: &Rational) -> Result<QuarticContext, GenfuncError> {
    let q = quartic_at(x);
    let roots = sturm_isolate(&q, Some(&rat(0)), None)?;
    let [(lo, hi)] = roots.as_slice() else {
        return Err(GenfuncError::Invariant(format!("expected one positive root, found {}", roots.len())));
    };
    let field = NumberField::new("b", q.clone(), lo.clone(), hi.clone())?;
    let split = split_depressed_quartic(&q)
        .ok_or_else(|| GenfuncError::Invariant(format!("{q} does not split over a quadratic field")))?;
    let sqrt_d = sqrt_in_field(&field, &split)
        .ok_or_else(|| GenfuncError::Invariant("square root not found in the quartic field".into()))?;
    Ok(QuarticContext { x: x.clone(), f: field.generator(), d: split.d, sqrt_d, field })
}

/// `β = f(-1/256)` together with `√2` in the same quartic field.
#[derive(Clone, Debug)]
pub struct BetaContext {
    pub ctx: QuarticContext,
}

impl BetaContext {
    pub fn beta(&self) -> &NFElem {
        &self.ctx.f
    }

    pub fn sqrt2(&self) -> &NFElem {
        &self.ctx.sqrt_d
    }

    /// `14β^2 - 7√2 β - 1 - 2√2`.
    pub fn relation_residual(&self) -> NFElem {
        let k = &self.ctx.field;
        let b = self.beta();
        let s = self.sqrt2();
        b.pow(2)
            .mul_ref(&k.from_rational(rat(14)))
            .sub_ref(&s.mul_ref(b).mul_ref(&k.from_rational(rat(7))))
            .sub_ref(&k.from_rational(rat(1)))
            .sub_ref(&s.mul_ref(&k.from_rational(rat(2))))
    }
}

/// Builds the field two ways and insists they agree: as the resolvent-split
/// quartic field, and as `Res_s(s^2 - 2, 14t^2 - 7st - 1 - 2s)`, whose
/// primitive form must equal the quartic at `-1/256`, with
/// `√2 = (14β^2 - 1)/(7β + 2)`.
pub fn make_beta() -> Result<BetaContext, GenfuncError> {
    let x = ratio(-1, 256);
    let ctx = make_quartic_context(&x)?;
    if ctx.d != BigInt::from(2) {
        return Err(GenfuncError::Invariant(format!("expected Q(√2), got Q(√{})", ctx.d)));
    }
    let res = resultant_linear(
        &RatPoly::from_ints(&[-2, 0, 1]),
        &RatPoly::from_ints(&[-2, -7]),
        &RatPoly::from_ints(&[-1, 0, 14]),
    );
    if res.monic() != ctx.field.modulus().monic() {
        return Err(GenfuncError::Invariant(format!("resultant {res} differs from the quartic")));
    }
    let b = &ctx.f;
    let k = &ctx.field;
    let via_relation = b
        .pow(2)
        .mul_ref(&k.from_rational(rat(14)))
        .sub_ref(&k.from_rational(rat(1)))
        .mul_ref(&b.mul_ref(&k.from_rational(rat(7))).add_ref(&k.from_rational(rat(2))).inv()?);
    if via_relation != ctx.sqrt_d {
        return Err(GenfuncError::Invariant("the two constructions of √2 disagree".into()));
    }
    let beta = BetaContext { ctx };
    let r = beta.relation_residual();
    if !r.is_zero() {
        return Err(GenfuncError::Invariant(format!("β relation residual {r}")));
    }
    Ok(beta)
}

/// `f(x)` by direct summation, then checked against the quartic.
pub fn eval_f(x: &Rational, digits: u32) -> Result<Ball, GenfuncError> {
    if x.abs() >= ratio(27, 256) {
        return Err(GenfuncError::Domain(x.to_string()));
    }
    let spec = SeriesSpec::simple(x.clone(), BinomialPower::Plus, 0, RatPoly::from_ints(&[1]), vec![])?;
    let f = sum_series(&spec, digits)?;
    let prec = f.prec();
    let c = |n: i64| Ball::from_int(n, prec);
    let f2 = f.powi(2);
    let f4 = f.powi(4);
    let resid = &(&(&f4.mul_rational(&(rat(27) - rat(256) * x)) - &f2.mul_ball(&c(18))) - &f.mul_ball(&c(8))) - &c(1);
    if !resid.contains_zero() {
        return Err(GenfuncError::Invariant(format!("f({x}) enclosure violates its quartic: {resid}")));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sturm_isolate;

    #[test]
    fn alpha_context() {
        let a = make_alpha().unwrap();
        let (lo, hi) = a.alpha.refine(&ratio(1, 1000));
        assert!(lo > ratio(1472, 1000) && hi < ratio(1475, 1000));
        assert!(a.relation_residual().is_zero());
    }

    #[test]
    fn beta_context() {
        let b = make_beta().unwrap();
        let (lo, hi) = b.beta().enclose(&ratio(1, 10000));
        assert!(lo > ratio(984, 1000) && hi < ratio(986, 1000), "{lo} {hi}");
        assert_eq!(b.sqrt2().mul_ref(b.sqrt2()), b.ctx.field.from_rational(rat(2)));
    }

    #[test]
    fn quadratic_fields_of_the_five_cases() {
        for (x, d) in [(ratio(1, 128), 2), (ratio(-1, 72), 3), (ratio(-1, 25), 5), (ratio(1, 24), 3)] {
            let c = make_quartic_context(&x).unwrap();
            assert_eq!(c.d, BigInt::from(d), "x={x}");
            assert_eq!(c.sqrt_d.sign(), 1);
        }
    }

    #[test]
    fn eval_f_values() {
        let z = eval_f(&rat(0), 20).unwrap();
        assert!(z.contains(&rat(1)) && z.rad() == rat(0));
        let a = make_alpha().unwrap();
        let (lo, hi) = a.alpha.refine(&Rational::new(1.into(), BigInt::from(10).pow(30)));
        let f = eval_f(&ratio(1, 16), 40).unwrap();
        let iv = Ball::from_rational_interval(&lo, &hi, 200);
        assert!(iv.contains_ball(&f));
        let b = eval_f(&ratio(-1, 256), 20).unwrap();
        assert!(b.lo().to_rational() > ratio(984, 1000) && b.hi().to_rational() < ratio(986, 1000));
        assert!(matches!(eval_f(&ratio(27, 256), 10), Err(GenfuncError::Domain(_))));
    }

    #[test]
    fn alternating_partial_sum_oracle_for_beta() {
        // f(-1/256) partial sums alternate; consecutive partial sums bracket it.
        let x = ratio(-1, 256);
        let mut s = rat(0);
        let mut prev = rat(0);
        for k in 0..12u64 {
            prev = s.clone();
            s += Rational::from_integer(crate::exact::binomial(4 * k, k)) * x.pow(k as i32);
        }
        let (lo, hi) = if s < prev { (s, prev) } else { (prev, s) };
        let roots = sturm_isolate(&quartic_at(&x), Some(&lo), Some(&hi)).unwrap();
        assert_eq!(roots.len(), 1);
    }
}
