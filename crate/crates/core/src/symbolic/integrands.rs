use std::sync::Arc;

use super::{cube_root_two, lift, lift_parts, rationals, show_poly, SymbolicError};
use crate::exact::{count_closed, rat, Field, NFElem, NumberField, Poly, RatFunc, RatPoly, Rational, Ring};
use crate::genfunc::AlphaContext;
use crate::numerics::{Ball, NumericError};

/// Which coefficient field the integrand lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegrandField {
    Rational,
    CubeRootTwo,
}

/// `∫_lower^upper integrand`, with `upper = u` or `upper = ∛2·u` for `u ∈ Q(α)`.
#[derive(Clone, Debug)]
pub struct IntegrandData {
    pub j: u8,
    pub field_kind: IntegrandField,
    pub field: Arc<NumberField>,
    pub integrand: RatFunc<NFElem>,
    pub lower: Rational,
    pub upper_alpha: NFElem,
    /// Factor cancelled from numerator and denominator (j = 3 only).
    pub cancelled: Option<Poly<NFElem>>,
}

type Rf = RatFunc<NFElem>;

struct Z {
    k: Arc<NumberField>,
}

impl Z {
    fn p(&self, c: &[i64]) -> Poly<NFElem> {
        lift(&RatPoly::from_ints(c), &self.k)
    }
    fn rf(&self, n: &[i64], d: &[i64]) -> Rf {
        RatFunc::new(self.p(n), self.p(d)).expect("nonzero denominator")
    }
    fn c(&self, v: i64) -> Rf {
        self.rf(&[v], &[1])
    }
    fn poly(&self, p: Poly<NFElem>) -> Rf {
        RatFunc::from_poly(p, &self.k.from_rational(rat(1)))
    }
}

/// Integrand in `y` for σ_j before substitution:
/// `(27Y^2-3Y-40)(11Y^3-11Y^2-7Y-1)·Y' / bracket`.
fn pulled_back(z: &Z, y: &Rf, bracket: &Rf) -> Rf {
    let q = z.poly(z.p(&[-40, -3, 27])).compose(y);
    let cubic = z.poly(z.p(&[-1, -7, -11, 11])).compose(y);
    q.mul(&cubic).mul(&y.derivative()).div(bracket).expect("bracket is nonzero")
}

fn prod(z: &Z, fs: &[&[i64]]) -> Poly<NFElem> {
    fs.iter().fold(z.p(&[1]), |acc, f| &acc * &z.p(f))
}

/// Returns the σ_j integrand (j = 1 in `y`, j ≥ 2 after the substitution in
/// `z`) together with its limits. For j ≥ 2 the closed form is checked
/// against the pullback of the `y`-integrand; for j = 3 the common factor of
/// `z^9-10z^6+28z^3-8` and `z^4-4z+2∛2` is removed by exact division.
/// Denominators are certified free of zeros on the closed range.
pub fn substituted_integrand(j: u8, alpha: &AlphaContext) -> Result<IntegrandData, SymbolicError> {
    let ka = &alpha.field;
    let a = &alpha.alpha_elem;
    let lin = |s: i64, t: i64| a.mul_ref(&ka.from_rational(rat(s))).add_ref(&ka.from_rational(rat(t)));
    let two_a_over = a.mul_ref(&ka.from_rational(rat(2))).mul_ref(&lin(3, 1).inv()?);
    let zq = Z { k: rationals() };
    let (field_kind, field, integrand, lower, upper_alpha, cancelled) = match j {
        1 => {
            let int = RatFunc::new(
                &zq.p(&[-40, -3, 27]) * &zq.p(&[1, 3]).pow(2),
                prod(&zq, &[&[0, 2], &[1, 1]]),
            )?;
            (IntegrandField::Rational, zq.k.clone(), int, rat(1), a.clone(), None)
        }
        2 => {
            let y = zq.rf(&[-1, 0, -1], &[-1, 0, 3]);
            // 4Y((3Y+1)(Y-1) - 4Y^2 z)
            let three_y1 = y.scale(&zq.k.from_rational(rat(3))).add(&zq.c(1));
            let inner = three_y1.mul(&y.sub(&zq.c(1))).sub(&y.mul(&y).mul(&zq.rf(&[0, 4], &[1])));
            let bracket = y.mul(&inner).scale(&zq.k.from_rational(rat(4)));
            let derived = pulled_back(&zq, &y, &bracket);
            let stated = RatFunc::new(
                prod(&zq, &[&[1, 3, -1, 1], &[4, 0, -75, 0, 81]]).scale(&zq.k.from_rational(rat(16))),
                &prod(&zq, &[&[-1, 1], &[1, 0, 1]]) * &zq.p(&[-1, 0, 3]).pow(4),
            )?;
            if derived != stated {
                return Err(SymbolicError::Transcription("j=2 integrand differs from its pullback".into()));
            }
            (IntegrandField::Rational, zq.k.clone(), stated, rat(0), two_a_over.mul_ref(&two_a_over), None)
        }
        3 => {
            let zc = Z { k: cube_root_two() };
            let c = zc.k.generator();
            let y = zc.rf(&[1], &[1, 0, 0, -1]);
            // 6Y(Y-1)(3Y+1 - 2∛2·Y/z)
            let cy_over_z = y.mul(&RatFunc::new(Poly::constant(c.mul_ref(&zc.k.from_rational(rat(2)))), zc.p(&[0, 1]))?);
            let inner = y.scale(&zc.k.from_rational(rat(3))).add(&zc.c(1)).sub(&cy_over_z);
            let bracket = y.mul(&y.sub(&zc.c(1))).mul(&inner).scale(&zc.k.from_rational(rat(6)));
            let derived = pulled_back(&zc, &y, &bracket);
            let nine = zc.p(&[-8, 0, 0, 28, 0, 0, -10, 0, 0, 1]);
            let quartic = &zc.p(&[0, -4, 0, 0, 1]) + &lift_parts(&[&[], &[2]], &zc.k);
            let sextic = zc.p(&[16, 0, 0, -83, 0, 0, 40]);
            let cube_m1_4 = zc.p(&[-1, 0, 0, 1]).pow(4).scale(&zc.k.from_rational(rat(2)));
            let stated = RatFunc::new(&sextic * &nine, &cube_m1_4 * &quartic)?;
            if derived != stated {
                return Err(SymbolicError::Transcription("j=3 integrand differs from its pullback".into()));
            }
            let g = nine.gcd(&quartic);
            if g.degree().unwrap_or(0) == 0 {
                return Err(SymbolicError::Transcription("no common endpoint factor to cancel".into()));
            }
            let (Some(n2), Some(d2)) = (nine.div_exact(&g)?, quartic.div_exact(&g)?) else {
                return Err(SymbolicError::Transcription(format!("division by {} leaves a remainder", show_poly(&g, "z"))));
            };
            let int = RatFunc::new(&sextic * &n2, &cube_m1_4 * &d2)?;
            (IntegrandField::CubeRootTwo, zc.k.clone(), int, rat(0), two_a_over.clone(), Some(g))
        }
        4 => {
            let y = zq.rf(&[-1, 0, 0, 0, -1], &[-1, 0, 0, 0, 3]);
            // 8Y(Y-1)(3Y+1 - 2Y/z)
            let inner = y
                .scale(&zq.k.from_rational(rat(3)))
                .add(&zq.c(1))
                .sub(&y.mul(&zq.rf(&[2], &[0, 1])));
            let bracket = y.mul(&y.sub(&zq.c(1))).mul(&inner).scale(&zq.k.from_rational(rat(8)));
            let derived = pulled_back(&zq, &y, &bracket);
            let stated = RatFunc::new(
                prod(&zq, &[&[1, 1, -1, 1], &[1, 0, 3, 0, -1, 0, 1], &[4, 0, 0, 0, -75, 0, 0, 0, 81]])
                    .scale(&zq.k.from_rational(rat(8))),
                &prod(&zq, &[&[-1, 1], &[1, 0, 0, 0, 1]]) * &zq.p(&[-1, 0, 0, 0, 3]).pow(4),
            )?;
            if derived != stated {
                return Err(SymbolicError::Transcription("j=4 integrand differs from its pullback".into()));
            }
            (IntegrandField::Rational, zq.k.clone(), stated, rat(0), two_a_over, None)
        }
        _ => return Err(SymbolicError::Transcription(format!("no integrand for j = {j}"))),
    };
    let data = IntegrandData { j, field_kind, field, integrand, lower, upper_alpha, cancelled };
    data.certify_pole_free()?;
    Ok(data)
}

impl IntegrandData {
    /// Rational enclosure of the upper limit of width about `width`.
    pub fn upper_enclosure(&self, width: &Rational) -> (Rational, Rational) {
        let (lo, hi) = self.upper_alpha.enclose(width);
        match self.field_kind {
            IntegrandField::Rational => (lo, hi),
            IntegrandField::CubeRootTwo => {
                let (clo, chi) = self.field.generator().enclose(width);
                (lo * clo, hi * chi)
            }
        }
    }

    /// Sturm count of real zeros of the denominator on `[lower, upper]`.
    /// Over `Q(∛2)` the denominator is first matched to `2(z^3-1)^4 (z-∛2)`.
    fn certify_pole_free(&self) -> Result<(), SymbolicError> {
        let (_, hi) = self.upper_enclosure(&Rational::new(1.into(), 1_000_000.into()));
        let den = &self.integrand.den;
        let rational_den: RatPoly = match self.field_kind {
            IntegrandField::Rational => den.map(|c| c.as_rational().expect("rational coefficient")),
            IntegrandField::CubeRootTwo => {
                let z = Z { k: self.field.clone() };
                let linear = &z.p(&[0, 1]) - &Poly::constant(self.field.generator());
                let expected = &z.p(&[-1, 0, 0, 1]).pow(4).scale(&self.field.from_rational(rat(2))) * &linear;
                if expected.monic() != den.monic() {
                    return Err(SymbolicError::Transcription(format!("unexpected denominator {}", show_poly(den, "z"))));
                }
                let (clo, _) = self.field.generator().enclose(&Rational::new(1.into(), 1_000_000.into()));
                if clo <= hi {
                    return Err(SymbolicError::Pole(format!("z = ∛2 not separated from the upper limit {hi}")));
                }
                RatPoly::from_ints(&[-1, 0, 0, 1])
            }
        };
        let sf = rational_den.squarefree_part();
        let n = count_closed(&sf, &self.lower, &hi);
        if n > 0 {
            return Err(SymbolicError::Pole(format!("{n} zero(s) of {} in [{}, {hi}]", sf, self.lower)));
        }
        Ok(())
    }

    /// Ball evaluator at working precision `prec`.
    pub fn evaluator(&self, prec: u64) -> impl Fn(&Ball) -> Result<Ball, NumericError> {
        let width = Rational::new(1.into(), num_bigint::BigInt::from(1) << (prec + 16));
        let to_balls = |p: &Poly<NFElem>| -> Vec<Ball> {
            p.coeffs()
                .iter()
                .map(|c| match c.as_rational() {
                    Some(q) => Ball::from_rational(&q, prec),
                    None => {
                        let (lo, hi) = c.enclose(&width);
                        Ball::from_rational_interval(&lo, &hi, prec)
                    }
                })
                .collect()
        };
        let num = to_balls(&self.integrand.num);
        let den = to_balls(&self.integrand.den);
        move |z: &Ball| {
            let horner = |cs: &[Ball]| cs.iter().rev().fold(Ball::zero(prec), |acc, c| acc.mul_ball(z).add_ball(c));
            horner(&num).div_ball(&horner(&den))
        }
    }
}
