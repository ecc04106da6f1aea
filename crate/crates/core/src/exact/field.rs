use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::algebraic::{interval_eval, AlgebraicReal};
use super::poly::{Poly, RatPoly};
use super::ring::{Field, Ring};
use super::{positive_divisors, rat, rational_sqrt, ExactError, Rational};

/// `Q[t]/(modulus)` with a chosen real root of the modulus as embedding.
#[derive(Debug)]
pub struct NumberField {
    name: String,
    modulus: RatPoly,
    generator: AlgebraicReal,
}

/// Element of a number field, stored as its reduced representative.
#[derive(Clone, Debug)]
pub struct NFElem {
    field: Arc<NumberField>,
    rep: RatPoly,
}

pub type NFPoly = Poly<NFElem>;

impl NumberField {
    /// Builds the field after checking that `modulus` is irreducible (degree
    /// 1 to 4) and that `[lo, hi]` isolates exactly one of its real roots.
    pub fn new(
        name: &str,
        modulus: RatPoly,
        lo: Rational,
        hi: Rational,
    ) -> Result<Arc<Self>, ExactError> {
        let deg = modulus.degree().ok_or(ExactError::ZeroDivisor)?;
        if !(1..=4).contains(&deg) {
            return Err(ExactError::UnsupportedDegree(deg));
        }
        if !is_irreducible(&modulus)? {
            return Err(ExactError::Reducible(modulus.to_string()));
        }
        let modulus = modulus.monic();
        let generator = AlgebraicReal::new(modulus.clone(), lo, hi)?;
        Ok(Arc::new(NumberField { name: name.to_string(), modulus, generator }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Monic modulus.
    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The real number the generator maps to.
    pub fn generator_real(&self) -> &AlgebraicReal {
        &self.generator
    }

    pub fn generator(self: &Arc<Self>) -> NFElem {
        nf_reduce(&RatPoly::x(), self)
    }

    pub fn from_rational(self: &Arc<Self>, q: Rational) -> NFElem {
        NFElem { field: self.clone(), rep: RatPoly::constant(q) }
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b)
            || (a.modulus == b.modulus && a.generator.interval() == b.generator.interval())
    }
}

/// Reduction modulo the field's modulus.
pub fn nf_reduce(expr: &RatPoly, field: &Arc<NumberField>) -> NFElem {
    let rep = expr.rem(&field.modulus).expect("nonzero modulus");
    NFElem { field: field.clone(), rep }
}

impl NFElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Representative polynomial in the generator, of degree below the
    /// field degree.
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    /// The element as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(rat(0)),
            Some(0) => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }

    pub fn pow(&self, n: u32) -> NFElem {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Exact sign of the embedded real value.
    pub fn sign(&self) -> i32 {
        self.field.generator.sign_of(&self.rep)
    }

    /// Rational interval of width at most `width` containing the embedding.
    pub fn enclose(&self, width: &Rational) -> (Rational, Rational) {
        if let Some(q) = self.as_rational() {
            return (q.clone(), q);
        }
        let mut w = width.clone();
        loop {
            let (lo, hi) = self.field.generator.refine(&w);
            let (a, b) = interval_eval(&self.rep, &lo, &hi);
            if &b - &a <= *width {
                return (a, b);
            }
            w /= rat(16);
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            NumberField::same(&self.field, &other.field),
            "{}",
            ExactError::FieldMismatch
        );
    }

    fn wrap(&self, rep: RatPoly) -> NFElem {
        NFElem { field: self.field.clone(), rep }
    }
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        NumberField::same(&self.field, &other.field) && self.rep == other.rep
    }
}

impl Ring for NFElem {
    fn zero_like(&self) -> Self {
        self.wrap(RatPoly::zero())
    }
    fn one_like(&self) -> Self {
        self.wrap(RatPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.check(o);
        self.wrap(&self.rep + &o.rep)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.check(o);
        self.wrap(&self.rep - &o.rep)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.check(o);
        nf_reduce(&(&self.rep * &o.rep), &self.field)
    }
    fn neg_ref(&self) -> Self {
        self.wrap(-&self.rep)
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        self.wrap(RatPoly::constant(q.clone()))
    }
}

impl Field for NFElem {
    fn inv(&self) -> Result<Self, ExactError> {
        if self.rep.is_zero() {
            return Err(ExactError::ZeroDivisor);
        }
        // s·rep + t·modulus = 1 because the modulus is irreducible.
        let (g, s, _) = self.rep.ext_gcd(&self.field.modulus);
        debug_assert_eq!(g, RatPoly::one());
        Ok(nf_reduce(&s, &self.field))
    }
}

impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rep.to_string().replace('y', self.field.name());
        write!(f, "{s}")
    }
}

/// Monic integer polynomial with the same roots scaled by the leading
/// coefficient `a` of the primitive integer form: `q(z) = a^(n-1)·p(z/a)`.
fn monic_integer_form(p: &RatPoly) -> (Vec<BigInt>, BigInt) {
    let ip = p.primitive_integer();
    let n = ip.degree().unwrap();
    let a = ip.leading().unwrap().numer().clone();
    let mut out = Vec::with_capacity(n + 1);
    let mut apow = BigInt::one();
    // coefficient of z^i is c_i·a^(n-1-i)
    let mut pows = vec![BigInt::one(); n + 1];
    for p in pows.iter_mut().skip(1) {
        *p = apow.clone() * &a;
        apow = p.clone();
    }
    for i in 0..=n {
        let c = ip.coeffs()[i].numer().clone();
        if i == n {
            out.push(BigInt::one());
        } else {
            out.push(c * &pows[n - 1 - i]);
        }
    }
    (out, a)
}

fn eval_int(q: &[BigInt], z: &BigInt) -> BigInt {
    q.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
}

/// All rational roots (without multiplicity).
pub fn rational_roots(p: &RatPoly) -> Vec<Rational> {
    let mut roots = Vec::new();
    let mut p = p.clone();
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    if Zero::is_zero(&p.coeffs()[0]) {
        roots.push(rat(0));
        while p.coeffs().first().is_some_and(Zero::is_zero) {
            p = Poly::new(p.coeffs()[1..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
    }
    let (q, a) = monic_integer_form(&p);
    for d in positive_divisors(&q[0]) {
        for z in [d.clone(), -d] {
            if eval_int(&q, &z).is_zero() {
                roots.push(Rational::new(z, a.clone()));
            }
        }
    }
    roots.sort();
    roots
}

/// Looks for a monic integer quadratic factor of a monic integer quartic.
fn has_quadratic_factor(q: &[BigInt]) -> bool {
    let (q0, q1, q2, s) = (&q[0], &q[1], &q[2], &q[3]);
    for d in positive_divisors(q0) {
        for c in [d.clone(), -d] {
            let e = q0 / &c;
            // b + d' = s, b·d' = q2 - c - e
            let prod = q2 - &c - &e;
            let disc = s * s - BigInt::from(4) * &prod;
            if disc.is_negative() {
                continue;
            }
            let r = disc.sqrt();
            if &r * &r != disc {
                continue;
            }
            for root in [&r, &(-&r)] {
                let twice_b = s + root;
                if twice_b.is_odd() {
                    continue;
                }
                let b = twice_b / 2;
                let dd = s - &b;
                if &b * &e + &c * &dd == *q1 {
                    return true;
                }
            }
        }
    }
    false
}

/// Irreducibility over `Q` for degrees 1 to 4: rational-root test plus a
/// search for quadratic factors (Gauss's lemma on the monic integer form).
pub fn is_irreducible(p: &RatPoly) -> Result<bool, ExactError> {
    let deg = p.degree().ok_or(ExactError::ZeroDivisor)?;
    match deg {
        0 => Ok(false),
        1 => Ok(true),
        2 | 3 => Ok(rational_roots(p).is_empty()),
        4 => {
            if !rational_roots(p).is_empty() {
                return Ok(false);
            }
            let (q, _) = monic_integer_form(p);
            Ok(!has_quadratic_factor(&q))
        }
        d => Err(ExactError::UnsupportedDegree(d)),
    }
}

/// `Res_s(m(s), a(t)·s + b(t))`, a polynomial in `t`.
pub fn resultant_linear(m: &RatPoly, a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = m.degree().expect("nonzero polynomial");
    let neg_b = -b;
    let mut acc = RatPoly::zero();
    for (i, c) in m.coeffs().iter().enumerate() {
        if Zero::is_zero(c) {
            continue;
        }
        let term = (&neg_b.pow(i as u32) * &a.pow((n - i) as u32)).scale(c);
        acc = &acc + &term;
    }
    if n % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// Squarefree integer part `d` and rational `u` with `q = d·u²` (q > 0).
fn squarefree_decompose(q: &Rational) -> (BigInt, Rational) {
    let n = q.numer() * q.denom();
    let mut rest = n.abs();
    let mut d = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= rest {
        while rest.is_multiple_of(&(&f * &f)) {
            rest /= &f * &f;
        }
        if rest.is_multiple_of(&f) {
            rest /= &f;
            d *= &f;
        }
        f += 1;
    }
    d *= rest;
    let u2 = Rational::new(n, d.clone()) / Rational::from_integer(q.denom() * q.denom());
    let u = rational_sqrt(&u2).expect("square by construction");
    (d, u)
}

/// A factorization `t^4 + p t^2 + q t + r = (t^2 + v t + w1)(t^2 - v t + w2)`
/// with `v = u·sqrt(d)`, all coefficients in `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticSplit {
    /// Squarefree integer `d`.
    pub d: BigInt,
    /// Coefficients `(a0, a1)` meaning `a0 + a1·sqrt(d)` of the first factor,
    /// as `t^2 + A t + B`: `[A, B]`.
    pub factor: [(Rational, Rational); 2],
}

/// Splits a depressed quartic (`t^3` coefficient zero) as a product of two
/// quadratics over a real quadratic field, via the resolvent cubic
/// `V^3 + 2p V^2 + (p^2 - 4r) V - q^2` in `V = v^2`.
pub fn split_depressed_quartic(quartic: &RatPoly) -> Option<QuarticSplit> {
    if quartic.degree() != Some(4) {
        return None;
    }
    let m = quartic.monic();
    let c = m.coeffs();
    if !Zero::is_zero(&c[3]) || Zero::is_zero(&c[1]) {
        return None;
    }
    let (p, q, r) = (&c[2], &c[1], &c[0]);
    let resolvent = RatPoly::new(vec![
        -(q * q),
        p * p - rat(4) * r,
        rat(2) * p,
        rat(1),
    ]);
    for vv in rational_roots(&resolvent) {
        if !vv.is_positive() {
            continue;
        }
        let (d, u) = squarefree_decompose(&vv);
        if d.is_one() {
            continue; // splits over Q; not a quadratic-field split
        }
        let dq = Rational::from_integer(d.clone());
        // w1 = (p + V - q/v)/2 with q/v = q·sqrt(d)/(u·d)
        let w1 = ((p + &vv) / rat(2), -(q / (&u * &dq)) / rat(2));
        return Some(QuarticSplit { d, factor: [(rat(0), u), w1] });
    }
    None
}

/// Expresses `sqrt(d)` inside a field where the generator is a root of
/// `t^2 + A t + B` over `Q(sqrt d)` (or of its conjugate), normalized so the
/// embedding is the positive square root.
pub fn sqrt_in_field(field: &Arc<NumberField>, split: &QuarticSplit) -> Option<NFElem> {
    let [(a0, a1), (b0, b1)] = &split.factor;
    let d = Rational::from_integer(split.d.clone());
    for sign in [1, -1] {
        let sg = rat(sign);
        // θ^2 + (a0 + a1 s)θ + b0 + b1 s = 0 gives s = -(θ^2 + a0 θ + b0)/(a1 θ + b1)
        let num = RatPoly::new(vec![b0.clone(), a0.clone(), rat(1)]);
        let den = RatPoly::new(vec![b1 * &sg, a1 * &sg]);
        let den_e = nf_reduce(&den, field);
        let Ok(inv) = den_e.inv() else { continue };
        let s = nf_reduce(&num, field).neg_ref().mul_ref(&inv);
        if s.mul_ref(&s) == field.from_rational(d.clone()) {
            let s = if s.sign() < 0 { s.neg_ref() } else { s };
            return Some(s);
        }
    }
    None
}
