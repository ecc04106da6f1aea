use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::ring::{ConstRing, Field, Ring};
use super::{format_rational, rat, ExactError, Rational};

/// Dense univariate polynomial; `coeffs[i]` multiplies `y^i`.
///
/// Canonical form has no trailing zero coefficients, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

pub type RatPoly = Poly<Rational>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// `c·y^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![c.zero_like(); n];
        v.push(c);
        Poly { coeffs: v }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Coefficient of `y^i`, or `None` past the degree.
    pub fn coeff(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return x.zero_like();
        };
        it.fold(first.clone(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_ref(&c.from_rational_like(&rat(i as i64))))
                .collect(),
        )
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => &a * &base,
                    None => base.clone(),
                });
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        match acc {
            Some(a) => a,
            None => {
                // p^0 = 1; need a coefficient to build one from context.
                match self.coeffs.first() {
                    Some(c) => Poly::constant(c.one_like()),
                    None => panic!("0^0 for a context-free zero polynomial"),
                }
            }
        }
    }

    /// `self(inner(y))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Applies `f` to each coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<R: ConstRing> Poly<R> {
    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    /// The indeterminate `y`.
    pub fn x() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Poly::new(coeffs.iter().map(R::from_rational).collect())
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division: `self = q·b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self), ExactError> {
        let lead = b.leading().ok_or(ExactError::ZeroDivisor)?;
        let lead_inv = lead.inv()?;
        let db = b.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![lead.zero_like(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = r[i + db].mul_ref(&lead_inv);
            if !c.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].sub_ref(&c.mul_ref(bc));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self, ExactError> {
        Ok(self.divrem(b)?.1)
    }

    /// Quotient when `b` divides `self` exactly.
    pub fn div_exact(&self, b: &Self) -> Result<Option<Self>, ExactError> {
        let (q, r) = self.divrem(b)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, b: &Self) -> bool {
        matches!(b.div_exact(self), Ok(Some(_)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g = gcd(self, other)`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = match self.coeffs.first().or(other.coeffs.first()) {
            Some(c) => Poly::constant(c.one_like()),
            None => return (Poly::zero(), Poly::zero(), Poly::zero()),
        };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = r0.leading().expect("nonzero gcd").inv().expect("unit");
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// `∫_0^y self`.
    pub fn integral(&self) -> Self {
        let Some(c0) = self.coeffs.first() else {
            return Poly::zero();
        };
        let mut v = vec![c0.zero_like()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let d = c.from_rational_like(&rat(i as i64 + 1));
            v.push(c.div_ref(&d).expect("nonzero"));
        }
        Poly::new(v)
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.monic()
        } else {
            self.div_exact(&g).expect("nonzero").expect("gcd divides").monic()
        }
    }
}

impl RatPoly {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Sign of `self(x)` as -1, 0, 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Bound `B` with every real root in `(-B, B)` (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(<Rational as Zero>::zero(), |a, b| if b > a { b } else { a });
        m + <Rational as One>::one()
    }

    /// Scales by the positive lcm of the denominators so all coefficients are
    /// integers.
    pub fn primitive_integer(&self) -> RatPoly {
        use num_integer::Integer;
        let l = self
            .coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |a, c| a.lcm(c.denom()));
        self.scale(&Rational::from_integer(l))
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut v = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            v[i] = v[i].add_ref(c);
        }
        Poly::new(v)
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        self + &(-o)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(v)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                (&self).$m(&o)
            }
        }
        impl<R: Ring> $tr<&Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: &Poly<R>) -> Poly<R> {
                (&self).$m(o)
            }
        }
        impl<R: Ring> $tr<Poly<R>> for &Poly<R> {
            type Output = Poly<R>;
            fn $m(self, o: Poly<R>) -> Poly<R> {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        match self.coeffs.first() {
            Some(c) => Poly::constant(c.one_like()),
            None => panic!("one_like on a context-free zero polynomial"),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        match self.coeffs.first() {
            Some(c) => Poly::constant(c.from_rational_like(q)),
            None => panic!("from_rational_like on a context-free zero polynomial"),
        }
    }
}

impl fmt::Display for RatPoly {
    /// Descending powers in `y`, e.g. `11*y^3 - 11*y^2 - 7*y - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (_, true) => {}
                (_, false) => write!(f, "{coef}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn derivative_of_half_cubic() {
        let g = p(&[216, -243, -54, 81]).scale(&ratio(1, 2));
        let expected = p(&[-243, -108, 243]).scale(&ratio(1, 2));
        assert_eq!(g.derivative(), expected);
    }

    #[test]
    fn divrem_cubic() {
        let (q, r) = p(&[0, 0, 0, 1]).divrem(&p(&[-1, -7, -11, 11])).unwrap();
        assert_eq!(q, RatPoly::constant(ratio(1, 11)));
        assert_eq!(
            r,
            RatPoly::new(vec![ratio(1, 11), ratio(7, 11), rat(1)])
        );
    }

    #[test]
    fn divide_by_zero_polynomial() {
        assert_eq!(p(&[1, 2]).divrem(&RatPoly::zero()), Err(ExactError::ZeroDivisor));
    }

    #[test]
    fn zero_is_empty() {
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[0]).coeffs().is_empty());
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), RatPoly::zero());
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn compose_and_pow() {
        // (y+1)^2 composed with y-1 is y^2.
        let sq = p(&[1, 1]).pow(2);
        assert_eq!(sq.compose(&p(&[-1, 1])), p(&[0, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -7, -11, 11]).to_string(), "11*y^3 - 11*y^2 - 7*y - 1");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    #[test]
    fn integral_inverts_derivative() {
        let q = p(&[3, -4, 5, 7]);
        assert_eq!(q.derivative().integral(), &q - &p(&[3]));
    }
}
