use super::poly::Poly;
use super::ring::Field;
use super::ExactError;

/// Quotient of two polynomials. Equality is decided by cross-multiplication,
/// so no normalization is needed for correctness; `reduced` cancels the gcd
/// to keep degrees small.
#[derive(Clone, Debug)]
pub struct RatFunc<R> {
    pub num: Poly<R>,
    pub den: Poly<R>,
}

impl<R: Field> RatFunc<R> {
    pub fn new(num: Poly<R>, den: Poly<R>) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDivisor);
        }
        Ok(RatFunc { num, den })
    }

    /// Polynomial viewed as a rational function; `one` is the ring's unit.
    pub fn from_poly(p: Poly<R>, one: &R) -> Self {
        RatFunc { num: p, den: Poly::constant(one.clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the common factor and makes the denominator monic.
    pub fn reduced(&self) -> Self {
        let g = self.num.gcd(&self.den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (
                self.num.div_exact(&g).unwrap().unwrap(),
                self.den.div_exact(&g).unwrap().unwrap(),
            )
        } else {
            (self.num.clone(), self.den.clone())
        };
        let l = d.leading().expect("nonzero").inv().expect("unit");
        n = n.scale(&l);
        d = d.scale(&l);
        RatFunc { num: n, den: d }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFunc {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .reduced()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc { num: &self.num * &o.num, den: &self.den * &o.den }.reduced()
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.num.is_zero() {
            return Err(ExactError::ZeroDivisor);
        }
        Ok(RatFunc { num: &self.num * &o.den, den: &self.den * &o.num }.reduced())
    }

    pub fn scale(&self, c: &R) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Quotient rule.
    pub fn derivative(&self) -> Self {
        RatFunc {
            num: &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            den: &self.den * &self.den,
        }
        .reduced()
    }

    pub fn eval(&self, x: &R) -> Result<R, ExactError> {
        self.num.eval(x).div_ref(&self.den.eval(x))
    }

    /// `self(inner)` by homogenized Horner: with `inner = a/b` and
    /// `n = max(deg num, deg den)`, both parts are multiplied by `b^n`.
    pub fn compose(&self, inner: &Self) -> Self {
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let hom = |p: &Poly<R>| -> Poly<R> {
            let mut acc = Poly::zero();
            for i in 0..=n {
                if let Some(c) = p.coeff(i) {
                    let term = (&inner.num.pow(i as u32) * &inner.den.pow((n - i) as u32)).scale(c);
                    acc = &acc + &term;
                }
            }
            acc
        };
        RatFunc { num: hom(&self.num), den: hom(&self.den) }.reduced()
    }
}

impl<R: Field> PartialEq for RatFunc<R> {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}
