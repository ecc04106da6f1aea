use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GenfuncError;
use crate::exact::{rat, Rational};

/// Power series known exactly through `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        TruncSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        TruncSeries::new(vec![c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        TruncSeries::new(vec![rat(0), rat(1)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Lowest order with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self, GenfuncError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(GenfuncError::NotInvertible);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -s * &inv0;
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn div(&self, o: &Self) -> Result<Self, GenfuncError> {
        Ok(self * &o.inv()?)
    }

    /// Binary powering, truncating after each product.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = TruncSeries::constant(rat(1), self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Termwise derivative; known through order `order - 1`.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return TruncSeries::constant(rat(0), 0);
        }
        TruncSeries {
            coeffs: (1..=n).map(|k| &self.coeffs[k] * rat(k as i64)).collect(),
        }
    }

    /// Antiderivative with zero constant term; one order longer.
    pub fn integral(&self) -> Self {
        let mut v = vec![Rational::zero()];
        v.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / rat(k as i64 + 1)));
        TruncSeries { coeffs: v }
    }

    /// `log(self)` for constant term one, as `∫ self'/self`.
    pub fn log(&self) -> Result<Self, GenfuncError> {
        if !self.coeffs[0].is_one() {
            return Err(GenfuncError::LogConstantTerm);
        }
        let n = self.order();
        if n == 0 {
            return Ok(TruncSeries::constant(rat(0), 0));
        }
        let q = self.derivative().div(&self.truncate(n - 1))?;
        Ok(q.integral())
    }

    /// `self(inner(x))` for `inner` without constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, GenfuncError> {
        if !inner.coeffs[0].is_zero() {
            return Err(GenfuncError::ComposeConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = TruncSeries::constant(rat(0), n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &(&acc * &inner) + &TruncSeries::constant(c.clone(), n);
        }
        Ok(acc)
    }

    fn zip(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(o.order());
        TruncSeries { coeffs: (0..=n).map(|k| f(&self.coeffs[k], &o.coeffs[k])).collect() }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, o: &TruncSeries) -> TruncSeries {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, o: &TruncSeries) -> TruncSeries {
        self.zip(o, |a, b| a - b)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(&rat(-1))
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, o: &TruncSeries) -> TruncSeries {
        let n = self.order().min(o.order());
        let mut v = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let one_minus_x = TruncSeries::new(vec![rat(1), rat(-1)], 6);
        let g = one_minus_x.inv().unwrap();
        assert!(g.coeffs().iter().all(|c| *c == rat(1)));
    }

    #[test]
    fn log_of_geometric() {
        // log(1/(1-x)) = sum x^k / k
        let g = TruncSeries::new(vec![rat(1), rat(-1)], 8).inv().unwrap();
        let l = g.log().unwrap();
        for k in 1..=8 {
            assert_eq!(*l.coeff(k), Rational::new(1.into(), (k as i64).into()));
        }
        assert!(TruncSeries::constant(rat(2), 3).log().is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = TruncSeries::new(vec![rat(1), rat(2), rat(-3), rat(5)], 7);
        let mut p = TruncSeries::constant(rat(1), 7);
        for _ in 0..5 {
            p = &p * &a;
        }
        assert_eq!(a.pow(5), p);
    }

    #[test]
    fn compose_with_double() {
        // (1+x)^2 at 2x is 1 + 4x + 4x^2
        let a = TruncSeries::new(vec![rat(1), rat(2), rat(1)], 4);
        let two_x = TruncSeries::x(4).scale(&rat(2));
        assert_eq!(a.compose(&two_x).unwrap(), TruncSeries::new(vec![rat(1), rat(4), rat(4)], 4));
        assert!(a.compose(&a).is_err());
    }
}
