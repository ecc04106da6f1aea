use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{ExactError, Rational};

/// Commutative ring with by-reference operations.
///
/// Elements that carry a context (number field elements) produce zeros and
/// ones from an existing element, which is why `zero_like`/`one_like` take
/// `&self`.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Embeds a rational in the same ring (and context) as `self`.
    fn from_rational_like(&self, q: &Rational) -> Self;
}

/// A ring whose zero and one exist without context.
pub trait ConstRing: Ring {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Result<Self, ExactError>;

    fn div_ref(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul_ref(&other.inv()?))
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        <Rational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
}

impl ConstRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {
    fn inv(&self) -> Result<Self, ExactError> {
        if Zero::is_zero(self) {
            Err(ExactError::ZeroDivisor)
        } else {
            Ok(self.recip())
        }
    }
}
