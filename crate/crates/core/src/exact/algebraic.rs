use std::fmt;

use num_traits::Signed;

use super::poly::RatPoly;
use super::sturm::count_closed;
use super::{rat, ExactError, Rational};

/// A real root of a rational polynomial, pinned by an isolating interval.
///
/// The interval is closed; either the defining polynomial changes sign
/// strictly across it, or it is degenerate `[r, r]` at an exact root.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicReal {
    defining: RatPoly,
    squarefree: RatPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicReal {
    /// Fails unless `[lo, hi]` contains exactly one real root of `defining`.
    pub fn new(defining: RatPoly, lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if defining.is_zero() {
            return Err(ExactError::ZeroDivisor);
        }
        let sf = defining.squarefree_part();
        let n = count_closed(&sf, &lo, &hi);
        if n != 1 {
            return Err(ExactError::NotIsolating(n));
        }
        let (lo, hi) = if sf.sign_at(&lo) == 0 {
            (lo.clone(), lo)
        } else if sf.sign_at(&hi) == 0 {
            (hi.clone(), hi)
        } else {
            (lo, hi)
        };
        Ok(AlgebraicReal { defining, squarefree: sf, lo, hi })
    }

    pub fn defining(&self) -> &RatPoly {
        &self.defining
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Bisects until `hi - lo <= width`. The result is nested in the current
    /// interval.
    pub fn refine(&self, width: &Rational) -> (Rational, Rational) {
        assert!(width.is_positive(), "refinement width must be positive");
        let p = &self.squarefree;
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        if lo == hi {
            return (lo, hi);
        }
        let s_lo = p.sign_at(&lo);
        let two = rat(2);
        while &hi - &lo > *width {
            let m = (&lo + &hi) / &two;
            match p.sign_at(&m) {
                0 => return (m.clone(), m),
                s if s == s_lo => lo = m,
                _ => hi = m,
            }
        }
        (lo, hi)
    }

    pub fn refined(&self, width: &Rational) -> AlgebraicReal {
        let (lo, hi) = self.refine(width);
        AlgebraicReal { defining: self.defining.clone(), squarefree: self.squarefree.clone(), lo, hi }
    }

    /// Rational midpoint approximation within `width`.
    pub fn approx(&self, width: &Rational) -> Rational {
        let (lo, hi) = self.refine(width);
        (lo + hi) / rat(2)
    }

    /// Exact sign of `q(self)`.
    pub fn sign_of(&self, q: &RatPoly) -> i32 {
        if q.is_zero() {
            return 0;
        }
        // q(θ) = 0 iff θ is a root of gcd(defining, q).
        let g = self.squarefree.gcd(q);
        if g.degree().unwrap_or(0) > 0 && count_closed(&g, &self.lo, &self.hi) == 1 {
            return 0;
        }
        let mut cur = self.clone();
        let mut width = &self.hi - &self.lo;
        loop {
            let (a, b) = interval_eval(q, &cur.lo, &cur.hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            width = if width.is_positive() { width / rat(16) } else { rat(1) };
            cur = cur.refined(&width);
        }
    }
}

/// Naive interval Horner with exact rational endpoints.
pub(crate) fn interval_eval(p: &RatPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut a = rat(0);
    let mut b = rat(0);
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.defining, self.lo, self.hi)
    }
}
