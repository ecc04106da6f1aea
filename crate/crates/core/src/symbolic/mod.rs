//! Exact checks of the proof-level identities: antiderivatives, the
//! α-decomposition, the polynomial closures, summation by parts, the
//! partial-fraction step, the quadratic-field reductions and the
//! substituted integrands. Every check either passes or returns an exact
//! nonzero witness.

mod abel;
mod closures;
mod decomp;
mod integrands;
mod logrational;
mod partial;
mod reduction;

pub use abel::{abel_boundary_discrepancy, check_abel_step, check_abel_sum, AbelVariant};
pub use closures::{check_poly_identity, closure_identities, ClosureIdentity, QuarticCandidate, CLOSURE_NAMES};
pub use decomp::{alpha_decomposition, check_alpha_decomposition, solve_decomposition, DecompositionProblem, DecompositionSolution};
pub use integrands::{substituted_integrand, IntegrandData, IntegrandField};
pub use logrational::{builtin_antiderivatives, check_antiderivative, diff_log_rational, AntiderivativeCase, LogRationalExpr};
pub use partial::{check_partial_fractions, partial_fraction_printed, partial_fraction_corrected};
pub use reduction::{check_quadratic_reduction, ReductionCase, REDUCTION_CASES};

use std::fmt::Display;
use std::sync::Arc;

use crate::exact::{rat, ExactError, NFElem, NumberField, Poly, RatPoly, Ring};
use crate::genfunc::GenfuncError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymbolicError {
    #[error("transcription fault: {0}")]
    Transcription(String),
    #[error("integrand has a pole in the integration range: {0}")]
    Pole(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Genfunc(#[from] GenfuncError),
}

/// Result of an exact check. A failing outcome always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: String,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome { passed: true, witness: String::new(), notes: Vec::new() }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        let w = witness.into();
        CheckOutcome { passed: false, witness: if w.is_empty() { "nonzero".into() } else { w }, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Descending-power rendering in `var`, with parenthesized coefficients.
pub fn show_poly<R: Ring + Display>(p: &Poly<R>, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let cs = if cs.contains([' ', '+']) || cs[1..].contains('-') { format!("({cs})") } else { cs };
        parts.push(match i {
            0 => cs,
            1 => format!("{cs}*{var}"),
            _ => format!("{cs}*{var}^{i}"),
        });
    }
    parts.join(" + ")
}

/// Degree-1 field `Q`, so rational identities share the number-field code path.
pub(crate) fn rationals() -> Arc<NumberField> {
    NumberField::new("q", RatPoly::from_ints(&[0, 1]), rat(-1), rat(1)).expect("t is irreducible")
}

/// `Q(∛2)` with `c = 2^(1/3)`.
pub fn cube_root_two() -> Arc<NumberField> {
    NumberField::new("c", RatPoly::from_ints(&[-2, 0, 0, 1]), rat(1), rat(2)).expect("t^3 - 2 is irreducible")
}

/// Coefficientwise image of a rational polynomial in `field`.
pub fn lift(p: &RatPoly, field: &Arc<NumberField>) -> Poly<NFElem> {
    p.map(|c| field.from_rational(c.clone()))
}

/// `Σ_i p_i · g^i` for rational polynomials `p_i`, where `g` generates `field`.
pub(crate) fn lift_parts(parts: &[&[i64]], field: &Arc<NumberField>) -> Poly<NFElem> {
    let g = field.generator();
    let mut acc = Poly::zero();
    let mut gp = field.from_rational(rat(1));
    for part in parts {
        acc = &acc + &lift(&RatPoly::from_ints(part), field).scale(&gp);
        gp = gp.mul_ref(&g);
    }
    acc
}
