use num_traits::Zero;

use super::{lift, show_poly, CheckOutcome};
use crate::exact::{format_rational, rat, ratio, NFElem, Poly, RatPoly, Rational, Ring};
use crate::genfunc::AlphaContext;

/// Find rationals `c` with `target = Σ c_i basis_i` in `K[y]`.
#[derive(Clone, Debug)]
pub struct DecompositionProblem {
    pub target: Poly<NFElem>,
    pub basis: Vec<Poly<NFElem>>,
}

#[derive(Clone, Debug)]
pub struct DecompositionSolution {
    pub coefficients: Vec<Rational>,
    /// `target - Σ c_i basis_i`, zero iff the system is consistent.
    pub residual: Poly<NFElem>,
}

impl DecompositionSolution {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }
}

fn component(p: &Poly<NFElem>, i: usize, e: usize) -> Rational {
    p.coeff(i).and_then(|c| c.rep().coeff(e).cloned()).unwrap_or_else(Rational::zero)
}

/// Exact Gaussian elimination on the coefficient system, one equation per
/// (power of y, power of the field generator). Free unknowns are set to 0;
/// an inconsistent system shows up as a nonzero residual.
pub fn solve_decomposition(p: &DecompositionProblem) -> DecompositionSolution {
    assert!(!p.basis.is_empty(), "decomposition basis must be nonempty");
    let n = p.basis.len();
    let ydeg = p.basis.iter().chain([&p.target]).filter_map(|b| b.degree()).max().unwrap_or(0);
    let fdeg = p
        .basis
        .iter()
        .chain([&p.target])
        .flat_map(|b| b.coeffs().first().map(|c| c.field().degree()))
        .max()
        .unwrap_or(1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..=ydeg {
        for e in 0..fdeg {
            let mut row: Vec<Rational> = p.basis.iter().map(|b| component(b, i, e)).collect();
            row.push(component(&p.target, i, e));
            if row.iter().any(|v| !Zero::is_zero(v)) {
                rows.push(row);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&k| !Zero::is_zero(&rows[k][col])) else { continue };
        rows.swap(r, pr);
        let inv = rat(1) / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !Zero::is_zero(&row[col]) {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut coefficients = vec![Rational::zero(); n];
    for (k, &col) in pivots.iter().enumerate() {
        coefficients[col] = rows[k][n].clone();
    }
    let residual = residual_of(p, &coefficients);
    DecompositionSolution { coefficients, residual }
}

fn residual_of(p: &DecompositionProblem, c: &[Rational]) -> Poly<NFElem> {
    let mut acc = p.target.clone();
    for (b, ci) in p.basis.iter().zip(c) {
        if let Some(k) = b.coeffs().first() {
            acc = &acc - &b.scale(&k.from_rational_like(ci));
        }
    }
    acc
}

/// Target `scale·(27y^2-3y-40)(11y^3-11y^2-7y-1)` against the basis
/// `16 S5 - α''`, `4 S3 - α'`, `y - α` with
/// `S5 = 27y^5-30y^4-16y^3+14y^2+5y` and `S3 = 3y^3-2y^2-y`.
pub fn alpha_decomposition(ctx: &AlphaContext, scale: &Rational) -> DecompositionProblem {
    let k = &ctx.field;
    let l = |c: &[i64]| lift(&RatPoly::from_ints(c), k);
    let s5 = l(&[0, 5, 14, -16, -30, 27]);
    let s3 = l(&[0, -1, -2, 3]);
    let target = (&l(&[-40, -3, 27]) * &l(&[-1, -7, -11, 11])).scale(&k.from_rational(scale.clone()));
    let basis = vec![
        &s5.scale(&k.from_rational(rat(16))) - &Poly::constant(ctx.alpha_pp.clone()),
        &s3.scale(&k.from_rational(rat(4))) - &Poly::constant(ctx.alpha_p.clone()),
        &l(&[0, 1]) - &Poly::constant(ctx.alpha_elem.clone()),
    ];
    DecompositionProblem { target, basis }
}

fn triple(c: &[Rational]) -> String {
    let v: Vec<String> = c.iter().map(format_rational).collect();
    format!("({})", v.join(", "))
}

/// Solves the one-eighth-scaled target, which must give
/// `(11/128, -35/8, 11)` exactly, and reports what the unit scaling gives.
pub fn check_alpha_decomposition(ctx: &AlphaContext) -> CheckOutcome {
    let sol = solve_decomposition(&alpha_decomposition(ctx, &ratio(1, 8)));
    let expected = [ratio(11, 128), ratio(-35, 8), rat(11)];
    let mut out = if !sol.is_exact() {
        CheckOutcome::fail(format!("residual {}", show_poly(&sol.residual, "y")))
    } else if sol.coefficients != expected {
        CheckOutcome::fail(format!("coefficients {} differ from {}", triple(&sol.coefficients), triple(&expected)))
    } else {
        CheckOutcome::pass()
    };
    out = out.with_note(format!("target scaled by 1/8 solves to {} with zero residual", triple(&sol.coefficients)));
    let unit = alpha_decomposition(ctx, &rat(1));
    let unit_sol = solve_decomposition(&unit);
    let alt = [ratio(11, 16), rat(-35), rat(11)];
    let alt_res = residual_of(&unit, &alt);
    out.with_note(format!(
        "unscaled target solves to {}; the triple {} leaves residual {}",
        triple(&unit_sol.coefficients),
        triple(&alt),
        show_poly(&alt_res, "y")
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::make_alpha;

    #[test]
    fn decomposition_weights() {
        let ctx = make_alpha().unwrap();
        let sol = solve_decomposition(&alpha_decomposition(&ctx, &ratio(1, 8)));
        assert!(sol.is_exact());
        assert_eq!(sol.coefficients, vec![ratio(11, 128), ratio(-35, 8), rat(11)]);
        let out = check_alpha_decomposition(&ctx);
        assert!(out.passed, "{}", out.witness);
        assert_eq!(out.notes.len(), 2);
    }

    #[test]
    fn trivial_targets() {
        let ctx = make_alpha().unwrap();
        let mut p = alpha_decomposition(&ctx, &rat(0));
        let s = solve_decomposition(&p);
        assert!(s.is_exact() && s.coefficients.iter().all(Zero::is_zero));
        p.target = p.basis[2].clone();
        let s = solve_decomposition(&p);
        assert!(s.is_exact());
        assert_eq!(s.coefficients, vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn inconsistent_system_has_residual() {
        let ctx = make_alpha().unwrap();
        let mut p = alpha_decomposition(&ctx, &rat(1));
        p.target = lift(&RatPoly::from_ints(&[0, 0, 0, 0, 0, 0, 1]), &ctx.field);
        let s = solve_decomposition(&p);
        assert!(!s.is_exact());
    }

    #[test]
    fn round_trip_reproduces_target() {
        let ctx = make_alpha().unwrap();
        let p = alpha_decomposition(&ctx, &ratio(3, 8));
        let s = solve_decomposition(&p);
        let mut acc = Poly::zero();
        for (b, c) in p.basis.iter().zip(&s.coefficients) {
            acc = &acc + &b.scale(&ctx.field.from_rational(c.clone()));
        }
        assert_eq!(acc, p.target);
    }
}
