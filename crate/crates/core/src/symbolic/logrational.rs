use std::sync::Arc;

use super::{cube_root_two, lift, lift_parts, rationals, show_poly, CheckOutcome};
use crate::exact::{rat, ratio, ExactError, Field, NFElem, NumberField, Poly, RatFunc, RatPoly, Rational, Ring};

/// `rational_part + Σ c_i log(arg_i)` in one variable.
#[derive(Clone, Debug)]
pub struct LogRationalExpr<R> {
    pub rational_part: RatFunc<R>,
    pub log_terms: Vec<(R, RatFunc<R>)>,
}

impl<R: Field> LogRationalExpr<R> {
    pub fn new(rational_part: RatFunc<R>, log_terms: Vec<(R, RatFunc<R>)>) -> Result<Self, ExactError> {
        if log_terms.iter().any(|(_, a)| a.is_zero()) {
            return Err(ExactError::ZeroDivisor);
        }
        Ok(LogRationalExpr { rational_part, log_terms })
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut logs = self.log_terms.clone();
        logs.extend(o.log_terms.iter().cloned());
        LogRationalExpr { rational_part: self.rational_part.add(&o.rational_part), log_terms: logs }
    }
}

/// `(rational_part)' + Σ c_i (n_i'/n_i - d_i'/d_i)` over a common denominator.
pub fn diff_log_rational<R: Field>(e: &LogRationalExpr<R>) -> RatFunc<R> {
    let mut acc = e.rational_part.derivative();
    for (c, arg) in &e.log_terms {
        let n = &arg.num;
        let d = &arg.den;
        let dlog = RatFunc {
            num: &(&n.derivative() * d) - &(n * &d.derivative()),
            den: n * d,
        };
        acc = acc.add(&dlog.scale(c));
    }
    acc
}

/// Passes iff `g' - integrand` is the zero rational function.
pub fn check_antiderivative<R: Field + std::fmt::Display>(g: &LogRationalExpr<R>, integrand: &RatFunc<R>) -> CheckOutcome {
    let diff = diff_log_rational(g).sub(integrand);
    if diff.is_zero() {
        CheckOutcome::pass()
    } else {
        CheckOutcome::fail(format!("g' - integrand = ({}) / ({})", show_poly(&diff.num, "z"), show_poly(&diff.den, "z")))
    }
}

/// One of the four stated antiderivatives with its integrand.
#[derive(Clone, Debug)]
pub struct AntiderivativeCase {
    pub name: &'static str,
    pub field: Arc<NumberField>,
    pub g: LogRationalExpr<NFElem>,
    pub integrand: RatFunc<NFElem>,
}

fn p(field: &Arc<NumberField>, c: &[i64]) -> Poly<NFElem> {
    lift(&RatPoly::from_ints(c), field)
}

fn prod(field: &Arc<NumberField>, fs: &[&[i64]]) -> Poly<NFElem> {
    fs.iter().fold(p(field, &[1]), |acc, f| &acc * &p(field, f))
}

fn q(field: &Arc<NumberField>, v: Rational) -> NFElem {
    field.from_rational(v)
}

fn rf(num: Poly<NFElem>, den: Poly<NFElem>) -> RatFunc<NFElem> {
    RatFunc::new(num, den).expect("nonzero denominator")
}

pub fn builtin_antiderivatives() -> Vec<AntiderivativeCase> {
    let qf = rationals();
    // g(y) = (81y^3 - 54y^2 - 243y + 216)/2 - 20 log(2y/(y+1))
    let g = LogRationalExpr::new(
        rf(p(&qf, &[216, -243, -54, 81]), p(&qf, &[2])),
        vec![(q(&qf, rat(-20)), rf(p(&qf, &[0, 2]), p(&qf, &[1, 1])))],
    )
    .unwrap();
    let g_int = rf(
        &p(&qf, &[-40, -3, 27]) * &p(&qf, &[1, 3]).pow(2),
        prod(&qf, &[&[0, 2], &[1, 1]]),
    );

    // g2(z) = 4z(486z^5 + ... + 11)/(3z^2-1)^3 + 10 log((z-1)^2/(z^2+1))
    let g2 = LogRationalExpr::new(
        rf(&p(&qf, &[0, 4]) * &p(&qf, &[11, 27, -126, -351, 135, 486]), p(&qf, &[-1, 0, 3]).pow(3)),
        vec![(q(&qf, rat(10)), rf(p(&qf, &[-1, 1]).pow(2), p(&qf, &[1, 0, 1])))],
    )
    .unwrap();
    let g2_int = rf(
        prod(&qf, &[&[1, 3, -1, 1], &[4, 0, -75, 0, 81]]).scale(&q(&qf, rat(16))),
        &prod(&qf, &[&[-1, 1], &[1, 0, 1]]) * &p(&qf, &[-1, 0, 3]).pow(4),
    );

    // g3 over Q(c), c^3 = 2.
    let cf = cube_root_two();
    let c = cf.generator();
    let inner = lift_parts(
        &[&[0, 0, 36, 0, 0, -135, 0, 0, 72], &[0, 22, 0, 0, -80, 0, 0, 40], &[12, 0, 0, -44, 0, 0, 20]],
        &cf,
    );
    let c_minus_z = &Poly::constant(c.clone()) - &p(&cf, &[0, 1]);
    let g3 = LogRationalExpr::new(
        rf(&p(&cf, &[0, 1]) * &inner, p(&cf, &[-1, 0, 0, 1]).pow(3).scale(&q(&cf, rat(2)))),
        vec![(q(&cf, ratio(-20, 3)), rf(p(&cf, &[2]), c_minus_z.pow(3)))],
    )
    .unwrap();
    let quartic_c = &p(&cf, &[0, -4, 0, 0, 1]) + &Poly::constant(c.mul_ref(&q(&cf, rat(2))));
    let g3_int = rf(
        prod(&cf, &[&[16, 0, 0, -83, 0, 0, 40], &[-8, 0, 0, 28, 0, 0, -10, 0, 0, 1]]),
        &p(&cf, &[-1, 0, 0, 1]).pow(4).scale(&q(&cf, rat(2))) * &quartic_c,
    );

    // g4(z) = 2zQ(z)/(3z^4-1)^3 + 5 log((z-1)^4/(z^4+1))
    let g4 = LogRationalExpr::new(
        rf(
            &p(&qf, &[0, 2]) * &p(&qf, &[6, 11, 18, 27, -68, -126, -216, -351, 54, 135, 270, 486]),
            p(&qf, &[-1, 0, 0, 0, 3]).pow(3),
        ),
        vec![(q(&qf, rat(5)), rf(p(&qf, &[-1, 1]).pow(4), p(&qf, &[1, 0, 0, 0, 1])))],
    )
    .unwrap();
    let g4_int = rf(
        prod(&qf, &[&[1, 1, -1, 1], &[1, 0, 3, 0, -1, 0, 1], &[4, 0, 0, 0, -75, 0, 0, 0, 81]]).scale(&q(&qf, rat(8))),
        &prod(&qf, &[&[-1, 1], &[1, 0, 0, 0, 1]]) * &p(&qf, &[-1, 0, 0, 0, 3]).pow(4),
    );

    vec![
        AntiderivativeCase { name: "antiderivative-g", field: qf.clone(), g, integrand: g_int },
        AntiderivativeCase { name: "antiderivative-g2", field: qf.clone(), g: g2, integrand: g2_int },
        AntiderivativeCase { name: "antiderivative-g3", field: cf, g: g3, integrand: g3_int },
        AntiderivativeCase { name: "antiderivative-g4", field: qf, g: g4, integrand: g4_int },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qrf(n: &[i64], d: &[i64]) -> RatFunc<Rational> {
        RatFunc::new(RatPoly::from_ints(n), RatPoly::from_ints(d)).unwrap()
    }

    #[test]
    fn log_y() {
        let e = LogRationalExpr::new(qrf(&[0], &[1]), vec![(rat(1), qrf(&[0, 1], &[1]))]).unwrap();
        assert_eq!(diff_log_rational(&e), qrf(&[1], &[0, 1]));
        assert!(!check_antiderivative(&e, &qrf(&[1], &[1, 1])).passed);
    }

    #[test]
    fn quotient_rule_oracle() {
        // 10 log((z-1)^2/(z^2+1)) -> 20/(z-1) - 20z/(z^2+1)
        let e = LogRationalExpr::new(qrf(&[0], &[1]), vec![(rat(10), qrf(&[1, -2, 1], &[1, 0, 1]))]).unwrap();
        let expected = qrf(&[20], &[-1, 1]).sub(&qrf(&[0, 20], &[1, 0, 1]));
        assert_eq!(diff_log_rational(&e), expected);
    }

    #[test]
    fn g_derivative_is_stated_integrand() {
        let cases = builtin_antiderivatives();
        let g = &cases[0];
        assert_eq!(diff_log_rational(&g.g), g.integrand);
    }

    #[test]
    fn all_four_pass() {
        for case in builtin_antiderivatives() {
            let out = check_antiderivative(&case.g, &case.integrand);
            assert!(out.passed, "{}: {}", case.name, out.witness);
        }
    }

    #[test]
    fn perturbed_integrand_fails() {
        let case = &builtin_antiderivatives()[3];
        let bumped = case.integrand.add(&RatFunc::from_poly(Poly::constant(case.field.from_rational(rat(1))), &case.field.from_rational(rat(1))));
        let out = check_antiderivative(&case.g, &bumped);
        assert!(!out.passed && !out.witness.is_empty());
    }
}
