//! Adaptive Romberg quadrature used only for cross-checks. The error
//! estimate is heuristic: the gap between successive diagonal entries.

use num_traits::ToPrimitive;

use super::ball::Ball;
use super::NumericError;
use crate::exact::{rat, Rational};

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Ball,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Knobs for [`quad_integrate_with`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub prec: u64,
    pub max_evaluations: usize,
    /// Deepest Romberg row per segment before the segment is bisected.
    pub max_level: usize,
}

impl QuadOptions {
    pub fn for_tolerance(tol: f64) -> Self {
        let bits = (-tol.log2()).max(0.0).ceil() as u64;
        QuadOptions { prec: bits + 64, max_evaluations: 400_000, max_level: 7 }
    }
}

/// `∫_a^b f` to an estimated absolute error `tol`.
pub fn quad_integrate<F>(f: F, a: &Rational, b: &Rational, tol: f64) -> Result<QuadResult, NumericError>
where
    F: Fn(&Ball) -> Result<Ball, NumericError>,
{
    quad_integrate_with(f, a, b, tol, QuadOptions::for_tolerance(tol))
}

pub fn quad_integrate_with<F>(
    f: F,
    a: &Rational,
    b: &Rational,
    tol: f64,
    opts: QuadOptions,
) -> Result<QuadResult, NumericError>
where
    F: Fn(&Ball) -> Result<Ball, NumericError>,
{
    let prec = opts.prec;
    let mut evaluations = 0usize;
    let mut total = Ball::zero(prec);
    let mut total_err = 0.0f64;
    let mut stack = vec![(a.clone(), b.clone(), tol)];
    let mut failed = false;
    while let Some((lo, hi, seg_tol)) = stack.pop() {
        let (v, err, ok) = romberg(&f, &lo, &hi, seg_tol, opts, &mut evaluations)?;
        let exhausted = evaluations >= opts.max_evaluations;
        if ok || exhausted {
            total = &total + &v;
            total_err += err;
            failed |= !ok;
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        stack.push((mid.clone(), hi, seg_tol / 2.0));
        stack.push((lo, mid, seg_tol / 2.0));
    }
    total_err += total.rad().to_f64().unwrap_or(f64::INFINITY);
    if failed || total_err > tol {
        return Err(NumericError::NoConvergence {
            best: total.to_f64(),
            error_estimate: total_err,
            evaluations,
        });
    }
    Ok(QuadResult { value: total, error_estimate: total_err, evaluations })
}

/// One Romberg tableau on `[a, b]`; returns `(value, estimate, converged)`.
fn romberg<F>(
    f: &F,
    a: &Rational,
    b: &Rational,
    tol: f64,
    opts: QuadOptions,
    evals: &mut usize,
) -> Result<(Ball, f64, bool), NumericError>
where
    F: Fn(&Ball) -> Result<Ball, NumericError>,
{
    let prec = opts.prec;
    let at = |x: &Rational, evals: &mut usize| -> Result<Ball, NumericError> {
        *evals += 1;
        f(&Ball::from_rational(x, prec))
    };
    let len = b - a;
    let mut prev: Vec<Ball> = vec![(&at(a, evals)? + &at(b, evals)?).mul_rational(&(&len / rat(2)))];
    let mut last_err = f64::INFINITY;
    for n in 1..=opts.max_level {
        let m = 1i64 << (n - 1);
        let h = &len / rat(2 * m);
        let mut s = Ball::zero(prec);
        for i in 0..m {
            let x = a + &h * rat(2 * i + 1);
            s = &s + &at(&x, evals)?;
        }
        let mut row = vec![&prev[0].mul_rational(&Rational::new(1.into(), 2.into())) + &s.mul_rational(&h)];
        let mut four = rat(4);
        for j in 1..=n {
            let c = rat(1) / (&four - rat(1));
            let next = &row[j - 1] + &(&row[j - 1] - &prev[j - 1]).mul_rational(&c);
            row.push(next);
            four *= rat(4);
        }
        let diff = &row[n] - &prev[n - 1];
        last_err = diff.mid().to_f64().unwrap_or(f64::INFINITY).abs();
        let value = row[n].clone();
        prev = row;
        if n >= 3 && last_err <= tol {
            return Ok((value, last_err, true));
        }
    }
    Ok((prev.last().unwrap().clone(), last_err, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{const_log, const_pi};
    use num_traits::Signed;

    #[test]
    fn identity_integrand() {
        let r = quad_integrate(|t| Ok(t.clone()), &rat(0), &rat(1), 1e-20).unwrap();
        assert!((r.value.to_f64() - 0.5).abs() < 1e-15);
        assert!(r.evaluations > 0);
        assert!(r.value.contains(&Rational::new(1.into(), 2.into())) || r.error_estimate <= 1e-20);
    }

    #[test]
    fn log_two_from_reciprocal() {
        let one = Ball::from_int(1, 128);
        let r = quad_integrate(|t| one.div_ball(&(&one + t)), &rat(0), &rat(1), 1e-20).unwrap();
        let l = const_log(&rat(2), 128).unwrap();
        let gap = (&r.value - &l).mid().abs();
        assert!(gap < Rational::new(1.into(), num_bigint::BigInt::from(10).pow(20)), "{gap}");
    }

    #[test]
    fn pi_from_arctan_derivative() {
        let four = Ball::from_int(4, 128);
        let one = Ball::from_int(1, 128);
        let r = quad_integrate(|t| four.div_ball(&(&one + &t.powi(2))), &rat(0), &rat(1), 1e-20).unwrap();
        let gap = (&r.value - &const_pi(128)).mid().abs();
        assert!(gap < Rational::new(1.into(), num_bigint::BigInt::from(10).pow(20)), "{gap}");
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let opts = QuadOptions { prec: 80, max_evaluations: 50, max_level: 3 };
        let one = Ball::from_int(1, 80);
        // 1/sqrt-like spike: smooth but steep near 0.
        let e = quad_integrate_with(
            |t| one.div_ball(&(t + &Ball::from_rational(&Rational::new(1.into(), 1000000.into()), 80))),
            &rat(0),
            &rat(1),
            1e-25,
            opts,
        );
        match e {
            Err(NumericError::NoConvergence { evaluations, .. }) => assert!(evaluations >= 50),
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }
}
