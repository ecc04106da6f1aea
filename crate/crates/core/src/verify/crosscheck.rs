//! Quadrature of the integral representations against the series engine.
//! The quadrature side is heuristic, so a disagreement is reported as a
//! FAIL only when it exceeds the tolerance plus the quadrature's own
//! error estimate.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::record::Status;
use super::VerifyError;
use crate::exact::{format_rational, rat, ratio, RatPoly, Rational};
use crate::genfunc::{eval_f, make_alpha};
use crate::numerics::{format_sci, quad_integrate_with, Ball, NumericError, QuadOptions, QuadResult};
use crate::series::{sum_series, BinomialPower, SeriesSpec};
use crate::symbolic::substituted_integrand;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckRecord {
    pub j: u8,
    pub x: String,
    pub tol: String,
    pub status: Status,
    pub quadrature: String,
    pub series: String,
    pub difference: String,
    pub evaluations: usize,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

fn digits_for(tol: f64) -> u32 {
    (-tol.log10()).ceil().max(1.0) as u32 + 5
}

/// `∫_1^{f(x)} 4(1+3y)^2 / (y·Q(y))` where `Q` is the quotient of
/// `(3y+1)^3 (y-1) - 256x y^4` by `y - f(x)`, so the removable factor
/// `y - f` of the representation never appears.
pub fn representation_integral(x: &Rational, tol: f64) -> Result<QuadResult, VerifyError> {
    representation_integral_with(x, tol, QuadOptions::for_tolerance(tol))
}

fn representation_integral_with(x: &Rational, tol: f64, opts: QuadOptions) -> Result<QuadResult, VerifyError> {
    let prec = opts.prec;
    if x.is_zero() {
        return Ok(QuadResult { value: Ball::zero(prec), error_estimate: 0.0, evaluations: 0 });
    }
    let f = eval_f(x, digits_for(tol) + 10).map_err(|e| VerifyError::Evaluation(e.to_string()))?.mid();
    let d = &(&RatPoly::from_ints(&[1, 3]).pow(3) * &RatPoly::from_ints(&[-1, 1]))
        - &RatPoly::monomial(x * rat(256), 4);
    let lin = RatPoly::new(vec![-f.clone(), rat(1)]);
    let (quot, _) = d.divrem(&lin).map_err(|e| VerifyError::Evaluation(e.to_string()))?;
    let q: Vec<Ball> = quot.coeffs().iter().map(|c| Ball::from_rational(c, prec)).collect();
    let integrand = move |y: &Ball| -> Result<Ball, NumericError> {
        let qv = q.iter().rev().fold(Ball::zero(prec), |acc, c| acc.mul_ball(y).add_ball(c));
        let s = y.mul_rational(&rat(3)).add_rational(&rat(1));
        s.mul_ball(&s).mul_rational(&rat(4)).div_ball(&y.mul_ball(&qv))
    };
    let mut r = if f >= rat(1) {
        quad_integrate_with(integrand, &rat(1), &f, tol, opts)?
    } else {
        quad_integrate_with(integrand, &f, &rat(1), tol, opts)?
    };
    if f < rat(1) {
        r.value = r.value.neg_ball();
    }
    Ok(r)
}

fn harmonic_series(j: u8, x: &Rational, weight: RatPoly) -> Result<SeriesSpec, VerifyError> {
    SeriesSpec::new(x.clone(), BinomialPower::Plus, 0, BTreeMap::from([(j, weight)]), vec![])
        .map_err(|e| VerifyError::InvalidArgument(e.to_string()))
}

/// Checks the quadrature route against the series for harmonic channel `j`.
/// `j = 1` uses the representation at any admissible `x` and the series
/// `Σ C(4k,k) H_k x^k`. `j >= 2` uses the substituted integrand at
/// `x = 1/16`, whose series carries the weight `22k^2 - 92k + 11`.
pub fn crosscheck(j: u8, x: &Rational, tol: f64) -> Result<CrossCheckRecord, VerifyError> {
    crosscheck_with_budget(j, x, tol, QuadOptions::for_tolerance(tol).max_evaluations)
}

/// [`crosscheck`] with an explicit cap on integrand evaluations.
pub fn crosscheck_with_budget(j: u8, x: &Rational, tol: f64, max_evaluations: usize) -> Result<CrossCheckRecord, VerifyError> {
    if !(1..=4).contains(&j) {
        return Err(VerifyError::InvalidArgument(format!("j must be in 1..=4, got {j}")));
    }
    if x.abs() >= ratio(27, 256) {
        return Err(VerifyError::InvalidArgument(format!("|x| must be below 27/256, got {}", format_rational(x))));
    }
    if j >= 2 && *x != ratio(1, 16) {
        return Err(VerifyError::InvalidArgument(format!("j = {j} is only available at x = 1/16")));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(VerifyError::InvalidArgument(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let start = Instant::now();
    let digits = digits_for(tol);
    let opts = QuadOptions { max_evaluations, ..QuadOptions::for_tolerance(tol / 10.0) };
    let (spec, quad) = if j == 1 {
        (harmonic_series(1, x, RatPoly::from_ints(&[1]))?, representation_integral_with(x, tol / 10.0, opts))
    } else {
        let alpha = make_alpha().map_err(|e| VerifyError::Evaluation(e.to_string()))?;
        let data = substituted_integrand(j, &alpha).map_err(|e| VerifyError::Evaluation(e.to_string()))?;
        let width = Rational::new(1.into(), BigInt::from(10).pow(digits + 10));
        let (lo, hi) = data.upper_enclosure(&width);
        let upper = (lo + hi) / rat(2);
        let quad = quad_integrate_with(data.evaluator(opts.prec), &data.lower, &upper, tol / 10.0, opts).map_err(VerifyError::from);
        (harmonic_series(j, x, RatPoly::from_ints(&[11, -92, 22]))?, quad)
    };
    let series = sum_series(&spec, digits).map_err(|e| VerifyError::Evaluation(e.to_string()))?;
    let sig = digits as usize;
    let mut record = CrossCheckRecord {
        j,
        x: format_rational(x),
        tol: format!("{tol:e}"),
        status: Status::Error,
        quadrature: String::new(),
        series: series.to_mid_rad_string(sig),
        difference: String::new(),
        evaluations: 0,
        elapsed_ms: 0,
        message: None,
    };
    match quad {
        Ok(q) => {
            let diff = q.value.sub_ball(&series);
            let bound = diff.abs().hi().to_rational();
            let allowed = Rational::from_float(tol + q.error_estimate).unwrap_or_else(|| rat(0));
            record.status = if bound <= allowed { Status::Pass } else { Status::Fail };
            record.quadrature = q.value.to_mid_rad_string(sig);
            record.difference = format_sci(&bound, 3, true);
            record.evaluations = q.evaluations;
            record.message = Some(format!("quadrature error estimate {:.1e}", q.error_estimate));
        }
        Err(VerifyError::Numeric(e)) => {
            record.message = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j1_at_zero_is_trivial() {
        let r = crosscheck(1, &rat(0), 1e-20).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.evaluations, 0);
    }

    #[test]
    fn j1_matches_reference_value() {
        let r = representation_integral(&ratio(1, 16), 1e-22).unwrap();
        let reference = crate::exact::parse_rational("65119533637523484540590/100000000000000000000000").unwrap();
        assert!((r.value.mid() - reference).abs() < Rational::new(1.into(), BigInt::from(10).pow(20)));
    }

    #[test]
    fn j1_negative_argument() {
        let r = crosscheck(1, &ratio(-1, 20), 1e-15).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }

    #[test]
    fn preconditions() {
        assert!(crosscheck(5, &ratio(1, 16), 1e-20).is_err());
        assert!(crosscheck(2, &ratio(1, 20), 1e-20).is_err());
        assert!(crosscheck(1, &ratio(1, 8), 1e-20).is_err());
    }

    #[test]
    fn exhausted_budget_is_an_error_record() {
        let r = crosscheck_with_budget(2, &ratio(1, 16), 1e-20, 50).unwrap();
        assert_eq!(r.status, Status::Error);
        assert!(r.message.unwrap().contains("did not converge"));
    }
}
