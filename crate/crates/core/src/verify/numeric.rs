//! Numeric verification of catalog entries: each series is summed to a
//! certified enclosure, the closed form is evaluated rigorously, and the
//! difference decides the status.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::record::{Status, VerificationRecord};
use crate::catalog::{eval_closed_form, CatalogError, IdentityEntry};
use crate::numerics::{bits_for_digits, Ball};
use crate::series::sum_series;

pub const DEFAULT_DIGITS: u32 = 50;

fn decimal_len(n: &BigInt) -> u32 {
    n.magnitude().to_string().len() as u32
}

/// Extra digits so that weighting and adding the components still leaves
/// radius below `10^-(digits + 1)`.
fn guard_digits(entry: &IdentityEntry) -> u32 {
    let spread = (entry.components.len().max(1) as f64).log10().ceil() as u32;
    let weight = entry
        .components
        .iter()
        .map(|c| (decimal_len(c.weight.numer()) + 1).saturating_sub(decimal_len(c.weight.denom())))
        .max()
        .unwrap_or(0);
    weight + spread + 2
}

/// Enclosure of `Σ_i w_i S_i` with radius below `10^-(digits + 1)`.
pub fn evaluate_lhs(entry: &IdentityEntry, digits: u32) -> Result<Ball, CatalogError> {
    let d = digits + guard_digits(entry);
    let prec = bits_for_digits(d) + 32;
    let mut acc = Ball::zero(prec);
    for c in &entry.components {
        if c.weight.is_zero() {
            continue;
        }
        let s = sum_series(&c.spec, d)?;
        acc = acc.add_ball(&s.mul_rational(&c.weight));
    }
    Ok(acc)
}

fn threshold(digits: u32) -> crate::exact::Rational {
    crate::exact::Rational::new(1.into(), BigInt::from(10).pow(digits - 1))
}

pub fn verify_entry(entry: &IdentityEntry, digits: u32) -> VerificationRecord {
    let start = Instant::now();
    let sig = digits as usize;
    let mut record = VerificationRecord {
        id: entry.id.clone(),
        status: Status::Error,
        lhs: String::new(),
        rhs: String::new(),
        difference: String::new(),
        digits,
        elapsed_ms: 0,
        provenance: entry.provenance.clone(),
        message: None,
    };
    let lhs = evaluate_lhs(entry, digits);
    let rhs = eval_closed_form(&entry.rhs, digits + 3);
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let diff = l.sub_ball(&r);
            record.lhs = l.to_mid_rad_string(sig);
            record.rhs = r.to_mid_rad_string(sig);
            record.difference = diff.to_mid_rad_string(3);
            record.status = if !diff.contains_zero() {
                Status::Fail
            } else if diff.width() <= threshold(digits) {
                Status::Pass
            } else {
                record.message = Some(format!("difference enclosure wider than 1e{}", 1 - digits as i64));
                Status::Error
            };
        }
        (l, r) => {
            if let Ok(l) = &l {
                record.lhs = l.to_mid_rad_string(sig);
            }
            if let Ok(r) = &r {
                record.rhs = r.to_mid_rad_string(sig);
            }
            let msg: Vec<String> = [l.err(), r.err()].into_iter().flatten().map(|e| e.to_string()).collect();
            record.message = Some(msg.join("; "));
        }
    }
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    record
}

/// One record per entry in catalog order, computed on `jobs` threads.
pub fn verify_all(entries: &[IdentityEntry], digits: u32, jobs: usize) -> Vec<VerificationRecord> {
    let run = || entries.par_iter().map(|e| verify_entry(e, digits)).collect::<Vec<_>>();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => entries.iter().map(|e| verify_entry(e, digits)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, lookup, ClosedForm};

    #[test]
    fn eq_1_1_passes_at_30_digits() {
        let cat = builtin_catalog();
        let r = verify_entry(lookup(&cat, "eq-1.1").unwrap(), 30);
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.rhs.starts_with("-5"));
    }

    #[test]
    fn wrong_rhs_fails() {
        let cat = builtin_catalog();
        let mut e = lookup(&cat, "eq-1.1").unwrap().clone();
        e.rhs = ClosedForm::parse("-5 + 1/100000000000000000000").unwrap();
        let r = verify_entry(&e, 30);
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn parallel_order_matches_catalog() {
        let cat: Vec<_> = builtin_catalog().into_iter().take(6).collect();
        let r = verify_all(&cat, 12, 4);
        let ids: Vec<_> = r.iter().map(|r| r.id.clone()).collect();
        let expected: Vec<_> = cat.iter().map(|e| e.id.clone()).collect();
        assert_eq!(ids, expected);
    }
}
