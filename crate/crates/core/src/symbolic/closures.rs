use std::fmt::Display;
use std::sync::Arc;

use super::{builtin_antiderivatives, cube_root_two, lift, rationals, show_poly, CheckOutcome};
use crate::exact::{rat, ratio, NFElem, NumberField, Poly, RatFunc, RatPoly, Rational, Ring};

/// Passes iff `lhs - rhs` expands to the zero polynomial; otherwise the
/// difference is the witness.
pub fn check_poly_identity<R: Ring + Display>(lhs: &Poly<R>, rhs: &Poly<R>) -> (CheckOutcome, Poly<R>) {
    let d = lhs - rhs;
    let out = if d.is_zero() { CheckOutcome::pass() } else { CheckOutcome::fail(show_poly(&d, "y")) };
    (out, d)
}

/// One reading of an identity, labelled by the quartic (or cubic) it uses.
#[derive(Clone, Debug)]
pub struct QuarticCandidate {
    pub label: String,
    pub lhs: RatFunc<NFElem>,
    pub rhs: RatFunc<NFElem>,
}

impl QuarticCandidate {
    /// Cross-multiplied difference `lhs.num·rhs.den - rhs.num·lhs.den`.
    pub fn difference(&self) -> Poly<NFElem> {
        &(&self.lhs.num * &self.rhs.den) - &(&self.rhs.num * &self.lhs.den)
    }
}

/// A closure identity. With one candidate it must hold; with several,
/// exactly one must hold and the outcome names it.
#[derive(Clone, Debug)]
pub struct ClosureIdentity {
    pub name: &'static str,
    pub candidates: Vec<QuarticCandidate>,
}

impl ClosureIdentity {
    pub fn check(&self) -> CheckOutcome {
        let diffs: Vec<Poly<NFElem>> = self.candidates.iter().map(QuarticCandidate::difference).collect();
        let closing: Vec<usize> = (0..diffs.len()).filter(|&i| diffs[i].is_zero()).collect();
        if self.candidates.len() == 1 {
            return if closing.is_empty() { CheckOutcome::fail(show_poly(&diffs[0], "y")) } else { CheckOutcome::pass() };
        }
        match closing.as_slice() {
            [i] => {
                let mut out = CheckOutcome::pass().with_note(format!("closes with {}", self.candidates[*i].label));
                for (j, c) in self.candidates.iter().enumerate() {
                    if j != *i {
                        let d = &diffs[j];
                        out = out.with_note(format!(
                            "{} does not close (difference of degree {})",
                            c.label,
                            d.degree().unwrap_or(0)
                        ));
                    }
                }
                out
            }
            [] => CheckOutcome::fail(format!("no candidate closes; first difference {}", show_poly(&diffs[0], "y"))),
            _ => CheckOutcome::fail("more than one candidate closes"),
        }
    }
}

pub const CLOSURE_NAMES: [&str; 7] = [
    "closure-sigma1-rational",
    "closure-sigma1-log",
    "closure-p1",
    "closure-p2",
    "closure-p3",
    "closure-p4",
    "closure-p5",
];

const CUBIC: [i64; 4] = [-1, -7, -11, 11];
const Q33: [i64; 5] = [1, 12, 54, 108, 33];
const Q97: [i64; 5] = [1, 12, 54, 108, 97];
const C11: [i64; 4] = [1, 9, 27, 11];

const P1: [i64; 15] = [
    99, 3580, 59938, 615636, 4319865, 21786588, 80835264, 221967000, 447600789, 649292868, 654760746, 437065524,
    178503183, 40573764, 3750516,
];
const P2: [i64; 15] = [
    1, 44, 881, 10640, 86653, 504220, 2167757, 7024768, 17347827, 32761508, 47083971, 50600432, 39021903, 19641236,
    4964927,
];
const P3: [i64; 12] = [9, 311, 4712, 41220, 229586, 845834, 2077344, 3356404, 3436765, 2018295, 599104, 71632];
const P4: [i64; 15] = [
    27, 1172, 23114, 275580, 2221641, 12792132, 54045864, 169175304, 390925197, 655999884, 773801154, 604283868,
    276465231, 63476028, 5867532,
];
const P5: [i64; 15] = [
    1, 24, 245, 1356, 4177, 5660, -5139, -30728, -30309, 41488, 108295, 20604, -111085, -54788, 82967,
];

fn quartic_label(c: &[i64]) -> String {
    show_poly(&RatPoly::from_ints(c), "y").replace(['(', ')'], "")
}

struct Builder {
    k: Arc<NumberField>,
}

impl Builder {
    fn p(&self, c: &[i64]) -> Poly<NFElem> {
        lift(&RatPoly::from_ints(c), &self.k)
    }

    fn q(&self, v: Rational) -> NFElem {
        self.k.from_rational(v)
    }

    fn poly(&self, p: Poly<NFElem>) -> RatFunc<NFElem> {
        RatFunc::from_poly(p, &self.q(rat(1)))
    }

    fn rf(&self, n: Poly<NFElem>, d: Poly<NFElem>) -> RatFunc<NFElem> {
        RatFunc::new(n, d).expect("nonzero denominator")
    }

    /// `64y^5/(3y+1)^2`, the value of `f'` at `f = y`.
    fn fprime(&self) -> RatFunc<NFElem> {
        self.rf(self.p(&[0, 0, 0, 0, 0, 64]), self.p(&[1, 3]).pow(2))
    }

    /// `c1·f'(y) + c0·(y - 1) + c`.
    fn tail(&self, c1: Rational, c0: Rational, c: Rational) -> RatFunc<NFElem> {
        self.fprime()
            .scale(&self.q(c1))
            .add(&self.poly(&self.p(&[-1, 1]).scale(&self.q(c0)) + &Poly::constant(self.q(c))))
    }
}

/// Move a rational part over `Q` into `k` coefficientwise.
fn move_to(r: &RatFunc<NFElem>, k: &Arc<NumberField>) -> RatFunc<NFElem> {
    let m = |p: &Poly<NFElem>| p.map(|c| k.from_rational(c.as_rational().expect("rational coefficient")));
    RatFunc { num: m(&r.num), den: m(&r.den) }
}

pub fn closure_identities() -> Vec<ClosureIdentity> {
    let q = Builder { k: rationals() };
    let anti = builtin_antiderivatives();
    let cubic = q.p(&CUBIC);
    let one_cand = |label: &str, lhs, rhs| vec![QuarticCandidate { label: label.into(), lhs, rhs }];

    // σ1: g(y) - (54/16) f'(y) + 108(y-1) = 27y(y+1)·cubic/(2(3y+1)^2)
    let g_rat = move_to(&anti[0].g.rational_part, &q.k);
    let r1 = g_rat.add(&q.tail(ratio(-54, 16), rat(108), rat(0)));
    let r1_rhs = q.rf(&q.p(&[0, 27, 27]) * &cubic, q.p(&[1, 3]).pow(2).scale(&q.q(rat(2))));

    // 128y^5 - 2(y+1)^3(3y+1)^2 = 2(5y^2+2y+1)·cubic
    let l1_lhs = &q.p(&[0, 0, 0, 0, 0, 128]) - &(&q.p(&[1, 1]).pow(3) * &q.p(&[1, 3]).pow(2)).scale(&q.q(rat(2)));
    let l1_rhs = (&q.p(&[1, 2, 5]) * &cubic).scale(&q.q(rat(2)));

    // σ2 rational part at z = 4y^2/(3y+1)^2
    let z2 = q.rf(q.p(&[0, 0, 4]), q.p(&[1, 3]).pow(2));
    let r2 = move_to(&anti[1].g.rational_part, &q.k).compose(&z2).add(&q.tail(ratio(287, 16), rat(-115), rat(-214)));
    let p1_cands = [Q33, Q97]
        .iter()
        .map(|qq| QuarticCandidate {
            label: quartic_label(qq),
            lhs: r2.clone(),
            rhs: q.rf(&cubic * &q.p(&P1), &q.p(&[1, 3]).pow(2) * &q.p(qq).pow(3)),
        })
        .collect();

    // 64y^5 Q^3 - (y+1)^6(3y+1)^5(5y+1)^6 = cubic·p2
    let base2 = &(&q.p(&[1, 1]).pow(6) * &q.p(&[1, 3]).pow(5)) * &q.p(&[1, 5]).pow(6);
    let p2_cands = [Q33, Q97]
        .iter()
        .map(|qq| QuarticCandidate {
            label: quartic_label(qq),
            lhs: q.poly(&(&q.p(&[0, 0, 0, 0, 0, 64]) * &q.p(qq).pow(3)) - &base2),
            rhs: q.poly(&cubic * &q.p(&P2)),
        })
        .collect();

    // σ3 over Q(∛2) at z = 2∛2·y/(3y+1)
    let c = Builder { k: cube_root_two() };
    let z3 = c.rf(Poly::new(vec![c.q(rat(0)), c.k.generator().mul_ref(&c.q(rat(2)))]), c.p(&[1, 3]));
    let r3 = anti[2].g.rational_part.compose(&z3).add(&c.tail(ratio(-296, 16), rat(178), rat(196)));
    let r3_rhs = c.rf(
        (&c.p(&CUBIC) * &c.p(&P3)).scale(&c.q(rat(-2))),
        &c.p(&[1, 3]).pow(2) * &c.p(&C11).pow(3),
    );

    // σ4 rational part at z = 2y/(3y+1)
    let z4 = q.rf(q.p(&[0, 2]), q.p(&[1, 3]));
    let r4 = move_to(&anti[3].g.rational_part, &q.k).compose(&z4).add(&q.tail(ratio(-449, 32), ratio(275, 2), rat(151)));
    let p4_cands = [&Q33[..], &C11[..]]
        .into_iter()
        .map(|d| QuarticCandidate {
            label: quartic_label(d),
            lhs: r4.clone(),
            rhs: q.rf(-(&cubic * &q.p(&P4)), (&q.p(&[1, 3]).pow(2) * &q.p(d).pow(3)).scale(&q.q(rat(2)))),
        })
        .collect();

    // 4y^3(y+1)^12(3y+1)^2 - (y-1)^5 Q^3 = -cubic·p5
    let base5 = &(&q.p(&[0, 0, 0, 4]) * &q.p(&[1, 1]).pow(12)) * &q.p(&[1, 3]).pow(2);
    let p5_cands = [Q33, Q97]
        .iter()
        .map(|qq| QuarticCandidate {
            label: quartic_label(qq),
            lhs: q.poly(&base5 - &(&q.p(&[-1, 1]).pow(5) * &q.p(qq).pow(3))),
            rhs: q.poly(-(&cubic * &q.p(&P5))),
        })
        .collect();

    vec![
        ClosureIdentity { name: CLOSURE_NAMES[0], candidates: one_cand("cubic", r1, r1_rhs) },
        ClosureIdentity { name: CLOSURE_NAMES[1], candidates: one_cand("cubic", q.poly(l1_lhs), q.poly(l1_rhs)) },
        ClosureIdentity { name: CLOSURE_NAMES[2], candidates: p1_cands },
        ClosureIdentity { name: CLOSURE_NAMES[3], candidates: p2_cands },
        ClosureIdentity { name: CLOSURE_NAMES[4], candidates: one_cand(&quartic_label(&C11), r3, r3_rhs) },
        ClosureIdentity { name: CLOSURE_NAMES[5], candidates: p4_cands },
        ClosureIdentity { name: CLOSURE_NAMES[6], candidates: p5_cands },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_square() {
        let a = RatPoly::from_ints(&[1, 1]).pow(2);
        assert!(check_poly_identity(&a, &RatPoly::from_ints(&[1, 2, 1])).0.passed);
        let (out, d) = check_poly_identity(&a, &RatPoly::from_ints(&[1, 3, 1]));
        assert!(!out.passed);
        assert_eq!(d, RatPoly::from_ints(&[0, -1]));
    }

    #[test]
    fn every_closure_holds_with_one_candidate() {
        for id in closure_identities() {
            let out = id.check();
            assert!(out.passed, "{}: {}", id.name, out.witness);
        }
    }

    #[test]
    fn quartic_disambiguation() {
        let ids = closure_identities();
        let which = |name: &str| {
            let out = ids.iter().find(|i| i.name == name).unwrap().check();
            out.notes[0].clone()
        };
        assert!(which("closure-p1").contains("33*y^4"));
        assert!(which("closure-p2").contains("97*y^4"));
        assert!(which("closure-p4").contains("33*y^4"));
        assert!(which("closure-p5").contains("97*y^4"));
    }

    #[test]
    fn p2_degree_seventeen_on_both_sides() {
        let ids = closure_identities();
        let c = &ids[3].candidates[1];
        assert_eq!(c.lhs.num.degree(), Some(17));
        assert_eq!(c.rhs.num.degree(), Some(17));
    }
}
