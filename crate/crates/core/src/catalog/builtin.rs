use std::collections::BTreeMap;

use super::{CatalogError, ClosedForm, Component, IdentityEntry};
use crate::exact::{parse_rational, rat, RatPoly, Rational};
use crate::series::{BinomialPower, LinearFactor, SeriesSpec};

/// Number of built-in identities.
pub const BUILTIN_COUNT: usize = 34;

fn q(s: &str) -> Rational {
    parse_rational(s).expect("literal rational")
}

/// Ascending coefficients as rational literals.
fn poly(c: &[&str]) -> RatPoly {
    RatPoly::new(c.iter().map(|s| q(s)).collect())
}

fn factors(fs: &[&str]) -> Vec<LinearFactor> {
    fs.iter().map(|f| f.parse().expect("literal factor")).collect()
}

fn spec(x: &str, power: i64, start: u64, channels: &[(u8, RatPoly)], fs: &[&str]) -> SeriesSpec {
    let power = BinomialPower::from_i64(power).expect("power ±1");
    let ch: BTreeMap<u8, RatPoly> = channels.iter().cloned().collect();
    SeriesSpec::new(q(x), power, start, ch, factors(fs)).expect("built-in spec is valid")
}

fn entry(id: &str, provenance: &str, components: Vec<Component>, rhs: &str) -> IdentityEntry {
    IdentityEntry {
        id: id.into(),
        provenance: provenance.into(),
        components,
        rhs: ClosedForm::parse(rhs).expect("literal closed form"),
    }
}

fn single(id: &str, provenance: &str, s: SeriesSpec, rhs: &str) -> IdentityEntry {
    entry(id, provenance, vec![Component { weight: rat(1), spec: s }], rhs)
}

/// `Q·(2H_4k - 3H_2k + H_k) + L` as channels.
fn h_combo(qc: &[&str], l: &[&str]) -> Vec<(u8, RatPoly)> {
    let qp = poly(qc);
    vec![
        (0, poly(l)),
        (1, qp.clone()),
        (2, qp.scale(&rat(-3))),
        (4, qp.scale(&rat(2))),
    ]
}

fn x_times(p: &RatPoly) -> RatPoly {
    &RatPoly::from_ints(&[0, 1]) * p
}

pub fn builtin_catalog() -> Vec<IdentityEntry> {
    let pk = poly(&["11", "-92", "22"]);
    let kp = x_times(&pk);
    let q11 = poly(&["1", "8", "11"]);
    let kq11 = x_times(&q11);
    let three = ["3k+1", "3k+2"];
    let mut v = vec![
        single(
            "intro-recip-8",
            "sum_{k>=1} (5k^2-4k+1) 8^k / (k(3k-1)(3k-2) C(4k,k)) = 3pi/2",
            spec("8", -1, 1, &[(0, poly(&["1", "-4", "5"]))], &["k", "3k-1", "3k-2"]),
            "3/2*pi",
        ),
        single(
            "intro-recip-m8",
            "sum_{k>=1} (415k^2-343k+62) / (k(3k-1)(3k-2) (-8)^k C(4k,k)) = -3 log 2",
            spec("-1/8", -1, 1, &[(0, poly(&["62", "-343", "415"]))], &["k", "3k-1", "3k-2"]),
            "-3*log(2)",
        ),
        single(
            "eq-1.1",
            "sum_{k>=0} (22k^2-92k+11) C(4k,k)/16^k = -5",
            spec("1/16", 1, 0, &[(0, pk.clone())], &[]),
            "-5",
        ),
        single(
            "eq-1.2",
            "sum_{k>=0} (22k^2+17k-2) C(4k,k)/((k+1)16^k) = 17",
            spec("1/16", 1, 0, &[(0, poly(&["-2", "17", "22"]))], &["k+1"]),
            "17",
        ),
        single(
            "eq-1.3",
            "sum_{k>=0} (11k^2+8k+1) C(4k,k)/((3k+1)(3k+2)16^k) = 1",
            spec("1/16", 1, 0, &[(0, q11.clone())], &three),
            "1",
        ),
        single(
            "eq-1.4",
            "sum_{k>=0} (22k^2-18k+3) C(4k,k)/((2k-1)(4k-1)(4k-3)16^k) = -1/3",
            spec("1/16", 1, 0, &[(0, poly(&["3", "-18", "22"]))], &["2k-1", "4k-1", "4k-3"]),
            "-1/3",
        ),
    ];

    // P(k) H_jk + L(k) + c/k, encoded over the factor k.
    for (id, j, l, rhs) in [
        ("thm1-Hk", 1u8, ["-10/3", "108", "-54"], "-20/3*log(2)"),
        ("thm1-H2k", 2, ["-25/6", "-115", "287"], "214 - 40/3*log(2)"),
        ("thm1-H3k", 3, ["-25/3", "178", "-296"], "-196 - 80/3*log(2)"),
        ("thm1-H4k", 4, ["-85/12", "275/2", "-449/2"], "-151 - 80/3*log(2)"),
    ] {
        v.push(single(
            id,
            &format!("sum_{{k>=1}} C(4k,k)/16^k (P(k) H_{{{j}k}} + ...), P(k) = 22k^2-92k+11"),
            spec("1/16", 1, 1, &[(0, poly(&l)), (j, kp.clone())], &["k"]),
            rhs,
        ));
    }

    v.push(single(
        "thm2-Hk",
        "sum_{k>=1} C(4k,k)((11k^2+8k+1)H_k + 6k + 6 + 4/(3k))/((3k+1)(3k+2)16^k) = (4/3) log 2",
        spec("1/16", 1, 1, &[(0, poly(&["4/3", "6", "6"])), (1, kq11.clone())], &["k", "3k+1", "3k+2"]),
        "4/3*log(2)",
    ));
    v.push(single(
        "thm2-H2k",
        "sum_{k>=0} C(4k,k)((11k^2+8k+1)(H_2k - (5/4)H_k) + 4k + 1)/((3k+1)(3k+2)16^k) = log 2",
        spec("1/16", 1, 0, &[(0, poly(&["1", "4"])), (1, q11.scale(&q("-5/4"))), (2, q11.clone())], &three),
        "log(2)",
    ));
    v.push(single(
        "thm2-H4k",
        "sum_{k>=0} C(4k,k)((11k^2+8k+1)(10H_4k - 17H_2k) + 2k + 18)/((3k+1)(3k+2)16^k) = 8 log 2",
        spec("1/16", 1, 0, &[(0, poly(&["18", "2"])), (2, q11.scale(&rat(-17))), (4, q11.scale(&rat(10)))], &three),
        "8*log(2)",
    ));

    let h = "H(k) = 2H_4k - 3H_2k + H_k";
    for (id, x, qc, l, fs, rhs) in [
        ("thm3-m256", "-1/256", ["1", "-86", "224"], ["5", "182"], &[][..], "(9 - 5*log(2))/(4*sqrt(2))"),
        ("thm3-m256-3k2", "-1/256", ["23", "110", "112"], ["16", "28"], &three[..], "8*sqrt(2)*log(2)"),
        ("thm3-128", "1/128", ["-17", "76", "200"], ["392", "-5800"], &[][..], "sqrt(2)*(144 + 5*log(2))"),
        ("thm3-128-3k2", "1/128", ["11", "44", "40"], ["-8", "-8"], &three[..], "(-4)*sqrt(2)*log(2)"),
        ("thm3-m72", "-1/72", ["67", "-1026", "3575"], ["2904/13", "42350/13"], &[][..], "sqrt(3)*(216/13 - 15*log(3))"),
        ("thm3-m72-3k2", "-1/72", ["11", "54", "55"], ["12", "22"], &three[..], "3*sqrt(3)*log(3)"),
        ("thm3-m25", "-1/25", ["1036", "-1409", "21413"], ["69280/23", "472948/23"], &[][..], "sqrt(5)*(1440/23 - 100*log(5))"),
        ("thm3-m25-3k2", "-1/25", ["26", "131", "133"], ["40", "76"], &three[..], "5*sqrt(5)*log(5)"),
        ("thm3-24", "1/24", ["21", "-146", "49"], ["1160", "-3038"], &[][..], "sqrt(3)*(216 - 5*log(3))"),
        ("thm3-24-3k2", "1/24", ["3", "10", "7"], ["-4", "-2"], &three[..], "(-1)*sqrt(3)*log(3)"),
    ] {
        let den = if fs.is_empty() { String::new() } else { "/((3k+1)(3k+2))".into() };
        v.push(single(
            id,
            &format!("sum_{{k>=0}} C(4k,k)(Q(k) H(k) + L(k)){den} x^k at x = {x}, {h}"),
            spec(x, 1, 0, &h_combo(&qc, &l), fs),
            rhs,
        ));
    }

    let kfactors = ["k+1", "3k+1", "3k+2"];
    v.push(single(
        "lem4.3-103",
        "sum_{k>=1} C(4k,k)(638k^4+966k^3+194k^2-199k-59)/((k+1)(3k+1)(3k+2)16^k) = 103/2",
        spec("1/16", 1, 1, &[(0, poly(&["-59", "-199", "194", "966", "638"]))], &kfactors),
        "103/2",
    ));
    v.push(single(
        "lem4.3-117",
        "sum_{k>=1} C(4k,k)(770k^4+1134k^3+82k^2-381k-105)/((k+1)(3k+1)(3k+2)16^k) = 117/2",
        spec("1/16", 1, 1, &[(0, poly(&["-105", "-381", "82", "1134", "770"]))], &kfactors),
        "117/2",
    ));
    v.push(single(
        "lem4.4",
        "sum_{k>=1} C(4k,k)((11k^2+8k+1)H_2k + 23k/2 + 17/2 + 5/(3k))/((3k+1)(3k+2)16^k) = (8/3) log 2 - 1/2",
        spec("1/16", 1, 1, &[(0, poly(&["5/3", "17/2", "23/2"])), (2, kq11.clone())], &["k", "3k+1", "3k+2"]),
        "8/3*log(2) - 1/2",
    ));
    v.push(single(
        "lem4.5",
        "sum_{k>=1} C(4k,k)((11k^2+8k+1)H_4k + 79k/4 + 65/4 + 17/(6k))/((3k+1)(3k+2)16^k) = (16/3) log 2 - 7/4",
        spec("1/16", 1, 1, &[(0, poly(&["17/6", "65/4", "79/4"])), (4, kq11)], &["k", "3k+1", "3k+2"]),
        "16/3*log(2) - 7/4",
    ));
    v.push(single(
        "eq4-Hk-3k1",
        "sum_{k>=1} C(4k,k)(H_k(-176k^3+384k^2+224k+24) + 48(3k-1)(3k+1))/((3k+1)16^k) = 0",
        spec("1/16", 1, 1, &[(0, poly(&["-48", "0", "432"])), (1, poly(&["24", "224", "384", "-176"]))], &["3k+1"]),
        "0",
    ));
    v.push(single(
        "eq4-Hk-3k1-3k2",
        "sum_{k>=1} C(4k,k)(H_k(-176k^3-48k^2+80k+24) + 48(3k+1)(3k+2))/((3k+1)(3k+2)16^k) = 0",
        spec("1/16", 1, 1, &[(0, poly(&["96", "432", "432"])), (1, poly(&["24", "80", "-48", "-176"]))], &three),
        "0",
    ));

    // w1·Σ C(4k,k)(a k + b) x^k + wA·Σ C(4k,k) x^k/(3k+1)
    //   + wB·Σ C(4k,k)(8k+2) x^k/((3k+1)(3k+2)) = c·√d
    for (id, x, w1, lin, wa, wb, rhs) in [
        ("lem5.1-m256", "-1/256", "64/5", ["5", "182"], "-36/5", "-1", "72/5*sqrt(2)"),
        ("lem5.1-128", "1/128", "32/5", ["-49", "725"], "-12/5", "1", "(-576/5)*sqrt(2)"),
        ("lem5.1-m72", "-1/72", "1/65", ["2904", "42350"], "-28/5", "-1", "216/65*sqrt(3)"),
        ("lem5.1-m25", "-1/25", "1/460", ["69280", "472948"], "-96/5", "-4", "72/23*sqrt(5)"),
        ("lem5.1-24", "1/24", "1/5", ["1160", "-3038"], "-4/5", "1", "216/5*sqrt(3)"),
    ] {
        let comps = vec![
            Component { weight: q(w1), spec: spec(x, 1, 0, &[(0, poly(&lin))], &[]) },
            Component { weight: q(wa), spec: spec(x, 1, 0, &[(0, poly(&["1"]))], &["3k+1"]) },
            Component { weight: q(wb), spec: spec(x, 1, 0, &[(0, poly(&["2", "8"]))], &three) },
        ];
        v.push(entry(
            id,
            &format!("w1 sum C(4k,k)(ak+b)x^k + wA sum C(4k,k)x^k/(3k+1) + wB sum C(4k,k)(8k+2)x^k/((3k+1)(3k+2)) at x = {x}"),
            comps,
            rhs,
        ));
    }
    debug_assert_eq!(v.len(), BUILTIN_COUNT);
    v
}

pub fn lookup<'a>(entries: &'a [IdentityEntry], id: &str) -> Result<&'a IdentityEntry, CatalogError> {
    entries.iter().find(|e| e.id == id).ok_or_else(|| CatalogError::NotFound(id.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn count_and_unique_ids() {
        let c = builtin_catalog();
        assert_eq!(c.len(), BUILTIN_COUNT);
        let ids: HashSet<&str> = c.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids.len(), c.len());
    }

    #[test]
    fn first_equation_entry() {
        let c = builtin_catalog();
        let e = lookup(&c, "eq-1.1").unwrap();
        assert_eq!(e.components.len(), 1);
        let s = &e.components[0].spec;
        assert_eq!(s.x(), &q("1/16"));
        assert_eq!(s.channels()[&0], RatPoly::from_ints(&[11, -92, 22]));
        assert_eq!(e.rhs, ClosedForm::Rat(rat(-5)));
    }

    #[test]
    fn first_quadratic_rhs() {
        let c = builtin_catalog();
        let e = lookup(&c, "thm3-m256").unwrap();
        assert_eq!(e.rhs.to_string(), "(9 - 5*log(2))/(4*sqrt(2))");
        assert_eq!(e.components[0].spec.x(), &q("-1/256"));
        assert!(matches!(lookup(&c, "no-such-id"), Err(CatalogError::NotFound(_))));
    }

    #[test]
    fn multi_component_entries() {
        let c = builtin_catalog();
        assert_eq!(c.iter().filter(|e| e.components.len() > 1).count(), 5);
    }
}
