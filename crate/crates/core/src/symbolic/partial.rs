use super::{show_poly, CheckOutcome};
use crate::exact::{ratio, RatFunc, RatPoly, Rational};

type Rf = RatFunc<Rational>;

const P: [i64; 3] = [11, -92, 22];
/// `-176k^3 + 384k^2 + 224k + 24`
const N_384: [i64; 4] = [24, 224, 384, -176];
/// `-176k^3 - 48k^2 + 80k + 24`
const N_48: [i64; 4] = [24, 80, -48, -176];

fn rf(n: &[i64], d: RatPoly) -> Rf {
    RatFunc::new(RatPoly::from_ints(n), d).expect("nonzero denominator")
}

fn lhs() -> Rf {
    rf(&[1, 8, 11], RatPoly::from_ints(&[2, 9, 9]))
}

fn three_terms(over_40: &[i64], over_8: &[i64]) -> Rf {
    let c = |n: i64, d: i64| ratio(n, d);
    let one = RatPoly::from_ints(&[1]);
    rf(&P, one)
        .scale(&c(-1, 5))
        .add(&rf(over_40, RatPoly::from_ints(&[1, 3])).scale(&c(-3, 40)))
        .add(&rf(over_8, RatPoly::from_ints(&[2, 9, 9])).scale(&c(3, 8)))
}

/// `-P/5 - 3·N48/(40(3k+1)) + 3·N384/(8(3k+1)(3k+2))`.
pub fn partial_fraction_printed() -> Rf {
    three_terms(&N_48, &N_384)
}

/// The same shape with the two cubic numerators exchanged; this is the
/// form consistent with the two summation-by-parts sums it is paired with.
pub fn partial_fraction_corrected() -> Rf {
    three_terms(&N_384, &N_48)
}

/// `(11k^2+8k+1)/((3k+1)(3k+2))` against the corrected decomposition; the
/// residual of the other arrangement goes in a note.
pub fn check_partial_fractions() -> CheckOutcome {
    let l = lhs();
    let d = partial_fraction_corrected().sub(&l);
    let out = if d.is_zero() {
        CheckOutcome::pass()
    } else {
        CheckOutcome::fail(format!("({})/({})", show_poly(&d.num, "k"), show_poly(&d.den, "k")))
    };
    let r = partial_fraction_printed().sub(&l).reduced();
    out.with_note(format!(
        "with the cubic numerators in the other order the difference is ({})/({})",
        show_poly(&r.num, "k"),
        show_poly(&r.den, "k")
    ))
}
