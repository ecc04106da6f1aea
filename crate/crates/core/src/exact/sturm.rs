use super::poly::RatPoly;
use super::{rat, ExactError, Rational};

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[RatPoly], x: &Rational) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for q in seq {
        let s = q.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[RatPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

fn count_open(seq: &[RatPoly], a: &Rational, b: &Rational) -> usize {
    let c = count_roots(seq, a, b);
    if seq[0].sign_at(b) == 0 {
        c - 1
    } else {
        c
    }
}

/// Isolating intervals for the real roots of a squarefree `p` in the open
/// range `(lo, hi)`; `None` means unbounded on that side.
///
/// Each returned `(a, b)` either satisfies `p(a)·p(b) < 0` with exactly one
/// root inside, or is `(r, r)` for an exact rational root `r`. Intervals are
/// returned in increasing order.
pub fn sturm_isolate(
    p: &RatPoly,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
) -> Result<Vec<(Rational, Rational)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroDivisor);
    }
    if p.gcd(&p.derivative()).degree().unwrap_or(0) > 0 {
        return Err(ExactError::NotSquarefree);
    }
    let bound = p.root_bound();
    let lo = match lo {
        Some(l) if *l > -&bound => l.clone(),
        _ => -&bound,
    };
    let hi = match hi {
        Some(h) if *h < bound => h.clone(),
        _ => bound,
    };
    if lo >= hi {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(p);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    let two = rat(2);
    while let Some((a, b)) = stack.pop() {
        let c = count_open(&seq, &a, &b);
        if c == 0 {
            continue;
        }
        if c == 1 && p.sign_at(&a) != 0 && p.sign_at(&b) != 0 && !straddles_integer(&a, &b) {
            out.push((a, b));
            continue;
        }
        let m = split_point(&a, &b, &two);
        if p.sign_at(&m) == 0 {
            out.push((m.clone(), m.clone()));
        }
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

fn straddles_integer(a: &Rational, b: &Rational) -> bool {
    a.floor() + Rational::from_integer(1.into()) < *b
}

/// An integer strictly inside `(a, b)` when there is one, else the midpoint;
/// this keeps isolating intervals from straddling integers.
fn split_point(a: &Rational, b: &Rational, two: &Rational) -> Rational {
    let f = a.floor() + Rational::from_integer(1.into());
    if f < *b {
        let m = ((a + b) / two).round();
        if m > *a && m < *b {
            m
        } else {
            f
        }
    } else {
        (a + b) / two
    }
}

/// Number of real roots of squarefree `p` in the closed interval `[a, b]`.
pub fn count_closed(p: &RatPoly, a: &Rational, b: &Rational) -> usize {
    if a > b {
        return 0;
    }
    let seq = sturm_sequence(p);
    let at_a = usize::from(p.sign_at(a) == 0);
    if a == b {
        return at_a;
    }
    count_roots(&seq, a, b) + at_a
}
