use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::CatalogError;
use crate::exact::{format_rational, parse_rational, rat, Rational};
use crate::numerics::{bits_for_digits, const_log, const_pi, const_sqrt, Ball, NumericError};
use crate::series::SeriesError;

/// Right-hand side of an identity: rationals, `π`, `log q` and `√n` under
/// the four field operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Rat(Rational),
    Pi,
    /// `log q` for a positive rational `q`.
    Log(Rational),
    /// `√n` for a positive integer `n` that is not a square.
    Sqrt(u64),
    Add(Box<ClosedForm>, Box<ClosedForm>),
    Sub(Box<ClosedForm>, Box<ClosedForm>),
    Mul(Box<ClosedForm>, Box<ClosedForm>),
    Div(Box<ClosedForm>, Box<ClosedForm>),
}

impl ClosedForm {
    pub fn rat(n: i64, d: i64) -> Self {
        ClosedForm::Rat(Rational::new(n.into(), d.into()))
    }

    pub fn log(q: Rational) -> Result<Self, CatalogError> {
        if !q.is_positive() {
            return Err(CatalogError::Expression(format!("log of non-positive {}", format_rational(&q))));
        }
        Ok(ClosedForm::Log(q))
    }

    pub fn sqrt(n: u64) -> Result<Self, CatalogError> {
        let r = BigInt::from(n).sqrt();
        if n == 0 || &r * &r == BigInt::from(n) {
            return Err(CatalogError::Expression(format!("sqrt of zero or perfect square {n}")));
        }
        Ok(ClosedForm::Sqrt(n))
    }

    pub fn sum(a: Self, b: Self) -> Self {
        ClosedForm::Add(Box::new(a), Box::new(b))
    }
    pub fn difference(a: Self, b: Self) -> Self {
        ClosedForm::Sub(Box::new(a), Box::new(b))
    }
    pub fn product(a: Self, b: Self) -> Self {
        ClosedForm::Mul(Box::new(a), Box::new(b))
    }
    pub fn quotient(a: Self, b: Self) -> Self {
        ClosedForm::Div(Box::new(a), Box::new(b))
    }

    /// Parses the infix syntax produced by `Display`, e.g.
    /// `(9 - 5*log(2))/(4*sqrt(2))` or `-151 - 80/3*log(2)`.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut p = Parser { s: text.as_bytes(), i: 0 };
        let e = p.expr()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Tagged JSON tree: `{"rat": "p/q"}`, `{"pi": {}}`, `{"log": "q"}`,
    /// `{"sqrt": n}`, and `{"add"|"sub"|"mul"|"div": [lhs, rhs]}`.
    pub fn to_json(&self) -> Value {
        match self {
            ClosedForm::Rat(q) => json!({ "rat": format_rational(q) }),
            ClosedForm::Pi => json!({ "pi": {} }),
            ClosedForm::Log(q) => json!({ "log": format_rational(q) }),
            ClosedForm::Sqrt(n) => json!({ "sqrt": n }),
            ClosedForm::Add(a, b) => json!({ "add": [a.to_json(), b.to_json()] }),
            ClosedForm::Sub(a, b) => json!({ "sub": [a.to_json(), b.to_json()] }),
            ClosedForm::Mul(a, b) => json!({ "mul": [a.to_json(), b.to_json()] }),
            ClosedForm::Div(a, b) => json!({ "div": [a.to_json(), b.to_json()] }),
        }
    }

    /// Inverse of [`ClosedForm::to_json`]; `Err` carries a path-style message.
    pub fn from_json(v: &Value) -> Result<Self, String> {
        let obj = v.as_object().filter(|o| o.len() == 1).ok_or("expected an object with exactly one tag")?;
        let (tag, body) = obj.iter().next().expect("one entry");
        let rational = |b: &Value| -> Result<Rational, String> {
            let s = b.as_str().ok_or(format!("{tag}: expected a \"p/q\" string"))?;
            parse_rational(s).map_err(|e| format!("{tag}: {e}"))
        };
        let pair = |b: &Value| -> Result<(Self, Self), String> {
            match b.as_array().map(Vec::as_slice) {
                Some([l, r]) => Ok((
                    Self::from_json(l).map_err(|e| format!("{tag}[0].{e}"))?,
                    Self::from_json(r).map_err(|e| format!("{tag}[1].{e}"))?,
                )),
                _ => Err(format!("{tag}: expected a two-element array")),
            }
        };
        Ok(match tag.as_str() {
            "rat" => ClosedForm::Rat(rational(body)?),
            "pi" => ClosedForm::Pi,
            "log" => ClosedForm::log(rational(body)?).map_err(|e| e.to_string())?,
            "sqrt" => {
                let n = body.as_u64().ok_or("sqrt: expected a positive integer")?;
                ClosedForm::sqrt(n).map_err(|e| e.to_string())?
            }
            "add" => pair(body).map(|(a, b)| ClosedForm::sum(a, b))?,
            "sub" => pair(body).map(|(a, b)| ClosedForm::difference(a, b))?,
            "mul" => pair(body).map(|(a, b)| ClosedForm::product(a, b))?,
            "div" => pair(body).map(|(a, b)| ClosedForm::quotient(a, b))?,
            other => return Err(format!("unknown tag `{other}`")),
        })
    }

    fn eval_at(&self, prec: u64) -> Result<Ball, NumericError> {
        Ok(match self {
            ClosedForm::Rat(q) => Ball::from_rational(q, prec),
            ClosedForm::Pi => const_pi(prec),
            ClosedForm::Log(q) => const_log(q, prec)?,
            ClosedForm::Sqrt(n) => const_sqrt(*n, prec)?,
            ClosedForm::Add(a, b) => a.eval_at(prec)?.add_ball(&b.eval_at(prec)?),
            ClosedForm::Sub(a, b) => a.eval_at(prec)?.sub_ball(&b.eval_at(prec)?),
            ClosedForm::Mul(a, b) => a.eval_at(prec)?.mul_ball(&b.eval_at(prec)?),
            ClosedForm::Div(a, b) => a.eval_at(prec)?.div_ball(&b.eval_at(prec)?)?,
        })
    }
}

/// Enclosure of radius at most `10^-digits`. Precision is raised in 64-bit
/// steps; a divisor whose enclosure keeps containing 0 is an error.
pub fn eval_closed_form(cf: &ClosedForm, digits: u32) -> Result<Ball, CatalogError> {
    let target = Rational::new(1.into(), BigInt::from(10).pow(digits));
    let mut prec = bits_for_digits(digits) + 32;
    let mut last = None;
    for _ in 0..8 {
        match cf.eval_at(prec) {
            Ok(b) if b.rad() <= target => return Ok(b),
            Ok(b) => last = Some(b),
            Err(NumericError::DivisionByZero(_)) => {}
            Err(e) => return Err(e.into()),
        }
        prec += 64;
    }
    match last {
        Some(best) => Err(CatalogError::Series(SeriesError::PrecisionExhausted { digits, best: Box::new(best) })),
        None => Err(CatalogError::Numeric(NumericError::DivisionByZero(cf.to_string()))),
    }
}

fn prec_of(e: &ClosedForm) -> u8 {
    match e {
        ClosedForm::Add(..) | ClosedForm::Sub(..) => 1,
        ClosedForm::Mul(..) | ClosedForm::Div(..) => 2,
        ClosedForm::Rat(q) if q.is_negative() => 1,
        ClosedForm::Rat(q) if !q.denom().is_one() => 2,
        _ => 3,
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &ClosedForm, min: u8, f: &mut fmt::Formatter<'_>| {
            if prec_of(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            ClosedForm::Rat(q) => write!(f, "{}", format_rational(q)),
            ClosedForm::Pi => write!(f, "pi"),
            ClosedForm::Log(q) => write!(f, "log({})", format_rational(q)),
            ClosedForm::Sqrt(n) => write!(f, "sqrt({n})"),
            ClosedForm::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            ClosedForm::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            ClosedForm::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            ClosedForm::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 3, f)
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CatalogError {
        CatalogError::Expression(format!("{msg} at offset {}", self.i))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ClosedForm, CatalogError> {
        let mut e = self.term()?;
        loop {
            if self.eat(b'+') {
                e = ClosedForm::sum(e, self.term()?);
            } else if self.eat(b'-') {
                e = ClosedForm::difference(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<ClosedForm, CatalogError> {
        let mut e = self.unary()?;
        loop {
            if self.eat(b'*') {
                e = ClosedForm::product(e, self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                // An integer over an integer is one rational leaf.
                e = match (e, d) {
                    (ClosedForm::Rat(a), ClosedForm::Rat(b)) if a.denom().is_one() && b.is_positive() && b.denom().is_one() => {
                        ClosedForm::Rat(a / b)
                    }
                    (a, b) => ClosedForm::quotient(a, b),
                };
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<ClosedForm, CatalogError> {
        if self.eat(b'-') {
            return Ok(match self.unary()? {
                ClosedForm::Rat(q) => ClosedForm::Rat(-q),
                e => ClosedForm::difference(ClosedForm::Rat(rat(0)), e),
            });
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<BigInt, CatalogError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.i]).expect("ascii").parse().expect("digits"))
    }

    fn word(&mut self, w: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(w.as_bytes()) {
            self.i += w.len();
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<ClosedForm, CatalogError> {
        if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(e);
        }
        if self.word("pi") {
            return Ok(ClosedForm::Pi);
        }
        if self.word("log(") {
            let n = self.integer()?;
            let d = if self.eat(b'/') { self.integer()? } else { BigInt::from(1) };
            if d.is_zero() || !self.eat(b')') {
                return Err(self.err("malformed log argument"));
            }
            return ClosedForm::log(Rational::new(n, d));
        }
        if self.word("sqrt(") {
            let n = self.integer()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            let n: u64 = n.try_into().map_err(|_| self.err("sqrt argument too large"))?;
            return ClosedForm::sqrt(n);
        }
        Ok(ClosedForm::Rat(Rational::from_integer(self.integer()?)))
    }
}
