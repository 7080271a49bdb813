//! Canonical text form of operators and a parser for the same grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | 'a' | 'c' | 'x'<i> | 'd'<i> | '(' expr ')'
//! ```
//! Products are operator products, so `d1*x1` parses to `x1*d1 + 1`.
//! A divisor must be free of derivatives.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::op::{Coefficient, DOp, ROp, WeylOp};
use crate::arith::{MPoly, Monomial, RatFun, Rational, Vars};
use crate::error::{Error, Result};

fn push_power(out: &mut String, name: &str, e: u32) {
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(name);
    if e > 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

fn d_text(beta: &Monomial) -> String {
    let mut s = String::new();
    for (i, &e) in beta.exps().iter().enumerate() {
        if e > 0 {
            push_power(&mut s, &format!("d{}", i + 1), e);
        }
    }
    s
}

/// Split a coefficient into coordinate monomials with coefficients in the
/// remaining variables.
fn split_coords(p: &MPoly, m: usize) -> BTreeMap<Monomial, MPoly> {
    let rest = Vars::new(p.vars().names()[m..].iter().cloned());
    let mut out: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let alpha = Monomial::from_slice(&e.exps()[..m]);
        let tail = Monomial::from_slice(&e.exps()[m..]);
        out.entry(alpha)
            .or_insert_with(|| MPoly::zero(&rest))
            .add_term(tail, c.clone());
    }
    out
}

fn x_text(alpha: &Monomial, vars: &Vars) -> String {
    let mut s = String::new();
    for (i, &e) in alpha.exps().iter().enumerate() {
        if e > 0 {
            push_power(&mut s, vars.name(i), e);
        }
    }
    s
}

/// Append one signed term `coeff * rest`.
fn push_term(out: &mut String, coeff: &MPoly, rest: &str) {
    let first = out.is_empty();
    let (neg, body) = if let Some(r) = coeff.constant_value() {
        let neg = r.is_negative();
        let abs = r.abs();
        let body = if rest.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            rest.to_string()
        } else {
            format!("{abs}*{rest}")
        };
        (neg, body)
    } else if coeff.nterms() == 1 {
        let (_, c) = coeff.leading().unwrap();
        let neg = c.is_negative();
        let t = if neg {
            (-coeff).to_text()
        } else {
            coeff.to_text()
        };
        let body = if rest.is_empty() {
            t
        } else {
            format!("{t}*{rest}")
        };
        (neg, body)
    } else {
        let t = format!("({coeff})");
        let body = if rest.is_empty() {
            t
        } else {
            format!("{t}*{rest}")
        };
        (false, body)
    };
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    out.push_str(&body);
}

fn join(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

fn poly_terms(out: &mut String, p: &MPoly, m: usize, beta: &Monomial, vars: &Vars) {
    let dt = d_text(beta);
    for (alpha, c) in split_coords(p, m).iter().rev() {
        push_term(out, c, &join(&x_text(alpha, vars), &dt));
    }
}

impl fmt::Display for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (beta, c) in self.terms().iter().rev() {
            poly_terms(&mut out, c, self.m(), beta, self.vars());
        }
        f.write_str(&out)
    }
}

impl fmt::Display for ROp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (beta, c) in self.terms().iter().rev() {
            match c.as_poly() {
                Some(p) => poly_terms(&mut out, p, self.m(), beta, self.vars()),
                None => {
                    if !out.is_empty() {
                        out.push_str(" + ");
                    }
                    out.push_str(&join(&c.to_text(), &d_text(beta)));
                }
            }
        }
        f.write_str(&out)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let ch = cs[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().expect("digits")));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Sym(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    m: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ROp> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ROp> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                let c = as_coefficient(&d)
                    .ok_or_else(|| Error::Parse("divisor contains a derivative".into()))?;
                let inv = c.inv()?;
                acc = &acc * &ROp::from_coeff(self.m, inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ROp> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(Error::Parse("expected integer exponent after `^`".into()));
            };
            self.pos += 1;
            let k: u32 = (&n)
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
            let mut out = ROp::one(self.m, self.vars);
            for _ in 0..k {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ROp> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(ROp::constant(self.m, self.vars, Rational::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Tok::Sym(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
            Tok::Ident(name) => {
                if let Some(i) = name.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
                    if i == 0 || i > self.m {
                        return Err(Error::Parse(format!(
                            "`{name}` out of range for m = {}",
                            self.m
                        )));
                    }
                    return Ok(ROp::d(self.m, self.vars, i - 1));
                }
                match self.vars.index_of(&name) {
                    Some(i) => Ok(ROp::from_coeff(self.m, RatFun::var(self.vars, i))),
                    None => Err(Error::Parse(format!("unknown symbol `{name}`"))),
                }
            }
        }
    }
}

fn as_coefficient(op: &ROp) -> Option<RatFun> {
    if op.is_zero() {
        return Some(RatFun::zero(op.vars()));
    }
    if op.nterms() == 1 {
        let (b, c) = op.leading()?;
        if b.is_one() {
            return Some(c.clone());
        }
    }
    None
}

/// Parse an operator with rational-function coefficients in `x1..xm, a, c`.
pub fn parse_rop(text: &str, m: usize) -> Result<ROp> {
    let vars = Vars::weyl(m);
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        m,
        vars: &vars,
    };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty operator".into()));
    }
    let op = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(op)
}

/// Parse an operator that must have polynomial coefficients.
pub fn parse_dop(text: &str, m: usize) -> Result<DOp> {
    parse_rop(text, m)?
        .to_polynomial()
        .ok_or_else(|| Error::Parse("operator has non-polynomial coefficients".into()))
}

impl<C: Coefficient> WeylOp<C>
where
    WeylOp<C>: fmt::Display,
{
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        let op = parse_dop("(c-1/2)*x1^2*d1*d2", 2).unwrap();
        assert_eq!(op.to_string(), "(c - 1/2)*x1^2*d1*d2");
        let op = parse_dop("d1*x1", 1).unwrap();
        assert_eq!(op.to_string(), "x1*d1 + 1");
        let op = parse_dop("x1*d1^2 + (c - x1)*d1 - a", 1).unwrap();
        assert_eq!(op.to_string(), "x1*d1^2 - x1*d1 + c*d1 - a");
    }

    #[test]
    fn round_trip() {
        for s in [
            "x1*d1^2 - x2*d2^2 - 1/2*x1*d1 + (a + c)*d2 - 3",
            "-2*a*x1*x2^3*d1 + 7/3",
            "0",
        ] {
            let op = parse_dop(s, 2).unwrap();
            assert_eq!(parse_dop(&op.to_string(), 2).unwrap(), op);
        }
    }

    #[test]
    fn rational_coefficients() {
        let op = parse_rop("x2/(x1-x2)*d1", 2).unwrap();
        assert_eq!(op.to_string(), "(x2)/(x1 - x2)*d1");
        assert!(parse_dop("1/x1", 2).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_rop("x3", 2).is_err());
        assert!(parse_rop("d1/d1", 2).is_err());
        assert!(parse_rop("(x1", 2).is_err());
        assert!(parse_rop("x1 $", 2).is_err());
        assert!(parse_rop("1/(x1-x1)", 2).is_err());
    }
}
