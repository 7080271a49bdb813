use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, Vars};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map ordered by graded lexicographic order, so the
/// leading term is the last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

/// Which ring operation [`poly_arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; fails when the operands use different variables.
pub fn poly_arith(op: PolyOp, p: &MPoly, q: &MPoly) -> Result<MPoly> {
    if p.vars != q.vars {
        return Err(Error::Structural(format!(
            "variable sets differ: {:?} vs {:?}",
            p.vars.names(),
            q.vars.names()
        )));
    }
    Ok(match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    })
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, Monomial::unit(vars.len(), i, 1), Rational::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        vars.index_of(name)
            .map(|i| Self::var(vars, i))
            .ok_or_else(|| Error::Structural(format!("unknown variable `{name}`")))
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(vars: &Vars, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn lc(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Largest monomial under pure lexicographic order.
    pub fn leading_lex(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_lex(b.0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Indicator of the variables that actually occur.
    pub fn used_vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(m.exps()) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: &Monomial, c: &Rational) {
        if let Some(v) = self.terms.get_mut(m) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(m);
            }
        } else if !c.is_zero() {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    /// `self += c * m * other`
    pub fn add_scaled(&mut self, other: &MPoly, c: &Rational, m: &Monomial) {
        assert_eq!(self.vars, other.vars, "variable set mismatch");
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Exact division by a monomial.
    pub fn div_monomial(&self, m: &Monomial) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.clone());
        }
        Some(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.exps_mut()[i] = e - 1;
                out.terms.insert(m2, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Split by powers of variable `i`; coefficients no longer contain it.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            let mut m2 = m.clone();
            m2.exps_mut()[i] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .terms
                .insert(m2, c.clone());
        }
        out
    }

    /// Replace variable `i` by the polynomial `value`.
    pub fn substitute(&self, i: usize, value: &MPoly) -> MPoly {
        assert_eq!(self.vars, value.vars, "variable set mismatch");
        let parts = self.coefficients_in(i);
        let mut out = Self::zero(&self.vars);
        let mut powers: Vec<MPoly> = vec![Self::one(&self.vars)];
        for (e, coeff) in parts {
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out = &out + &(&coeff * &powers[e as usize]);
        }
        out
    }

    /// Set variable `i` to a rational value.
    pub fn eval_var(&self, i: usize, value: &Rational) -> MPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            let mut m2 = m.clone();
            m2.exps_mut()[i] = 0;
            let f = if e == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), e as usize)
            };
            out.add_term(m2, f);
        }
        out
    }

    /// Set variables by name; unknown names are ignored.
    pub fn specialize(&self, values: &[(&str, Rational)]) -> MPoly {
        let mut out = self.clone();
        for (name, v) in values {
            if let Some(i) = self.vars.index_of(name) {
                out = out.eval_var(i, v);
            }
        }
        out
    }

    /// Evaluate at a full point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.exps().iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Re-express in another variable set, matching variables by name.
    pub fn embed(&self, target: &Vars) -> Result<MPoly> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let used = self.used_vars();
        let mut map = vec![usize::MAX; self.vars.len()];
        for (i, u) in used.iter().enumerate() {
            let j = target.index_of(self.vars.name(i));
            match j {
                Some(j) => map[i] = j,
                None if *u => {
                    return Err(Error::Structural(format!(
                        "variable `{}` missing from target ring",
                        self.vars.name(i)
                    )))
                }
                None => {}
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.len());
            for (i, &k) in m.exps().iter().enumerate() {
                if k > 0 {
                    e.exps_mut()[map[i]] = k;
                }
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert_eq!(self.vars, d.vars, "variable set mismatch");
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.nterms() == 1 {
            let inv = dc.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(dm)?, c * &inv);
            }
            return Some(MPoly {
                vars: self.vars.clone(),
                terms,
            });
        }
        let dinv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc * &dinv;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Division with remainder by a single divisor (graded lex).
    pub fn div_rem(&self, d: &MPoly) -> (MPoly, MPoly) {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let dinv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        let mut out_rem = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading() {
            let (rm, rc) = (rm.clone(), rc.clone());
            match rm.div(dm) {
                Some(qm) => {
                    let qc = &rc * &dinv;
                    for (m, c) in &d.terms {
                        rem.add_term(m.mul(&qm), -(c * &qc));
                    }
                    quot.add_term(qm, qc);
                }
                None => {
                    rem.terms.remove(&rm);
                    out_rem.terms.insert(rm, rc);
                }
            }
        }
        (quot, out_rem)
    }

    pub fn divides(&self, other: &MPoly) -> bool {
        !self.is_zero() && other.div_exact(self).is_some()
    }

    /// Coefficient vector of a polynomial of degree at most one, in variable
    /// order; `None` when some term has degree above one.
    pub fn linear_coefficients(&self) -> Option<(Vec<Rational>, Rational)> {
        let mut lin = vec![Rational::zero(); self.vars.len()];
        let mut constant = Rational::zero();
        for (m, c) in &self.terms {
            match m.degree() {
                0 => constant = c.clone(),
                1 => {
                    let i = m.exps().iter().position(|&e| e == 1).unwrap();
                    lin[i] = c.clone();
                }
                _ => return None,
            }
        }
        Some((lin, constant))
    }

    fn fmt_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(self.vars.name(i));
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }

    /// Canonical text: terms in descending graded lex order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                self.fmt_monomial(m, &mut out);
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self.to_text())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.vars, rhs.vars, "variable set mismatch");
        let (big, small) = if self.nterms() >= rhs.nterms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term_ref(m, c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.vars, rhs.vars, "variable set mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        assert_eq!(self.vars, rhs.vars, "variable set mismatch");
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero(&self.vars);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut out = MPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident, $t:ty) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $f(self, rhs: &'a $t) -> $t {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                self.$f(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(Add, add, MPoly);
forward_owned!(Sub, sub, MPoly);
forward_owned!(Mul, mul, MPoly);
