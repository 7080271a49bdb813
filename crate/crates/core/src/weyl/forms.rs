//! Initial forms, symbols, the action on truncated series, coordinate
//! shifts, Euler-operator forms and restriction to `x_m = 0`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::op::{Coefficient, DOp, ROp};
use crate::arith::{int, MPoly, Monomial, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::hyperseries::TruncSeries;

/// A weight vector `w = (u, v)` with `u + v ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
}

impl WeightVector {
    pub fn new(u: Vec<Rational>, v: Vec<Rational>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::Structural("weight halves differ in length".into()));
        }
        if u.iter().zip(&v).any(|(a, b)| (a + b) < Rational::zero()) {
            return Err(Error::Domain("weight vector needs u + v >= 0".into()));
        }
        Ok(WeightVector { u, v })
    }

    /// `(0, e)`: the order filtration.
    pub fn order(m: usize) -> Self {
        WeightVector {
            u: vec![Rational::zero(); m],
            v: vec![Rational::one(); m],
        }
    }

    /// `(−u, u)` for a given `u`.
    pub fn euler(u: &[Rational]) -> Self {
        WeightVector {
            u: u.iter().map(|x| -x).collect(),
            v: u.to_vec(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.u
            .iter()
            .zip(&self.v)
            .all(|(a, b)| (a + b) > Rational::zero())
    }
}

/// An element of the associated graded ring.
#[derive(Clone, Debug, PartialEq)]
pub enum GrElement {
    /// Commutative case: a polynomial in `x, ξ, a, c`.
    Commutative(MPoly),
    /// Some `u_i + v_i = 0`: the initial form is again an operator.
    Weyl(DOp),
}

impl GrElement {
    pub fn to_text(&self) -> String {
        match self {
            GrElement::Commutative(p) => p.to_text(),
            GrElement::Weyl(op) => op.to_string(),
        }
    }
}

/// Expand a polynomial operator into `(α, β, parameter coefficient)` triples.
pub(crate) fn expand_terms(op: &DOp) -> Vec<(Monomial, Monomial, Monomial, Rational)> {
    let m = op.m();
    let mut out = Vec::new();
    for (beta, c) in op.terms() {
        for (e, r) in c.terms() {
            let alpha = Monomial::from_slice(&e.exps()[..m]);
            let tail = Monomial::from_slice(&e.exps()[m..]);
            out.push((alpha, beta.clone(), tail, r.clone()));
        }
    }
    out
}

fn w_degree(w: &WeightVector, alpha: &Monomial, beta: &Monomial) -> Rational {
    let mut s = Rational::zero();
    for i in 0..alpha.len() {
        if alpha.exps()[i] > 0 {
            s += &w.u[i] * int(alpha.exps()[i] as i64);
        }
        if beta.exps()[i] > 0 {
            s += &w.v[i] * int(beta.exps()[i] as i64);
        }
    }
    s
}

/// Sum of the terms of maximal `w`-degree, in normal order.
pub fn init_w(p: &DOp, w: &WeightVector) -> Result<GrElement> {
    let m = p.m();
    if w.u.len() != m || w.v.len() != m {
        return Err(Error::Structural("weight vector has wrong length".into()));
    }
    if w.u
        .iter()
        .zip(&w.v)
        .any(|(a, b)| (a + b) < Rational::zero())
    {
        return Err(Error::Domain("weight vector needs u + v >= 0".into()));
    }
    if p.is_zero() {
        return Err(Error::Domain(
            "the zero operator has no initial form".into(),
        ));
    }
    let terms = expand_terms(p);
    let degs: Vec<Rational> = terms.iter().map(|(a, b, _, _)| w_degree(w, a, b)).collect();
    let top = degs.iter().max().unwrap().clone();
    let ntail = p.vars().len() - m;
    if w.is_commutative() {
        let phase = phase_ring(p.vars(), m);
        let mut out = MPoly::zero(&phase);
        for ((alpha, beta, tail, r), d) in terms.into_iter().zip(&degs) {
            if *d != top {
                continue;
            }
            let mut e = Vec::with_capacity(2 * m + ntail);
            e.extend_from_slice(alpha.exps());
            e.extend_from_slice(beta.exps());
            e.extend_from_slice(tail.exps());
            out.add_term(Monomial::from(e), r);
        }
        Ok(GrElement::Commutative(out))
    } else {
        let mut out = DOp::zero(m, p.vars());
        for ((alpha, beta, tail, r), d) in terms.into_iter().zip(&degs) {
            if *d != top {
                continue;
            }
            let mut e = alpha.exps().to_vec();
            e.extend_from_slice(tail.exps());
            out.add_term(beta, MPoly::monomial(p.vars(), Monomial::from(e), r));
        }
        Ok(GrElement::Weyl(out))
    }
}

/// `x1..xm, xi1..xim` followed by the non-coordinate variables of `vars`.
pub fn phase_ring(vars: &Vars, m: usize) -> Vars {
    if *vars == Vars::weyl(m) {
        return Vars::phase(m);
    }
    let names = vars.names();
    Vars::new(
        names[..m]
            .iter()
            .cloned()
            .chain((1..=m).map(|i| format!("xi{i}")))
            .chain(names[m..].iter().cloned()),
    )
}

/// Principal symbol: `init_(0,e)` as a polynomial in `x, ξ`.
pub fn symbol(p: &DOp) -> Result<MPoly> {
    match init_w(p, &WeightVector::order(p.m()))? {
        GrElement::Commutative(s) => Ok(s),
        GrElement::Weyl(_) => unreachable!("order weight is commutative"),
    }
}

/// Action on a truncated series with exact trusted-degree bookkeeping.
pub fn apply_to_series(p: &DOp, f: &TruncSeries) -> Result<TruncSeries> {
    let m = p.m();
    if f.m() != m {
        return Err(Error::Structural(
            "series and operator differ in dimension".into(),
        ));
    }
    let params = Vars::params();
    let tail_vars = Vars::new(p.vars().names()[m..].iter().cloned());
    let terms = expand_terms(p);
    let mut drop = i64::MIN;
    for (alpha, beta, _, _) in &terms {
        drop = drop.max(beta.degree() as i64 - alpha.degree() as i64);
    }
    if terms.is_empty() {
        drop = 0;
    }
    // Group parameter coefficients per (α, β).
    let mut grouped: BTreeMap<(Monomial, Monomial), MPoly> = BTreeMap::new();
    for (alpha, beta, tail, r) in terms {
        grouped
            .entry((alpha, beta))
            .or_insert_with(|| MPoly::zero(&tail_vars))
            .add_term(tail, r);
    }
    let mut out = TruncSeries::new(m, f.truncation());
    for ((alpha, beta), q) in grouped {
        let q = RatFun::from_poly(q.embed(&params)?);
        for (gamma, c) in f.coeffs() {
            let Some(rest) = gamma.div(&beta) else {
                continue;
            };
            // γ!/(γ−β)!
            let mut ff = Rational::one();
            for (g, b) in gamma.exps().iter().zip(beta.exps()) {
                for k in 0..*b {
                    ff *= int((*g - k) as i64);
                }
            }
            out.add_term(rest.mul(&alpha), (&q * c).scale(&ff));
        }
    }
    let trusted = (f.trusted_degree() - drop)
        .min(f.truncation() as i64)
        .max(-1);
    Ok(out.with_trusted(trusted))
}

/// Replace every `x_i` by `x_i + p_i`.
pub fn shift_op(p: &DOp, shift: &[Rational]) -> Result<DOp> {
    let m = p.m();
    if shift.len() != m {
        return Err(Error::Structural("shift vector has wrong length".into()));
    }
    let vars = p.vars().clone();
    Ok(p.map_coeffs(&vars, |c| {
        let mut c = c.clone();
        for (i, s) in shift.iter().enumerate() {
            if !s.is_zero() {
                let v = &MPoly::var(&vars, i) + &MPoly::constant(&vars, s.clone());
                c = c.substitute(i, &v);
            }
        }
        c
    }))
}

/// The falling factorial `t (t−1) … (t−j+1)`.
fn falling(t: &MPoly, j: u32) -> MPoly {
    let mut out = MPoly::one(t.vars());
    for k in 0..j {
        out = &out * &(t - &MPoly::from_int(t.vars(), k as i64));
    }
    out
}

/// Euler-operator ring for an operator's coefficient ring.
pub fn theta_ring(vars: &Vars, m: usize) -> Vars {
    if *vars == Vars::weyl(m) {
        return Vars::theta(m);
    }
    Vars::new(
        (1..=m)
            .map(|i| format!("theta{i}"))
            .chain(vars.names()[m..].iter().cloned()),
    )
}

/// The polynomial in `θ_i = x_i ∂_i` equal to `p`, if there is one.
pub fn theta_form(p: &DOp) -> Option<MPoly> {
    let m = p.m();
    let tv = theta_ring(p.vars(), m);
    let thetas: Vec<MPoly> = (0..m).map(|i| MPoly::var(&tv, i)).collect();
    let mut out = MPoly::zero(&tv);
    for (alpha, beta, tail, r) in expand_terms(p) {
        if alpha != beta {
            return None;
        }
        let mut e = vec![0; m];
        e.extend_from_slice(tail.exps());
        let mut t = MPoly::monomial(&tv, Monomial::from(e), r);
        for (i, &b) in beta.exps().iter().enumerate() {
            if b > 0 {
                t = &t * &falling(&thetas[i], b);
            }
        }
        out = &out + &t;
    }
    Some(out)
}

/// Stirling numbers of the second kind `S(k, j)` for `j ≤ k`.
fn stirling2(k: u32) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for n in 1..=k {
        let mut next = vec![Rational::zero(); n as usize + 1];
        for j in 1..=n as usize {
            let a = row.get(j).cloned().unwrap_or_else(Rational::zero);
            next[j] = int(j as i64) * a + &row[j - 1];
        }
        row = next;
    }
    row
}

/// Expand a polynomial in `θ` back into normal order.
pub fn theta_to_weyl(t: &MPoly, m: usize) -> Result<DOp> {
    let vars = Vars::new(
        (1..=m)
            .map(|i| format!("x{i}"))
            .chain(t.vars().names()[m..].iter().cloned()),
    );
    let mut out = DOp::zero(m, &vars);
    for (e, r) in t.terms() {
        let mut term = DOp::constant(m, &vars, r.clone());
        let mut tail = vec![0; m];
        tail.extend_from_slice(&e.exps()[m..]);
        term = term.left_mul_coeff(&MPoly::monomial(
            &vars,
            Monomial::from(tail),
            Rational::one(),
        ));
        for i in 0..m {
            let k = e.exps()[i];
            if k == 0 {
                continue;
            }
            // θ^k = Σ_j S(k, j) x^j ∂^j
            let s = stirling2(k);
            let mut f = DOp::zero(m, &vars);
            for (j, sj) in s.iter().enumerate().skip(1) {
                if sj.is_zero() {
                    continue;
                }
                let coeff =
                    MPoly::monomial(&vars, Monomial::unit(vars.len(), i, j as u32), sj.clone());
                f.add_term(Monomial::unit(m, i, j as u32), coeff);
            }
            term = &term * &f;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// `Σ_i Q_i ∂_m^i` with `Q_i` operators in the first `m − 1` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedOp {
    m: usize,
    components: BTreeMap<u32, ROp>,
}

impl RestrictedOp {
    pub fn zero(m: usize) -> Self {
        RestrictedOp {
            m,
            components: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &BTreeMap<u32, ROp> {
        &self.components
    }

    pub fn component(&self, k: u32) -> ROp {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ROp::zero_std(self.m - 1))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add_component(&mut self, k: u32, q: &ROp) {
        let s = &self.component(k) + q;
        if s.is_zero() {
            self.components.remove(&k);
        } else {
            self.components.insert(k, s);
        }
    }

    pub fn from_components<I: IntoIterator<Item = (u32, ROp)>>(m: usize, it: I) -> Self {
        let mut out = Self::zero(m);
        for (k, q) in it {
            out.add_component(k, &q);
        }
        out
    }

    pub fn add(&self, other: &RestrictedOp) -> RestrictedOp {
        let mut out = self.clone();
        for (k, q) in &other.components {
            out.add_component(*k, q);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> RestrictedOp {
        Self::from_components(
            self.m,
            self.components.iter().map(|(k, q)| (*k, q.scale(r))),
        )
    }

    /// `Q · self` for an operator `Q` in the first `m − 1` variables, which
    /// commutes with `∂_m`.
    pub fn left_mul(&self, q: &ROp) -> RestrictedOp {
        Self::from_components(self.m, self.components.iter().map(|(k, c)| (*k, q * c)))
    }

    /// `∂_m^j · self` in the restriction module.
    pub fn shift(&self, j: u32) -> RestrictedOp {
        Self::from_components(
            self.m,
            self.components.iter().map(|(k, c)| (k + j, c.clone())),
        )
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .rev()
            .map(|(k, q)| format!("[{q}]*d{}^{k}", self.m))
            .collect();
        parts.join(" + ")
    }
}

/// Set `x_m = 0` in the normally ordered coefficients, grouped by `∂_m`.
pub fn restrict_xm0<C: Coefficient + Into<RatFun>>(
    p: &super::op::WeylOp<C>,
) -> Result<RestrictedOp> {
    let m = p.m();
    if m == 0 {
        return Err(Error::Structural(
            "cannot restrict a zero-dimensional operator".into(),
        ));
    }
    let xm = m - 1;
    let target = Vars::new(
        p.vars()
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != xm)
            .map(|(_, n)| n.clone()),
    );
    let zero = Rational::zero();
    let mut comps: BTreeMap<u32, ROp> = BTreeMap::new();
    for (beta, c) in p.terms() {
        let c: RatFun = c.clone().into();
        if c.den().eval_var(xm, &zero).is_zero() {
            return Err(Error::Domain(format!(
                "coefficient {c} has a pole along x{m} = 0"
            )));
        }
        let r = c.eval_var(xm, &zero)?.embed(&target)?;
        if r.is_zero() {
            continue;
        }
        let k = beta.exps()[xm];
        let rest = Monomial::from_slice(&beta.exps()[..xm]);
        comps
            .entry(k)
            .or_insert_with(|| ROp::zero(m - 1, &target))
            .add_term(rest, r);
    }
    comps.retain(|_, q| !q.is_zero());
    Ok(RestrictedOp {
        m,
        components: comps,
    })
}

/// Linear change of coordinates `x = A y`, so `∂_{y_j} = Σ_i A_ij ∂_{x_i}`.
/// `A` must be invertible; the result is expressed in the `y` coordinates,
/// reusing the names `x1..xm`.
pub fn linear_change(p: &DOp, a: &[Vec<Rational>]) -> Result<DOp> {
    let m = p.m();
    let vars = p.vars().clone();
    let ainv = invert(a)?;
    // x_i = Σ_j A_ij y_j ; ∂_{x_i} = Σ_j (A^{-1})_{ji} ∂_{y_j}
    let ys: Vec<MPoly> = (0..m)
        .map(|i| {
            (0..m).fold(MPoly::zero(&vars), |acc, j| {
                &acc + &MPoly::var(&vars, j).scale(&a[i][j])
            })
        })
        .collect();
    let dx: Vec<DOp> = (0..m)
        .map(|i| {
            (0..m).fold(DOp::zero(m, &vars), |acc, j| {
                &acc + &DOp::d(m, &vars, j).scale(&ainv[j][i])
            })
        })
        .collect();
    let mut out = DOp::zero(m, &vars);
    for (beta, c) in p.terms() {
        let mut coeff = MPoly::zero(&vars);
        for (e, r) in c.terms() {
            let mut t = MPoly::constant(&vars, r.clone());
            for (i, &k) in e.exps().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let f = if i < m {
                    ys[i].pow(k)
                } else {
                    MPoly::var(&vars, i).pow(k)
                };
                t = &t * &f;
            }
            coeff = &coeff + &t;
        }
        let mut term = DOp::from_coeff(m, coeff);
        for (i, &k) in beta.exps().iter().enumerate() {
            for _ in 0..k {
                term = &term * &dx[i];
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

fn invert(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let red = crate::arith::rref(rows, n);
    if red.rank() != n {
        return Err(Error::Arithmetic("singular change of variables".into()));
    }
    Ok(red.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}
