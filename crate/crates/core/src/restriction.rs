//! Restriction of the Muirhead system to the hyperplane `x_m = 0`.
//!
//! Elements of `D/(x_m D)` are written `Σ_k Q_k ∂_m^k` with `Q_k` rational
//! operators in `x_1..x_{m−1}` (see [`RestrictedOp`]). Initial terms are taken
//! for the POT order: the `∂_m` power first, then grlex on the rest.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{int, rat, two_adic, valuation_at, Monomial, RatFun, Rational, Valuation, Vars};
use crate::error::{Error, Result};
use crate::muirhead::{muirhead_g, rweyl_reduce, DOrder};
use crate::par::par_map;
use crate::weyl::{restrict_xm0, ROp, RestrictedOp};

/// `∂^α ≺ ∂^β` iff `α_m < β_m`, or `α_m = β_m` and the rest compare by grlex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PotOrder {
    pub m: usize,
}

impl PotOrder {
    /// Compare `(∂_m power, ∂ exponent in the first m − 1 variables)`.
    pub fn cmp(&self, a: &(u32, Monomial), b: &(u32, Monomial)) -> Ordering {
        a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
    }
}

/// A basis monomial `ξ^τ ∂_m^r` of the associated graded module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PotMonomial {
    pub dm: u32,
    pub tau: Monomial,
}

impl PotMonomial {
    pub fn divides(&self, other: &PotMonomial) -> bool {
        self.dm == other.dm && self.tau.divides(&other.tau)
    }

    pub fn to_text(&self, m: usize) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, &e) in self.tau.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("xi{}", i + 1)),
                _ => parts.push(format!("xi{}^{e}", i + 1)),
            }
        }
        match self.dm {
            0 => {}
            1 => parts.push(format!("d{m}")),
            r => parts.push(format!("d{m}^{r}")),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Debug)]
pub struct PotInitial {
    pub monomial: PotMonomial,
    pub coeff: RatFun,
}

/// The POT-largest monomial of `r` with its coefficient.
pub fn pot_initial(r: &RestrictedOp) -> Result<PotInitial> {
    let (k, q) = r
        .components()
        .iter()
        .next_back()
        .ok_or_else(|| Error::Domain("initial term of the zero element".into()))?;
    let (tau, c) = q
        .leading()
        .ok_or_else(|| Error::Internal("empty component kept".into()))?;
    Ok(PotInitial {
        monomial: PotMonomial {
            dm: *k,
            tau: tau.clone(),
        },
        coeff: c.clone(),
    })
}

fn spec_restricted(r: &RestrictedOp, spec: &[(&str, Rational)]) -> Result<RestrictedOp> {
    let comps = r
        .components()
        .iter()
        .map(|(k, q)| Ok((*k, q.specialize(spec)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictedOp::from_components(r.m(), comps))
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// `∏_{i=lo}^{hi−1} (s − i)`, empty product 1.
fn falling(s: &Rational, lo: u32, hi: u32) -> Rational {
    (lo..hi).fold(Rational::one(), |acc, i| acc * (s - int(i as i64)))
}

/// `x_j^e` as a rational function, `e` of either sign.
fn xpow(vars: &Vars, j: usize, e: i64) -> Result<RatFun> {
    let p = RatFun::var(vars, j).pow(e.unsigned_abs() as u32);
    if e < 0 {
        p.inv()
    } else {
        Ok(p)
    }
}

/// Restriction of `∂_m^k g_i`, computed by the operator engine.
pub fn restr_op(i: usize, m: usize, k: u32) -> Result<RestrictedOp> {
    let g = muirhead_g(i, m)?;
    restrict_xm0(&g.left_mul_d(&Monomial::unit(m, m - 1, k)))
}

/// Closed form of `(∂_m^k g_m)|_{x_m=0}`:
/// `(c+k−(m−1)/2)∂_m^{k+1} − (k+a)∂_m^k + ½ Σ_ℓ k!/ℓ! Σ_j x_j^{ℓ−k}(∂_j − ℓ x_j^{−1}) ∂_m^ℓ`.
pub fn restricted_gm_closed_form(m: usize, k: u32) -> Result<RestrictedOp> {
    if m < 2 {
        return Err(Error::Domain("restriction needs m >= 2".into()));
    }
    let n = m - 1;
    let v = Vars::weyl(n);
    let a = RatFun::var(&v, n);
    let c = RatFun::var(&v, n + 1);
    let lead =
        &(&c + &RatFun::constant(&v, int(k as i64))) - &RatFun::constant(&v, rat(n as i64, 2));
    let mut out = RestrictedOp::from_components(m, [(k + 1, ROp::from_coeff(n, lead))]);
    let ka = &RatFun::constant(&v, int(k as i64)) + &a;
    out.add_component(k, &ROp::from_coeff(n, -ka));
    for l in 0..=k {
        let w = factorial(k) / factorial(l) * rat(1, 2);
        let mut q = ROp::zero(n, &v);
        for j in 0..n {
            let f = xpow(&v, j, l as i64 - k as i64)?;
            let inner =
                &ROp::d(n, &v, j) - &ROp::from_coeff(n, xpow(&v, j, -1)?.scale(&int(l as i64)));
            q = &q + &(&ROp::from_coeff(n, f) * &inner);
        }
        out.add_component(l, &q.scale(&w));
    }
    Ok(out)
}

/// One restricted generator `(∂_m^k g_i)|_{x_m=0}`.
#[derive(Clone, Debug)]
pub struct RestrGenerator {
    pub i: usize,
    pub k: u32,
    pub op: RestrictedOp,
}

fn check_generic_shape(gen: &RestrGenerator, m: usize) -> Result<()> {
    let init = pot_initial(&gen.op)?;
    let want = Monomial::unit(m - 1, gen.i - 1, 2);
    let x = RatFun::var(gen.op.component(gen.k).vars(), gen.i - 1);
    if init.monomial.dm != gen.k || init.monomial.tau != want || init.coeff != x {
        return Err(Error::Internal(format!(
            "restriction of d{m}^{}*g{} has initial {}",
            gen.k,
            gen.i,
            init.monomial.to_text(m)
        )));
    }
    Ok(())
}

/// `(∂_m^k g_i)|_{x_m=0}` for all `i ≤ m`, `k ≤ k_max`, each checked against
/// its expected shape or closed form.
pub fn restr_generators(m: usize, k_max: u32) -> Result<Vec<RestrGenerator>> {
    if m < 2 {
        return Err(Error::Domain("restriction needs m >= 2".into()));
    }
    let jobs: Vec<(usize, u32)> = (1..=m)
        .flat_map(|i| (0..=k_max).map(move |k| (i, k)))
        .collect();
    par_map(&jobs, |&(i, k)| {
        let gen = RestrGenerator {
            i,
            k,
            op: restr_op(i, m, k)?,
        };
        if i == m {
            if gen.op != restricted_gm_closed_form(m, k)? {
                return Err(Error::Internal(format!(
                    "restriction of d{m}^{k}*g{m} differs from its closed form"
                )));
            }
        } else {
            check_generic_shape(&gen, m)?;
        }
        Ok(gen)
    })
    .into_iter()
    .collect()
}

/// `s(s−1)⋯(s−r+1)∂_m^r − Σ_τ q_τ ∂^τ`, `τ ∈ {0,1}^{m−1}`.
#[derive(Clone, Debug)]
pub struct HrOperator {
    pub m: usize,
    pub s: u32,
    pub r: u32,
    pub lead_coeff: Rational,
    pub q: BTreeMap<Monomial, RatFun>,
}

impl HrOperator {
    pub fn vars(&self) -> Vars {
        Vars::weyl(self.m - 1)
    }

    pub fn q_tau(&self, tau: &Monomial) -> RatFun {
        self.q
            .get(tau)
            .cloned()
            .unwrap_or_else(|| RatFun::zero(&self.vars()))
    }

    pub fn to_restricted(&self) -> RestrictedOp {
        let n = self.m - 1;
        let v = self.vars();
        let rest = ROp::from_terms(n, &v, self.q.iter().map(|(t, q)| (t.clone(), -q)));
        let mut out = RestrictedOp::from_components(self.m, [(0, rest)]);
        out.add_component(self.r, &ROp::constant(n, &v, self.lead_coeff.clone()));
        out
    }

    /// `(x_1^{r−|τ|} q_τ)|_{x_1=0}`, or `None` when property (i) fails for `τ`.
    pub fn qbar(&self, tau: &Monomial) -> Option<RatFun> {
        let v = self.vars();
        let shift = self.r as i64 - tau.degree() as i64;
        let f = &self.q_tau(tau) * &xpow(&v, 0, shift).ok()?;
        if valuation_at(&f, 0) < Valuation::Finite(0) {
            return None;
        }
        f.eval_var(0, &Rational::zero()).ok()
    }

    /// Check the three valuation properties.
    pub fn properties(&self) -> HrProperties {
        let mut valuation_ok = true;
        let mut counterexample = None;
        for tau in squarefree(self.m - 1) {
            let q = self.q_tau(&tau);
            let need = Valuation::Finite(tau.degree() as i64 - self.r as i64);
            if valuation_at(&q, 0) < need {
                valuation_ok = false;
                counterexample.get_or_insert_with(|| format!("tau {:?}: q = {q}", tau.exps()));
            }
        }
        let zero = Monomial::one(self.m - 1);
        let e1 = Monomial::unit(self.m - 1, 0, 1);
        let qbar_zero = self.qbar(&zero);
        let qbar_zero_vanishes = qbar_zero.as_ref().is_some_and(|q| q.is_zero());
        let qbar_e1 = self.qbar(&e1).and_then(|q| q.constant_value());
        let qbar_e1_two_adic = qbar_e1.as_ref().and_then(|q| two_adic(q).finite());
        let two_adic_ok = qbar_e1_two_adic == Some(1 - 2 * self.r as i64);
        if counterexample.is_none() && !two_adic_ok {
            counterexample = Some(format!("qbar_e1 = {qbar_e1:?}"));
        }
        HrProperties {
            r: self.r,
            valuation_ok,
            qbar_zero_vanishes,
            qbar_e1: qbar_e1.map(|q| q.to_string()),
            qbar_e1_two_adic,
            two_adic_ok,
            nonzero_q: self.q.values().any(|q| !q.is_zero()),
            counterexample,
        }
    }

    pub fn view(&self) -> HrView {
        HrView {
            m: self.m,
            s: self.s,
            r: self.r,
            lead_coeff: self.lead_coeff.to_string(),
            q: squarefree(self.m - 1)
                .into_iter()
                .map(|t| (tau_text(&t), self.q_tau(&t).to_text()))
                .collect(),
            properties: self.properties(),
        }
    }
}

fn tau_text(t: &Monomial) -> String {
    t.exps().iter().map(|e| e.to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HrProperties {
    pub r: u32,
    pub valuation_ok: bool,
    pub qbar_zero_vanishes: bool,
    pub qbar_e1: Option<String>,
    pub qbar_e1_two_adic: Option<i64>,
    pub two_adic_ok: bool,
    pub nonzero_q: bool,
    pub counterexample: Option<String>,
}

impl HrProperties {
    pub fn pass(&self) -> bool {
        self.valuation_ok && self.qbar_zero_vanishes && self.two_adic_ok && self.nonzero_q
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HrView {
    pub m: usize,
    pub s: u32,
    pub r: u32,
    pub lead_coeff: String,
    /// `(τ as a 0/1 string, q_τ)` for every `τ`.
    pub q: Vec<(String, String)>,
    pub properties: HrProperties,
}

/// All `τ ∈ {0,1}^n`, in increasing grlex order.
pub fn squarefree(n: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..1u32 << n)
        .map(|b| {
            let e: Vec<u32> = (0..n).map(|i| (b >> (n - 1 - i)) & 1).collect();
            Monomial::from_slice(&e)
        })
        .collect();
    out.sort();
    out
}

/// `c = (m − 1)/2 − s`.
pub fn special_c(m: usize, s: u32) -> Rational {
    rat(m as i64 - 1, 2) - int(s as i64)
}

/// The `s` with `c = (m − 1)/2 − s`, if there is one.
pub fn special_s(m: usize, c: &Rational) -> Option<u32> {
    let s = rat(m as i64 - 1, 2) - c;
    if s.is_integer() && !s.is_negative() {
        s.to_integer().try_into().ok()
    } else {
        None
    }
}

/// `H̃_{k+1}` assembled literally from `restr(∂_m^k g_m)` and `H_1..H_k`.
fn h_tilde_literal(
    prev: &[HrOperator],
    restr_k: &RestrictedOp,
    m: usize,
    s: u32,
    k: u32,
) -> Result<RestrictedOp> {
    let n = m - 1;
    let v = Vars::weyl(n);
    let s = int(s as i64);
    let a = RatFun::var(&v, n);
    let mut out = restr_k.scale(&-falling(&s, 0, k));
    let hk = prev[k as usize - 1].to_restricted();
    let ka = ROp::from_coeff(n, &RatFun::constant(&v, int(k as i64)) + &a);
    out = out.add(&hk.left_mul(&ka).scale(&-Rational::one()));
    for r in 1..=k {
        let w = factorial(k) / factorial(r) * falling(&s, r, k) * rat(1, 2);
        let mut q = ROp::zero(n, &v);
        for j in 0..n {
            let f = xpow(&v, j, r as i64 - k as i64)?;
            let inner =
                &ROp::d(n, &v, j) - &ROp::from_coeff(n, xpow(&v, j, -1)?.scale(&int(r as i64)));
            q = &q + &(&ROp::from_coeff(n, f) * &inner);
        }
        out = out.add(&prev[r as usize - 1].to_restricted().left_mul(&q.scale(&w)));
    }
    Ok(out)
}

fn hr_from_restricted(op: &RestrictedOp, m: usize, s: u32, r: u32) -> Result<HrOperator> {
    let lead_coeff = falling(&int(s as i64), 0, r);
    let top = op.component(r);
    let want = ROp::constant(m - 1, &Vars::weyl(m - 1), lead_coeff.clone());
    if top != want && !(top.is_zero() && lead_coeff.is_zero()) {
        return Err(Error::Internal(format!("H_{r} has top component {top}")));
    }
    if op.components().keys().any(|&k| k != 0 && k != r) {
        return Err(Error::Internal(format!(
            "H_{r} kept intermediate d{m} powers"
        )));
    }
    let mut q = BTreeMap::new();
    for (tau, c) in op.component(0).terms() {
        if tau.exps().iter().any(|&e| e > 1) {
            return Err(Error::Internal(format!(
                "H_{r} is not reduced: term {:?}",
                tau.exps()
            )));
        }
        q.insert(tau.clone(), -c);
    }
    Ok(HrOperator {
        m,
        s,
        r,
        lead_coeff,
        q,
    })
}

/// The operators `H_1, …, H_{r_max}` for `c = (m−1)/2 − s`, with `a` symbolic.
pub fn hr_sequence(m: usize, s: u32, r_max: u32) -> Result<Vec<HrOperator>> {
    if m < 2 {
        return Err(Error::Domain("restriction needs m >= 2".into()));
    }
    if r_max == 0 || r_max > s + 1 {
        return Err(Error::Domain(format!("r must lie in 1..={}", s + 1)));
    }
    let n = m - 1;
    let spec = [("c", special_c(m, s))];
    let basis = (1..=n)
        .map(|i| muirhead_g(i, n)?.specialize(&spec))
        .collect::<Result<Vec<_>>>()?;
    let sr = int(s as i64);
    let restr = |k: u32| spec_restricted(&restr_op(m, m, k)?, &spec);

    let mut out = vec![hr_from_restricted(
        &restr(0)?.scale(&-Rational::one()),
        m,
        s,
        1,
    )?];
    for k in 1..r_max {
        let rk = restr(k)?;
        let mut work = rk.scale(&-falling(&sr, 0, k));
        for r in (1..=k).rev() {
            let q = work.component(r);
            if q.is_zero() {
                continue;
            }
            let h = &out[r as usize - 1];
            let f = Rational::one() / &h.lead_coeff;
            work = work.add(&h.to_restricted().left_mul(&q.scale(&-f)));
        }
        if work != h_tilde_literal(&out, &rk, m, s, k)? {
            return Err(Error::Internal(format!(
                "H~_{} differs from the assembled form",
                k + 1
            )));
        }
        let div = rweyl_reduce(&work.component(0), &basis, DOrder::Grlex)?;
        let mut reduced = RestrictedOp::from_components(m, [(0, div.remainder)]);
        reduced.add_component(k + 1, &work.component(k + 1));
        out.push(hr_from_restricted(&reduced, m, s, k + 1)?);
    }
    Ok(out)
}

pub fn build_hr(m: usize, s: u32, r: u32) -> Result<HrOperator> {
    Ok(hr_sequence(m, s, r)?.pop().expect("nonempty sequence"))
}

/// Which version of the `q̄` recursion to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QbarForm {
    /// The two-case recursion in its original form.
    Literal,
    /// Re-derived from the leading terms of `H̃_{k+1}`: the `τ_1 = 0` branch
    /// has `(|τ| − 2r)` and a negative side sum, and both branches gain
    /// `½ Σ_{j≥2, τ_j=1} q̄^{(k)}_{τ−e_j}`.
    Derived,
}

/// `q̄_τ^{(r)}` for `r ≤ r_max`, from the two-case recursion alone.
pub fn qbar_recursion(
    m: usize,
    s: u32,
    r_max: u32,
    form: QbarForm,
) -> BTreeMap<(u32, Monomial), Rational> {
    let n = m - 1;
    let taus = squarefree(n);
    let sr = int(s as i64);
    let mut t: BTreeMap<(u32, Monomial), Rational> = BTreeMap::new();
    for tau in &taus {
        let v = if tau.degree() == 1 {
            rat(1, 2)
        } else {
            Rational::zero()
        };
        t.insert((1, tau.clone()), v);
    }
    let get = |t: &BTreeMap<(u32, Monomial), Rational>, r: u32, e: &[u32]| {
        t.get(&(r, Monomial::from_slice(e)))
            .cloned()
            .unwrap_or_else(Rational::zero)
    };
    let literal = form == QbarForm::Literal;
    for k in 1..r_max {
        let mut next = Vec::new();
        for tau in &taus {
            let e = tau.exps();
            let deg = int(tau.degree() as i64);
            let mut sum = Rational::zero();
            for r in 1..=k {
                let w = factorial(k) / factorial(r) * falling(&sr, r, k);
                let rr = int(2 * r as i64);
                let inner = if e[0] == 1 {
                    let mut lower = e.to_vec();
                    lower[0] = 0;
                    (&deg - &rr + &sr - rat(1, 2)) * get(&t, r, e) + get(&t, r, &lower)
                } else {
                    let mut side = Rational::zero();
                    for j in (0..n).filter(|&j| e[j] == 1) {
                        let mut moved = e.to_vec();
                        moved[j] = 0;
                        moved[0] = 1;
                        side += get(&t, r, &moved);
                    }
                    if literal {
                        (&deg - &rr + &sr - int(1)) * get(&t, r, e) + side * rat(1, 2)
                    } else {
                        (&deg - &rr) * get(&t, r, e) - side * rat(1, 2)
                    }
                };
                sum += w * inner;
            }
            let mut val = sum * rat(1, 2);
            let konst = factorial(k) * falling(&sr, 0, k) * rat(1, 2);
            if e[0] == 1 {
                if literal {
                    let sign = e[1..]
                        .iter()
                        .fold(int(1), |acc, &x| acc * (int(x as i64) - int(1)));
                    val += sign * konst;
                } else if e[1..].iter().all(|&x| x == 0) {
                    val += konst;
                }
            }
            if !literal {
                for j in (1..n).filter(|&j| e[j] == 1) {
                    let mut lower = e.to_vec();
                    lower[j] = 0;
                    val += get(&t, k, &lower) * rat(1, 2);
                }
            }
            next.push((tau.clone(), val));
        }
        for (tau, v) in next {
            t.insert((k + 1, tau), v);
        }
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct QbarMismatch {
    pub r: u32,
    pub tau: String,
    pub recursion: String,
    pub construction: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QbarCrossCheck {
    pub m: usize,
    pub s: u32,
    pub form: QbarForm,
    pub compared: usize,
    pub mismatches: Vec<QbarMismatch>,
}

impl QbarCrossCheck {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare the recursion with the leading parts of the constructed `H_r`.
pub fn qbar_cross_check(m: usize, s: u32, form: QbarForm) -> Result<QbarCrossCheck> {
    let hs = hr_sequence(m, s, s + 1)?;
    let table = qbar_recursion(m, s, s + 1, form);
    let mut mismatches = Vec::new();
    for ((r, tau), want) in &table {
        let got = hs[*r as usize - 1]
            .qbar(tau)
            .and_then(|q| q.constant_value());
        if got.as_ref() != Some(want) {
            mismatches.push(QbarMismatch {
                r: *r,
                tau: tau_text(tau),
                recursion: want.to_string(),
                construction: got.map(|g| g.to_string()),
            });
        }
    }
    Ok(QbarCrossCheck {
        m,
        s,
        form,
        compared: table.len(),
        mismatches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionRankReport {
    pub m: usize,
    pub c_spec: String,
    pub s: Option<u32>,
    pub k_max: u32,
    pub generated_initials: Vec<String>,
    pub standard_monomials: Vec<String>,
    pub bound: usize,
    pub pass: bool,
}

fn all_monomials_below(n: usize, cap: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..cap).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    out.into_iter().map(|e| Monomial::from_slice(&e)).collect()
}

/// Upper bound for the holonomic rank of the restriction module, from the
/// POT initials of the restricted generators (and of `H_{s+1}` when `c` is
/// special). Components above `∂_m^{k_max+1}` are all initial because the
/// leading coefficient `c + k − (m−1)/2` is nonzero there.
pub fn restriction_rank_bound(m: usize, c: &Rational, k_max: u32) -> Result<RestrictionRankReport> {
    if !(2..=4).contains(&m) {
        return Err(Error::Domain(
            "restriction rank bound is supported for m in 2..=4".into(),
        ));
    }
    let s = special_s(m, c);
    if let Some(s) = s {
        if k_max < s + 2 {
            return Err(Error::Domain(format!(
                "k_max must be at least {} for this c",
                s + 2
            )));
        }
    }
    let spec = [("c", c.clone())];
    let mut initials: BTreeSet<PotMonomial> = BTreeSet::new();
    for gen in restr_generators(m, k_max)? {
        let op = spec_restricted(&gen.op, &spec)?;
        initials.insert(pot_initial(&op)?.monomial);
    }
    if let Some(s) = s {
        let h = build_hr(m, s, s + 1)?;
        initials.insert(pot_initial(&h.to_restricted())?.monomial);
    }
    let n = m - 1;
    let mut standard = Vec::new();
    for dm in 0..=k_max + 1 {
        let group: Vec<&PotMonomial> = initials.iter().filter(|p| p.dm == dm).collect();
        if group.iter().any(|p| p.tau.is_one()) {
            continue;
        }
        let mut cap = 0;
        for i in 0..n {
            let pure = group
                .iter()
                .filter(|p| {
                    p.tau
                        .exps()
                        .iter()
                        .enumerate()
                        .all(|(j, &e)| j == i || e == 0)
                })
                .map(|p| p.tau.exps()[i])
                .min()
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "component d{m}^{dm} has infinitely many standard monomials"
                    ))
                })?;
            cap = cap.max(pure);
        }
        for tau in all_monomials_below(n, cap) {
            let cand = PotMonomial { dm, tau };
            if !group.iter().any(|p| p.divides(&cand)) {
                standard.push(cand);
            }
        }
    }
    let bound = standard.len();
    let limit = if s.is_some() {
        (1usize << m) - 1
    } else {
        1usize << (m - 1)
    };
    Ok(RestrictionRankReport {
        m,
        c_spec: c.to_string(),
        s,
        k_max,
        generated_initials: initials.iter().map(|p| p.to_text(m)).collect(),
        standard_monomials: standard.iter().map(|p| p.to_text(m)).collect(),
        bound,
        pass: bound <= limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse_rop;

    #[test]
    fn m2_k0_closed_form() {
        let r = restr_op(2, 2, 0).unwrap();
        let want = RestrictedOp::from_components(
            2,
            [
                (1, parse_rop("c - 1/2", 1).unwrap()),
                (0, parse_rop("1/2*d1 - a", 1).unwrap()),
            ],
        );
        assert_eq!(r, want);
        let g1 = restr_op(1, 2, 0).unwrap();
        assert_eq!(g1.component(0), muirhead_g(1, 1).unwrap());
        assert_eq!(g1.components().len(), 1);
    }

    #[test]
    fn generators_match_closed_form() {
        for m in 2..=4 {
            let k_max = if m == 4 { 2 } else { 4 };
            assert_eq!(
                restr_generators(m, k_max).unwrap().len(),
                m * (k_max as usize + 1)
            );
        }
        let g = restr_op(3, 3, 1).unwrap();
        assert_eq!(g.component(2), parse_rop("c", 2).unwrap());
    }

    #[test]
    fn pot_initials() {
        let g = restr_op(1, 3, 2).unwrap();
        let init = pot_initial(&g).unwrap();
        assert_eq!(init.monomial.to_text(3), "xi1^2*d3^2");
        let g = spec_restricted(&restr_op(2, 2, 1).unwrap(), &[("c", rat(5, 7))]).unwrap();
        assert_eq!(pot_initial(&g).unwrap().monomial.to_text(2), "d2^2");
        // c = (m−1)/2 − s kills the top coefficient at k = s
        let g = spec_restricted(&restr_op(3, 3, 1).unwrap(), &[("c", special_c(3, 1))]).unwrap();
        assert_eq!(pot_initial(&g).unwrap().monomial.dm, 1);
        assert!(pot_initial(&RestrictedOp::zero(2)).is_err());
    }

    #[test]
    fn first_operator() {
        let h = build_hr(3, 2, 1).unwrap();
        assert_eq!(h.lead_coeff, int(2));
        for tau in squarefree(2) {
            let want = match tau.degree() {
                0 => "-a".to_string(),
                1 => "1/2".to_string(),
                _ => "0".to_string(),
            };
            assert_eq!(h.q_tau(&tau).to_text(), want);
        }
    }

    #[test]
    fn properties_hold() {
        for m in 2..=3 {
            for s in 0..=2 {
                for h in hr_sequence(m, s, s + 1).unwrap() {
                    let p = h.properties();
                    assert!(p.pass(), "m={m} s={s}: {p:?}");
                }
            }
        }
    }

    #[test]
    fn m2_s1_dependence() {
        let h = build_hr(2, 1, 2).unwrap();
        assert!(h.lead_coeff.is_zero());
        let p = h.properties();
        assert_eq!(p.qbar_e1_two_adic, Some(-3));
    }

    #[test]
    fn recursion_agrees_with_construction() {
        for m in 2..=4 {
            for s in 0..=2 {
                let x = qbar_cross_check(m, s, QbarForm::Derived).unwrap();
                assert!(x.pass(), "{x:?}");
                assert!(qbar_recursion(m, s, s + 1, QbarForm::Derived)
                    .iter()
                    .filter(|((_, t), _)| t.is_one())
                    .all(|(_, v)| v.is_zero()));
            }
        }
    }

    #[test]
    fn literal_recursion() {
        // exact for m = 2; for m = 3 the product (τ_j − 1) flips the e_1
        // constant and the τ_1 = 0 branch is off
        for s in 0..=2 {
            assert!(qbar_cross_check(2, s, QbarForm::Literal).unwrap().pass());
        }
        let x = qbar_cross_check(3, 1, QbarForm::Literal).unwrap();
        let bad: Vec<&str> = x.mismatches.iter().map(|b| b.tau.as_str()).collect();
        assert_eq!(bad, vec!["01", "10", "11"]);
        let p = qbar_recursion(3, 2, 3, QbarForm::Literal);
        let d = qbar_recursion(3, 2, 3, QbarForm::Derived);
        let zero = Monomial::from_slice(&[0, 0]);
        for r in 1..=3 {
            assert_eq!(p[&(r, zero.clone())], d[&(r, zero.clone())]);
        }
    }

    #[test]
    fn rank_bounds() {
        let r = restriction_rank_bound(2, &rat(5, 7), 3).unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.standard_monomials, vec!["1", "xi1"]);
        let r = restriction_rank_bound(2, &rat(1, 2), 3).unwrap();
        assert!(r.pass && r.bound <= 3, "{r:?}");
        let r = restriction_rank_bound(3, &rat(5, 7), 3).unwrap();
        assert_eq!(r.bound, 4);
        for s in 0..=2 {
            let r = restriction_rank_bound(3, &special_c(3, s), s + 2).unwrap();
            assert!(r.pass && r.bound < 8, "{r:?}");
        }
        assert!(restriction_rank_bound(2, &rat(-1, 2), 1).is_err());
    }
}
