//! Formal power series solutions: monomial solutions of Euler-operator
//! systems, truncated kernels, and the local solution bounds near the
//! singular arrangement and at the origin.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, poly_gcd_many, rat, rref, MPoly, Monomial, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::hyperseries::{check_lower_parameter, truncated_pfq, SeriesParams, TruncSeries};
use crate::muirhead::muirhead_p;
use crate::weyl::{
    apply_to_series, init_w, linear_change, parse_dop, shift_op, theta_form, theta_to_weyl, DOp,
    GrElement, WeightVector,
};

/// All `α ∈ ℕ^m` with `|α| ≤ n`, ascending in graded lex.
fn exponents_up_to(m: usize, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; m];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == e.len() {
            out.push(Monomial::from_slice(e));
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    rec(0, n, &mut e, &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalExponent {
    pub alpha: Vec<u32>,
    /// Common factor of the eigenvalues that must vanish.
    pub condition: String,
    /// `(parameter, value)` when the condition is linear in one parameter.
    pub value: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialSolutionSet {
    pub m: usize,
    pub degree_bound: u32,
    pub exponents: Vec<Vec<u32>>,
    pub exceptional: Vec<ExceptionalExponent>,
    /// No generic solution in degrees `bound` and `bound + 1`.
    pub stable: bool,
}

/// Evaluate a polynomial in `θ` at `θ = α`; parameters stay symbolic.
fn eigenvalue(op: &MPoly, alpha: &Monomial) -> MPoly {
    alpha
        .exps()
        .iter()
        .enumerate()
        .fold(op.clone(), |acc, (i, &k)| acc.eval_var(i, &int(k as i64)))
}

fn linear_root(g: &MPoly) -> Option<(String, Rational)> {
    if g.total_degree()? != 1 {
        return None;
    }
    let used: Vec<usize> = (0..g.vars().len())
        .filter(|&i| g.degree_in(i) > 0)
        .collect();
    let [i] = used.as_slice() else { return None };
    let (lin, c0) = g.linear_coefficients()?;
    Some((g.vars().name(*i).to_string(), -c0 / &lin[*i]))
}

/// Monomials `x^α` annihilated by every operator `P(θ)`, using that
/// `P(θ) x^α = P(α) x^α`.
pub fn theta_solve(ops: &[MPoly], m: usize, degree_bound: u32) -> Result<MonomialSolutionSet> {
    if ops.iter().any(|p| p.vars().len() < m) {
        return Err(Error::Structural("theta polynomial lacks variables".into()));
    }
    let mut exps = Vec::new();
    let mut exceptional = Vec::new();
    let mut stable = true;
    for alpha in exponents_up_to(m, degree_bound + 1) {
        let vals: Vec<MPoly> = ops.iter().map(|p| eigenvalue(p, &alpha)).collect();
        let nonzero: Vec<&MPoly> = vals.iter().filter(|v| !v.is_zero()).collect();
        let deg = alpha.degree();
        if nonzero.is_empty() {
            if deg >= degree_bound {
                stable = false;
            }
            if deg <= degree_bound {
                exps.push(alpha.exps().to_vec());
            }
            continue;
        }
        if deg > degree_bound || nonzero.iter().any(|v| v.is_constant()) {
            continue;
        }
        let g = poly_gcd_many(nonzero[0].vars(), nonzero.iter().copied());
        if g.is_constant() {
            continue;
        }
        exceptional.push(ExceptionalExponent {
            alpha: alpha.exps().to_vec(),
            condition: g.to_text(),
            value: linear_root(&g).map(|(n, v)| (n, v.to_string())),
        });
    }
    Ok(MonomialSolutionSet {
        m,
        degree_bound,
        exponents: exps,
        exceptional,
        stable,
    })
}

/// `Q_i = 2θ_i² + (2c − i − 1)θ_i − Σ_{j>i} θ_j` over `θ1..θm, a, c`.
pub fn build_q_ops(m: usize) -> Vec<MPoly> {
    let tv = Vars::theta(m);
    let c = MPoly::var(&tv, m + 1);
    (1..=m)
        .map(|i| {
            let t = MPoly::var(&tv, i - 1);
            let lin = &c.scale(&int(2)) - &MPoly::from_int(&tv, i as i64 + 1);
            let mut q = &(&t * &t).scale(&int(2)) + &(&lin * &t);
            for j in i + 1..=m {
                q = &q - &MPoly::var(&tv, j - 1);
            }
            q
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct TruncKernel {
    pub m: usize,
    pub cutoff: u32,
    /// Echelon basis: distinct leading monomials, leading coefficient one.
    pub basis: Vec<TruncSeries>,
    pub constraints_used: usize,
    pub constraints_dropped: usize,
    /// Dimension unchanged from `cutoff − 1` (heuristic, not a proof).
    pub stable: bool,
    /// Every basis element is annihilated through its trusted degree.
    pub verified: bool,
}

impl TruncKernel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

struct KernelData {
    basis: Vec<TruncSeries>,
    used: usize,
    dropped: usize,
}

fn kernel_at(ops: &[DOp], m: usize, n: u32) -> Result<KernelData> {
    let pv = Vars::params();
    let cols = {
        let mut c = exponents_up_to(m, n);
        c.reverse();
        c
    };
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    let mut dropped = 0;
    for op in ops {
        if op.m() != m || op.vars() != &Vars::weyl(m) {
            return Err(Error::Structural(
                "kernel expects operators over x1..xm, a, c".into(),
            ));
        }
        // (α, β) of each term, to decide which output coefficients are final.
        let shape: Vec<(Monomial, Monomial)> = op
            .terms()
            .iter()
            .flat_map(|(b, c)| {
                c.terms()
                    .keys()
                    .map(move |e| (Monomial::from_slice(&e.exps()[..m]), b.clone()))
            })
            .collect();
        let mut by_gamma: BTreeMap<Monomial, Vec<RatFun>> = BTreeMap::new();
        for (j, alpha) in cols.iter().enumerate() {
            let mut e = alpha.exps().to_vec();
            e.resize(op.vars().len(), 0);
            let xa = MPoly::monomial(op.vars(), Monomial::from(e), Rational::one());
            let img = op.apply(&xa);
            for (e, r) in img.terms() {
                let gamma = Monomial::from_slice(&e.exps()[..m]);
                let tail = Monomial::from_slice(&e.exps()[m..]);
                let row = by_gamma
                    .entry(gamma)
                    .or_insert_with(|| vec![RatFun::zero(&pv); cols.len()]);
                let add = RatFun::from_poly(MPoly::monomial(&pv, tail, r.clone()));
                row[j] = &row[j] + &add;
            }
        }
        for (gamma, row) in by_gamma {
            let determined = shape.iter().all(|(a, b)| match gamma.mul(b).div(a) {
                Some(src) => src.degree() <= n,
                None => true,
            });
            if determined {
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            } else {
                dropped += 1;
            }
        }
    }
    let used = rows.len();
    let red = rref(rows, cols.len());
    let pivots: Vec<usize> = red.pivots.clone();
    let mut kernel: Vec<Vec<RatFun>> = Vec::new();
    for f in (0..cols.len()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatFun::zero(&pv); cols.len()];
        v[f] = RatFun::one(&pv);
        for (row, &p) in red.rows.iter().zip(&pivots) {
            v[p] = -&row[f];
        }
        kernel.push(v);
    }
    let ech = rref(kernel, cols.len());
    let mut basis: Vec<TruncSeries> = ech
        .rows
        .iter()
        .take(ech.rank())
        .map(|row| {
            TruncSeries::from_terms(
                m,
                n,
                row.iter()
                    .zip(&cols)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, e)| (e.clone(), c.clone())),
            )
        })
        .collect();
    basis.reverse();
    Ok(KernelData {
        basis,
        used,
        dropped,
    })
}

/// Coefficient vectors of degree `≤ cutoff` killed by every operator,
/// keeping only those output coefficients that no higher-degree unknown
/// could influence.
pub fn trunc_kernel(
    ops: &[DOp],
    m: usize,
    cutoff: u32,
    spec: Option<&[(&str, Rational)]>,
) -> Result<TruncKernel> {
    let ops: Vec<DOp> = match spec {
        Some(s) => ops.iter().map(|o| o.specialize(s)).collect(),
        None => ops.to_vec(),
    };
    let top = kernel_at(&ops, m, cutoff)?;
    let stable = if cutoff == 0 {
        false
    } else {
        kernel_at(&ops, m, cutoff - 1)?.basis.len() == top.basis.len()
    };
    let mut verified = true;
    for f in &top.basis {
        for op in &ops {
            verified &= apply_to_series(op, f)?.vanishes_through_trusted();
        }
    }
    Ok(TruncKernel {
        m,
        cutoff,
        basis: top.basis,
        constraints_used: top.used,
        constraints_dropped: top.dropped,
        stable,
        verified,
    })
}

fn weyl_op(g: GrElement) -> Result<DOp> {
    match g {
        GrElement::Weyl(op) => Ok(op),
        GrElement::Commutative(_) => Err(Error::Internal(
            "expected a Weyl-algebra initial form".into(),
        )),
    }
}

fn theta_var(m: usize, i: usize) -> MPoly {
    MPoly::var(&Vars::theta(m), i)
}

fn x_poly(m: usize, i: usize) -> MPoly {
    MPoly::var(&Vars::weyl(m), i)
}

fn specialize_c(p: &MPoly, c: Option<&Rational>) -> MPoly {
    match c {
        Some(c) => p.specialize(&[("c", c.clone())]),
        None => p.clone(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InitFormCheck {
    pub generator: String,
    pub computed: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroComponentReport {
    pub m: usize,
    pub point: Vec<String>,
    pub c: Option<String>,
    pub initial_forms: Vec<InitFormCheck>,
    pub theta_forms: Vec<String>,
    pub solutions: MonomialSolutionSet,
    pub expected_count: usize,
    pub pass: bool,
}

fn check_zero_point(m: usize, p: &[Rational]) -> Result<()> {
    if m == 0 || p.len() != m {
        return Err(Error::Structural(format!(
            "point must have {m} coordinates"
        )));
    }
    if !p[0].is_zero() {
        return Err(Error::Domain("first coordinate must be zero".into()));
    }
    for i in 0..m {
        for j in i + 1..m {
            if p[i] == p[j] {
                return Err(Error::Domain("coordinates must be distinct".into()));
            }
        }
    }
    Ok(())
}

/// Local bound near a point of `{x_1 = 0}`: the `(−u, u)` initial forms
/// of the shifted generators for `u = (3, 2, …, 2)` and the count of
/// monomial solutions.
pub fn zero_point_check(
    m: usize,
    p: &[Rational],
    c: Option<&Rational>,
) -> Result<ZeroComponentReport> {
    check_zero_point(m, p)?;
    if let Some(c) = c {
        let gap = rat(m as i64 - 1, 2) - c;
        if gap.is_integer() && gap >= Rational::zero() {
            return Err(Error::Parameter(format!(
                "c = {c} lies in (m-1)/2 - N for m = {m}"
            )));
        }
    }
    let mut u = vec![int(2); m];
    u[0] = int(3);
    let w = WeightVector::euler(&u);
    let v = Vars::weyl(m);
    let mut checks = Vec::new();
    let mut thetas = Vec::new();
    for i in 1..=m {
        let mut pi = muirhead_p(i, m)?;
        if let Some(c) = c {
            pi = pi.specialize(&[("c", c.clone())]);
        }
        let init = weyl_op(init_w(&shift_op(&pi, p)?, &w)?)?;
        let (k, theta_poly, xpow) = if i == 1 {
            let sign = if m % 2 == 1 { int(1) } else { int(-1) };
            let k = p[1..].iter().fold(sign, |acc, q| acc * q);
            let t = theta_var(m, 0);
            let shift = &MPoly::var(&Vars::theta(m), m + 1)
                - &MPoly::constant(&Vars::theta(m), rat(m as i64 + 1, 2));
            (k, &t * &(&t + &shift), 1u32)
        } else {
            let mut k = p[i - 1].clone();
            for (j, q) in p.iter().enumerate() {
                if j != i - 1 {
                    k *= &p[i - 1] - q;
                }
            }
            let t = theta_var(m, i - 1);
            (k, &t * &(&t - &MPoly::one(&Vars::theta(m))), 2u32)
        };
        let theta_poly = specialize_c(&theta_poly, c);
        // K · x_i^{-xpow} · θ-polynomial, expanded in normal order.
        let xi = Monomial::unit(v.len(), i - 1, xpow);
        let expected = theta_to_weyl(&theta_poly, m)?
            .try_map_coeffs(&v, |q| {
                q.div_monomial(&xi)
                    .ok_or_else(|| Error::Internal("theta form not divisible".into()))
            })?
            .scale(&k);
        checks.push(InitFormCheck {
            generator: format!("P{i}"),
            computed: init.to_text(),
            expected: expected.to_text(),
            matches: init == expected,
        });
        let lifted = DOp::from_coeff(m, x_poly(m, i - 1).pow(xpow)) * init;
        let tf = theta_form(&lifted).ok_or_else(|| {
            Error::Internal(format!(
                "x-power times init(P{i}) is not a theta polynomial"
            ))
        })?;
        thetas.push(tf.scale(&(Rational::one() / &k)));
    }
    let sol = theta_solve(&thetas, m, m as u32 + 2)?;
    let expected_count = 1usize << (m - 1);
    let shape_ok = sol
        .exponents
        .iter()
        .all(|a| a[0] == 0 && a[1..].iter().all(|&e| e <= 1));
    Ok(ZeroComponentReport {
        m,
        point: p.iter().map(ToString::to_string).collect(),
        c: c.map(ToString::to_string),
        pass: checks.iter().all(|x| x.matches)
            && sol.exponents.len() == expected_count
            && shape_ok
            && sol.stable,
        theta_forms: thetas.iter().map(MPoly::to_text).collect(),
        initial_forms: checks,
        solutions: sol,
        expected_count,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalReport {
    pub m: usize,
    pub point: Vec<String>,
    pub cutoff: u32,
    pub initial_forms: Vec<InitFormCheck>,
    pub y_forms: Vec<String>,
    pub y_forms_match: bool,
    pub y_difference_is_mixed: bool,
    pub y_round_trip: bool,
    pub kernel_dimension: usize,
    pub kernel_basis: Vec<String>,
    pub kernel_stable: bool,
    pub bound: usize,
    pub pass: bool,
}

fn check_diagonal_point(m: usize, p: &[Rational]) -> Result<()> {
    if m < 2 || p.len() != m {
        return Err(Error::Structural(
            "need m >= 2 and a point with m coordinates".into(),
        ));
    }
    if p.iter().any(Zero::is_zero) {
        return Err(Error::Domain("coordinates must be nonzero".into()));
    }
    if p[0] != p[1] {
        return Err(Error::Domain("first two coordinates must agree".into()));
    }
    for i in 1..m {
        for j in i + 1..m {
            if p[i] == p[j] {
                return Err(Error::Domain(
                    "only the first two coordinates may agree".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Local bound near a generic point of `{x_1 = x_2}`.
pub fn diagonal_point_check(m: usize, p: &[Rational], cutoff: u32) -> Result<DiagonalReport> {
    check_diagonal_point(m, p)?;
    let v = Vars::weyl(m);
    let w = WeightVector::euler(&vec![int(1); m]);
    let l1 = parse_dop("2*(x1 - x2)*d1^2 + d1 - d2", m)?;
    let l2 = parse_dop("2*(x1 - x2)*d2^2 + d1 - d2", m)?;
    let tail = |i: usize| -> Rational {
        (2..m)
            .filter(|&j| j != i)
            .fold(Rational::one(), |acc, j| acc * (&p[i] - &p[j]))
    };
    let mut checks = Vec::new();
    let mut system = Vec::new();
    for i in 1..=m {
        let init = weyl_op(init_w(&shift_op(&muirhead_p(i, m)?, p)?, &w)?)?;
        let expected = match i {
            1 => l1.scale(&(rat(1, 2) * &p[0] * tail(0))),
            2 => l2.scale(&(rat(-1, 2) * &p[1] * tail(1))),
            _ => {
                let k = p
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i - 1)
                    .fold(p[i - 1].clone(), |acc, (_, q)| acc * (&p[i - 1] - q));
                let d = DOp::d(m, &v, i - 1);
                (&d * &d).scale(&k)
            }
        };
        checks.push(InitFormCheck {
            generator: format!("P{i}"),
            computed: init.to_text(),
            expected: expected.to_text(),
            matches: init == expected,
        });
        system.push(match i {
            1 => l1.clone(),
            2 => l2.clone(),
            _ => {
                let d = DOp::d(m, &v, i - 1);
                &d * &d
            }
        });
    }
    // x1 = y1 + y2, x2 = y1 − y2.
    let mut a = vec![vec![Rational::zero(); m]; m];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    a[0][1] = Rational::one();
    a[1][0] = Rational::one();
    a[1][1] = int(-1);
    let y1 = linear_change(&l1, &a)?;
    let y2 = linear_change(&l2, &a)?;
    let want1 = parse_dop("x2*(d1 + d2)^2 + d2", m)?;
    let want2 = parse_dop("x2*(d1 - d2)^2 + d2", m)?;
    let mixed = parse_dop("4*x2*d1*d2", m)?;
    let mut ainv = vec![vec![Rational::zero(); m]; m];
    for (i, row) in ainv.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    ainv[0][0] = rat(1, 2);
    ainv[0][1] = rat(1, 2);
    ainv[1][0] = rat(1, 2);
    ainv[1][1] = rat(-1, 2);
    let round = linear_change(&y1, &ainv)? == l1 && linear_change(&y2, &ainv)? == l2;
    let kernel = trunc_kernel(&system, m, cutoff, None)?;
    let bound = 3 * (1usize << (m - 2));
    let y_match = y1 == want1 && y2 == want2;
    let y_mixed = &y1 - &y2 == mixed;
    Ok(DiagonalReport {
        m,
        point: p.iter().map(ToString::to_string).collect(),
        cutoff,
        pass: checks.iter().all(|c| c.matches)
            && y_match
            && y_mixed
            && round
            && kernel.verified
            && kernel.dimension() <= bound,
        initial_forms: checks,
        y_forms: vec![y1.to_text(), y2.to_text()],
        y_forms_match: y_match,
        y_difference_is_mixed: y_mixed,
        y_round_trip: round,
        kernel_dimension: kernel.dimension(),
        kernel_basis: kernel.basis.iter().map(TruncSeries::to_text).collect(),
        kernel_stable: kernel.stable,
        bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub m: usize,
    pub a: Option<String>,
    pub c: Option<String>,
    pub q_ops: Vec<String>,
    pub monomial_solutions: Vec<Vec<u32>>,
    pub exceptional: Vec<ExceptionalExponent>,
    /// Every exceptional value of `c` is excluded by the parameter condition.
    pub exceptional_excluded: bool,
    pub kernel_cutoff: u32,
    pub kernel_dimension: usize,
    pub matches_series: bool,
    pub pass: bool,
}

/// Uniqueness of the normalized formal solution at the origin.
pub fn uniqueness_check(
    m: usize,
    a: Option<&Rational>,
    c: Option<&Rational>,
) -> Result<UniquenessReport> {
    if m == 0 {
        return Err(Error::Structural("m must be at least 1".into()));
    }
    if let Some(c) = c {
        check_lower_parameter(c, m)?;
    }
    let mut spec: Vec<(&str, Rational)> = Vec::new();
    if let Some(a) = a {
        spec.push(("a", a.clone()));
    }
    if let Some(c) = c {
        spec.push(("c", c.clone()));
    }
    let q: Vec<MPoly> = build_q_ops(m).iter().map(|x| x.specialize(&spec)).collect();
    let sol = theta_solve(&q, m, 2 * m as u32 + 2)?;
    let excluded = sol.exceptional.iter().all(|e| match &e.value {
        Some((name, val)) if name == "c" => crate::arith::parse_rational(val)
            .map(|v| check_lower_parameter(&v, m).is_err())
            .unwrap_or(false),
        _ => false,
    });
    let cutoff = 4;
    let ops = (1..=m)
        .map(|k| muirhead_p(k, m))
        .collect::<Result<Vec<_>>>()?;
    let kernel = trunc_kernel(&ops, m, cutoff, Some(&spec))?;
    let mut series = truncated_pfq(&SeriesParams::f11(), m, cutoff)?;
    if !spec.is_empty() {
        series = series.specialize(&spec)?;
    }
    let matches = match kernel.basis.as_slice() {
        [f] => {
            let f0 = f.coeff(&Monomial::one(m));
            !f0.is_zero() && f.scale(&f0.inv()?).sub(&series).coeffs().is_empty()
        }
        _ => false,
    };
    let only_zero = sol.exponents.len() == 1 && sol.exponents[0].iter().all(|&e| e == 0);
    Ok(UniquenessReport {
        m,
        a: a.map(ToString::to_string),
        c: c.map(ToString::to_string),
        q_ops: q.iter().map(MPoly::to_text).collect(),
        pass: only_zero && excluded && kernel.dimension() == 1 && matches && kernel.verified,
        monomial_solutions: sol.exponents,
        exceptional: sol.exceptional,
        exceptional_excluded: excluded,
        kernel_cutoff: cutoff,
        kernel_dimension: kernel.dimension(),
        matches_series: matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::muirhead::muirhead_g;

    fn theta_poly(text_fn: impl Fn(&Vars) -> MPoly, m: usize) -> MPoly {
        text_fn(&Vars::theta(m))
    }

    #[test]
    fn roots_of_falling_factorial() {
        let t = theta_poly(
            |v| &MPoly::var(v, 0) * &(&MPoly::var(v, 0) - &MPoly::one(v)),
            1,
        );
        let s = theta_solve(&[t], 1, 5).unwrap();
        assert_eq!(s.exponents, vec![vec![0], vec![1]]);
        assert!(s.stable);
    }

    #[test]
    fn q_ops() {
        let q = build_q_ops(1);
        assert_eq!(q[0].to_text(), "2*theta1^2 + 2*theta1*c - 2*theta1");
        let q = build_q_ops(3);
        for (i, qi) in q.iter().enumerate() {
            let e = Monomial::unit(3, i, 1);
            let want = &MPoly::var(qi.vars(), 4).scale(&int(2))
                + &MPoly::from_int(qi.vars(), 2 - (i as i64 + 1) - 1);
            assert_eq!(eigenvalue(qi, &e), want);
            assert!(eigenvalue(qi, &Monomial::one(3)).is_zero());
        }
        let s = theta_solve(&q, 3, 6).unwrap();
        assert_eq!(s.exponents, vec![vec![0, 0, 0]]);
        assert!(!s.exceptional.is_empty());
    }

    #[test]
    fn diagonal_kernel_basis() {
        let l1 = parse_dop("2*(x1 - x2)*d1^2 + d1 - d2", 2).unwrap();
        let l2 = parse_dop("2*(x1 - x2)*d2^2 + d1 - d2", 2).unwrap();
        let k = trunc_kernel(&[l1, l2], 2, 6, None).unwrap();
        let got: Vec<String> = k.basis.iter().map(TruncSeries::to_text).collect();
        assert_eq!(got, vec!["1", "x1 + x2", "x1^2 + 6*x1*x2 + x2^2"]);
        assert!(k.verified && k.stable);
    }

    #[test]
    fn kummer_kernel() {
        let p = muirhead_g(1, 1).unwrap().to_polynomial().unwrap();
        let spec = [("a", rat(1, 3)), ("c", rat(5, 7))];
        let k = trunc_kernel(&[p.clone()], 1, 6, Some(&spec)).unwrap();
        assert_eq!(k.dimension(), 1);
        let k = trunc_kernel(&[p], 1, 6, None).unwrap();
        assert_eq!(k.dimension(), 1);
    }

    #[test]
    fn zero_operator_kernel() {
        let z = DOp::zero_std(2);
        let k = trunc_kernel(&[z], 2, 3, None).unwrap();
        assert_eq!(k.dimension(), 10);
    }

    #[test]
    fn coordinate_hyperplane() {
        let r = zero_point_check(2, &[int(0), int(1)], Some(&rat(5, 7))).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.solutions.exponents.len(), 2);
        let r = zero_point_check(3, &[int(0), int(1), int(2)], None).unwrap();
        assert!(r.pass, "{r:#?}");
        assert!(r.solutions.exceptional.iter().all(|e| e.alpha[0] > 0));
        assert!(matches!(
            zero_point_check(2, &[int(0), int(1)], Some(&rat(1, 2))),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn diagonal() {
        let r = diagonal_point_check(2, &[int(1), int(1)], 6).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.kernel_dimension, 3);
        let r = diagonal_point_check(3, &[int(1), int(1), int(2)], 5).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.kernel_dimension, 6);
    }

    #[test]
    fn uniqueness() {
        let r = uniqueness_check(2, Some(&rat(1, 3)), Some(&rat(5, 7))).unwrap();
        assert!(r.pass, "{r:#?}");
        let r = uniqueness_check(1, Some(&rat(1, 3)), Some(&rat(5, 7))).unwrap();
        assert!(r.pass, "{r:#?}");
        assert!(uniqueness_check(2, None, Some(&rat(1, 2))).is_err());
    }
}
