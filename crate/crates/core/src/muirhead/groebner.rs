use std::cmp::Ordering;

use serde::Serialize;

use super::system::{muirhead_g, s_pair_op, MuirheadSystem};
use crate::arith::{poly_gcd, Monomial, RatFun, Rational};
use crate::error::{Error, Result};
use crate::par::par_map;
use crate::weyl::ROp;

/// Term order on derivative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DOrder {
    /// Graded lex with `∂1 > … > ∂m`.
    #[default]
    Grlex,
    /// Plain lex with `∂1 > … > ∂m`.
    Lex,
}

impl DOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            DOrder::Grlex => a.cmp(b),
            DOrder::Lex => a.cmp_lex(b),
        }
    }

    pub fn leading<'a>(&self, op: &'a ROp) -> Option<(&'a Monomial, &'a RatFun)> {
        match self {
            DOrder::Grlex => op.leading(),
            DOrder::Lex => op.terms().iter().max_by(|x, y| self.cmp(x.0, y.0)),
        }
    }
}

/// `p = Σ q_i b_i + r` with no term of `r` divisible by a leading monomial.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<ROp>,
    pub remainder: ROp,
}

impl Division {
    /// Multiply back and compare with the dividend.
    pub fn verify(&self, p: &ROp, basis: &[ROp]) -> bool {
        let mut acc = self.remainder.clone();
        for (q, b) in self.quotients.iter().zip(basis) {
            if !q.is_zero() {
                acc = &acc + &(q * b);
            }
        }
        acc == *p
    }
}

/// Division in the rational Weyl algebra, largest reducible term first.
pub fn rweyl_reduce(p: &ROp, basis: &[ROp], order: DOrder) -> Result<Division> {
    let leads = basis
        .iter()
        .map(|b| {
            order
                .leading(b)
                .map(|(m, c)| (m.clone(), c.clone()))
                .ok_or_else(|| Error::Structural("zero operator in division basis".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let zero = ROp::zero(p.m(), p.vars());
    let mut quotients = vec![zero.clone(); basis.len()];
    let mut rem = zero;
    let mut work = p.clone();
    while let Some((beta, f)) = order.leading(&work).map(|(b, c)| (b.clone(), c.clone())) {
        let hit = leads.iter().position(|(g, _)| g.divides(&beta));
        match hit {
            Some(i) => {
                let gamma = beta.div(&leads[i].0).expect("divisible");
                let c = f.checked_div(&leads[i].1)?;
                let t = ROp::monomial(p.m(), gamma, c);
                work = &work - &(&t * &basis[i]);
                quotients[i] = &quotients[i] + &t;
            }
            None => {
                let mut single = ROp::zero(p.m(), p.vars());
                single.add_term(beta.clone(), f.clone());
                work = &work - &single;
                rem.add_term(beta, f);
            }
        }
    }
    let out = Division {
        quotients,
        remainder: rem,
    };
    debug_assert!(out.verify(p, basis), "division identity failed");
    Ok(out)
}

/// S-polynomial `(lc h / G) ∂^{ε−γ} g − (lc g / G) ∂^{ε−δ} h` with
/// `G` the gcd of the leading-coefficient numerators.
pub fn s_poly(g: &ROp, h: &ROp, order: DOrder) -> ROp {
    let (gm, gc) = order.leading(g).expect("nonzero");
    let (hm, hc) = order.leading(h).expect("nonzero");
    let eps = gm.lcm(hm);
    let gcd = RatFun::from_poly(poly_gcd(gc.num(), hc.num()));
    let lg = gc.checked_div(&gcd).expect("nonzero gcd");
    let lh = hc.checked_div(&gcd).expect("nonzero gcd");
    let left = g.left_mul_d(&eps.div(gm).unwrap()).left_mul_coeff(&lh);
    let right = h.left_mul_d(&eps.div(hm).unwrap()).left_mul_coeff(&lg);
    &left - &right
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Rank {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Rank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub reduced_to_zero: bool,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasisR {
    pub generators: Vec<ROp>,
    pub order: DOrder,
    /// `None` when the quotient is infinite-dimensional.
    pub standard_monomials: Option<Vec<Monomial>>,
    pub input_unchanged: bool,
    pub pairs: Vec<PairRecord>,
}

impl GroebnerBasisR {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| self.order.leading(g).map(|(m, _)| m.clone()))
            .collect()
    }
}

/// Monomials outside the monoid ideal generated by `leads`, or `None`
/// if some `∂_i` has no pure power among them.
pub fn standard_monomials(leads: &[Monomial], m: usize) -> Option<Vec<Monomial>> {
    let mut bound = vec![u32::MAX; m];
    for l in leads {
        let support: Vec<usize> = (0..m).filter(|&i| l.exps()[i] > 0).collect();
        match support.as_slice() {
            [] => return Some(Vec::new()),
            [i] => bound[*i] = bound[*i].min(l.exps()[*i]),
            _ => {}
        }
    }
    if bound.contains(&u32::MAX) {
        return None;
    }
    let mut out = Vec::new();
    let mut e = vec![0u32; m];
    loop {
        let mon = Monomial::from_slice(&e);
        if !leads.iter().any(|l| l.divides(&mon)) {
            out.push(mon);
        }
        let mut i = 0;
        loop {
            if i == m {
                out.sort();
                return Some(out);
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Buchberger completion over the rational Weyl algebra. All pairs are
/// checked; no criteria are applied.
pub fn buchberger_r(gens: &[ROp], order: DOrder) -> Result<GroebnerBasisR> {
    if gens.is_empty() {
        return Err(Error::Structural("empty generator list".into()));
    }
    if gens.iter().any(ROp::is_zero) {
        return Err(Error::Structural("zero generator".into()));
    }
    let m = gens[0].m();
    let mut basis: Vec<ROp> = gens.to_vec();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut records = Vec::new();
    while !pairs.is_empty() {
        let batch = std::mem::take(&mut pairs);
        let snapshot = basis.clone();
        let rems = par_map(&batch, |&(i, j)| -> Result<ROp> {
            let s = s_poly(&snapshot[i], &snapshot[j], order);
            Ok(rweyl_reduce(&s, &snapshot, order)?.remainder)
        });
        for (&(i, j), r) in batch.iter().zip(rems) {
            let r = r?;
            records.push(PairRecord {
                i,
                j,
                reduced_to_zero: r.is_zero(),
            });
            if r.is_zero() {
                continue;
            }
            // An earlier remainder from this batch may already cover it.
            let r = rweyl_reduce(&r, &basis, order)?.remainder;
            if r.is_zero() {
                continue;
            }
            let n = basis.len();
            basis.push(r);
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| order.leading(g).unwrap().0.clone())
        .collect();
    Ok(GroebnerBasisR {
        input_unchanged: basis.len() == gens.len(),
        standard_monomials: standard_monomials(&leads, m),
        generators: basis,
        order,
        pairs: records,
    })
}

pub fn holonomic_rank(gb: &GroebnerBasisR) -> Rank {
    match &gb.standard_monomials {
        Some(s) => Rank::Finite(s.len()),
        None => Rank::Infinite,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylClosureWitness {
    pub m: usize,
    pub operator: String,
    pub polynomial_coefficients: bool,
    pub reduces_to_zero: bool,
}

impl WeylClosureWitness {
    pub fn pass(&self) -> bool {
        self.polynomial_coefficients && self.reduces_to_zero
    }
}

/// `g_1 − g_2` has polynomial coefficients and lies in `R_m·I_m`.
/// For `m = 1` the witness degenerates to `g_1 − g_1 = 0`.
pub fn weyl_closure_witness(
    m: usize,
    spec: Option<&[(&str, Rational)]>,
) -> Result<WeylClosureWitness> {
    if m == 0 || m > 2 {
        return Err(Error::Domain("witness is defined for m = 1 or 2".into()));
    }
    let mut sys = MuirheadSystem::new(m)?;
    if let Some(s) = spec {
        sys = sys.specialize(s)?;
    }
    let p = &sys.g[0] - &sys.g[m - 1];
    let div = rweyl_reduce(&p, &sys.g, DOrder::Grlex)?;
    Ok(WeylClosureWitness {
        m,
        operator: p.to_text(),
        polynomial_coefficients: p.to_polynomial().is_some(),
        reduces_to_zero: div.remainder.is_zero(),
    })
}

pub fn weyl_closure_witness_m2(spec: Option<&[(&str, Rational)]>) -> Result<WeylClosureWitness> {
    weyl_closure_witness(2, spec)
}

/// Reduce each `S_ij` of the Muirhead system against `{g_k}`.
pub fn s_pair_reductions(m: usize, spec: Option<&[(&str, Rational)]>) -> Result<Vec<PairRecord>> {
    let mut g = (1..=m)
        .map(|k| muirhead_g(k, m))
        .collect::<Result<Vec<_>>>()?;
    if let Some(s) = spec {
        g = g.iter().map(|x| x.specialize(s)).collect::<Result<_>>()?;
    }
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|j| (1..j).map(move |i| (i, j))).collect();
    par_map(&pairs, |&(i, j)| -> Result<PairRecord> {
        let mut s = s_pair_op(i, j, m)?.to_rational();
        if let Some(sp) = spec {
            s = s.specialize(sp)?;
        }
        Ok(PairRecord {
            i,
            j,
            reduced_to_zero: rweyl_reduce(&s, &g, DOrder::Grlex)?.remainder.is_zero(),
        })
    })
    .into_iter()
    .collect()
}

/// Muirhead generators, optionally specialized, completed under grlex.
pub fn muirhead_groebner(m: usize, spec: Option<&[(&str, Rational)]>) -> Result<GroebnerBasisR> {
    let mut sys = MuirheadSystem::new(m)?;
    if let Some(s) = spec {
        sys = sys.specialize(s)?;
    }
    buchberger_r(&sys.g, DOrder::Grlex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::muirhead::default_spec;
    use crate::weyl::parse_rop;

    #[test]
    fn reduce_self() {
        let g = muirhead_g(1, 1).unwrap();
        let d = rweyl_reduce(&g, &[g.clone()], DOrder::Grlex).unwrap();
        assert!(d.remainder.is_zero());
        assert_eq!(d.quotients[0], ROp::one(1, g.vars()));
    }

    #[test]
    fn cube_mod_kummer() {
        let g = muirhead_g(1, 1).unwrap();
        let p = parse_rop("d1^3", 1).unwrap();
        let d = rweyl_reduce(&p, &[g.clone()], DOrder::Grlex).unwrap();
        assert!(d.verify(&p, &[g]));
        assert!(d.remainder.order().unwrap() <= 1);
    }

    #[test]
    fn single_generator() {
        let d = parse_rop("d1", 1).unwrap();
        let gb = buchberger_r(&[d], DOrder::Grlex).unwrap();
        assert!(gb.input_unchanged);
        assert_eq!(holonomic_rank(&gb), Rank::Finite(1));
    }

    #[test]
    fn infinite_rank() {
        let d = parse_rop("d1*d2", 2).unwrap();
        let gb = buchberger_r(&[d], DOrder::Grlex).unwrap();
        assert_eq!(holonomic_rank(&gb), Rank::Infinite);
    }

    #[test]
    fn m2_symbolic() {
        let gb = muirhead_groebner(2, None).unwrap();
        assert!(gb.input_unchanged);
        let want: Vec<Monomial> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|e| Monomial::from_slice(e))
            .collect();
        assert_eq!(gb.standard_monomials.as_deref(), Some(&want[..]));
        assert!(s_pair_reductions(2, None)
            .unwrap()
            .iter()
            .all(|r| r.reduced_to_zero));
    }

    #[test]
    fn m3_specialized() {
        let spec = default_spec();
        let gb = muirhead_groebner(3, Some(&spec)).unwrap();
        assert!(gb.input_unchanged);
        assert_eq!(holonomic_rank(&gb), Rank::Finite(8));
    }

    #[test]
    fn m3_symbolic_pairs() {
        assert!(s_pair_reductions(3, None)
            .unwrap()
            .iter()
            .all(|r| r.reduced_to_zero));
        let gb = muirhead_groebner(3, None).unwrap();
        assert!(gb.input_unchanged);
        assert_eq!(holonomic_rank(&gb), Rank::Finite(8));
    }

    #[test]
    fn m4_specialized() {
        let gb = muirhead_groebner(4, Some(&default_spec())).unwrap();
        assert!(gb.input_unchanged);
        assert_eq!(holonomic_rank(&gb), Rank::Finite(16));
    }

    #[test]
    fn witness() {
        assert!(weyl_closure_witness_m2(None).unwrap().pass());
        let spec = [
            ("a", Rational::from_integer(2.into())),
            ("c", Rational::from_integer(3.into())),
        ];
        assert!(weyl_closure_witness_m2(Some(&spec)).unwrap().pass());
        let w = weyl_closure_witness(1, None).unwrap();
        assert!(w.pass());
        assert_eq!(w.operator, "0");
    }
}
