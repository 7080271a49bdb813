//! Zonal polynomials in the monomial symmetric basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, MPoly, Monomial, Rational, Vars};
use crate::combinatorics::{enumerate_int_partitions, IntPartition};
use crate::error::{Error, Result};
use crate::par::par_map;

/// `Σ_μ c_μ M_μ` for partitions μ of a common weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPoly {
    m: usize,
    degree: u32,
    coeffs: BTreeMap<IntPartition, Rational>,
}

impl SymmetricPoly {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<IntPartition, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, mu: &IntPartition) -> Rational {
        self.coeffs.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// Expansion into monomials in `x1, …, xm`.
    pub fn to_mpoly(&self) -> MPoly {
        let vars = Vars::coords(self.m);
        let mut out = MPoly::zero(&vars);
        for (mu, c) in &self.coeffs {
            for e in distinct_permutations(mu.parts()) {
                out.add_term(Monomial::from(e), c.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZonalEigen {
    pub rho: i64,
    pub alpha: i64,
}

pub fn zonal_eigen(lambda: &IntPartition, m: usize) -> ZonalEigen {
    let rho: i64 = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 * (l as i64 - (i as i64 + 1)))
        .sum();
    let d = lambda.weight() as i64;
    ZonalEigen {
        rho,
        alpha: rho + d * (m as i64 - 1),
    }
}

fn distinct_permutations(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = parts.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Standard next-permutation over a multiset.
    loop {
        let n = cur.len();
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// `M_λ = Σ x^μ` over the distinct permutations μ of λ.
pub fn monomial_symmetric(lambda: &IntPartition, m: usize) -> Result<MPoly> {
    if lambda.len() != m {
        return Err(Error::Structural(format!(
            "partition {lambda} has length {} but m = {m}",
            lambda.len()
        )));
    }
    let vars = Vars::coords(m);
    Ok(MPoly::from_terms(
        &vars,
        distinct_permutations(lambda.parts())
            .into_iter()
            .map(|e| (Monomial::from(e), Rational::one())),
    ))
}

/// Provisional coefficients with `c_{λ,λ} = 1`.
fn provisional(
    lambda: &IntPartition,
    family: &[IntPartition],
    m: usize,
) -> Result<BTreeMap<IntPartition, Rational>> {
    let rho_l = zonal_eigen(lambda, m).rho;
    let mut c: BTreeMap<IntPartition, Rational> = BTreeMap::new();
    c.insert(lambda.clone(), Rational::one());
    // Family is lex-descending; every κ in the sum is strictly above μ, so
    // walking downward visits it first.
    for mu in family.iter().filter(|mu| *mu < lambda) {
        let mut sum = Rational::zero();
        let p = mu.parts();
        for i in 0..m {
            for j in i + 1..m {
                for t in 1..=p[j] {
                    let mut kappa = p.to_vec();
                    kappa[i] += t;
                    kappa[j] -= t;
                    let diff = kappa[i] as i64 - kappa[j] as i64;
                    let sorted = IntPartition::new(kappa);
                    if sorted <= *mu || sorted > *lambda {
                        continue;
                    }
                    if let Some(ck) = c.get(&sorted) {
                        sum += ck * int(diff);
                    }
                }
            }
        }
        let rho_m = zonal_eigen(mu, m).rho;
        if rho_l == rho_m {
            if !sum.is_zero() {
                return Err(Error::Internal(format!(
                    "rho tie between {lambda} and {mu} with nonzero recursion sum {sum}"
                )));
            }
            continue;
        }
        let v = sum / int(rho_l - rho_m);
        if !v.is_zero() {
            c.insert(mu.clone(), v);
        }
    }
    Ok(c)
}

fn multinomial(mu: &IntPartition) -> Rational {
    let fact = |n: u32| (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k));
    mu.parts()
        .iter()
        .fold(fact(mu.weight()), |acc, &p| acc / fact(p))
}

/// All zonal polynomials of weight `d` in `m` variables, lex-descending in λ.
pub type ZonalFamily = Vec<(IntPartition, SymmetricPoly)>;

fn compute_family(d: u32, m: usize) -> Result<ZonalFamily> {
    let family = enumerate_int_partitions(d, m);
    let provisional: Vec<_> = par_map(&family, |l| provisional(l, &family, m))
        .into_iter()
        .collect::<Result<_>>()?;
    // Σ_λ s_λ c̃_{λ,μ} = d!/∏μ_i!, triangular since c̃_{λ,μ} = 0 unless μ ≤ λ.
    let mut scale: Vec<Rational> = Vec::with_capacity(family.len());
    for (k, mu) in family.iter().enumerate() {
        let mut rhs = multinomial(mu);
        for (l, s) in scale.iter().enumerate() {
            if let Some(c) = provisional[l].get(mu) {
                rhs -= s * c;
            }
        }
        debug_assert!(provisional[k][mu].is_one());
        scale.push(rhs);
    }
    Ok(family
        .iter()
        .zip(provisional)
        .zip(scale)
        .map(|((lambda, coeffs), s)| {
            let coeffs = coeffs
                .into_iter()
                .map(|(mu, c)| (mu, c * &s))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            (
                lambda.clone(),
                SymmetricPoly {
                    m,
                    degree: d,
                    coeffs,
                },
            )
        })
        .collect())
}

type Cache = RwLock<HashMap<(u32, usize), Arc<ZonalFamily>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoised family of weight `d`; concurrent readers, single writer.
pub fn zonal_family(d: u32, m: usize) -> Result<Arc<ZonalFamily>> {
    if let Some(f) = cache().read().expect("zonal cache poisoned").get(&(d, m)) {
        return Ok(f.clone());
    }
    let fam = Arc::new(compute_family(d, m)?);
    let mut w = cache().write().expect("zonal cache poisoned");
    Ok(w.entry((d, m)).or_insert(fam).clone())
}

pub fn zonal_poly(lambda: &IntPartition, m: usize) -> Result<SymmetricPoly> {
    if lambda.len() != m {
        return Err(Error::Structural(format!(
            "partition {lambda} has length {} but m = {m}",
            lambda.len()
        )));
    }
    let fam = zonal_family(lambda.weight(), m)?;
    Ok(fam
        .iter()
        .find(|(l, _)| l == lambda)
        .map(|(_, c)| c.clone())
        .expect("family contains every partition of its weight"))
}

fn swap_vars(f: &MPoly, i: usize, j: usize) -> MPoly {
    MPoly::from_terms(
        f.vars(),
        f.terms().iter().map(|(e, c)| {
            let mut e = e.clone();
            e.exps_mut().swap(i, j);
            (e, c.clone())
        }),
    )
}

pub fn is_symmetric(f: &MPoly, m: usize) -> bool {
    (0..m.saturating_sub(1)).all(|i| swap_vars(f, i, i + 1) == *f)
}

/// `Δ f = Σ x_i² ∂_i² f + Σ_{i≠j} x_i²/(x_i − x_j) ∂_i f` for symmetric `f`.
pub fn apply_delta(f: &MPoly, m: usize) -> Result<MPoly> {
    if f.vars() != &Vars::coords(m) {
        return Err(Error::Structural(
            "apply_delta expects a polynomial in x1..xm".into(),
        ));
    }
    if !is_symmetric(f, m) {
        return Err(Error::Domain(
            "apply_delta needs a symmetric polynomial".into(),
        ));
    }
    let vars = f.vars().clone();
    let sq = |i: usize| {
        let x = MPoly::var(&vars, i);
        &x * &x
    };
    let first: Vec<MPoly> = (0..m).map(|i| &sq(i) * &f.derivative(i)).collect();
    let mut out = MPoly::zero(&vars);
    for (i, fi) in first.iter().enumerate() {
        out = &out + &(&sq(i) * &f.derivative(i).derivative(i));
        for (j, fj) in first.iter().enumerate().skip(i + 1) {
            let num = fi - fj;
            let den = &MPoly::var(&vars, i) - &MPoly::var(&vars, j);
            let q = num.div_exact(&den).ok_or_else(|| {
                Error::Internal(format!("residual denominator x{}-x{}", i + 1, j + 1))
            })?;
            out = &out + &q;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZonalAxiomEntry {
    pub lambda: IntPartition,
    pub rho: i64,
    pub alpha: i64,
    pub leading_monomial: bool,
    pub eigenvalue: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZonalAxiomReport {
    pub d: u32,
    pub m: usize,
    pub entries: Vec<ZonalAxiomEntry>,
    pub summation: bool,
}

impl ZonalAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.summation
            && self
                .entries
                .iter()
                .all(|e| e.leading_monomial && e.eigenvalue)
    }
}

/// Checks the leading-monomial, eigenvalue and summation axioms for every
/// partition of `d` into at most `m` parts.
pub fn verify_zonal_axioms(d: u32, m: usize) -> Result<ZonalAxiomReport> {
    let fam = zonal_family(d, m)?;
    let entries: Vec<ZonalAxiomEntry> = par_map(&fam[..], |(lambda, c)| {
        let f = c.to_mpoly();
        let leading_monomial = f
            .leading_lex()
            .is_some_and(|(e, _)| e.exps() == lambda.parts());
        let eig = zonal_eigen(lambda, m);
        let eigenvalue = apply_delta(&f, m)
            .map(|g| g == f.scale(&int(eig.alpha)))
            .unwrap_or(false);
        ZonalAxiomEntry {
            lambda: lambda.clone(),
            rho: eig.rho,
            alpha: eig.alpha,
            leading_monomial,
            eigenvalue,
        }
    });
    let vars = Vars::coords(m);
    let sum = fam
        .iter()
        .fold(MPoly::zero(&vars), |acc, (_, c)| &acc + &c.to_mpoly());
    let e1 = (0..m).fold(MPoly::zero(&vars), |acc, i| &acc + &MPoly::var(&vars, i));
    Ok(ZonalAxiomReport {
        d,
        m,
        entries,
        summation: sum == e1.pow(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn part(v: &[u32]) -> IntPartition {
        IntPartition::new(v.to_vec())
    }

    #[test]
    fn monomial_symmetric_examples() {
        let v = Vars::coords(2);
        assert_eq!(
            monomial_symmetric(&part(&[1, 0]), 2).unwrap(),
            &MPoly::var(&v, 0) + &MPoly::var(&v, 1)
        );
        assert_eq!(
            monomial_symmetric(&part(&[1, 1]), 2).unwrap(),
            &MPoly::var(&v, 0) * &MPoly::var(&v, 1)
        );
        assert_eq!(
            monomial_symmetric(&part(&[2, 1, 0]), 3).unwrap().nterms(),
            6
        );
    }

    #[test]
    fn eigen_examples() {
        assert_eq!(
            zonal_eigen(&part(&[2, 0]), 2),
            ZonalEigen { rho: 2, alpha: 4 }
        );
        assert_eq!(
            zonal_eigen(&part(&[1, 1]), 2),
            ZonalEigen { rho: -1, alpha: 1 }
        );
        assert_eq!(
            zonal_eigen(&part(&[0, 0]), 2),
            ZonalEigen { rho: 0, alpha: 0 }
        );
    }

    #[test]
    fn degree_two() {
        let c20 = zonal_poly(&part(&[2, 0]), 2).unwrap();
        assert_eq!(c20.coeff(&part(&[2, 0])), rat(1, 1));
        assert_eq!(c20.coeff(&part(&[1, 1])), rat(2, 3));
        let c11 = zonal_poly(&part(&[1, 1]), 2).unwrap();
        assert_eq!(c11.coeff(&part(&[1, 1])), rat(4, 3));
        assert_eq!(c11.coeffs().len(), 1);
        let c1 = zonal_poly(&part(&[1, 0]), 2).unwrap();
        assert_eq!(
            c1.to_mpoly(),
            monomial_symmetric(&part(&[1, 0]), 2).unwrap()
        );
    }

    #[test]
    fn delta_examples() {
        let v = Vars::coords(2);
        let e1 = &MPoly::var(&v, 0) + &MPoly::var(&v, 1);
        assert_eq!(apply_delta(&e1, 2).unwrap(), e1);
        assert!(apply_delta(&MPoly::one(&v), 2).unwrap().is_zero());
        let c20 = zonal_poly(&part(&[2, 0]), 2).unwrap().to_mpoly();
        assert_eq!(apply_delta(&c20, 2).unwrap(), c20.scale(&int(4)));
        assert!(matches!(
            apply_delta(&MPoly::var(&v, 0), 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn small_axioms() {
        assert!(verify_zonal_axioms(2, 2).unwrap().all_pass());
        assert!(verify_zonal_axioms(1, 3).unwrap().all_pass());
        assert!(verify_zonal_axioms(4, 3).unwrap().all_pass());
    }
}
