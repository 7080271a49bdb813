//! Linear components `C` and `Ĉ` indexed by set partitions, containment of
//! symbols, the fiberwise upper bound and the singular-locus arrangement.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{rank, rat, rref, MPoly, Rational, Vars};
use crate::combinatorics::{enumerate_set_partitions, SetPartition};
use crate::error::{Error, Result};
use crate::muirhead::{muirhead_p, s_pair_op};
use crate::par::par_map;
use crate::weyl::symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    C,
    Chat,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" | "C" => Ok(Kind::C),
            "chat" | "c-hat" | "Chat" => Ok(Kind::Chat),
            _ => Err(Error::Parse(format!("unknown component kind `{s}`"))),
        }
    }
}

/// A linear subspace of `T*A^m` cut out by linear forms in `x, ξ`.
#[derive(Clone, Debug)]
pub struct LinearComponent {
    pub label: SetPartition,
    pub kind: Kind,
    /// Forms over `Vars::phase(m)`.
    pub forms: Vec<MPoly>,
    /// Rank of the span of `forms`.
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentView {
    pub label: String,
    pub kind: Kind,
    pub forms: Vec<String>,
    pub dimension: usize,
    pub conormal: bool,
}

fn x_var(v: &Vars, i: usize) -> MPoly {
    MPoly::var(v, i - 1)
}

fn xi_var(v: &Vars, m: usize, i: usize) -> MPoly {
    MPoly::var(v, m + i - 1)
}

fn coefficient_rows(forms: &[MPoly], width: usize) -> Vec<Vec<Rational>> {
    forms
        .iter()
        .map(|f| {
            let (lin, _) = f.linear_coefficients().expect("linear form");
            lin[..width].to_vec()
        })
        .collect()
}

impl LinearComponent {
    pub fn m(&self) -> usize {
        self.label.m()
    }

    /// Dimension of the subspace in the `2m`-dimensional phase space.
    pub fn dimension(&self) -> usize {
        2 * self.m() - self.rank
    }

    /// The forms in the base coordinates `x` only.
    pub fn x_forms(&self) -> Vec<MPoly> {
        let m = self.m();
        self.forms
            .iter()
            .filter(|f| f.used_vars()[m..2 * m].iter().all(|u| !u))
            .cloned()
            .collect()
    }

    fn xi_forms(&self) -> Vec<MPoly> {
        let m = self.m();
        self.forms
            .iter()
            .filter(|f| f.used_vars()[..m].iter().all(|u| !u))
            .cloned()
            .collect()
    }

    pub fn is_zero_section(&self) -> bool {
        self.x_forms().is_empty()
    }

    /// Conormal to its projection: the forms split into `x`- and
    /// `ξ`-forms, the `ξ`-part of the fiber is the annihilator of the
    /// tangent space of the projection, and the dimension is `m`.
    pub fn is_conormal(&self) -> bool {
        let m = self.m();
        let xf = self.x_forms();
        let xif = self.xi_forms();
        if xf.len() + xif.len() != self.forms.len() {
            return false;
        }
        let a = coefficient_rows(&xf, m);
        let b: Vec<Vec<Rational>> = coefficient_rows(&xif, 2 * m)
            .into_iter()
            .map(|r| r[m..].to_vec())
            .collect();
        // Each normal covector of the projection must satisfy the ξ-forms.
        let pairing_zero = a.iter().all(|row| {
            b.iter().all(|col| {
                row.iter()
                    .zip(col)
                    .fold(Rational::zero(), |acc, (p, q)| acc + p * q)
                    .is_zero()
            })
        });
        pairing_zero && rank(&a) + rank(&b) == m
    }

    pub fn view(&self) -> ComponentView {
        ComponentView {
            label: self.label.to_string(),
            kind: self.kind,
            forms: self.forms.iter().map(MPoly::to_text).collect(),
            dimension: self.dimension(),
            conormal: self.is_conormal(),
        }
    }

    /// Forms as a set of canonical strings, for order-free comparison.
    pub fn form_set(&self) -> BTreeSet<String> {
        self.forms.iter().map(MPoly::to_text).collect()
    }
}

/// The subspace `C` or `Ĉ` of a set partition.
pub fn component(sp: &SetPartition, kind: Kind) -> LinearComponent {
    let m = sp.m();
    let v = Vars::phase(m);
    let mut forms: Vec<MPoly> = sp.j0().iter().map(|&j| x_var(&v, j)).collect();
    for b in sp.blocks() {
        for &j in &b[1..] {
            forms.push(&x_var(&v, b[0]) - &x_var(&v, j));
        }
    }
    for b in sp.blocks() {
        if kind == Kind::C || b.len() <= 2 {
            let s = b
                .iter()
                .fold(MPoly::zero(&v), |acc, &i| &acc + &xi_var(&v, m, i));
            forms.push(s);
        }
    }
    let r = rank(&coefficient_rows(&forms, 2 * m));
    LinearComponent {
        label: sp.clone(),
        kind,
        forms,
        rank: r,
    }
}

/// One component per set partition of `[m]` with distinguished block.
pub fn enumerate_components(m: usize, kind: Kind) -> Result<Vec<LinearComponent>> {
    if m == 0 {
        return Err(Error::Structural("m must be at least 1".into()));
    }
    Ok(enumerate_set_partitions(m)
        .iter()
        .map(|sp| component(sp, kind))
        .collect())
}

/// Whether `f` vanishes identically on the component, by substituting a
/// parametrization of the subspace.
pub fn vanishes_on(f: &MPoly, comp: &LinearComponent) -> Result<bool> {
    let m = comp.m();
    if f.vars() != &Vars::phase(m) {
        return Err(Error::Structural(
            "expected a polynomial in x, xi, a, c".into(),
        ));
    }
    let rows = coefficient_rows(&comp.forms, 2 * m);
    let red = rref(rows, 2 * m);
    let mut g = f.clone();
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        // x_p = −Σ_{free q} row[q] x_q
        let mut val = MPoly::zero(f.vars());
        for (q, c) in row.iter().enumerate().take(2 * m) {
            if q != p && !c.is_zero() {
                val = &val - &MPoly::var(f.vars(), q).scale(c);
            }
        }
        g = g.substitute(p, &val);
    }
    Ok(g.is_zero())
}

/// Symbols of `P_i` and `S_ij`, labelled.
pub fn generator_symbols(m: usize) -> Result<Vec<(String, MPoly)>> {
    let mut labels: Vec<(String, usize, usize)> =
        (1..=m).map(|i| (format!("P{i}"), i, 0)).collect();
    for i in 1..=m {
        for j in i + 1..=m {
            labels.push((format!("S{i}{j}"), i, j));
        }
    }
    par_map(&labels, |(name, i, j)| -> Result<(String, MPoly)> {
        let op = if *j == 0 {
            muirhead_p(*i, m)?
        } else {
            s_pair_op(*i, *j, m)?
        };
        Ok((name.clone(), symbol(&op)?))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub m: usize,
    pub generators: Vec<String>,
    pub components: Vec<String>,
    /// Components that appear in the proven lower bound: the zero section,
    /// `V(x_i, ξ_≠i)` and the diagonal conormals.
    pub proven_lower_bound: Vec<bool>,
    /// `matrix[g][c]`: symbol `g` vanishes on component `c`.
    pub matrix: Vec<Vec<bool>>,
}

impl LowerBoundReport {
    pub fn all_pass(&self) -> bool {
        self.matrix.iter().flatten().all(|&b| b)
    }
}

fn in_proven_lower_bound(sp: &SetPartition) -> bool {
    let big: Vec<_> = sp.blocks().iter().filter(|b| b.len() > 1).collect();
    match (sp.j0().len(), big.len()) {
        (0, 0) | (1, 0) => true,
        (0, 1) => big[0].len() == 2,
        _ => false,
    }
}

/// Every symbol of `P_i` and `S_ij` vanishes on every `C` component.
pub fn lower_bound_check(m: usize) -> Result<LowerBoundReport> {
    if m == 0 || m > 4 {
        return Err(Error::Domain(
            "lower bound check runs for 1 <= m <= 4".into(),
        ));
    }
    let syms = generator_symbols(m)?;
    let comps = enumerate_components(m, Kind::C)?;
    let matrix = par_map(&syms, |(_, s)| -> Result<Vec<bool>> {
        comps.iter().map(|c| vanishes_on(s, c)).collect()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(LowerBoundReport {
        m,
        generators: syms.iter().map(|(n, _)| n.clone()).collect(),
        components: comps.iter().map(|c| c.label.to_string()).collect(),
        proven_lower_bound: comps
            .iter()
            .map(|c| in_proven_lower_bound(&c.label))
            .collect(),
        matrix,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ForcedFactor {
    /// `P_n` or `S_ij`.
    pub source: String,
    pub specialized_symbol: String,
    /// `ξ_n^2` or `(ξ_i + ξ_j)^3`.
    pub factor: String,
    pub multiplier: String,
    pub expected_multiplier: String,
    pub nonzero_multiple: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub z: Vec<String>,
    pub partition: String,
    pub forced: Vec<ForcedFactor>,
    /// `ξ`-forms of `Ĉ` left unconstrained by the forced factors.
    pub unforced_xi_forms: Vec<String>,
    pub x_forms_vanish: bool,
    pub contained: bool,
}

fn specialize_x(f: &MPoly, z: &[Rational]) -> MPoly {
    z.iter()
        .enumerate()
        .fold(f.clone(), |acc, (i, zi)| acc.eval_var(i, zi))
}

/// `f = c · g` for a rational `c`, if it holds.
fn rational_multiple(f: &MPoly, g: &MPoly) -> Option<Rational> {
    let (lm, lc) = g.leading()?;
    let c = f.coeff(lm) / lc;
    (g.scale(&c) == *f).then_some(c)
}

/// Fiberwise containment of the symbol variety over `x = z` in the fiber
/// of `Ĉ` for the partition of `z`.
pub fn upper_bound_fiber_check(m: usize, z: &[Rational]) -> Result<FiberReport> {
    if z.len() != m || m == 0 {
        return Err(Error::Structural(format!(
            "point must have {m} coordinates"
        )));
    }
    let sp = SetPartition::of_point(z);
    let v = Vars::phase(m);
    let chat = component(&sp, Kind::Chat);
    let mut forced = Vec::new();
    let mut pending = Vec::new();
    for b in sp.blocks() {
        match b.as_slice() {
            [n] => pending.push((format!("P{n}"), *n, 0usize)),
            [i, j] => pending.push((format!("S{i}{j}"), *i, *j)),
            _ => {}
        }
    }
    for (name, i, j) in pending {
        let (op, factor, expected) = if j == 0 {
            let xi = xi_var(&v, m, i);
            let mut e = z[i - 1].clone();
            for (k, zk) in z.iter().enumerate() {
                if k != i - 1 {
                    e *= &z[i - 1] - zk;
                }
            }
            (muirhead_p(i, m)?, &xi * &xi, e)
        } else {
            let s = &xi_var(&v, m, i) + &xi_var(&v, m, j);
            let mut e = rat(-1, 2) * &z[i - 1] * &z[j - 1];
            for (k, zk) in z.iter().enumerate() {
                if k != i - 1 && k != j - 1 {
                    e *= (&z[i - 1] - zk) * (&z[j - 1] - zk);
                }
            }
            (s_pair_op(i, j, m)?, s.pow(3), e)
        };
        let spec = specialize_x(&symbol(&op)?, z);
        let mult = rational_multiple(&spec, &factor);
        let nonzero = matches!(&mult, Some(c) if !c.is_zero() && *c == expected);
        forced.push(ForcedFactor {
            source: name,
            specialized_symbol: spec.to_text(),
            factor: factor.to_text(),
            multiplier: mult.map_or_else(|| "none".into(), |c| c.to_string()),
            expected_multiplier: expected.to_string(),
            nonzero_multiple: nonzero,
        });
    }
    let mut point = z.to_vec();
    point.extend(std::iter::repeat_n(Rational::zero(), v.len() - m));
    let x_forms_vanish = chat.x_forms().iter().all(|f| f.evaluate(&point).is_zero());
    let unforced: Vec<String> = sp
        .j0()
        .iter()
        .map(|&i| xi_var(&v, m, i).to_text())
        .chain(
            sp.blocks()
                .iter()
                .filter(|b| b.len() > 2)
                .map(|b| format!("block {:?} carries no xi-form", b)),
        )
        .collect();
    Ok(FiberReport {
        z: z.iter().map(ToString::to_string).collect(),
        partition: sp.to_string(),
        contained: x_forms_vanish && forced.iter().all(|f| f.nonzero_multiple),
        forced,
        unforced_xi_forms: unforced,
        x_forms_vanish,
    })
}

/// Small rationals drawn with a fixed seed; repeated and zero coordinates
/// are frequent on purpose.
pub fn sample_points(m: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..m)
                .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularLocusArrangement {
    pub m: usize,
    /// `x_k` and `x_k − x_ℓ` (`k < ℓ`) over `x1..xm`.
    pub factors: Vec<String>,
    pub defining_product: String,
    /// Hyperplanes among the projections of the non-zero-section `C`.
    pub projected_hyperplanes: Vec<String>,
    pub lower_dimensional_projections_covered: bool,
    pub projection_identity: bool,
}

fn normalize_form(f: &MPoly) -> MPoly {
    let lc = f.lc();
    if lc.is_negative() || !lc.is_one() {
        f.scale(&(Rational::one() / lc))
    } else {
        f.clone()
    }
}

/// The arrangement `∏ x_k ∏_{ℓ≠k} (x_k − x_ℓ) = 0` and the check that it
/// is the union of the projections of the non-zero-section components.
pub fn singular_locus(m: usize) -> Result<SingularLocusArrangement> {
    let comps = enumerate_components(m, Kind::C)?;
    let v = Vars::coords(m);
    let mut factors: Vec<MPoly> = (0..m).map(|k| MPoly::var(&v, k)).collect();
    for k in 0..m {
        for l in k + 1..m {
            factors.push(&MPoly::var(&v, k) - &MPoly::var(&v, l));
        }
    }
    let mut product = MPoly::one(&v);
    for k in 0..m {
        product = &product * &MPoly::var(&v, k);
        for l in (0..m).filter(|&l| l != k) {
            product = &product * &(&MPoly::var(&v, k) - &MPoly::var(&v, l));
        }
    }
    let to_coords = |f: &MPoly| -> MPoly {
        let (lin, _) = f.linear_coefficients().expect("linear");
        (0..m).fold(MPoly::zero(&v), |acc, i| {
            &acc + &MPoly::var(&v, i).scale(&lin[i])
        })
    };
    let factor_set: BTreeSet<String> = factors
        .iter()
        .map(|f| normalize_form(f).to_text())
        .collect();
    let mut hyper = BTreeSet::new();
    let mut covered = true;
    for c in comps.iter().filter(|c| !c.is_zero_section()) {
        let xf: Vec<MPoly> = c.x_forms().iter().map(to_coords).collect();
        if xf.len() == 1 {
            hyper.insert(normalize_form(&xf[0]).to_text());
        } else {
            // Some factor must lie in the span of the x-forms.
            let rows = coefficient_rows(&xf, m);
            let r = rank(&rows);
            covered &= factors.iter().any(|f| {
                let mut ext = rows.clone();
                ext.push(coefficient_rows(std::slice::from_ref(f), m).remove(0));
                rank(&ext) == r
            });
        }
    }
    Ok(SingularLocusArrangement {
        m,
        factors: factors.iter().map(MPoly::to_text).collect(),
        defining_product: product.to_text(),
        projection_identity: covered && hyper == factor_set,
        projected_hyperplanes: hyper.into_iter().collect(),
        lower_dimensional_projections_covered: covered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn set(forms: &[&str]) -> BTreeSet<String> {
        forms.iter().map(|s| s.to_string()).collect()
    }

    fn sp(m: usize, j0: Vec<usize>, blocks: Vec<Vec<usize>>) -> SetPartition {
        SetPartition::new(m, j0, blocks).unwrap()
    }

    #[test]
    fn single_components() {
        let c = component(&sp(2, vec![1, 2], vec![]), Kind::C);
        assert_eq!(c.form_set(), set(&["x1", "x2"]));
        let c = component(&sp(2, vec![], vec![vec![1, 2]]), Kind::C);
        assert_eq!(c.form_set(), set(&["xi1 + xi2", "x1 - x2"]));
        let c = component(&sp(3, vec![], vec![vec![1, 2, 3]]), Kind::Chat);
        assert_eq!(c.form_set(), set(&["x1 - x2", "x1 - x3"]));
        assert!(!c.is_conormal());
    }

    #[test]
    fn m2_matches_five() {
        let got: BTreeSet<_> = enumerate_components(2, Kind::C)
            .unwrap()
            .iter()
            .map(LinearComponent::form_set)
            .collect();
        let want: BTreeSet<_> = [
            set(&["x1", "x2"]),
            set(&["x1", "xi2"]),
            set(&["xi1", "x2"]),
            set(&["xi1", "xi2"]),
            set(&["xi1 + xi2", "x1 - x2"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn m3_components() {
        let comps = enumerate_components(3, Kind::C).unwrap();
        assert_eq!(comps.len(), 15);
        assert!(comps.iter().all(|c| c.dimension() == 3 && c.is_conormal()));
        let distinct: BTreeSet<_> = comps.iter().map(LinearComponent::form_set).collect();
        assert_eq!(distinct.len(), 15);
        assert!(distinct.contains(&set(&["x1 - x2", "x1 - x3", "xi1 + xi2 + xi3"])));
        assert!(distinct.contains(&set(&["x2 - x3", "xi2 + xi3", "xi1"])));
    }

    #[test]
    fn kummer_components() {
        let comps = enumerate_components(1, Kind::C).unwrap();
        let got: BTreeSet<_> = comps.iter().map(LinearComponent::form_set).collect();
        assert_eq!(got, [set(&["x1"]), set(&["xi1"])].into_iter().collect());
    }

    #[test]
    fn containment() {
        let s = symbol(&muirhead_p(1, 2).unwrap()).unwrap();
        let c = component(&sp(2, vec![1], vec![vec![2]]), Kind::C);
        assert!(vanishes_on(&s, &c).unwrap());
        let c = component(&sp(2, vec![], vec![vec![1], vec![2]]), Kind::C);
        assert!(vanishes_on(&s, &c).unwrap());
        let v = Vars::phase(2);
        let c = component(&sp(2, vec![], vec![vec![1, 2]]), Kind::C);
        assert!(!vanishes_on(&MPoly::var(&v, 2), &c).unwrap());
    }

    #[test]
    fn lower_bounds() {
        for m in 1..=3 {
            assert!(lower_bound_check(m).unwrap().all_pass(), "m = {m}");
        }
    }

    #[test]
    fn fibers() {
        let r = upper_bound_fiber_check(2, &[int(1), int(2)]).unwrap();
        assert_eq!(r.partition, "J0={} | {1} {2}");
        assert!(r.contained && r.forced.len() == 2);
        let r = upper_bound_fiber_check(2, &[int(3), int(3)]).unwrap();
        assert_eq!(
            r.forced[0].factor,
            "xi1^3 + 3*xi1^2*xi2 + 3*xi1*xi2^2 + xi2^3"
        );
        assert!(r.contained);
        let r = upper_bound_fiber_check(2, &[int(0), int(5)]).unwrap();
        assert_eq!(r.partition, "J0={1} | {2}");
        assert_eq!(r.forced.len(), 1);
        assert_eq!(r.unforced_xi_forms, vec!["xi1".to_string()]);
        for z in sample_points(3, 12, 7) {
            assert!(upper_bound_fiber_check(3, &z).unwrap().contained);
        }
    }

    #[test]
    fn arrangement() {
        let s = singular_locus(2).unwrap();
        assert_eq!(s.factors, vec!["x1", "x2", "x1 - x2"]);
        assert!(s.projection_identity);
        assert_eq!(singular_locus(1).unwrap().factors, vec!["x1"]);
        let s = singular_locus(3).unwrap();
        assert_eq!(s.factors.len(), 6);
        assert!(s.projection_identity);
    }
}
