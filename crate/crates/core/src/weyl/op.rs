use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::arith::{int, MPoly, Monomial, RatFun, Rational, Vars};
use crate::error::{Error, Result};

/// Coefficient ring of a Weyl operator: polynomials or rational functions
/// whose first `m` variables are the coordinates `x1..xm`.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn vars(&self) -> &Vars;
    fn zero_in(vars: &Vars) -> Self;
    fn one_in(vars: &Vars) -> Self;
    fn from_poly(p: MPoly) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn derivative(&self, i: usize) -> Self;
}

impl Coefficient for MPoly {
    fn vars(&self) -> &Vars {
        MPoly::vars(self)
    }
    fn zero_in(vars: &Vars) -> Self {
        MPoly::zero(vars)
    }
    fn one_in(vars: &Vars) -> Self {
        MPoly::one(vars)
    }
    fn from_poly(p: MPoly) -> Self {
        p
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        MPoly::scale(self, c)
    }
    fn derivative(&self, i: usize) -> Self {
        MPoly::derivative(self, i)
    }
}

impl Coefficient for RatFun {
    fn vars(&self) -> &Vars {
        RatFun::vars(self)
    }
    fn zero_in(vars: &Vars) -> Self {
        RatFun::zero(vars)
    }
    fn one_in(vars: &Vars) -> Self {
        RatFun::one(vars)
    }
    fn from_poly(p: MPoly) -> Self {
        RatFun::from_poly(p)
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        RatFun::scale(self, c)
    }
    fn derivative(&self, i: usize) -> Self {
        RatFun::derivative(self, i)
    }
}

/// A differential operator `Σ_β f_β ∂^β` in normal order: every
/// coefficient sits to the left of the derivatives. The coefficient
/// absorbs all dependence on `x`, so `x^α ∂^β` terms are grouped by `β`.
#[derive(Clone, PartialEq)]
pub struct WeylOp<C> {
    m: usize,
    vars: Vars,
    terms: BTreeMap<Monomial, C>,
}

/// Operators with polynomial coefficients in `x1..xm, a, c`.
pub type DOp = WeylOp<MPoly>;
/// Operators with rational-function coefficients in `x1..xm, a, c`.
pub type ROp = WeylOp<RatFun>;

impl<C: Coefficient> WeylOp<C> {
    pub fn zero(m: usize, vars: &Vars) -> Self {
        assert!(vars.len() >= m, "coefficient ring lacks coordinates");
        WeylOp {
            m,
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Zero in the standard ring `x1..xm, a, c`.
    pub fn zero_std(m: usize) -> Self {
        Self::zero(m, &Vars::weyl(m))
    }

    pub fn one(m: usize, vars: &Vars) -> Self {
        Self::from_coeff(m, C::one_in(vars))
    }

    pub fn from_coeff(m: usize, c: C) -> Self {
        let vars = c.vars().clone();
        Self::term(m, Monomial::one(m), c, &vars)
    }

    fn term(m: usize, beta: Monomial, c: C, vars: &Vars) -> Self {
        let mut op = Self::zero(m, vars);
        if !c.is_zero() {
            op.terms.insert(beta, c);
        }
        op
    }

    /// `c · ∂^β`.
    pub fn monomial(m: usize, beta: Monomial, c: C) -> Self {
        let vars = c.vars().clone();
        Self::term(m, beta, c, &vars)
    }

    /// The derivation `∂_i` (0-based).
    pub fn d(m: usize, vars: &Vars, i: usize) -> Self {
        Self::term(m, Monomial::unit(m, i, 1), C::one_in(vars), vars)
    }

    /// Multiplication by the coordinate `x_i` (0-based).
    pub fn x(m: usize, vars: &Vars, i: usize) -> Self {
        Self::from_coeff(m, C::from_poly(MPoly::var(vars, i)))
    }

    pub fn constant(m: usize, vars: &Vars, r: Rational) -> Self {
        Self::from_coeff(m, C::one_in(vars).scale(&r))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(m: usize, vars: &Vars, it: I) -> Self {
        let mut op = Self::zero(m, vars);
        for (b, c) in it {
            op.add_term(b, c);
        }
        op
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, beta: &Monomial) -> C {
        self.terms
            .get(beta)
            .cloned()
            .unwrap_or_else(|| C::zero_in(&self.vars))
    }

    /// Largest derivative monomial under graded lex with `∂1 > … > ∂m`.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, beta: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(beta) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.m, other.m, "operators of different dimension");
        assert_eq!(
            self.vars, other.vars,
            "operators over different coefficient rings"
        );
    }

    /// Checked product; fails on incompatible operands instead of panicking.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.m != other.m || self.vars != other.vars {
            return Err(Error::Structural(
                "operators live in different rings".into(),
            ));
        }
        Ok(self * other)
    }

    /// `c · self` for a coefficient `c` (left multiplication is termwise).
    pub fn left_mul_coeff(&self, c: &C) -> Self {
        let mut out = Self::zero(self.m, &self.vars);
        if c.is_zero() {
            return out;
        }
        for (b, f) in &self.terms {
            out.add_term(b.clone(), c.mul(f));
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.m, &self.vars);
        }
        WeylOp {
            m: self.m,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c.scale(r)))
                .collect(),
        }
    }

    /// `∂^γ · self`, cheaper than a general product.
    pub fn left_mul_d(&self, gamma: &Monomial) -> Self {
        Self::monomial(self.m, gamma.clone(), C::one_in(&self.vars)).mul(self)
    }

    pub fn map_coeffs<D: Coefficient, F: Fn(&C) -> D>(&self, vars: &Vars, f: F) -> WeylOp<D> {
        let mut out = WeylOp::zero(self.m, vars);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<D: Coefficient, F: Fn(&C) -> Result<D>>(
        &self,
        vars: &Vars,
        f: F,
    ) -> Result<WeylOp<D>> {
        let mut out = WeylOp::zero(self.m, vars);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Apply to a coefficient-ring element: `Σ f_β ∂^β g`.
    pub fn apply(&self, g: &C) -> C {
        let mut cache: HashMap<Monomial, C> = HashMap::new();
        let mut out = C::zero_in(&self.vars);
        for (b, f) in &self.terms {
            let dg = derive(g, b, self.m, &mut cache);
            out = out.add(&f.mul(&dg));
        }
        out
    }

    /// Swap coordinates by a permutation: `x_i ↦ x_{σ(i)}`, `∂_i ↦ ∂_{σ(i)}`.
    pub fn permute(&self, sigma: &[usize]) -> Self
    where
        C: Permutable,
    {
        let mut out = Self::zero(self.m, &self.vars);
        for (b, c) in &self.terms {
            let mut nb = Monomial::one(self.m);
            for (i, &e) in b.exps().iter().enumerate() {
                nb.exps_mut()[sigma[i]] = e;
            }
            out.add_term(nb, c.permute_coords(sigma));
        }
        out
    }
}

/// Coefficients whose coordinate variables can be permuted.
pub trait Permutable {
    fn permute_coords(&self, sigma: &[usize]) -> Self;
}

fn permute_poly(p: &MPoly, sigma: &[usize]) -> MPoly {
    MPoly::from_terms(
        p.vars(),
        p.terms().iter().map(|(e, c)| {
            let mut ne = e.clone();
            for (i, &s) in sigma.iter().enumerate() {
                ne.exps_mut()[s] = e.exps()[i];
            }
            (ne, c.clone())
        }),
    )
}

impl Permutable for MPoly {
    fn permute_coords(&self, sigma: &[usize]) -> Self {
        permute_poly(self, sigma)
    }
}

impl Permutable for RatFun {
    fn permute_coords(&self, sigma: &[usize]) -> Self {
        RatFun::new(
            permute_poly(self.num(), sigma),
            permute_poly(self.den(), sigma),
        )
        .expect("permuted denominator is nonzero")
    }
}

/// `∂^κ g`, memoised over the multi-index.
fn derive<C: Coefficient>(
    g: &C,
    kappa: &Monomial,
    m: usize,
    cache: &mut HashMap<Monomial, C>,
) -> C {
    if kappa.is_one() {
        return g.clone();
    }
    if let Some(v) = cache.get(kappa) {
        return v.clone();
    }
    let i = (0..m).find(|&i| kappa.exps()[i] > 0).unwrap();
    let mut prev = kappa.clone();
    prev.exps_mut()[i] -= 1;
    let base = derive(g, &prev, m, cache);
    let v = base.derivative(i);
    cache.insert(kappa.clone(), v.clone());
    v
}

fn binom(n: u32, k: u32) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

/// All multi-indices `κ ≤ β` componentwise.
fn sub_indices(beta: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(beta.len())];
    for (i, &b) in beta.exps().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for k in &out {
            for e in 0..=b {
                let mut k2 = k.clone();
                k2.exps_mut()[i] = e;
                next.push(k2);
            }
        }
        out = next;
    }
    out
}

impl<'a, C: Coefficient> Mul<&'a WeylOp<C>> for &'a WeylOp<C> {
    type Output = WeylOp<C>;
    /// `(f ∂^β)(g ∂^γ) = f Σ_{κ ≤ β} ∏ C(β_i, κ_i) (∂^κ g) ∂^{β−κ+γ}`.
    fn mul(self, rhs: &'a WeylOp<C>) -> WeylOp<C> {
        self.check_compatible(rhs);
        let mut out = WeylOp::zero(self.m, &self.vars);
        let mut caches: Vec<HashMap<Monomial, C>> = vec![HashMap::new(); rhs.terms.len()];
        for (beta, f) in &self.terms {
            let kappas = sub_indices(beta);
            for ((gamma, g), cache) in rhs.terms.iter().zip(caches.iter_mut()) {
                for kappa in &kappas {
                    let dg = derive(g, kappa, self.m, cache);
                    if dg.is_zero() {
                        continue;
                    }
                    let mut coef = Rational::one();
                    for (b, k) in beta.exps().iter().zip(kappa.exps()) {
                        coef *= binom(*b, *k);
                    }
                    let shift = beta.div(kappa).expect("κ ≤ β").mul(gamma);
                    out.add_term(shift, f.mul(&dg).scale(&coef));
                }
            }
        }
        out
    }
}

impl<'a, C: Coefficient> Add<&'a WeylOp<C>> for &'a WeylOp<C> {
    type Output = WeylOp<C>;
    fn add(self, rhs: &'a WeylOp<C>) -> WeylOp<C> {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coefficient> Sub<&'a WeylOp<C>> for &'a WeylOp<C> {
    type Output = WeylOp<C>;
    fn sub(self, rhs: &'a WeylOp<C>) -> WeylOp<C> {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(b.clone(), c.neg());
        }
        out
    }
}

impl<C: Coefficient> Neg for &WeylOp<C> {
    type Output = WeylOp<C>;
    fn neg(self) -> WeylOp<C> {
        WeylOp {
            m: self.m,
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), c.neg()))
                .collect(),
        }
    }
}

macro_rules! forward_owned_op {
    ($tr:ident, $f:ident) => {
        impl<C: Coefficient> $tr<WeylOp<C>> for WeylOp<C> {
            type Output = WeylOp<C>;
            fn $f(self, rhs: WeylOp<C>) -> WeylOp<C> {
                (&self).$f(&rhs)
            }
        }
        impl<'a, C: Coefficient> $tr<&'a WeylOp<C>> for WeylOp<C> {
            type Output = WeylOp<C>;
            fn $f(self, rhs: &'a WeylOp<C>) -> WeylOp<C> {
                (&self).$f(rhs)
            }
        }
        impl<'a, C: Coefficient> $tr<WeylOp<C>> for &'a WeylOp<C> {
            type Output = WeylOp<C>;
            fn $f(self, rhs: WeylOp<C>) -> WeylOp<C> {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned_op!(Add, add);
forward_owned_op!(Sub, sub);
forward_owned_op!(Mul, mul);

impl<C: Coefficient> Neg for WeylOp<C> {
    type Output = WeylOp<C>;
    fn neg(self) -> WeylOp<C> {
        -&self
    }
}

impl DOp {
    pub fn to_rational(&self) -> ROp {
        self.map_coeffs(&self.vars, |c| RatFun::from_poly(c.clone()))
    }

    /// Substitute parameter values by name.
    pub fn specialize(&self, spec: &[(&str, Rational)]) -> DOp {
        self.map_coeffs(&self.vars, |c| c.specialize(spec))
    }

    pub fn embed(&self, vars: &Vars) -> Result<DOp> {
        self.try_map_coeffs(vars, |c| c.embed(vars))
    }
}

impl ROp {
    /// The same operator with polynomial coefficients, if it has them.
    pub fn to_polynomial(&self) -> Option<DOp> {
        let mut out = DOp::zero(self.m, &self.vars);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c.as_poly()?.clone());
        }
        Some(out)
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> MPoly {
        self.terms.values().fold(MPoly::one(&self.vars), |acc, c| {
            crate::arith::poly_lcm(&acc, c.den())
        })
    }

    pub fn specialize(&self, spec: &[(&str, Rational)]) -> Result<ROp> {
        self.try_map_coeffs(&self.vars, |c| c.specialize(spec))
    }

    pub fn embed(&self, vars: &Vars) -> Result<ROp> {
        self.try_map_coeffs(vars, |c| c.embed(vars))
    }
}

impl<C: Coefficient> fmt::Debug for WeylOp<C>
where
    WeylOp<C>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOp({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops() -> (DOp, DOp) {
        let v = Vars::weyl(1);
        (DOp::d(1, &v, 0), DOp::x(1, &v, 0))
    }

    #[test]
    fn commutator() {
        let (d, x) = ops();
        let v = Vars::weyl(1);
        assert_eq!(&d * &x, &(&x * &d) + &DOp::one(1, &v));
    }

    #[test]
    fn second_order_exchange() {
        let (d, x) = ops();
        let lhs = &(&d * &d) * &x;
        let rhs = &(&x * &(&d * &d)) + &(&d).scale(&int(2));
        assert_eq!(lhs, rhs);
        assert_eq!(
            &x * &d,
            DOp::monomial(1, Monomial::from(vec![1]), MPoly::var(&Vars::weyl(1), 0))
        );
    }

    #[test]
    fn cross_commutators() {
        let v = Vars::weyl(3);
        for i in 0..3 {
            for j in 0..3 {
                let d = DOp::d(3, &v, i);
                let x = DOp::x(3, &v, j);
                let c = &(&d * &x) - &(&x * &d);
                if i == j {
                    assert_eq!(c, DOp::one(3, &v));
                } else {
                    assert!(c.is_zero());
                }
            }
        }
    }

    #[test]
    fn apply_to_function() {
        let v = Vars::weyl(1);
        let x = MPoly::var(&v, 0);
        let theta = &DOp::x(1, &v, 0) * &DOp::d(1, &v, 0);
        assert_eq!(theta.apply(&x.pow(3)), x.pow(3).scale(&int(3)));
    }
}
