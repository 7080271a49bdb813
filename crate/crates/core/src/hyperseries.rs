//! Truncated hypergeometric series of a matrix argument.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{int, rat, MPoly, Monomial, RatFun, Rational, Vars};
use crate::combinatorics::{enumerate_int_partitions, gen_pochhammer};
use crate::error::{Error, Result};
use crate::zonal::zonal_family;

/// A power series in `x1..xm` cut at total degree `n`.
///
/// Coefficients live in the parameter field `Q(a, c)`. Only degrees up to
/// `trusted` are known to be exact; `trusted = -1` means nothing is.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    m: usize,
    n: u32,
    trusted: i64,
    coeffs: BTreeMap<Monomial, RatFun>,
}

impl TruncSeries {
    pub fn new(m: usize, n: u32) -> Self {
        TruncSeries {
            m,
            n,
            trusted: n as i64,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; terms above `n` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, RatFun)>>(m: usize, n: u32, it: I) -> Self {
        let mut s = Self::new(m, n);
        for (e, c) in it {
            s.add_term(e, c);
        }
        s
    }

    /// A polynomial in `x1..xm` viewed as a series.
    pub fn from_poly(p: &MPoly, n: u32) -> Result<Self> {
        let m = p.vars().len();
        if p.vars() != &Vars::coords(m) {
            return Err(Error::Structural(
                "series from polynomial expects x1..xm".into(),
            ));
        }
        let params = Vars::params();
        Ok(Self::from_terms(
            m,
            n,
            p.terms()
                .iter()
                .map(|(e, c)| (e.clone(), RatFun::constant(&params, c.clone()))),
        ))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    pub fn trusted_degree(&self) -> i64 {
        self.trusted
    }

    pub fn with_trusted(mut self, t: i64) -> Self {
        self.trusted = t.min(self.n as i64).max(-1);
        self
    }

    pub fn coeffs(&self) -> &BTreeMap<Monomial, RatFun> {
        &self.coeffs
    }

    pub fn coeff(&self, e: &Monomial) -> RatFun {
        self.coeffs
            .get(e)
            .cloned()
            .unwrap_or_else(|| RatFun::zero(&Vars::params()))
    }

    pub fn add_term(&mut self, e: Monomial, c: RatFun) {
        debug_assert_eq!(e.len(), self.m);
        if c.is_zero() || e.degree() > self.n {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Coefficients in degrees `0..=trusted`.
    pub fn trusted_coeffs(&self) -> impl Iterator<Item = (&Monomial, &RatFun)> {
        let t = self.trusted;
        self.coeffs
            .iter()
            .filter(move |(e, _)| (e.degree() as i64) <= t)
    }

    /// True when every trusted coefficient vanishes.
    pub fn vanishes_through_trusted(&self) -> bool {
        self.trusted_coeffs().next().is_none()
    }

    /// Cut down to a smaller truncation degree.
    pub fn truncate(&self, n: u32) -> Self {
        let n = n.min(self.n);
        TruncSeries {
            m: self.m,
            n,
            trusted: self.trusted.min(n as i64),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.degree() <= n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn specialize(&self, spec: &[(&str, Rational)]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let v = c.specialize(spec)?;
            if !v.is_zero() {
                coeffs.insert(e.clone(), v);
            }
        }
        Ok(TruncSeries {
            coeffs,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = Self::new(self.m, self.n).with_trusted(self.trusted);
        for (e, v) in &self.coeffs {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Canonical text: the polynomial text when all coefficients are
    /// rational, otherwise `(coeff)*monomial` terms in descending order.
    pub fn to_text(&self) -> String {
        let coords = Vars::coords(self.m);
        if self.coeffs.values().all(|c| c.constant_value().is_some()) {
            let p = MPoly::from_terms(
                &coords,
                self.coeffs
                    .iter()
                    .map(|(e, c)| (e.clone(), c.constant_value().unwrap())),
            );
            return p.to_text();
        }
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = MPoly::monomial(&coords, e.clone(), Rational::one());
                if e.is_one() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.to_text())
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn sub(&self, other: &TruncSeries) -> Self {
        let mut out = self.clone();
        out.trusted = self.trusted.min(other.trusted);
        for (e, v) in &other.coeffs {
            out.add_term(e.clone(), -v);
        }
        out
    }
}

/// Upper and lower parameters of `pFq`.
#[derive(Clone, Debug)]
pub struct SeriesParams {
    pub upper: Vec<RatFun>,
    pub lower: Vec<RatFun>,
}

/// Convergence information recorded for reference; never enforced on
/// truncations, whose partial sums are polynomials.
pub fn convergence_note(p: usize, q: usize) -> &'static str {
    match p.cmp(&(q + 1)) {
        std::cmp::Ordering::Less => "converges for all X",
        std::cmp::Ordering::Equal => "converges for ||X|| < 1",
        std::cmp::Ordering::Greater => "diverges unless it terminates",
    }
}

impl SeriesParams {
    /// `1F1(a; c)` with symbolic parameters.
    pub fn f11() -> Self {
        let v = Vars::params();
        SeriesParams {
            upper: vec![RatFun::var(&v, 0)],
            lower: vec![RatFun::var(&v, 1)],
        }
    }

    /// `pFq` with `a` repeated `p` times above and `c` repeated `q` times below.
    pub fn symbolic(p: usize, q: usize) -> Self {
        let v = Vars::params();
        SeriesParams {
            upper: vec![RatFun::var(&v, 0); p],
            lower: vec![RatFun::var(&v, 1); q],
        }
    }

    /// Rejects constant lower parameters in the excluded set for dimension `m`.
    pub fn validate(&self, m: usize) -> Result<()> {
        for c in &self.lower {
            if let Some(v) = c.constant_value() {
                check_lower_parameter(&v, m)?;
            }
        }
        Ok(())
    }
}

/// `c ∉ −ℕ` for `m = 1`; `c ∉ {k/2 : k ∈ ℤ, k ≤ m−1}` for `m ≥ 2`.
pub fn check_lower_parameter(c: &Rational, m: usize) -> Result<()> {
    if m == 1 {
        if c.is_integer() && !c.is_positive() {
            return Err(Error::Parameter(format!(
                "lower parameter {c} is a non-positive integer (excluded for m = 1)"
            )));
        }
        return Ok(());
    }
    let twice = c * int(2);
    if twice.is_integer() && twice <= int(m as i64 - 1) {
        return Err(Error::Parameter(format!(
            "lower parameter {c} lies in {{k/2 : k <= {}}} (excluded for m = {m})",
            m - 1
        )));
    }
    Ok(())
}

/// Partial sum of `pFq` through total degree `n`, exact in the parameters.
pub fn truncated_pfq(params: &SeriesParams, m: usize, n: u32) -> Result<TruncSeries> {
    params.validate(m)?;
    let pv = Vars::params();
    let mut s = TruncSeries::new(m, n);
    let mut kfact = Rational::one();
    for k in 0..=n {
        if k > 0 {
            kfact *= int(k as i64);
        }
        let fam = zonal_family(k, m)?;
        let parts = enumerate_int_partitions(k, m);
        for lambda in parts {
            let mut coef = RatFun::constant(&pv, kfact.recip());
            for a in &params.upper {
                coef = &coef * &gen_pochhammer(a, &lambda);
            }
            for c in &params.lower {
                let d = gen_pochhammer(c, &lambda);
                if d.is_zero() {
                    return Err(Error::Parameter(format!(
                        "generalized Pochhammer ({c})_{lambda} vanishes"
                    )));
                }
                coef = coef.checked_div(&d)?;
            }
            if coef.is_zero() {
                continue;
            }
            let zonal = &fam.iter().find(|(l, _)| *l == lambda).expect("in family").1;
            for (e, z) in zonal.to_mpoly().terms() {
                s.add_term(e.clone(), coef.scale(z));
            }
        }
    }
    Ok(s)
}

/// Exact value of the partial sum at a rational point.
pub fn evaluate_series(
    s: &TruncSeries,
    point: &[Rational],
    spec: &[(&str, Rational)],
) -> Result<Rational> {
    if point.len() != s.m {
        return Err(Error::Structural(format!(
            "point has {} coordinates but m = {}",
            point.len(),
            s.m
        )));
    }
    let mut total = Rational::zero();
    for (e, c) in &s.coeffs {
        let v = c.specialize(spec)?;
        let v = v.constant_value().ok_or_else(|| {
            Error::Evaluation(format!("coefficient {v} still depends on parameters"))
        })?;
        let mut t = v;
        for (k, x) in e.exps().iter().zip(point) {
            if *k > 0 {
                t *= num_traits::pow(x.clone(), *k as usize);
            }
        }
        total += t;
    }
    Ok(total)
}

/// True iff the coefficients are invariant under permuting coordinates.
pub fn series_symmetrize_check(s: &TruncSeries) -> bool {
    (0..s.m.saturating_sub(1)).all(|i| {
        s.coeffs.iter().all(|(e, c)| {
            let mut f = e.clone();
            f.exps_mut().swap(i, i + 1);
            s.coeffs.get(&f) == Some(c)
        })
    })
}

/// Classical coefficient `(a)_n / ((c)_n n!)`, used as an oracle.
pub fn kummer_coefficient(n: u32) -> RatFun {
    let v = Vars::params();
    let (a, c) = (RatFun::var(&v, 0), RatFun::var(&v, 1));
    let mut out = RatFun::one(&v);
    for i in 0..n {
        let shift = RatFun::constant(&v, int(i as i64));
        out = &out * &(&a + &shift);
        out = &out / &(&c + &shift);
        out = out.scale(&rat(1, i as i64 + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kummer_m1() {
        let s = truncated_pfq(&SeriesParams::f11(), 1, 6).unwrap();
        for n in 0..=6u32 {
            assert_eq!(s.coeff(&Monomial::from(vec![n])), kummer_coefficient(n));
        }
    }

    #[test]
    fn constant_term_is_one() {
        for m in 1..=3 {
            let s = truncated_pfq(&SeriesParams::f11(), m, 2).unwrap();
            assert!(s.coeff(&Monomial::one(m)).is_one());
        }
    }

    #[test]
    fn mixed_coefficient_m2() {
        let s = truncated_pfq(&SeriesParams::f11(), 2, 2).unwrap();
        let v = Vars::params();
        let (a, c) = (RatFun::var(&v, 0), RatFun::var(&v, 1));
        let half = RatFun::constant(&v, rat(1, 2));
        // (a)_(1,1)/(c)_(1,1) · (4/3)/2! from C_(1,1) = (4/3) M_(1,1),
        // plus (a)_(2)/(c)_(2) · (2/3)/2! from C_(2,0).
        let one = RatFun::one(&v);
        let p11 = &(&a * &(&a - &half)) / &(&c * &(&c - &half));
        let p20 = &(&a * &(&a + &one)) / &(&c * &(&c + &one));
        let want = &p11.scale(&rat(2, 3)) + &p20.scale(&rat(1, 3));
        assert_eq!(s.coeff(&Monomial::from(vec![1, 1])), want);
    }

    #[test]
    fn exponential_when_a_equals_c() {
        let s = truncated_pfq(&SeriesParams::f11(), 1, 6).unwrap();
        let x = rat(1, 2);
        let got = evaluate_series(&s, &[x.clone()], &[("a", rat(3, 5)), ("c", rat(3, 5))]).unwrap();
        let mut want = Rational::zero();
        let mut term = Rational::one();
        for n in 0..=6i64 {
            if n > 0 {
                term = term * &x / int(n);
            }
            want += &term;
        }
        assert_eq!(got, want);
    }

    #[test]
    fn evaluate_at_zero_and_symmetry() {
        let s = truncated_pfq(&SeriesParams::f11(), 2, 4).unwrap();
        let spec = [("a", rat(1, 3)), ("c", rat(5, 7))];
        assert_eq!(
            evaluate_series(&s, &[rat(0, 1), rat(0, 1)], &spec).unwrap(),
            Rational::one()
        );
        let p = evaluate_series(&s, &[rat(1, 2), rat(1, 4)], &spec).unwrap();
        let q = evaluate_series(&s, &[rat(1, 4), rat(1, 2)], &spec).unwrap();
        assert_eq!(p, q);
        assert!(series_symmetrize_check(&s));
    }

    #[test]
    fn asymmetric_series() {
        let v = Vars::params();
        let s = TruncSeries::from_terms(2, 3, [(Monomial::from(vec![1, 0]), RatFun::one(&v))]);
        assert!(!series_symmetrize_check(&s));
        let k = TruncSeries::from_terms(2, 3, [(Monomial::one(2), RatFun::one(&v))]);
        assert!(series_symmetrize_check(&k));
    }

    #[test]
    fn excluded_parameters() {
        let v = Vars::params();
        let bad = |c: Rational, m| {
            SeriesParams {
                upper: vec![RatFun::var(&v, 0)],
                lower: vec![RatFun::constant(&v, c)],
            }
            .validate(m)
        };
        assert!(matches!(bad(int(-2), 1), Err(Error::Parameter(_))));
        assert!(bad(rat(1, 2), 1).is_ok());
        assert!(matches!(bad(rat(1, 2), 2), Err(Error::Parameter(_))));
        assert!(matches!(bad(int(-3), 3), Err(Error::Parameter(_))));
        assert!(bad(rat(3, 2), 2).is_ok());
        assert!(bad(rat(5, 7), 10).is_ok());
    }
}
