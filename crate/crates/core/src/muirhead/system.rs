use serde::Serialize;

use crate::arith::{rat, MPoly, RatFun, Rational, Vars};
use crate::error::{Error, Result};
use crate::hyperseries::{truncated_pfq, SeriesParams};
use crate::par::par_map;
use crate::weyl::{apply_to_series, DOp, ROp};

fn check_index(k: usize, m: usize) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::Structural(format!("index {k} out of range 1..={m}")));
    }
    Ok(())
}

fn x(vars: &Vars, i: usize) -> MPoly {
    MPoly::var(vars, i)
}

/// `g_k = x_k ∂_k² + (c − x_k) ∂_k + ½ Σ_{ℓ≠k} x_ℓ/(x_k − x_ℓ) (∂_k − ∂_ℓ) − a`.
pub fn muirhead_g(k: usize, m: usize) -> Result<ROp> {
    check_index(k, m)?;
    let v = Vars::weyl(m);
    let k = k - 1;
    let (a, c) = (MPoly::var(&v, m), MPoly::var(&v, m + 1));
    let dk = ROp::d(m, &v, k);
    let mut g = &ROp::from_coeff(m, RatFun::from_poly(x(&v, k))) * &(&dk * &dk);
    g = &g + &(&ROp::from_coeff(m, RatFun::from_poly(&c - &x(&v, k))) * &dk);
    for l in (0..m).filter(|&l| l != k) {
        let f = RatFun::new(x(&v, l).scale(&rat(1, 2)), &x(&v, k) - &x(&v, l))?;
        g = &g + &(&ROp::from_coeff(m, f) * &(&dk - &ROp::d(m, &v, l)));
    }
    g = &g - &ROp::from_coeff(m, RatFun::from_poly(a));
    Ok(g)
}

/// `∏_{ℓ≠k} (x_k − x_ℓ)`.
pub fn vandermonde_factor(k: usize, m: usize) -> MPoly {
    let v = Vars::weyl(m);
    (0..m)
        .filter(|&l| l != k - 1)
        .fold(MPoly::one(&v), |acc, l| &acc * &(&x(&v, k - 1) - &x(&v, l)))
}

/// `P_k = ∏_{ℓ≠k} (x_k − x_ℓ) · g_k`, checked to be denominator-free.
pub fn muirhead_p(k: usize, m: usize) -> Result<DOp> {
    let g = muirhead_g(k, m)?;
    let f = RatFun::from_poly(vandermonde_factor(k, m));
    g.left_mul_coeff(&f)
        .to_polynomial()
        .ok_or_else(|| Error::Internal(format!("P_{k} kept a denominator")))
}

/// `S_ij = x_j ∏_{k≠i,j}(x_j − x_k) ∂_j² P_i + x_i ∏_{k≠i,j}(x_i − x_k) ∂_i² P_j`.
pub fn s_pair_op(i: usize, j: usize, m: usize) -> Result<DOp> {
    check_index(i, m)?;
    check_index(j, m)?;
    if i == j {
        return Err(Error::Structural("S-pair needs i != j".into()));
    }
    let v = Vars::weyl(m);
    let cof = |p: usize, q: usize| {
        (0..m)
            .filter(|&k| k != p - 1 && k != q - 1)
            .fold(x(&v, p - 1), |acc, k| &acc * &(&x(&v, p - 1) - &x(&v, k)))
    };
    let dd = |p: usize| {
        let d = DOp::d(m, &v, p - 1);
        &d * &d
    };
    let left = &DOp::from_coeff(m, cof(j, i)) * &(&dd(j) * &muirhead_p(i, m)?);
    let right = &DOp::from_coeff(m, cof(i, j)) * &(&dd(i) * &muirhead_p(j, m)?);
    Ok(&left + &right)
}

/// The generators `g_k` and their denominator-free forms `P_k`.
#[derive(Clone, Debug)]
pub struct MuirheadSystem {
    pub m: usize,
    pub g: Vec<ROp>,
    pub p: Vec<DOp>,
}

impl MuirheadSystem {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Structural("m must be at least 1".into()));
        }
        let g = (1..=m)
            .map(|k| muirhead_g(k, m))
            .collect::<Result<Vec<_>>>()?;
        let p = (1..=m)
            .map(|k| muirhead_p(k, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(MuirheadSystem { m, g, p })
    }

    /// Substitute values for `a` and/or `c`.
    pub fn specialize(&self, spec: &[(&str, Rational)]) -> Result<Self> {
        Ok(MuirheadSystem {
            m: self.m,
            g: self
                .g
                .iter()
                .map(|g| g.specialize(spec))
                .collect::<Result<_>>()?,
            p: self.p.iter().map(|p| p.specialize(spec)).collect(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationItem {
    pub k: usize,
    pub trusted_degree: i64,
    pub nonzero_trusted_coefficients: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationReport {
    pub m: usize,
    pub degree: u32,
    pub symbolic: bool,
    pub items: Vec<AnnihilationItem>,
}

impl AnnihilationReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

/// Apply each `P_k` to the truncated `1F1` and check exact vanishing
/// through the trusted degree.
pub fn verify_annihilation(
    m: usize,
    n: u32,
    spec: Option<&[(&str, Rational)]>,
) -> Result<AnnihilationReport> {
    if n < 2 {
        return Err(Error::Domain("annihilation check needs degree >= 2".into()));
    }
    let sys = MuirheadSystem::new(m)?;
    let mut series = truncated_pfq(&SeriesParams::f11(), m, n)?;
    let sys = match spec {
        Some(s) => {
            series = series.specialize(s)?;
            sys.specialize(s)?
        }
        None => sys,
    };
    let ks: Vec<usize> = (1..=m).collect();
    let items = par_map(&ks, |&k| -> Result<AnnihilationItem> {
        let out = apply_to_series(&sys.p[k - 1], &series)?;
        let bad = out.trusted_coeffs().count();
        Ok(AnnihilationItem {
            k,
            trusted_degree: out.trusted_degree(),
            nonzero_trusted_coefficients: bad,
            pass: bad == 0 && out.trusted_degree() >= 0,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(AnnihilationReport {
        m,
        degree: n,
        symbolic: spec.is_none(),
        items,
    })
}

/// Default generic parameter instance.
pub fn default_spec() -> Vec<(&'static str, Rational)> {
    vec![("a", rat(1, 3)), ("c", rat(5, 7))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{parse_dop, parse_rop, symbol};

    #[test]
    fn kummer_operator() {
        let g = muirhead_g(1, 1).unwrap();
        assert_eq!(g, parse_rop("x1*d1^2 + (c - x1)*d1 - a", 1).unwrap());
        assert_eq!(muirhead_p(1, 1).unwrap().to_rational(), g);
    }

    #[test]
    fn m2_against_original_form() {
        // x_k/(x_k − x_ℓ) = 1 + x_ℓ/(x_k − x_ℓ) turns the ½ x_k/(x_k−x_ℓ)
        // form into the one used here.
        let g = muirhead_g(1, 2).unwrap();
        let orig = parse_rop(
            "x1*d1^2 + (c - 1/2 - x1)*d1 + 1/2*x1/(x1-x2)*d1 - 1/2*x2/(x1-x2)*d2 - a",
            2,
        )
        .unwrap();
        assert_eq!(g, orig);
    }

    #[test]
    fn difference_is_polynomial() {
        let d = &muirhead_g(1, 2).unwrap() - &muirhead_g(2, 2).unwrap();
        let want = parse_dop(
            "x1*d1^2 - x2*d2^2 - x1*d1 + x2*d2 + (c - 1/2)*d1 - (c - 1/2)*d2",
            2,
        )
        .unwrap();
        assert_eq!(d.to_polynomial().unwrap(), want);
    }

    #[test]
    fn symbols_of_p() {
        let s = symbol(&muirhead_p(1, 2).unwrap()).unwrap();
        assert_eq!(s.to_text(), "x1^2*xi1^2 - x1*x2*xi1^2");
        let s = symbol(&muirhead_p(2, 3).unwrap()).unwrap();
        let v = Vars::phase(3);
        let xv = |i| MPoly::var(&v, i);
        let want = &(&(&xv(1) * &(&xv(1) - &xv(0))) * &(&xv(1) - &xv(2))) * &(&xv(4) * &xv(4));
        assert_eq!(s, want);
    }

    #[test]
    fn s_pair_rejects_diagonal() {
        assert!(s_pair_op(1, 1, 2).is_err());
        assert!(muirhead_g(3, 2).is_err());
    }

    #[test]
    fn annihilation_small() {
        assert!(verify_annihilation(1, 6, None).unwrap().all_pass());
        let spec = default_spec();
        assert!(verify_annihilation(2, 5, Some(&spec)).unwrap().all_pass());
    }
}
