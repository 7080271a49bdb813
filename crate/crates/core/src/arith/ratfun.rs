use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::{MPoly, Rational, Vars};
use crate::error::{Error, Result};

/// A reduced fraction of polynomials.
///
/// The denominator is coprime to the numerator and monic under graded lex,
/// so structurally equal values are equal as functions and vice versa.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

/// Which field operation [`ratfun_arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfun_arith(op: FracOp, r: &RatFun, s: &RatFun) -> Result<RatFun> {
    if r.vars() != s.vars() {
        return Err(Error::Structural("variable sets differ".into()));
    }
    Ok(match op {
        FracOp::Add => r + s,
        FracOp::Sub => r - s,
        FracOp::Mul => r * s,
        FracOp::Div => r.checked_div(s)?,
    })
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RatFun { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(MPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(MPoly::one(vars))
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(MPoly::constant(vars, c))
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::from_poly(MPoly::var(vars, i))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            let vars = num.vars().clone();
            return Self::zero(&vars);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: MPoly, den: MPoly) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFun {
        if self.is_polynomial() {
            return Self::from_poly(&self.num * p);
        }
        let g = poly_gcd(p, &self.den);
        if g.is_one() {
            return RatFun {
                num: &self.num * p,
                den: self.den.clone(),
            };
        }
        let p1 = p.div_exact(&g).expect("gcd divides");
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        Self::make_monic(&self.num * &p1, d1)
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> RatFun {
        RatFun {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn derivative(&self, i: usize) -> RatFun {
        let dn = self.num.derivative(i);
        if self.is_polynomial() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(i);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(top, &self.den * &self.den)
    }

    /// Set variable `i` to a rational value.
    pub fn eval_var(&self, i: usize, value: &Rational) -> Result<RatFun> {
        let den = self.den.eval_var(i, value);
        if den.is_zero() {
            return Err(Error::Evaluation(format!(
                "denominator {} vanishes at {} = {}",
                self.den,
                self.vars().name(i),
                value
            )));
        }
        Ok(Self::reduce(self.num.eval_var(i, value), den))
    }

    /// Substitute rational values by variable name; unknown names are ignored.
    pub fn specialize(&self, values: &[(&str, Rational)]) -> Result<RatFun> {
        let mut out = self.clone();
        for (name, v) in values {
            if let Some(i) = self.vars().index_of(name) {
                out = out.eval_var(i, v)?;
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(Error::Evaluation(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        Ok(self.num.evaluate(point) / d)
    }

    pub fn embed(&self, target: &Vars) -> Result<RatFun> {
        Ok(RatFun {
            num: self.num.embed(target)?,
            den: self.den.embed(target)?,
        })
    }

    pub fn to_text(&self) -> String {
        if self.is_polynomial() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.to_text())
    }
}

impl From<MPoly> for RatFun {
    fn from(p: MPoly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &'a RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.is_polynomial() {
                return RatFun::from_poly(&self.num + &rhs.num);
            }
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.is_polynomial() {
            return RatFun {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        if rhs.is_polynomial() {
            return RatFun {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            };
        }
        // Henrici: only the common part of the denominators can cancel.
        let g = poly_gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RatFun::zero(self.vars());
        }
        if g.is_one() {
            return RatFun::make_monic(num, &d1 * &d2);
        }
        let h = poly_gcd(&num, &g);
        if h.is_one() {
            return RatFun::make_monic(num, &(&d1 * &d2) * &g);
        }
        let num = num.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        RatFun::make_monic(num, &(&d1 * &d2) * &g)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &'a RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &'a RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.vars());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        if self.is_polynomial() {
            return rhs.mul_poly(&self.num);
        }
        if rhs.is_polynomial() {
            return self.mul_poly(&rhs.num);
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        RatFun::make_monic(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, rhs: &'a RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

super::mpoly::forward_owned!(Add, add, RatFun);
super::mpoly::forward_owned!(Sub, sub, RatFun);
super::mpoly::forward_owned!(Mul, mul, RatFun);
super::mpoly::forward_owned!(Div, div, RatFun);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RatFun {
        RatFun::var(&Vars::coords(2), i)
    }

    #[test]
    fn reciprocal_product() {
        let r = &x(0) / &x(1);
        let s = &x(1) / &x(0);
        assert!((&r * &s).is_one());
    }

    #[test]
    fn antisymmetric_sum() {
        let one = RatFun::one(&Vars::coords(2));
        let a = &one / &(&x(0) - &x(1));
        let b = &one / &(&x(1) - &x(0));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn partial_fraction_identity() {
        let one = RatFun::one(&Vars::coords(2));
        let diff = &x(0) - &x(1);
        let lhs = &(&x(1) / &diff) + &one;
        let rhs = &x(0) / &diff;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_by_zero() {
        let z = RatFun::zero(&Vars::coords(2));
        assert!(matches!(
            ratfun_arith(FracOp::Div, &x(0), &z),
            Err(Error::Arithmetic(_))
        ));
    }

    #[test]
    fn denominator_is_monic() {
        let r = &x(0) / &(&x(0).scale(&Rational::from_integer((-3).into())) + &x(1));
        assert!(r.den().lc().is_one());
    }

    #[test]
    fn quotient_rule() {
        let r = &x(0) / &x(1);
        let d = r.derivative(1);
        let expect = &(-&x(0)) / &(&x(1) * &x(1));
        assert_eq!(d, expect);
    }
}
