//! Exact arithmetic: rationals, sparse polynomials, rational functions and
//! linear algebra over a field.

mod gcd;
mod linalg;
mod monomial;
pub(crate) mod mpoly;
mod ratfun;
mod valuation;
mod vars;

pub use gcd::{poly_gcd, poly_gcd_many, poly_lcm};
pub use linalg::{rank, rref, solve_linear, verify_solution, Field, LinearSolution, Rref};
pub use monomial::Monomial;
pub use mpoly::{poly_arith, MPoly, PolyOp};
pub use ratfun::{ratfun_arith, FracOp, RatFun};
pub use valuation::{two_adic, valuation_at, Valuation};
pub use vars::Vars;

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parse `"p"` or `"p/q"` (optional sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&d) {
        return Err(Error::Arithmetic(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse() {
        assert_eq!(parse_rational("5/7").unwrap(), rat(5, 7));
        assert_eq!(parse_rational(" -2 ").unwrap(), int(-2));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
