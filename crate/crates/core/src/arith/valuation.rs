use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{MPoly, RatFun, Rational};

/// A discrete valuation value: an integer or `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

fn poly_order(p: &MPoly, var: usize) -> i64 {
    p.terms()
        .keys()
        .map(|m| m.exps()[var] as i64)
        .min()
        .unwrap_or(0)
}

/// Order of vanishing along `var = 0`; negative for a pole.
pub fn valuation_at(p: &RatFun, var: usize) -> Valuation {
    if p.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(poly_order(p.num(), var) - poly_order(p.den(), var))
}

fn int_two_adic(n: &BigInt) -> i64 {
    let two = BigInt::from(2);
    let mut n = n.abs();
    let mut k = 0;
    while n.is_even() && !n.is_zero() {
        n /= &two;
        k += 1;
    }
    k
}

/// The 2-adic valuation of a rational number.
pub fn two_adic(r: &Rational) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(int_two_adic(r.numer()) - int_two_adic(r.denom()))
}
