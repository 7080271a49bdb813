use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MPoly, Monomial, Rational};

/// Greatest common divisor over the rationals, made monic under graded lex.
///
/// `gcd(0, 0) = 0`. Works recursively: monomial content first, then a
/// content/primitive-part split in one variable followed by a primitive
/// pseudo-remainder sequence.
pub fn poly_gcd(p: &MPoly, q: &MPoly) -> MPoly {
    assert_eq!(p.vars(), q.vars(), "variable set mismatch");
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one(p.vars());
    }
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    let mono = mp.gcd(&mq);
    let p1 = p.div_monomial(&mp).expect("monomial content divides");
    let q1 = q.div_monomial(&mq).expect("monomial content divides");
    let g = gcd_core(&p1, &q1);
    g.mul_monomial(&mono, &Rational::one()).monic()
}

/// Gcd of an arbitrary list; zero for an empty list.
pub fn poly_gcd_many<'a, I: IntoIterator<Item = &'a MPoly>>(vars: &super::Vars, it: I) -> MPoly {
    let mut g = MPoly::zero(vars);
    for p in it {
        g = poly_gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_core(p: &MPoly, q: &MPoly) -> MPoly {
    let vars = p.vars();
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one(vars);
    }
    let (small, big) = if p.nterms() <= q.nterms() {
        (p, q)
    } else {
        (q, p)
    };
    if big.div_exact(small).is_some() {
        return small.monic();
    }
    let up = p.used_vars();
    let uq = q.used_vars();
    // A variable present in only one argument cannot occur in the gcd.
    for v in 0..vars.len() {
        if up[v] != uq[v] {
            let (with, without) = if up[v] { (p, q) } else { (q, p) };
            let mut g = without.clone();
            for coeff in with.coefficients_in(v).values() {
                g = poly_gcd(&g, coeff);
                if g.is_one() {
                    break;
                }
            }
            return g.monic();
        }
    }
    // Same support: pick the variable of least degree as main variable.
    let v = (0..vars.len())
        .filter(|&v| up[v])
        .min_by_key(|&v| (p.degree_in(v).max(q.degree_in(v)), v))
        .expect("non-constant polynomial uses a variable");
    let (cp, pp) = split_content(p, v);
    let (cq, pq) = split_content(q, v);
    let content = poly_gcd(&cp, &cq);
    let prim = prs_gcd(integer_primitive(&pp), integer_primitive(&pq), v);
    (&content * &prim).monic()
}

/// Content with respect to `v` and the primitive part.
fn split_content(p: &MPoly, v: usize) -> (MPoly, MPoly) {
    let coeffs = p.coefficients_in(v);
    let content = poly_gcd_many(p.vars(), coeffs.values());
    if content.is_one() {
        return (content, p.clone());
    }
    let prim = p.div_exact(&content).expect("content divides");
    (content, prim)
}

fn lead_in(p: &MPoly, v: usize) -> (u32, MPoly) {
    let coeffs = p.coefficients_in(v);
    let (d, c) = coeffs.into_iter().next_back().expect("nonzero");
    (d, c)
}

/// Sparse pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let (db, lb) = lead_in(b, v);
    let mut r = a.clone();
    let n = a.vars().len();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < db {
            break;
        }
        let lr = r.coefficients_in(v).remove(&dr).expect("degree present");
        let shift = Monomial::unit(n, v, dr - db);
        let lhs = &lb * &r;
        let mut rhs = &lr * b;
        rhs = rhs.mul_monomial(&shift, &Rational::one());
        r = &lhs - &rhs;
    }
    r
}

fn prs_gcd(a: MPoly, b: MPoly, v: usize) -> MPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.is_zero() {
            return a.monic();
        }
        if b.degree_in(v) == 0 {
            return MPoly::one(a.vars());
        }
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        let (_, pr) = split_content(&r, v);
        a = b;
        b = integer_primitive(&pr);
    }
}

/// Scale to integer coefficients with no common factor, which keeps the
/// pseudo-remainder sequence from blowing up.
fn integer_primitive(p: &MPoly) -> MPoly {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in p.terms().values() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return p.clone();
    }
    p.scale(&Rational::new(den, num))
}

/// Least common multiple, monic.
pub fn poly_lcm(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero(p.vars());
    }
    let g = poly_gcd(p, q);
    (p * &q.div_exact(&g).expect("gcd divides")).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Vars};

    fn x(i: usize) -> MPoly {
        MPoly::var(&Vars::coords(3), i)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let q = &x(0) - &x(1);
        assert_eq!(poly_gcd(&p, &q), q);
    }

    #[test]
    fn with_one() {
        let p = &x(0) + &x(2);
        assert!(poly_gcd(&p, &MPoly::one(p.vars())).is_one());
    }

    #[test]
    fn scalar_multiples() {
        let p = x(0).scale(&rat(2, 1));
        let q = (&x(0) * &x(0)).scale(&rat(4, 1));
        assert_eq!(poly_gcd(&p, &q), x(0));
    }

    #[test]
    fn zero_zero() {
        let z = MPoly::zero(&Vars::coords(2));
        assert!(poly_gcd(&z, &z).is_zero());
    }

    #[test]
    fn shared_factor_in_three_variables() {
        let f = &(&x(0) - &x(1)) * &(&x(2) + &MPoly::from_int(x(0).vars(), 1));
        let g1 = &f * &(&x(0) + &x(1));
        let g2 = &f * &(&x(1) * &x(2) - &x(0));
        assert_eq!(poly_gcd(&g1, &g2), f.monic());
    }
}
