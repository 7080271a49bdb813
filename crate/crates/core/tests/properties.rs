use proptest::prelude::*;

use muirhead_lab::arith::{
    int, rat, solve_linear, two_adic, valuation_at, verify_solution, MPoly, Monomial, RatFun,
    Rational, Valuation, Vars,
};
use muirhead_lab::charvar::{enumerate_components, vanishes_on, Kind};
use muirhead_lab::combinatorics::{
    bell_number, enumerate_set_partitions, gen_pochhammer, pochhammer, IntPartition, SetPartition,
};
use muirhead_lab::hyperseries::{series_symmetrize_check, truncated_pfq, SeriesParams};
use muirhead_lab::muirhead::{muirhead_g, muirhead_p, rweyl_reduce, vandermonde_factor, DOrder};
use muirhead_lab::solutions::trunc_kernel;
use muirhead_lab::weyl::{
    init_w, restrict_xm0, symbol, theta_form, theta_to_weyl, DOp, GrElement, WeightVector,
};
use muirhead_lab::zonal::verify_zonal_axioms;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| *r != int(0))
}

/// Polynomials in `x1, x2` of degree at most 3 per variable.
fn poly2() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..=3, 0u32..=3), small_rat()), 0..5).prop_map(|ts| {
        let v = Vars::coords(2);
        MPoly::from_terms(
            &v,
            ts.into_iter()
                .map(|((a, b), c)| (Monomial::from_slice(&[a, b]), c)),
        )
    })
}

fn nonzero_poly2() -> impl Strategy<Value = MPoly> {
    poly2().prop_filter("nonzero", |p| !p.is_zero())
}

/// Operators in two variables with coefficients in `x1, x2, a, c`.
fn dop2() -> impl Strategy<Value = DOp> {
    let term = (
        (0u32..=2, 0u32..=2, 0u32..=1, 0u32..=1),
        (0u32..=2, 0u32..=2),
        small_rat(),
    );
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let v = Vars::weyl(2);
        let mut out = DOp::zero(2, &v);
        for ((x1, x2, a, c), (d1, d2), r) in ts {
            let coeff = MPoly::monomial(&v, Monomial::from_slice(&[x1, x2, a, c]), r);
            out.add_term(Monomial::from_slice(&[d1, d2]), coeff);
        }
        out
    })
}

fn lift(p: &MPoly) -> MPoly {
    p.embed(&Vars::weyl(2))
        .expect("coords embed into the operator ring")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fractions_are_canonical(p in poly2(), q in nonzero_poly2(), r in poly2(), s in nonzero_poly2()) {
        let f = RatFun::new(p.clone(), q.clone()).unwrap();
        let g = RatFun::new(r.clone(), s.clone()).unwrap();
        let prod = RatFun::new(&p * &r, &q * &s).unwrap();
        prop_assert_eq!(&f * &g, prod);
        let sum = RatFun::new(&(&p * &s) + &(&r * &q), &q * &s).unwrap();
        prop_assert_eq!(&f + &g, sum);
    }

    #[test]
    fn valuation_axioms(p in nonzero_poly2(), q in nonzero_poly2(), r in nonzero_poly2(), s in nonzero_poly2()) {
        let f = RatFun::new(p, q).unwrap();
        let g = RatFun::new(r, s).unwrap();
        prop_assert_eq!(valuation_at(&(&f * &g), 0), valuation_at(&f, 0) + valuation_at(&g, 0));
        prop_assert!(valuation_at(&(&f + &g), 0) >= valuation_at(&f, 0).min(valuation_at(&g, 0)));
    }

    #[test]
    fn two_adic_is_additive(a in nonzero_rat(), b in nonzero_rat()) {
        prop_assert_eq!(two_adic(&(&a * &b)), two_adic(&a) + two_adic(&b));
        prop_assert_eq!(two_adic(&int(0)), Valuation::Infinite);
    }

    #[test]
    fn linear_solutions_substitute(a in prop::collection::vec(prop::collection::vec(small_rat(), 4), 1..5),
                                   b in prop::collection::vec(small_rat(), 5)) {
        let b = b[..a.len()].to_vec();
        let sol = solve_linear(&a, &b, &int(0)).unwrap();
        prop_assert!(verify_solution(&a, &b, &sol, &int(0)));
        prop_assert_eq!(sol.rank + sol.kernel.len(), 4);
    }

    #[test]
    fn weyl_product_is_associative(p in dop2(), q in dop2(), r in dop2()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn symbols_multiply(p in dop2(), q in dop2()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let pq = symbol(&(&p * &q)).unwrap();
        prop_assert_eq!(pq, &symbol(&p).unwrap() * &symbol(&q).unwrap());
    }

    #[test]
    fn action_is_compatible(p in dop2(), q in dop2(), f in poly2()) {
        let f = lift(&f);
        prop_assert_eq!((&p * &q).apply(&f), p.apply(&q.apply(&f)));
    }

    #[test]
    fn theta_round_trip(ts in prop::collection::vec(((0u32..=3, 0u32..=3), small_rat()), 0..5)) {
        let v = Vars::weyl(2);
        let mut p = DOp::zero(2, &v);
        for ((b1, b2), r) in ts {
            let x = MPoly::monomial(&v, Monomial::from_slice(&[b1, b2, 0, 0]), r);
            p.add_term(Monomial::from_slice(&[b1, b2]), x);
        }
        let t = theta_form(&p).expect("torus-invariant operator");
        prop_assert_eq!(theta_to_weyl(&t, 2).unwrap(), p);
    }

    #[test]
    fn restriction_kills_xm_and_is_additive(p in dop2(), q in dop2()) {
        let v = Vars::weyl(2);
        let xm = DOp::x(2, &v, 1);
        prop_assert!(restrict_xm0(&(&xm * &p)).unwrap().is_zero());
        let sum = restrict_xm0(&(&p + &q)).unwrap();
        prop_assert_eq!(sum, restrict_xm0(&p).unwrap().add(&restrict_xm0(&q).unwrap()));
    }

    #[test]
    fn division_identity(p in dop2()) {
        let spec = [("a", rat(1, 3)), ("c", rat(5, 7))];
        let basis: Vec<_> = (1..=2).map(|k| muirhead_g(k, 2).unwrap().specialize(&spec).unwrap()).collect();
        let p = p.specialize(&spec).to_rational();
        let d = rweyl_reduce(&p, &basis, DOrder::Grlex).unwrap();
        prop_assert!(d.verify(&p, &basis));
        for (b, _) in d.remainder.terms() {
            prop_assert!(b.exps().iter().all(|&e| e <= 1));
        }
    }

    #[test]
    fn pochhammer_agrees(n in 0u32..8, m in 1usize..4) {
        let base = RatFun::var(&Vars::params(), 0);
        let mut parts = vec![0; m];
        parts[0] = n;
        prop_assert_eq!(gen_pochhammer(&base, &IntPartition::new(parts)), pochhammer(&base, n));
    }
}

#[test]
fn commutator_relations() {
    for m in 1..=3 {
        let v = Vars::weyl(m);
        for i in 0..m {
            for j in 0..m {
                let (d, x) = (DOp::d(m, &v, i), DOp::x(m, &v, j));
                let c = &(&d * &x) - &(&x * &d);
                let want = if i == j {
                    DOp::one(m, &v)
                } else {
                    DOp::zero(m, &v)
                };
                assert_eq!(c, want);
            }
        }
    }
}

#[test]
fn set_partition_counts_and_bijection() {
    for m in 1..=7 {
        let all = enumerate_set_partitions(m);
        assert_eq!(bell_number(m + 1), (all.len() as u32).into());
        if m <= 5 {
            for sp in all {
                let back =
                    SetPartition::from_partition_of_zero_to_m(m, &sp.to_partition_of_zero_to_m())
                        .unwrap();
                assert_eq!(back, sp);
            }
        }
    }
}

#[test]
fn zonal_summation_degree_six() {
    for m in 1..=4 {
        let r = verify_zonal_axioms(6, m).unwrap();
        assert!(r.all_pass(), "m={m}");
    }
}

#[test]
fn series_consistency_and_symmetry() {
    for m in 1..=4 {
        let n = if m <= 2 { 6 } else { 5 };
        let big = truncated_pfq(&SeriesParams::f11(), m, n).unwrap();
        assert!(series_symmetrize_check(&big));
        let small = truncated_pfq(&SeriesParams::f11(), m, n - 1).unwrap();
        assert_eq!(big.truncate(n - 1).coeffs(), small.coeffs());
    }
}

#[test]
fn p_is_cleared_g() {
    for m in 1..=5 {
        for k in 1..=m {
            let g = muirhead_g(k, m).unwrap();
            let f = RatFun::from_poly(vandermonde_factor(k, m));
            assert_eq!(
                muirhead_p(k, m).unwrap().to_rational(),
                g.left_mul_coeff(&f)
            );
        }
    }
}

#[test]
fn muirhead_system_is_equivariant() {
    for m in 2..=4 {
        for i in 0..m {
            for j in i + 1..m {
                let mut sigma: Vec<usize> = (0..m).collect();
                sigma.swap(i, j);
                for k in 0..m {
                    let moved = muirhead_p(k + 1, m).unwrap().permute(&sigma);
                    assert_eq!(moved, muirhead_p(sigma[k] + 1, m).unwrap());
                }
            }
        }
    }
}

#[test]
fn components_are_distinct_linear_spaces() {
    for m in 1..=4 {
        let comps = enumerate_components(m, Kind::C).unwrap();
        let mut spans = std::collections::BTreeSet::new();
        for c in &comps {
            assert_eq!(c.rank, m);
            assert!(c.is_conormal());
            let hat = muirhead_lab::charvar::component(&c.label, Kind::Chat);
            for f in &hat.forms {
                assert!(
                    vanishes_on(f, c).unwrap(),
                    "C not inside Chat at {}",
                    c.label
                );
            }
            spans.insert(c.form_set());
        }
        assert_eq!(spans.len(), comps.len());
    }
}

#[test]
fn initial_system_has_larger_kernel() {
    let spec = [("a", rat(1, 3)), ("c", rat(5, 7))];
    let ops: Vec<DOp> = (1..=2)
        .map(|k| muirhead_p(k, 2).unwrap().specialize(&spec))
        .collect();
    let full = trunc_kernel(&ops, 2, 4, None).unwrap().dimension();
    for u in [[1, 1], [1, 2], [2, 1], [0, 1]] {
        let u: Vec<Rational> = u.iter().map(|&x| int(x)).collect();
        let w = WeightVector::new(u.iter().map(|x| -x).collect(), u.clone()).unwrap();
        let init: Vec<DOp> = ops
            .iter()
            .map(|p| match init_w(p, &w).unwrap() {
                GrElement::Weyl(q) => q,
                GrElement::Commutative(_) => unreachable!(),
            })
            .collect();
        let ini = trunc_kernel(&init, 2, 4, None).unwrap().dimension();
        assert!(full <= ini, "u={u:?}: {full} > {ini}");
    }
}

#[test]
fn partition_of_point() {
    let sp = SetPartition::of_point(&[int(0), int(2), int(2)]);
    assert_eq!(sp.j0(), &[1]);
    assert_eq!(sp.blocks(), &[vec![2, 3]]);
}
