//! The twelve acceptance criteria, one pass/fail line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use muirhead_lab::arith::{int, rat, rref, MPoly, RatFun, Rational, Vars};
use muirhead_lab::charvar::{
    component, enumerate_components, lower_bound_check, sample_points, upper_bound_fiber_check,
    Kind,
};
use muirhead_lab::combinatorics::{
    bell_number, enumerate_int_partitions, enumerate_set_partitions, IntPartition,
};
use muirhead_lab::hyperseries::{truncated_pfq, SeriesParams};
use muirhead_lab::muirhead::{
    holonomic_rank, muirhead_g, muirhead_groebner, muirhead_p, s_pair_op, s_pair_reductions,
    verify_annihilation, weyl_closure_witness, Rank,
};
use muirhead_lab::restriction::{
    hr_sequence, qbar_cross_check, restr_generators, restriction_rank_bound, special_c, QbarForm,
};
use muirhead_lab::solutions::{diagonal_point_check, uniqueness_check, zero_point_check};
use muirhead_lab::weyl::{parse_dop, symbol};
use muirhead_lab::zonal::{verify_zonal_axioms, zonal_poly};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn c1_zonal() -> Result<(), String> {
    for m in 1..=4 {
        for d in 0..=5 {
            let r = verify_zonal_axioms(d, m).map_err(e)?;
            ensure(r.all_pass(), format!("m={m} d={d}"))?;
            ensure(
                r.entries.len() == enumerate_int_partitions(d, m).len(),
                "partition count",
            )?;
        }
    }
    // C_(2) = x1² + x2² + 2/3 x1x2, C_(1,1) = 4/3 x1x2
    let v = Vars::coords(2);
    let (x1, x2) = (MPoly::var(&v, 0), MPoly::var(&v, 1));
    let c2 = zonal_poly(&IntPartition::new(vec![2, 0]), 2)
        .map_err(e)?
        .to_mpoly();
    let want = &(&(&x1 * &x1) + &(&x2 * &x2)) + &(&x1 * &x2).scale(&rat(2, 3));
    ensure(c2 == want, format!("C_(2) = {c2}"))?;
    let c11 = zonal_poly(&IntPartition::new(vec![1, 1]), 2)
        .map_err(e)?
        .to_mpoly();
    ensure(
        c11 == (&x1 * &x2).scale(&rat(4, 3)),
        format!("C_(1,1) = {c11}"),
    )
}

fn c2_classical() -> Result<(), String> {
    let s = truncated_pfq(&SeriesParams::f11(), 1, 12).map_err(e)?;
    let v = Vars::params();
    let (a, c) = (RatFun::var(&v, 0), RatFun::var(&v, 1));
    let mut want = RatFun::one(&v);
    for n in 0..=12u32 {
        let got = s.coeff(&muirhead_lab::arith::Monomial::from_slice(&[n]));
        let got = got.embed(&v).map_err(e)?;
        ensure(got == want, format!("n={n}: {got} vs {want}"))?;
        let k = RatFun::constant(&v, int(n as i64));
        want = &(&want * &(&a + &k)) / &(&c + &k);
        want = want.scale(&rat(1, n as i64 + 1));
    }
    Ok(())
}

fn c3_annihilation() -> Result<(), String> {
    for (m, n) in [(1, 8), (2, 8), (3, 6)] {
        let r = verify_annihilation(m, n, None).map_err(e)?;
        ensure(r.all_pass(), format!("m={m}: {:?}", r.items))?;
    }
    Ok(())
}

fn c4_groebner() -> Result<(), String> {
    for m in 2..=3usize {
        let gb = muirhead_groebner(m, None).map_err(e)?;
        ensure(gb.input_unchanged, format!("m={m}: basis grew"))?;
        ensure(
            holonomic_rank(&gb) == Rank::Finite(1 << m),
            format!("m={m}: rank"),
        )?;
        let std = gb.standard_monomials.clone().unwrap_or_default();
        ensure(
            std.iter().all(|t| t.exps().iter().all(|&x| x <= 1)),
            "standard monomials not squarefree",
        )?;
        let pairs = s_pair_reductions(m, None).map_err(e)?;
        let s12 = pairs
            .iter()
            .find(|p| (p.i, p.j) == (1, 2))
            .ok_or("no S12 record")?;
        ensure(
            s12.reduced_to_zero,
            format!("m={m}: S12 did not reduce to zero"),
        )?;
    }
    Ok(())
}

fn c5_symbols() -> Result<(), String> {
    for m in 1..=4usize {
        let v = Vars::phase(m);
        let x = |i: usize| MPoly::var(&v, i - 1);
        let xi = |i: usize| MPoly::var(&v, m + i - 1);
        for i in 1..=m {
            let mut want = &x(i) * &(&xi(i) * &xi(i));
            for j in (1..=m).filter(|&j| j != i) {
                want = &want * &(&x(i) - &x(j));
            }
            let got = symbol(&muirhead_p(i, m).map_err(e)?).map_err(e)?;
            ensure(got == want, format!("symbol(P{i}) for m={m}: {got}"))?;
        }
    }
    for m in 2..=3usize {
        let v = Vars::phase(m);
        let x = |i: usize| MPoly::var(&v, i - 1);
        let xi = |i: usize| MPoly::var(&v, m + i - 1);
        for i in 1..=m {
            for j in i + 1..=m {
                let t = &xi(i) + &xi(j);
                let mut want = (&(&x(i) * &x(j)) * &(&t * &(&t * &t))).scale(&rat(-1, 2));
                for p in (1..=m).filter(|&p| p != i && p != j) {
                    want = &want * &(&(&x(i) - &x(p)) * &(&x(j) - &x(p)));
                }
                let got = symbol(&s_pair_op(i, j, m).map_err(e)?).map_err(e)?;
                let diff = &got - &want;
                // divisible by x_i − x_j iff it vanishes at x_i = x_j
                ensure(
                    diff.substitute(i - 1, &x(j)).is_zero(),
                    format!("S{i}{j} for m={m}"),
                )?;
            }
        }
    }
    Ok(())
}

/// A form like `x1-x2` or `xi1+xi2+xi3` over `Vars::phase(m)`.
fn form(text: &str, m: usize) -> MPoly {
    let v = Vars::phase(m);
    let mut out = MPoly::zero(&v);
    for tok in text.replace('-', "+-").split('+').filter(|t| !t.is_empty()) {
        let (neg, name) = match tok.strip_prefix('-') {
            Some(n) => (true, n),
            None => (false, tok),
        };
        let t = MPoly::var(&v, v.index_of(name).expect("known variable"));
        out = if neg { &out - &t } else { &out + &t };
    }
    out
}

fn span_key(forms: &[MPoly], m: usize) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = forms
        .iter()
        .map(|f| f.linear_coefficients().expect("linear").0[..2 * m].to_vec())
        .collect();
    rref(rows, 2 * m).rows
}

fn match_components(m: usize, listed: &[&[&str]]) -> Result<(), String> {
    let comps = enumerate_components(m, Kind::C).map_err(e)?;
    ensure(
        comps.len() == listed.len(),
        format!("m={m}: {} components", comps.len()),
    )?;
    let mut got: Vec<_> = comps.iter().map(|c| span_key(&c.forms, m)).collect();
    let mut want: Vec<_> = listed
        .iter()
        .map(|fs| span_key(&fs.iter().map(|f| form(f, m)).collect::<Vec<_>>(), m))
        .collect();
    got.sort();
    want.sort();
    ensure(got == want, format!("m={m}: component sets differ"))
}

fn c6_components() -> Result<(), String> {
    match_components(
        2,
        &[
            &["x1", "x2"],
            &["x1", "xi2"],
            &["xi1", "x2"],
            &["xi1", "xi2"],
            &["xi1+xi2", "x1-x2"],
        ],
    )?;
    match_components(
        3,
        &[
            &["x1", "x2", "x3"],
            &["xi1", "x2", "x3"],
            &["x1", "xi2", "x3"],
            &["x1", "x2", "xi3"],
            &["xi1", "xi2", "x3"],
            &["xi1", "x2", "xi3"],
            &["x1", "xi2", "xi3"],
            &["xi1", "xi2", "xi3"],
            &["x1-x2", "xi1+xi2", "x3"],
            &["x1-x3", "xi1+xi3", "x2"],
            &["x2-x3", "xi2+xi3", "x1"],
            &["x1-x2", "xi1+xi2", "xi3"],
            &["x1-x3", "xi1+xi3", "xi2"],
            &["x2-x3", "xi2+xi3", "xi1"],
            &["x1-x2", "x1-x3", "xi1+xi2+xi3"],
        ],
    )?;
    for (m, b) in [(2usize, 5u32), (3, 15), (4, 52)] {
        let n = enumerate_components(m, Kind::C).map_err(e)?.len();
        ensure(
            n == b as usize && bell_number(m + 1) == b.into(),
            format!("m={m}: {n}"),
        )?;
    }
    Ok(())
}

fn c7_lower_bound() -> Result<(), String> {
    for m in 1..=3 {
        let r = lower_bound_check(m).map_err(e)?;
        ensure(r.all_pass(), format!("m={m}"))?;
    }
    Ok(())
}

fn c8_fibers() -> Result<(), String> {
    for m in 2..=3usize {
        for z in sample_points(m, 100, 2024) {
            let r = upper_bound_fiber_check(m, &z).map_err(e)?;
            ensure(r.contained, format!("m={m} z={:?}", r.z))?;
        }
        for sp in enumerate_set_partitions(m) {
            let small = sp.blocks().iter().all(|b| b.len() <= 2);
            let same = component(&sp, Kind::C).form_set() == component(&sp, Kind::Chat).form_set();
            ensure(small == same, format!("C vs Chat at {sp}"))?;
        }
    }
    Ok(())
}

fn c9_local_bounds() -> Result<(), String> {
    let r = zero_point_check(2, &[int(0), int(1)], None).map_err(e)?;
    ensure(
        r.pass && r.initial_forms.iter().all(|f| f.matches),
        "m=2 zero component",
    )?;
    let r = zero_point_check(3, &[int(0), int(1), int(2)], None).map_err(e)?;
    ensure(
        r.pass && r.initial_forms.iter().all(|f| f.matches),
        "m=3 zero component",
    )?;
    let r = diagonal_point_check(2, &[int(1), int(1)], 6).map_err(e)?;
    ensure(
        r.kernel_dimension == 3,
        format!("kernel dimension {}", r.kernel_dimension),
    )?;
    ensure(
        r.kernel_basis == ["1", "x1 + x2", "x1^2 + 6*x1*x2 + x2^2"],
        format!("kernel basis {:?}", r.kernel_basis),
    )?;
    ensure(r.pass, "diagonal report")
}

fn c10_uniqueness() -> Result<(), String> {
    for m in 2..=3 {
        let r = uniqueness_check(m, None, Some(&rat(5, 7))).map_err(e)?;
        ensure(
            r.kernel_cutoff == 4 && r.kernel_dimension == 1,
            format!("m={m}: dimension {}", r.kernel_dimension),
        )?;
        ensure(r.matches_series && r.pass, format!("m={m}"))?;
    }
    Ok(())
}

fn c11_restriction() -> Result<(), String> {
    for m in 2..=4 {
        restr_generators(m, 4).map_err(e)?;
    }
    for m in 2..=3usize {
        for s in 0..=2u32 {
            for h in hr_sequence(m, s, s + 1).map_err(e)? {
                let p = h.properties();
                ensure(p.pass(), format!("m={m} s={s} r={}: {p:?}", h.r))?;
                let want = 1 - 2 * h.r as i64;
                ensure(p.qbar_e1_two_adic == Some(want), "2-adic valuation")?;
            }
            let x = qbar_cross_check(m, s, QbarForm::Derived).map_err(e)?;
            ensure(x.pass(), format!("qbar m={m} s={s}"))?;
        }
        let generic = restriction_rank_bound(m, &rat(5, 7), 3).map_err(e)?;
        ensure(
            generic.bound <= 1 << (m - 1),
            format!("generic m={m}: {}", generic.bound),
        )?;
        for s in 0..=2u32 {
            let r = restriction_rank_bound(m, &special_c(m, s), s + 3).map_err(e)?;
            ensure(
                r.bound < 1 << m,
                format!("special m={m} s={s}: {}", r.bound),
            )?;
        }
    }
    Ok(())
}

fn c12_witness() -> Result<(), String> {
    let w = weyl_closure_witness(2, None).map_err(e)?;
    ensure(
        w.polynomial_coefficients && w.reduces_to_zero,
        "witness report",
    )?;
    let p = parse_dop(
        "(x1*d1^2 - x2*d2^2) - (x1*d1 - x2*d2) + (c - 1/2)*(d1 - d2)",
        2,
    )
    .map_err(e)?;
    let diff = &muirhead_g(1, 2).map_err(e)? - &muirhead_g(2, 2).map_err(e)?;
    ensure(
        diff.to_polynomial() == Some(p),
        "g1 - g2 differs from the expected operator",
    )
}

fn main() {
    let checks: [(&str, Check); 12] = [
        ("zonal axioms", c1_zonal),
        ("classical 1F1 coefficients", c2_classical),
        ("annihilation of truncated 1F1", c3_annihilation),
        ("Groebner basis and holonomic rank", c4_groebner),
        ("principal symbols", c5_symbols),
        ("component combinatorics", c6_components),
        ("lower-bound consistency", c7_lower_bound),
        ("upper-bound fiber checks", c8_fibers),
        ("local solution bounds", c9_local_bounds),
        ("uniqueness at the origin", c10_uniqueness),
        ("restriction to x_m = 0", c11_restriction),
        ("Weyl closure witness", c12_witness),
    ];
    let mut failed = 0;
    for (n, (name, f)) in checks.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.2}s)", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2}s): {msg}", n + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
