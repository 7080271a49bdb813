//! The acceptance checks, scaled by `--m` and `--degree`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::{json, Value};

use muirhead_lab::arith::{int, rat, MPoly, Monomial, Vars};
use muirhead_lab::charvar::{
    component, enumerate_components, lower_bound_check, sample_points, upper_bound_fiber_check,
    Kind,
};
use muirhead_lab::combinatorics::{bell_number, enumerate_set_partitions};
use muirhead_lab::hyperseries::{kummer_coefficient, truncated_pfq, SeriesParams};
use muirhead_lab::muirhead::{
    holonomic_rank, muirhead_groebner, muirhead_p, s_pair_reductions, verify_annihilation,
    weyl_closure_witness, Rank,
};
use muirhead_lab::restriction::{
    hr_sequence, qbar_cross_check, restr_generators, restriction_rank_bound, special_c, QbarForm,
};
use muirhead_lab::solutions::{diagonal_point_check, uniqueness_check, zero_point_check};
use muirhead_lab::weyl::symbol;
use muirhead_lab::zonal::verify_zonal_axioms;
use muirhead_lab::Result;

use crate::report::{Report, Status};

/// Outcome of one check: pass/fail with details, or skipped at this scale.
enum Outcome {
    Done(bool, Value),
    Skipped(String),
}

type Check = fn(usize, u32, u64) -> Result<Outcome>;

fn done(ok: bool, data: Value) -> Result<Outcome> {
    Ok(Outcome::Done(ok, data))
}

fn zonal(m: usize, n: u32, _: u64) -> Result<Outcome> {
    let mut bad = Vec::new();
    for d in 0..=n {
        if !verify_zonal_axioms(d, m)?.all_pass() {
            bad.push(d);
        }
    }
    done(
        bad.is_empty(),
        json!({ "degrees": n + 1, "failing_degrees": bad }),
    )
}

fn classical(_: usize, n: u32, _: u64) -> Result<Outcome> {
    let s = truncated_pfq(&SeriesParams::f11(), 1, n)?;
    let v = Vars::params();
    let mut bad = Vec::new();
    for k in 0..=n {
        if s.coeff(&Monomial::from_slice(&[k])).embed(&v)? != kummer_coefficient(k) {
            bad.push(k);
        }
    }
    done(bad.is_empty(), json!({ "failing_orders": bad }))
}

fn annihilation(m: usize, n: u32, _: u64) -> Result<Outcome> {
    let r = verify_annihilation(m, n, None)?;
    done(r.all_pass(), json!({ "items": r.items.len() }))
}

fn groebner(m: usize, _: u32, _: u64) -> Result<Outcome> {
    let gb = muirhead_groebner(m, None)?;
    let rank = holonomic_rank(&gb);
    let pairs = s_pair_reductions(m, None)?;
    let ok = gb.input_unchanged
        && rank == Rank::Finite(1 << m)
        && pairs.iter().all(|p| p.reduced_to_zero);
    done(
        ok,
        json!({ "rank": rank, "input_unchanged": gb.input_unchanged }),
    )
}

fn symbols(m: usize, _: u32, _: u64) -> Result<Outcome> {
    let v = Vars::phase(m);
    let x = |i: usize| MPoly::var(&v, i);
    let xi = |i: usize| MPoly::var(&v, m + i);
    let mut bad = Vec::new();
    for i in 0..m {
        let mut want = &x(i) * &(&xi(i) * &xi(i));
        for j in (0..m).filter(|&j| j != i) {
            want = &want * &(&x(i) - &x(j));
        }
        if symbol(&muirhead_p(i + 1, m)?)? != want {
            bad.push(format!("P{}", i + 1));
        }
    }
    done(bad.is_empty(), json!({ "mismatches": bad }))
}

fn components(m: usize, _: u32, _: u64) -> Result<Outcome> {
    let n = enumerate_components(m, Kind::C)?.len();
    let bell = bell_number(m + 1);
    done(
        bell == n.into(),
        json!({ "count": n, "bell": bell.to_string() }),
    )
}

fn lower_bound(m: usize, _: u32, _: u64) -> Result<Outcome> {
    if m > 4 {
        return Ok(Outcome::Skipped("runs for m <= 4".into()));
    }
    let r = lower_bound_check(m)?;
    done(
        r.all_pass(),
        json!({ "generators": r.generators.len(), "components": r.components.len() }),
    )
}

fn fibers(m: usize, _: u32, seed: u64) -> Result<Outcome> {
    let mut bad = 0;
    let points = sample_points(m, 100, seed);
    for z in &points {
        if !upper_bound_fiber_check(m, z)?.contained {
            bad += 1;
        }
    }
    let mut split_ok = true;
    for sp in enumerate_set_partitions(m) {
        let small = sp.blocks().iter().all(|b| b.len() <= 2);
        let same = component(&sp, Kind::C).form_set() == component(&sp, Kind::Chat).form_set();
        split_ok &= small == same;
    }
    done(
        bad == 0 && split_ok,
        json!({ "points": points.len(), "not_contained": bad, "c_vs_chat": split_ok }),
    )
}

fn local(m: usize, n: u32, _: u64) -> Result<Outcome> {
    let zero: Vec<_> = (0..m as i64).map(int).collect();
    let z = zero_point_check(m, &zero, None)?;
    let zero_ok = z.pass && z.initial_forms.iter().all(|f| f.matches);
    if m < 2 {
        return done(zero_ok, json!({ "zero_component": zero_ok }));
    }
    let diag: Vec<_> = std::iter::once(int(1))
        .chain((1..m as i64).map(int))
        .collect();
    let d = diagonal_point_check(m, &diag, n)?;
    done(
        zero_ok && d.pass,
        json!({ "zero_component": zero_ok, "diagonal": d.pass, "kernel_dimension": d.kernel_dimension }),
    )
}

fn uniqueness(m: usize, _: u32, _: u64) -> Result<Outcome> {
    let r = uniqueness_check(m, None, Some(&rat(5, 7)))?;
    done(
        r.pass && r.kernel_dimension == 1,
        json!({ "kernel_dimension": r.kernel_dimension, "matches_series": r.matches_series }),
    )
}

fn restriction(m: usize, _: u32, _: u64) -> Result<Outcome> {
    if !(2..=4).contains(&m) {
        return Ok(Outcome::Skipped("runs for 2 <= m <= 4".into()));
    }
    restr_generators(m, 4)?;
    let mut bad = Vec::new();
    for s in 0..=2u32 {
        for h in hr_sequence(m, s, s + 1)? {
            let p = h.properties();
            if !p.pass() || p.qbar_e1_two_adic != Some(1 - 2 * h.r as i64) {
                bad.push(format!("H_{} s={s}", h.r));
            }
        }
        if !qbar_cross_check(m, s, QbarForm::Derived)?.pass() {
            bad.push(format!("qbar s={s}"));
        }
        let r = restriction_rank_bound(m, &special_c(m, s), s + 3)?;
        if r.bound >= 1 << m {
            bad.push(format!("special bound s={s}"));
        }
    }
    let generic = restriction_rank_bound(m, &rat(5, 7), 3)?;
    if generic.bound > 1 << (m - 1) {
        bad.push("generic bound".into());
    }
    done(
        bad.is_empty(),
        json!({ "failures": bad, "generic_bound": generic.bound }),
    )
}

fn witness(m: usize, _: u32, _: u64) -> Result<Outcome> {
    if m > 2 {
        return Ok(Outcome::Skipped("defined for m <= 2".into()));
    }
    let w = weyl_closure_witness(m, None)?;
    done(w.pass(), json!({ "operator": w.operator }))
}

const CHECKS: [(&str, &str, Check); 12] = [
    (
        "zonal axioms",
        "muirhead_lab::zonal::verify_zonal_axioms",
        zonal,
    ),
    (
        "classical 1F1 coefficients",
        "muirhead_lab::hyperseries::truncated_pfq",
        classical,
    ),
    (
        "annihilation of truncated 1F1",
        "muirhead_lab::muirhead::verify_annihilation",
        annihilation,
    ),
    (
        "Groebner basis and holonomic rank",
        "muirhead_lab::muirhead::muirhead_groebner",
        groebner,
    ),
    ("principal symbols", "muirhead_lab::weyl::symbol", symbols),
    (
        "component combinatorics",
        "muirhead_lab::charvar::enumerate_components",
        components,
    ),
    (
        "lower-bound consistency",
        "muirhead_lab::charvar::lower_bound_check",
        lower_bound,
    ),
    (
        "upper-bound fiber checks",
        "muirhead_lab::charvar::upper_bound_fiber_check",
        fibers,
    ),
    (
        "local solution bounds",
        "muirhead_lab::solutions::diagonal_point_check",
        local,
    ),
    (
        "uniqueness at the origin",
        "muirhead_lab::solutions::uniqueness_check",
        uniqueness,
    ),
    (
        "restriction to x_m = 0",
        "muirhead_lab::restriction::hr_sequence",
        restriction,
    ),
    (
        "Weyl closure witness",
        "muirhead_lab::muirhead::weyl_closure_witness",
        witness,
    ),
];

pub fn verify_all(m: usize, degree: u32, seed: u64) -> Result<Report> {
    if m == 0 {
        return Err(muirhead_lab::Error::Structural(
            "m must be at least 1".into(),
        ));
    }
    let mut r = Report::new(
        "verify-all",
        [
            ("m", json!(m)),
            ("degree", json!(degree)),
            ("seed", json!(seed)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect(),
    );
    for (name, op, f) in CHECKS {
        let out = catch_unwind(AssertUnwindSafe(|| f(m, degree, seed)));
        match out {
            Ok(Ok(Outcome::Done(ok, data))) => r.push(name, op, Status::from_bool(ok), data),
            Ok(Ok(Outcome::Skipped(why))) => {
                r.push(name, op, Status::Info, json!({ "skipped": why }))
            }
            Ok(Err(e)) => r.push(name, op, Status::Fail, json!({ "error": e.to_string() })),
            Err(_) => r.push(name, op, Status::Fail, json!({ "error": "panicked" })),
        }
    }
    Ok(r)
}
