use serde_json::{json, Map, Value};

use muirhead_lab::arith::{parse_rational, Monomial, RatFun, Rational, Vars};
use muirhead_lab::charvar::{
    component, enumerate_components, lower_bound_check, sample_points, singular_locus,
    upper_bound_fiber_check, Kind,
};
use muirhead_lab::combinatorics::{
    bell_number, enumerate_int_partitions, enumerate_set_partitions,
};
use muirhead_lab::hyperseries::{
    convergence_note, evaluate_series, series_symmetrize_check, truncated_pfq, SeriesParams,
};
use muirhead_lab::muirhead::{
    holonomic_rank, muirhead_g, muirhead_groebner, muirhead_p, verify_annihilation, Rank,
};
use muirhead_lab::restriction::{
    hr_sequence, qbar_cross_check, restriction_rank_bound, special_s, QbarForm,
};
use muirhead_lab::solutions::{
    diagonal_point_check, trunc_kernel, uniqueness_check, zero_point_check,
};
use muirhead_lab::weyl::{shift_op, symbol};
use muirhead_lab::zonal::{verify_zonal_axioms, zonal_eigen, zonal_poly};
use muirhead_lab::{Error, Result};

use crate::report::{Report, Status};
use crate::verify;
use crate::{
    Basis, CharvarCmd, Command, KindArg, MuirheadCmd, Params, RestrictionCmd, SeriesArgs,
    SolutionsCmd, ZonalArgs,
};

pub fn run(cmd: &Command, seed: u64) -> Result<Report> {
    match cmd {
        Command::Zonal(args) => zonal(args),
        Command::Series(args) => series(args),
        Command::Muirhead(c) => muirhead(c),
        Command::Charvar(c) => charvar(c, seed),
        Command::Solutions(c) => solutions(c),
        Command::Restriction(c) => restriction(c),
        Command::VerifyAll(args) => verify::verify_all(args.m, args.degree, seed),
    }
}

fn config(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn opt_rat(r: &Option<Rational>) -> Value {
    match r {
        Some(r) => json!(r.to_string()),
        None => json!("symbolic"),
    }
}

impl Params {
    fn spec(&self) -> Vec<(&'static str, Rational)> {
        let mut out = Vec::new();
        if let Some(a) = &self.a {
            out.push(("a", a.clone()));
        }
        if let Some(c) = &self.c {
            out.push(("c", c.clone()));
        }
        out
    }

    fn config(&self) -> [(&'static str, Value); 2] {
        [("a", opt_rat(&self.a)), ("c", opt_rat(&self.c))]
    }
}

fn with_params(base: &[(&str, Value)], p: &Params) -> Map<String, Value> {
    let mut all = base.to_vec();
    all.extend(p.config());
    config(&all)
}

fn need_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Structural("m must be at least 1".into()));
    }
    Ok(())
}

/// `∂`-monomial text such as `d1*d2^2`, or `1`.
pub fn d_monomial(t: &Monomial) -> String {
    let parts: Vec<String> = t
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("d{}", i + 1)
            } else {
                format!("d{}^{e}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn rationals(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}

fn zonal(args: &ZonalArgs) -> Result<Report> {
    need_m(args.m)?;
    let basis = match args.basis {
        Basis::Monomial => "monomial",
        Basis::Expanded => "expanded",
    };
    let mut r = Report::new(
        "zonal",
        config(&[
            ("m", json!(args.m)),
            ("degree", json!(args.degree)),
            ("basis", json!(basis)),
        ]),
    );
    for lambda in enumerate_int_partitions(args.degree, args.m) {
        let z = zonal_poly(&lambda, args.m)?;
        let coefficients = match args.basis {
            Basis::Monomial => json!(z
                .coeffs()
                .iter()
                .map(|(mu, c)| (mu.to_string(), c.to_string()))
                .collect::<Vec<_>>()),
            Basis::Expanded => json!(z.to_mpoly().to_text()),
        };
        let eig = zonal_eigen(&lambda, args.m);
        r.push(
            &format!("C_{lambda}"),
            "muirhead_lab::zonal::zonal_poly",
            Status::Info,
            json!({ "lambda": lambda.to_string(), "coefficients": coefficients, "rho": eig.rho, "alpha": eig.alpha }),
        );
    }
    let ax = verify_zonal_axioms(args.degree, args.m)?;
    r.push(
        "zonal axioms",
        "muirhead_lab::zonal::verify_zonal_axioms",
        Status::from_bool(ax.all_pass()),
        &ax,
    );
    Ok(r)
}

fn parse_spec(text: &str) -> Result<Vec<(&'static str, Rational)>> {
    let mut out = Vec::new();
    for part in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got '{part}'")))?;
        let name = match k.trim() {
            "a" => "a",
            "c" => "c",
            other => return Err(Error::Parse(format!("unknown parameter '{other}'"))),
        };
        out.push((name, parse_rational(v.trim())?));
    }
    Ok(out)
}

fn series(args: &SeriesArgs) -> Result<Report> {
    need_m(args.m)?;
    let spec = match &args.spec {
        Some(s) => parse_spec(s)?,
        None => Vec::new(),
    };
    let mut cfg = vec![
        ("p", json!(args.p)),
        ("q", json!(args.q)),
        ("m", json!(args.m)),
        ("degree", json!(args.degree)),
    ];
    for (k, v) in &spec {
        cfg.push((k, json!(v.to_string())));
    }
    if let Some(e) = &args.eval {
        cfg.push(("eval", json!(e)));
    }
    let mut r = Report::new("series", config(&cfg));
    let pv = Vars::params();
    let value = |name: &str, i: usize| match spec.iter().find(|(k, _)| *k == name) {
        Some((_, v)) => RatFun::constant(&pv, v.clone()),
        None => RatFun::var(&pv, i),
    };
    let params = SeriesParams {
        upper: vec![value("a", 0); args.p],
        lower: vec![value("c", 1); args.q],
    };
    let s = truncated_pfq(&params, args.m, args.degree)?;
    r.push(
        "partial sum",
        "muirhead_lab::hyperseries::truncated_pfq",
        Status::Info,
        json!({ "series": s.to_text(), "terms": s.coeffs().len() }),
    );
    r.push(
        "symmetric coefficients",
        "muirhead_lab::hyperseries::series_symmetrize_check",
        Status::from_bool(series_symmetrize_check(&s)),
        Value::Null,
    );
    r.push(
        "convergence",
        "muirhead_lab::hyperseries::convergence_note",
        Status::Info,
        json!(convergence_note(args.p, args.q)),
    );
    if let Some(e) = &args.eval {
        let point = rationals(e.strip_prefix("x=").unwrap_or(e))?;
        let v = evaluate_series(&s, &point, &spec)?;
        r.push(
            "value",
            "muirhead_lab::hyperseries::evaluate_series",
            Status::Info,
            json!({ "x": point.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "value": v.to_string() }),
        );
    }
    Ok(r)
}

fn spec_opt<'a>(spec: &'a [(&'static str, Rational)]) -> Option<&'a [(&'static str, Rational)]> {
    if spec.is_empty() {
        None
    } else {
        Some(spec)
    }
}

fn muirhead(cmd: &MuirheadCmd) -> Result<Report> {
    match cmd {
        MuirheadCmd::Gens { m } => {
            need_m(*m)?;
            let mut r = Report::new("muirhead gens", config(&[("m", json!(m))]));
            for k in 1..=*m {
                let p = muirhead_p(k, *m)?;
                r.push(
                    &format!("generator {k}"),
                    "muirhead_lab::muirhead::muirhead_p",
                    Status::Info,
                    json!({
                        "g": muirhead_g(k, *m)?.to_string(),
                        "p": p.to_string(),
                        "symbol": symbol(&p)?.to_text(),
                    }),
                );
            }
            Ok(r)
        }
        MuirheadCmd::Annihilate { m, degree, params } => {
            need_m(*m)?;
            let spec = params.spec();
            let mut r = Report::new(
                "muirhead annihilate",
                with_params(&[("m", json!(m)), ("degree", json!(degree))], params),
            );
            let a = verify_annihilation(*m, *degree, spec_opt(&spec))?;
            r.push(
                "annihilation",
                "muirhead_lab::muirhead::verify_annihilation",
                Status::from_bool(a.all_pass()),
                &a,
            );
            Ok(r)
        }
        MuirheadCmd::Groebner { m, params } => {
            need_m(*m)?;
            let spec = params.spec();
            let mut r = Report::new("muirhead groebner", with_params(&[("m", json!(m))], params));
            let gb = muirhead_groebner(*m, spec_opt(&spec))?;
            r.push(
                "generators form a Groebner basis",
                "muirhead_lab::muirhead::muirhead_groebner",
                Status::from_bool(gb.input_unchanged),
                json!({
                    "order": gb.order,
                    "basis": gb.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "leading": gb.leading_monomials().iter().map(d_monomial).collect::<Vec<_>>(),
                    "standard_monomials": gb.standard_monomials.as_ref().map(|s| s.iter().map(d_monomial).collect::<Vec<_>>()),
                    "pairs": gb.pairs,
                }),
            );
            Ok(r)
        }
        MuirheadCmd::Rank { m, params } => {
            need_m(*m)?;
            let spec = params.spec();
            let mut r = Report::new("muirhead rank", with_params(&[("m", json!(m))], params));
            let gb = muirhead_groebner(*m, spec_opt(&spec))?;
            let rank = holonomic_rank(&gb);
            let expected = 1usize << m;
            r.push(
                "holonomic rank",
                "muirhead_lab::muirhead::holonomic_rank",
                Status::from_bool(rank == Rank::Finite(expected)),
                json!({ "rank": rank, "expected": expected }),
            );
            Ok(r)
        }
    }
}

fn charvar(cmd: &CharvarCmd, seed: u64) -> Result<Report> {
    match cmd {
        CharvarCmd::Components { m, kind } => {
            need_m(*m)?;
            let (kind, name) = match kind {
                KindArg::C => (Kind::C, "c"),
                KindArg::Chat => (Kind::Chat, "chat"),
            };
            let mut r = Report::new(
                "charvar components",
                config(&[("m", json!(m)), ("kind", json!(name))]),
            );
            let comps = enumerate_components(*m, kind)?;
            let bell = bell_number(m + 1);
            r.push(
                "component count",
                "muirhead_lab::charvar::enumerate_components",
                Status::from_bool(bell == comps.len().into()),
                json!({ "count": comps.len(), "bell": bell.to_string() }),
            );
            r.push(
                "components",
                "muirhead_lab::charvar::LinearComponent::view",
                Status::Info,
                comps.iter().map(|c| c.view()).collect::<Vec<_>>(),
            );
            Ok(r)
        }
        CharvarCmd::Check { m, samples } => {
            need_m(*m)?;
            let mut r = Report::new(
                "charvar check",
                config(&[
                    ("m", json!(m)),
                    ("samples", json!(samples)),
                    ("seed", json!(seed)),
                ]),
            );
            let lb = lower_bound_check(*m)?;
            r.push(
                "lower bound",
                "muirhead_lab::charvar::lower_bound_check",
                Status::from_bool(lb.all_pass()),
                &lb,
            );
            let mut failures = Vec::new();
            let points = sample_points(*m, *samples, seed);
            for z in &points {
                let f = upper_bound_fiber_check(*m, z)?;
                if !f.contained {
                    failures.push(f);
                }
            }
            r.push(
                "upper-bound fibers",
                "muirhead_lab::charvar::upper_bound_fiber_check",
                Status::from_bool(failures.is_empty()),
                json!({ "points": points.len(), "failures": failures }),
            );
            let mut differ = Vec::new();
            let mut ok = true;
            for sp in enumerate_set_partitions(*m) {
                let small = sp.blocks().iter().all(|b| b.len() <= 2);
                let same =
                    component(&sp, Kind::C).form_set() == component(&sp, Kind::Chat).form_set();
                ok &= small == same;
                if !same {
                    differ.push(sp.to_string());
                }
            }
            r.push(
                "C and Chat differ exactly at blocks of size three or more",
                "muirhead_lab::charvar::component",
                Status::from_bool(ok),
                json!({ "differ": differ }),
            );
            Ok(r)
        }
        CharvarCmd::SingularLocus { m } => {
            need_m(*m)?;
            let mut r = Report::new("charvar singular-locus", config(&[("m", json!(m))]));
            let s = singular_locus(*m)?;
            let ok = s.projection_identity && s.lower_dimensional_projections_covered;
            r.push(
                "singular locus",
                "muirhead_lab::charvar::singular_locus",
                Status::from_bool(ok),
                &s,
            );
            Ok(r)
        }
    }
}

fn solutions(cmd: &SolutionsCmd) -> Result<Report> {
    match cmd {
        SolutionsCmd::Kernel {
            m,
            at,
            cutoff,
            params,
        } => {
            need_m(*m)?;
            let p = rationals(at)?;
            if p.len() != *m {
                return Err(Error::Structural(format!("--at needs {m} coordinates")));
            }
            let mut r = Report::new(
                "solutions kernel",
                with_params(
                    &[
                        ("m", json!(m)),
                        ("at", json!(at)),
                        ("cutoff", json!(cutoff)),
                    ],
                    params,
                ),
            );
            if *m >= 2 && p[0] == p[1] {
                let d = diagonal_point_check(*m, &p, *cutoff)?;
                r.push(
                    "diagonal point",
                    "muirhead_lab::solutions::diagonal_point_check",
                    Status::from_bool(d.pass),
                    &d,
                );
            } else if p[0] == Rational::from_integer(0.into()) {
                let z = zero_point_check(*m, &p, params.c.as_ref())?;
                r.push(
                    "zero coordinate",
                    "muirhead_lab::solutions::zero_point_check",
                    Status::from_bool(z.pass),
                    &z,
                );
            } else {
                let spec = params.spec();
                let ops = (1..=*m)
                    .map(|k| shift_op(&muirhead_p(k, *m)?, &p))
                    .collect::<Result<Vec<_>>>()?;
                let k = trunc_kernel(&ops, *m, *cutoff, spec_opt(&spec))?;
                r.push(
                    "truncated kernel",
                    "muirhead_lab::solutions::trunc_kernel",
                    Status::from_bool(k.verified),
                    json!({
                        "dimension": k.dimension(),
                        "basis": k.basis.iter().map(|s| s.to_text()).collect::<Vec<_>>(),
                        "stable": k.stable,
                        "constraints_used": k.constraints_used,
                        "constraints_dropped": k.constraints_dropped,
                    }),
                );
            }
            Ok(r)
        }
        SolutionsCmd::Uniqueness { m, params } => {
            need_m(*m)?;
            let mut r = Report::new(
                "solutions uniqueness",
                with_params(&[("m", json!(m))], params),
            );
            let u = uniqueness_check(*m, params.a.as_ref(), params.c.as_ref())?;
            r.push(
                "uniqueness",
                "muirhead_lab::solutions::uniqueness_check",
                Status::from_bool(u.pass),
                &u,
            );
            Ok(r)
        }
    }
}

fn restriction(cmd: &RestrictionCmd) -> Result<Report> {
    match cmd {
        RestrictionCmd::Rank { m, c, k_max } => {
            let k = k_max.unwrap_or_else(|| special_s(*m, c).map_or(3, |s| s + 3));
            let mut r = Report::new(
                "restriction rank",
                config(&[
                    ("m", json!(m)),
                    ("c", json!(c.to_string())),
                    ("k_max", json!(k)),
                ]),
            );
            let b = restriction_rank_bound(*m, c, k)?;
            r.push(
                "rank bound",
                "muirhead_lab::restriction::restriction_rank_bound",
                Status::from_bool(b.pass),
                &b,
            );
            Ok(r)
        }
        RestrictionCmd::Hr { m, s, r: r_max } => {
            let r_max = r_max.unwrap_or(s + 1);
            let mut r = Report::new(
                "restriction hr",
                config(&[("m", json!(m)), ("s", json!(s)), ("r", json!(r_max))]),
            );
            for h in hr_sequence(*m, *s, r_max)? {
                let v = h.view();
                r.push(
                    &format!("H_{}", h.r),
                    "muirhead_lab::restriction::hr_sequence",
                    Status::from_bool(v.properties.pass()),
                    &v,
                );
            }
            let derived = qbar_cross_check(*m, *s, QbarForm::Derived)?;
            r.push(
                "qbar recursion",
                "muirhead_lab::restriction::qbar_cross_check",
                Status::from_bool(derived.pass()),
                &derived,
            );
            let literal = qbar_cross_check(*m, *s, QbarForm::Literal)?;
            r.push(
                "qbar recursion, literal form",
                "muirhead_lab::restriction::qbar_cross_check",
                Status::Info,
                &literal,
            );
            Ok(r)
        }
    }
}
