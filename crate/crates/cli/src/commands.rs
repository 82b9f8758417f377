use std::fs;

use serde_json::{json, Value};
use twistk_core::constructions::{GroupAction, GwMode, RealFiniteSpace};
use twistk_core::exact::format_rat;
use twistk_core::forms::{cross_check_gra, diagonalize, gw_point, make_form, recognize, Block};
use twistk_core::involutions::{grading, is_balanced, Balance, BalanceMethod, BalancedVerdict};
use twistk_core::ktheory::{gr, k0, kr, morita_check, K0Group};
use twistk_core::structure::{center, wedderburn, WedderburnReport};
use twistk_core::Error;

use crate::report::{digest, Check, Report, Status};
use crate::spec::{build, error_kind, parse_gram, parse_spec, preset, print_spec, Built, SpecError};
use crate::suite::run_suite;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrModeArg {
    Complexified,
    Real,
}

#[derive(Clone, Debug)]
pub enum Command {
    Analyze { spec: String },
    Wedderburn { spec: String },
    K0 { spec: String },
    Kr { fiber: String, space: String },
    Gr { spec: String, epsilon: i64, space: String, mode: GrModeArg },
    Balanced { spec: String },
    Morita { spec: String, n: usize },
    Gw { spec: String, epsilon: i64, gram: Option<String> },
    Crosscheck { spec: String, epsilon: Option<i64> },
    Suite { filter: Option<String>, parallel: usize },
}

/// A command failure: the error kind and message for the report.
#[derive(Debug)]
pub struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: error_kind(&e), message: e.to_string() }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure { kind: e.kind().to_string(), message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { kind: "UsageError".into(), message: message.into() }
}

/// Resolves a preset name, an inline JSON object or a file path.
pub fn load_spec_text(arg: &str) -> Result<String, Failure> {
    if let Some(text) = preset(arg) {
        return Ok(text);
    }
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Failure { kind: "IoError".into(), message: format!("{arg}: {e}") })
}

struct Loaded {
    built: Built,
    canonical: String,
}

fn load(arg: &str) -> Result<Loaded, Failure> {
    let spec = parse_spec(&load_spec_text(arg)?)?;
    let canonical = print_spec(&spec);
    Ok(Loaded { built: build(&spec)?, canonical })
}

pub fn parse_space(s: &str) -> Result<RealFiniteSpace, Failure> {
    let bad = || usage(format!("unknown space {s:?}; use point, swap, fixed:N, doubled:N or perm:i,j,..."));
    let space = match s {
        "point" | "pt" => RealFiniteSpace::point(),
        "swap" | "swap-pair" => RealFiniteSpace::swap_pair(),
        _ => {
            let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
            match kind {
                "fixed" => RealFiniteSpace::fixed_points(rest.parse().map_err(|_| bad())?),
                "doubled" => RealFiniteSpace::doubled(rest.parse().map_err(|_| bad())?),
                "perm" => {
                    let perm = rest.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<usize>, _>>();
                    RealFiniteSpace::new(perm.map_err(|_| bad())?)?
                }
                _ => return Err(bad()),
            }
        }
    };
    Ok(space)
}

fn rats(v: &[twistk_core::exact::Rat]) -> Value {
    Value::Array(v.iter().map(|r| json!(format_rat(r))).collect())
}

pub fn k0_json(g: &K0Group) -> Value {
    let gens: Vec<Value> = g.basis.iter().map(|(m, d)| json!({"m": m, "type": d.symbol()})).collect();
    json!({"rank": g.rank, "generators": gens, "group": g.to_string()})
}

fn wedderburn_json(w: &WedderburnReport) -> Value {
    let factors: Vec<Value> = w
        .factors
        .iter()
        .map(|f| {
            json!({
                "m": f.m,
                "type": f.dtype.symbol(),
                "dim": f.dim,
                "center_dim": f.center_dim,
                "trace_signature": f.trace_signature,
                "central_idempotent": rats(&f.central_idempotent),
            })
        })
        .collect();
    json!({"radical_dim": w.radical_dim, "semisimple": w.is_semisimple(), "factors": factors})
}

pub fn verdict_json(v: &BalancedVerdict) -> Value {
    let balanced = match v.balanced {
        Balance::Yes => "yes",
        Balance::No => "no",
        Balance::ProbablyNo => "probably-no",
    };
    let method = match &v.method {
        BalanceMethod::Witness => json!({"kind": "witness"}),
        BalanceMethod::ExactGrid { points } => json!({"kind": "exact-grid", "points": points}),
        BalanceMethod::Sampling { trials } => json!({"kind": "sampling", "trials": trials}),
    };
    json!({
        "balanced": balanced,
        "odd_dim": v.odd_dim,
        "witness": v.witness.as_deref().map(rats),
        "error_bound": v.error_bound.as_ref().map(format_rat),
        "method": method,
    })
}

fn require_involution(l: &Loaded, what: &str) -> Result<twistk_core::involutions::InvolutionMap, Failure> {
    l.built.involution.clone().ok_or_else(|| usage(format!("{what} needs a spec with an \"involution\"")))
}

fn require_anti(l: &Loaded, what: &str) -> Result<twistk_core::involutions::AntiInvolutionMap, Failure> {
    l.built.anti_involution.clone().ok_or_else(|| usage(format!("{what} needs a spec with an \"anti_involution\"")))
}

fn epsilon_ok(e: i64) -> Result<i64, Failure> {
    if e == 1 || e == -1 {
        Ok(e)
    } else {
        Err(usage("epsilon must be 1 or -1"))
    }
}

type Outcome = Result<(Value, Vec<Check>, Vec<String>), Failure>;

fn analyze(arg: &str, seed: u64) -> Outcome {
    let l = load(arg)?;
    let a = &l.built.algebra;
    let mut out = json!({
        "dim": a.dim(),
        "labels": a.labels(),
        "commutative": a.is_commutative(),
        "center_dim": center(a).len(),
    });
    let w = wedderburn(a)?;
    out["wedderburn"] = wedderburn_json(&w);
    if w.is_semisimple() {
        out["k0"] = k0_json(&K0Group::from_fingerprint(w.fingerprint()));
    }
    if let Some(tau) = &l.built.involution {
        let g = grading(tau);
        out["involution"] = json!({
            "even_dim": g.even.len(),
            "odd_dim": g.odd.len(),
            "balanced": verdict_json(&is_balanced(tau, seed)),
        });
    }
    if let Some(star) = &l.built.anti_involution {
        let classical = recognize(star).ok().map(|(c, m)| json!({"case": c.name(), "m": m}));
        out["anti_involution"] = json!({"fixed_dim": star.fixed_dim(), "classical": classical});
    }
    Ok((out, vec![], vec![l.canonical]))
}

fn gram_json(b: &Block) -> Value {
    match b {
        Block::Diagonal(x) => json!({"diagonal": rats(x)}),
        Block::Hyperbolic => json!("hyperbolic"),
    }
}

fn gw(arg: &str, epsilon: i64, gram: Option<&str>) -> Outcome {
    let l = load(arg)?;
    let star = require_anti(&l, "gw")?;
    let eps = epsilon_ok(epsilon)?;
    let p = gw_point(&star, eps)?;
    let mut out = json!({
        "case": p.case.name(),
        "m": p.m,
        "epsilon": eps,
        "invariants": p.invariants,
        "group_rank": p.rank,
    });
    let mut inputs = vec![l.canonical];
    if let Some(text) = gram {
        let g = parse_gram(text, &l.built.algebra)?;
        let form = make_form(&star, eps, g)?;
        let d = diagonalize(&form)?;
        let inv = d.invariants(eps);
        let witness: Vec<Value> = d.witness.iter().map(|row| Value::Array(row.iter().map(|x| rats(x)).collect())).collect();
        out["form"] = json!({
            "blocks": d.blocks.iter().map(gram_json).collect::<Vec<_>>(),
            "witness": witness,
            "rank": inv.rank,
            "signature": inv.signature,
            "hyperbolic_only": inv.hyperbolic_only,
        });
        inputs.push(text.to_string());
    }
    Ok((out, vec![], inputs))
}

fn dispatch(cmd: &Command, seed: u64) -> Outcome {
    match cmd {
        Command::Analyze { spec } => analyze(spec, seed),
        Command::Wedderburn { spec } => {
            let l = load(spec)?;
            let w = wedderburn(&l.built.algebra)?;
            Ok((wedderburn_json(&w), vec![], vec![l.canonical]))
        }
        Command::K0 { spec } => {
            let l = load(spec)?;
            Ok((k0_json(&k0(&l.built.algebra)?), vec![], vec![l.canonical]))
        }
        Command::Kr { fiber, space } => {
            let l = load(fiber)?;
            let tau = require_involution(&l, "kr")?;
            let x = parse_space(space)?;
            let g = kr(&l.built.algebra, &tau, &x)?;
            Ok((json!({"space": space, "points": x.points(), "kr": k0_json(&g)}), vec![], vec![l.canonical]))
        }
        Command::Gr { spec, epsilon, space, mode } => {
            let l = load(spec)?;
            let eps = epsilon_ok(*epsilon)?;
            let x = parse_space(space)?;
            let mode = match mode {
                GrModeArg::Complexified => GwMode::Complexified,
                GrModeArg::Real => GwMode::Real(
                    l.built
                        .involution
                        .clone()
                        .unwrap_or_else(|| twistk_core::involutions::InvolutionMap::identity(&l.built.algebra)),
                ),
            };
            let g = gr(&l.built.algebra, eps, &x, &mode)?;
            let route = if matches!(mode, GwMode::Complexified) { "complexified" } else { "real" };
            Ok((json!({"epsilon": eps, "space": space, "route": route, "gr": k0_json(&g.k0)}), vec![], vec![l.canonical]))
        }
        Command::Balanced { spec } => {
            let l = load(spec)?;
            let tau = require_involution(&l, "balanced")?;
            Ok((verdict_json(&is_balanced(&tau, seed)), vec![], vec![l.canonical]))
        }
        Command::Morita { spec, n } => {
            let l = load(spec)?;
            let tau = require_involution(&l, "morita")?;
            let r = morita_check(&GroupAction::from_involution(&tau), *n)?;
            let check = Check {
                id: "morita".into(),
                anchor: "Morita invariance".into(),
                status: if r.agrees { Status::Pass } else { Status::Fail },
                detail: format!("{} vs {}", r.base, r.matrix),
            };
            let out = json!({"n": r.n, "base": k0_json(&r.base), "matrix": k0_json(&r.matrix), "agrees": r.agrees});
            Ok((out, vec![check], vec![l.canonical]))
        }
        Command::Gw { spec, epsilon, gram } => gw(spec, *epsilon, gram.as_deref()),
        Command::Crosscheck { spec, epsilon } => {
            let l = load(spec)?;
            let star = require_anti(&l, "crosscheck")?;
            let eps: Vec<i64> = match epsilon {
                Some(e) => vec![epsilon_ok(*e)?],
                None => vec![1, -1],
            };
            let mut rows = Vec::new();
            let mut checks = Vec::new();
            for e in eps {
                let c = cross_check_gra(&star, e)?;
                rows.push(json!({"label": c.label, "epsilon": e, "forms_rank": c.forms_rank, "gr_rank": c.k_rank, "matches": c.matches}));
                checks.push(Check {
                    id: format!("GRA/{}/{e:+}", c.label),
                    anchor: "GRA".into(),
                    status: if c.matches { Status::Pass } else { Status::Fail },
                    detail: format!("forms rank {} vs gr rank {}", c.forms_rank, c.k_rank),
                });
            }
            Ok((Value::Array(rows), checks, vec![l.canonical]))
        }
        Command::Suite { .. } => unreachable!("handled by run"),
    }
}

pub fn run(cmd: &Command, echo: &str, seed: u64) -> Report {
    if let Command::Suite { filter, parallel } = cmd {
        let mut r = run_suite(seed, *parallel, filter.as_deref());
        r.command = echo.to_string();
        return r;
    }
    let mut report = Report::new(echo);
    match dispatch(cmd, seed) {
        Ok((results, checks, inputs)) => {
            report.results = results;
            report.checks = checks;
            report.input_digest = Some(digest(&inputs));
            report.settle();
            report
        }
        Err(f) => report.fail_with(f.kind, f.message),
    }
}
