//! The named verification cases. Each case is pure and seeded, so cases run
//! in parallel and the summary is identical across runs.

use rayon::prelude::*;
use serde_json::json;
use twistk_core::algebra::Algebra;
use twistk_core::constructions::{
    clifford, complex, crossed_product, group_algebra, matrix_algebra, matrix_diag, matrix_element, power,
    quaternions, reals, tensor_product, FiniteGroup, GSpace, GroupAction, GwMode, RealFiniteSpace,
};
use twistk_core::exact::{int, Mat, Vector};
use twistk_core::forms::{
    cross_check_gra, diagonalize, random_basis, random_form, scalar_action, transfer_operator, ClassicalCase,
};
use twistk_core::involutions::{
    even_subalgebra, is_balanced, untwist_inner, witness_intertwines, AntiInvolutionMap, Balance, BalanceMethod,
    InvolutionMap,
};
use twistk_core::ktheory::{gr, k0, k_equivariant, kr, morita_check, K0Group};
use twistk_core::random::Sampler;
use twistk_core::structure::{fingerprint, radical, DivisionType, Fingerprint};
use twistk_core::Error;

use crate::report::{Check, Report, Status};
use crate::spec::error_kind;

use DivisionType::{C, H, R};

enum Problem {
    Fail(String),
    Error(String),
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        Problem::Error(format!("{}: {e}", error_kind(&e)))
    }
}

type Outcome = Result<String, Problem>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Problem::Fail(format!($($msg)+)));
        }
    };
}

pub struct Case {
    pub id: &'static str,
    pub anchor: &'static str,
    run: fn(u64) -> Outcome,
}

fn conj_by(a: &Algebra, u: &[twistk_core::exact::Rat]) -> Result<InvolutionMap, Error> {
    InvolutionMap::conjugation(a, u)
}

fn diag(base: &Algebra, d: &[i64]) -> Vector {
    matrix_diag(base, &d.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

fn complex_conj() -> InvolutionMap {
    InvolutionMap::new(&complex(), Mat::diagonal(&[int(1), int(-1)])).expect("complex conjugation")
}

fn hquat_conj_i() -> InvolutionMap {
    let h = quaternions();
    InvolutionMap::conjugation(&h, &h.basis(1)).expect("conjugation by i")
}

fn show(f: &Fingerprint) -> String {
    let parts: Vec<String> = f.iter().map(|(m, d)| format!("({m},{d})")).collect();
    format!("{{{}}}", parts.join(","))
}

fn crossed(tau: &InvolutionMap) -> Result<Fingerprint, Error> {
    fingerprint(&crossed_product(&GroupAction::from_involution(tau)).result)
}

fn expect_fingerprint(tau: &InvolutionMap, want: Fingerprint) -> Outcome {
    let got = crossed(tau)?;
    ensure!(got == want, "expected {}, got {}", show(&want), show(&got));
    Ok(show(&got))
}

fn untwist_matrix(m: usize) -> Outcome {
    let z2 = FiniteGroup::z2();
    let a = matrix_algebra(&reals(), m);
    let mut d = vec![1i64; m];
    d[m - 1] = -1;
    let x = vec![a.unit().clone(), diag(&reals(), &d)];
    let action = GroupAction::by_conjugation(&z2, &a, &x)?;
    let map = untwist_inner(&action, &x)?;
    ensure!(map.is_bijective(), "untwisting map is not bijective");
    let twisted = k0(&crossed_product(&action).result)?;
    let untwisted = k0(&tensor_product(&a, &group_algebra(&z2)))?;
    ensure!(twisted.basis == untwisted.basis, "{twisted} vs {untwisted}");
    Ok(format!("bijective; K0 {twisted}"))
}

fn expect_kr(a: Algebra, tau: InvolutionMap, x: RealFiniteSpace, d: DivisionType) -> Outcome {
    let g = kr(&a, &tau, &x)?;
    ensure!(g.rank == 1 && g.types() == vec![d], "expected rank 1 type {d}, got {g}");
    Ok(g.to_string())
}

fn kr_equals_even_part(tau: &InvolutionMap, pts: usize) -> Result<(K0Group, K0Group), Error> {
    let a0 = even_subalgebra(tau)?;
    let lhs = kr(tau.target(), tau, &RealFiniteSpace::fixed_points(pts))?;
    let rhs = k0(&power(&a0, pts))?;
    Ok((lhs, rhs))
}

fn involution_catalog() -> Vec<(&'static str, InvolutionMap)> {
    let r = reals();
    let m2 = matrix_algebra(&r, 2);
    vec![
        ("R id", InvolutionMap::identity(&r)),
        ("C conj", complex_conj()),
        ("C id", InvolutionMap::identity(&complex())),
        ("H id", InvolutionMap::identity(&quaternions())),
        ("H conj-by-i", hquat_conj_i()),
        ("M2(R) conj-by-diag(1,-1)", InvolutionMap::conjugation(&m2, &diag(&r, &[1, -1])).expect("unit")),
        ("C^{1,1}", clifford(1, 1).1),
        ("C^{0,2}", clifford(0, 2).1),
    ]
}

fn simple_catalog() -> Vec<(String, Algebra, Vec<Vector>)> {
    let mut out = Vec::new();
    for (name, d) in [("R", reals()), ("C", complex()), ("H", quaternions())] {
        for m in 1..=3usize {
            let a = matrix_algebra(&d, m);
            let mut cands: Vec<Vector> = (0u32..1 << m)
                .map(|mask| {
                    let s: Vec<i64> = (0..m).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
                    diag(&d, &s)
                })
                .collect();
            for k in 1..d.dim() {
                let e: Vec<Vec<Vector>> =
                    (0..m).map(|r| (0..m).map(|s| if r == s { d.basis(k) } else { d.zero() }).collect()).collect();
                cands.push(matrix_element(&d, &e));
            }
            out.push((format!("M{m}({name})"), a, cands));
        }
    }
    for (p, q) in [(2usize, 1usize), (0, 3)] {
        let (a, _) = clifford(p, q);
        let cands = (0..a.dim()).map(|k| a.basis(k)).collect();
        out.push((format!("C^{{{p},{q}}}"), a, cands));
    }
    out.into_iter()
        .map(|(n, a, c)| {
            let keep = c.into_iter().filter(|v| a.is_unit(v) && a.is_central(&a.mul(v, v))).collect();
            (n, a, keep)
        })
        .collect()
}

fn positive_stars() -> Result<Vec<AntiInvolutionMap>, Error> {
    let mut out = Vec::new();
    for case in [ClassicalCase::RealId, ClassicalCase::ComplexConj, ClassicalCase::QuatConj] {
        out.push(case.star());
        out.push(AntiInvolutionMap::conjugate_transpose(&case.star(), 2)?);
    }
    Ok(out)
}

fn forms_case(case: ClassicalCase, seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let star = case.star();
    let a = case.algebra();
    for trial in 0..100 {
        let eps = if trial % 2 == 0 { 1 } else { -1 };
        let skew_commutative = eps == -1 && matches!(case, ClassicalCase::RealId | ClassicalCase::ComplexId);
        let r = if skew_commutative { 2 } else { 1 + (trial / 2) % 3 };
        let form = random_form(&star, eps, r, &mut s)?;
        let d = diagonalize(&form)?;
        ensure!(form.gram_of(&d.witness) == d.normal, "{case} #{trial}: bad congruence witness");
        ensure!(d.normal == d.expected_normal(&a, eps), "{case} #{trial}: not a normal form");
        let moved = form.congruent(&random_basis(&a, r, &mut s))?;
        ensure!(diagonalize(&moved)?.invariants(eps) == d.invariants(eps), "{case} #{trial}: invariants moved");
        let psi = random_form(&star, 1, r, &mut s)?;
        ensure!(transfer_operator(&psi, &form)?.self_adjoint, "{case} #{trial}: transfer identity fails");
    }
    Ok(format!("100 random forms over {case}"))
}

fn forms_complexified(seed: u64) -> Outcome {
    let mut s = Sampler::new(seed);
    let c = complex();
    for trial in 0..100 {
        let eps = if trial % 2 == 0 { 1 } else { -1 };
        let r = if eps == 1 { 1 + trial % 3 } else { 2 };
        let psi = random_form(&ClassicalCase::ComplexConj.star(), 1, r, &mut s)?;
        let phi = random_form(&ClassicalCase::ComplexId.star(), eps, r, &mut s)?;
        let t = transfer_operator(&psi, &phi)?;
        let j = scalar_action(&c, r, &c.basis(1));
        ensure!(t.self_adjoint, "complexified #{trial}: transfer identity fails");
        ensure!(&t.theta * &j == -&(&j * &t.theta), "complexified #{trial}: not antilinear");
    }
    Ok("100 antilinear transfer operators".into())
}

pub fn cases() -> Vec<Case> {
    vec![
        Case { id: "ex:AG/C-conj", anchor: "ex:AG", run: |_| expect_fingerprint(&complex_conj(), vec![(2, R)]) },
        Case {
            id: "ex:AG/C-trivial",
            anchor: "ex:AG",
            run: |_| expect_fingerprint(&InvolutionMap::identity(&complex()), vec![(1, C), (1, C)]),
        },
        Case { id: "ex:AG/H-conj-i", anchor: "ex:AG", run: |_| expect_fingerprint(&hquat_conj_i(), vec![(2, C)]) },
        Case { id: "inner/M2R-diag", anchor: "inner", run: |_| untwist_matrix(2) },
        Case { id: "inner/M4R-diag", anchor: "inner", run: |_| untwist_matrix(4) },
        Case {
            id: "inner/H-rejected",
            anchor: "inner",
            run: |_| {
                let h = quaternions();
                let x = vec![h.unit().clone(), h.basis(1)];
                let action = GroupAction::by_conjugation(&FiniteGroup::z2(), &h, &x)?;
                match untwist_inner(&action, &x) {
                    Err(e @ Error::NotARepresentation { .. }) => Ok(e.to_string()),
                    other => Err(Problem::Fail(format!("expected NotARepresentation, got {other:?}"))),
                }
            },
        },
        Case {
            id: "balanced/H-conj-i",
            anchor: "thm:balanced",
            run: |seed| {
                let tau = hquat_conj_i();
                let v = is_balanced(&tau, seed);
                ensure!(v.balanced == Balance::Yes, "verdict {:?}", v.balanced);
                let u = v.witness.ok_or(Problem::Fail("no witness".into()))?;
                ensure!(witness_intertwines(&tau, &u), "witness does not intertwine");
                Ok("balanced, witness verified".into())
            },
        },
        Case {
            id: "balanced/clifford",
            anchor: "Clifford",
            run: |seed| {
                let mut n_cases = 0;
                for n in 1..=4usize {
                    for p in 0..=n {
                        let (_, tau) = clifford(p, n - p);
                        let v = is_balanced(&tau, seed);
                        ensure!(v.balanced == Balance::Yes, "C^{{{p},{}}}: {:?}", n - p, v.balanced);
                        ensure!(witness_intertwines(&tau, v.witness.as_ref().unwrap()), "C^{{{p},{}}}: bad witness", n - p);
                        n_cases += 1;
                    }
                }
                Ok(format!("{n_cases} Clifford algebras balanced"))
            },
        },
        Case {
            id: "balanced/M4R-not",
            anchor: "thm:balanced",
            run: |seed| {
                let m4 = matrix_algebra(&reals(), 4);
                let v = is_balanced(&conj_by(&m4, &diag(&reals(), &[1, 1, 1, -1]))?, seed);
                ensure!(v.balanced == Balance::No, "verdict {:?}", v.balanced);
                ensure!(v.odd_dim == 6, "odd dim {}", v.odd_dim);
                ensure!(matches!(v.method, BalanceMethod::ExactGrid { .. }), "method {:?}", v.method);
                Ok("not balanced, odd dim 6, exact".into())
            },
        },
        Case {
            id: "thm:balanced/catalog",
            anchor: "thm:balanced",
            run: |seed| {
                let mut pairs = vec![("H conj-by-i".to_string(), hquat_conj_i())];
                for n in 1..=3usize {
                    for p in 0..=n {
                        pairs.push((format!("C^{{{p},{}}}", n - p), clifford(p, n - p).1));
                    }
                }
                for (name, tau) in &pairs {
                    ensure!(is_balanced(tau, seed).balanced == Balance::Yes, "{name}: not balanced");
                    for pts in [1, 2] {
                        let (lhs, rhs) = kr_equals_even_part(tau, pts)?;
                        ensure!(lhs == rhs, "{name}, {pts} points: {lhs} vs {rhs}");
                    }
                }
                Ok(format!("{} balanced pairs, 1 and 2 points", pairs.len()))
            },
        },
        Case {
            id: "thm:balanced/named",
            anchor: "thm:balanced",
            run: |_| {
                let (lhs, rhs) = kr_equals_even_part(&hquat_conj_i(), 1)?;
                ensure!(lhs == rhs && lhs.rank == 1 && lhs.types() == vec![C], "H: {lhs} vs {rhs}");
                let (lhs, rhs) = kr_equals_even_part(&clifford(0, 2).1, 1)?;
                ensure!(lhs == rhs && lhs.rank == 1 && lhs.types() == vec![C], "C^{{0,2}}: {lhs} vs {rhs}");
                let (lhs, rhs) = kr_equals_even_part(&clifford(1, 1).1, 1)?;
                ensure!(lhs == rhs && lhs.rank == 2, "C^{{1,1}}: {lhs} vs {rhs}");
                Ok("H: rank 1 C; C^{0,2}: rank 1 C; C^{1,1}: rank 2".into())
            },
        },
        Case {
            id: "quaternionic/H-pt",
            anchor: "quaternionic",
            run: |_| expect_kr(quaternions(), hquat_conj_i(), RealFiniteSpace::point(), C),
        },
        Case {
            id: "quaternionic/H-swap",
            anchor: "quaternionic",
            run: |_| expect_kr(quaternions(), hquat_conj_i(), RealFiniteSpace::swap_pair(), H),
        },
        Case {
            id: "Clifford/C02-pt",
            anchor: "Clifford",
            run: |_| {
                let (a, t) = clifford(0, 2);
                expect_kr(a, t, RealFiniteSpace::point(), C)
            },
        },
        Case {
            id: "Clifford/C02-swap",
            anchor: "Clifford",
            run: |_| {
                let (a, t) = clifford(0, 2);
                expect_kr(a, t, RealFiniteSpace::swap_pair(), R)
            },
        },
        Case { id: "kr/C-conj-pt", anchor: "ex:AG", run: |_| expect_kr(complex(), complex_conj(), RealFiniteSpace::point(), R) },
        Case {
            id: "ex:C11/KR-equals-KO_G",
            anchor: "ex:C11",
            run: |_| {
                let (a, t) = clifford(1, 1);
                let lhs = kr(&a, &t, &RealFiniteSpace::point())?;
                let rhs = k0(&tensor_product(&matrix_algebra(&reals(), 2), &group_algebra(&FiniteGroup::z2())))?;
                ensure!(lhs == rhs, "{lhs} vs {rhs}");
                Ok(lhs.to_string())
            },
        },
        Case {
            id: "GRA/R+1",
            anchor: "GRA",
            run: |_| {
                let g = gr(&reals(), 1, &RealFiniteSpace::point(), &GwMode::Complexified)?;
                ensure!(g.k0.rank == 2, "{}", g.k0);
                Ok(g.k0.to_string())
            },
        },
        Case {
            id: "ex:GRA/R-1",
            anchor: "ex:GRA",
            run: |_| {
                let g = gr(&reals(), -1, &RealFiniteSpace::point(), &GwMode::Complexified)?;
                ensure!(g.k0.rank == 1 && g.k0.types() == vec![C], "{}", g.k0);
                Ok(g.k0.to_string())
            },
        },
        Case {
            id: "realGRA/R+1",
            anchor: "realGRA",
            run: |_| {
                let r = reals();
                let g = gr(&r, 1, &RealFiniteSpace::point(), &GwMode::Real(InvolutionMap::identity(&r)))?;
                ensure!(g.k0.rank == 4, "{}", g.k0);
                Ok(g.k0.to_string())
            },
        },
        Case {
            id: "GRA/cross-check",
            anchor: "GRA",
            run: |_| {
                let stars = positive_stars()?;
                for star in &stars {
                    for eps in [1, -1] {
                        let c = cross_check_gra(star, eps)?;
                        ensure!(c.matches, "{} eps {eps}: forms {} vs gr {}", c.label, c.forms_rank, c.k_rank);
                    }
                }
                Ok(format!("{} catalog entries, both signs", stars.len()))
            },
        },
        Case {
            id: "GRA(X)/equivariant",
            anchor: "GRA(X)",
            run: |_| {
                for a0 in [reals(), complex(), quaternions()] {
                    for x in [RealFiniteSpace::point(), RealFiniteSpace::swap_pair(), RealFiniteSpace::fixed_points(2)] {
                        let lhs = gr(&a0, 1, &x, &GwMode::Complexified)?.k0;
                        let z2 = FiniteGroup::z2();
                        let rhs = k_equivariant(&GroupAction::trivial(&z2, &a0), &x.to_gspace())?;
                        ensure!(lhs == rhs, "dim {} on {} points: {lhs} vs {rhs}", a0.dim(), x.points());
                    }
                }
                Ok("GR of A0 equals K_G of A0 for R, C, H on three spaces".into())
            },
        },
        Case {
            id: "morita/crossed-products",
            anchor: "ex:AG",
            run: |_| {
                let cat = involution_catalog();
                for (name, tau) in &cat {
                    for n in [2, 3] {
                        let r = morita_check(&GroupAction::from_involution(tau), n)?;
                        ensure!(r.agrees, "{name}, n = {n}: {} vs {}", r.base, r.matrix);
                    }
                }
                Ok(format!("{} involutions, n = 2, 3", cat.len()))
            },
        },
        Case {
            id: "ss/random-conjugations",
            anchor: "ss",
            run: |seed| {
                let cat = simple_catalog();
                let mut s = Sampler::fork(seed, 9);
                for trial in 0..100 {
                    let (name, a, cands) = s.pick(&cat);
                    let v = s.pick(cands).clone();
                    let (w, winv) = s.unit_of(a, 1);
                    let u = a.mul(&a.mul(&w, &v), &winv);
                    let cp = crossed_product(&GroupAction::from_involution(&conj_by(a, &u)?)).result;
                    let rad = radical(&cp).len();
                    ensure!(rad == 0, "trial {trial}, {name}: radical of dim {rad}");
                }
                Ok("100 crossed products semisimple".into())
            },
        },
        Case {
            id: "central simple/M2C",
            anchor: "central simple",
            run: |_| {
                let c = complex();
                let m2c = matrix_algebra(&c, 2);
                let lhs = kr(&m2c, &conj_by(&m2c, &diag(&c, &[1, -1]))?, &RealFiniteSpace::point())?;
                let z2 = FiniteGroup::z2();
                let rhs = k_equivariant(&GroupAction::trivial(&z2, &c), &GSpace::trivial(&z2, 1))?;
                ensure!(lhs.rank == 2 && lhs.types() == vec![C, C] && lhs == rhs, "{lhs} vs {rhs}");
                Ok(lhs.to_string())
            },
        },
        Case { id: "self-adjoint/R-id", anchor: "self-adjoint", run: |s| forms_case(ClassicalCase::RealId, s) },
        Case { id: "self-adjoint/C-conj", anchor: "self-adjoint", run: |s| forms_case(ClassicalCase::ComplexConj, s + 1) },
        Case { id: "self-adjoint/C-id", anchor: "self-adjoint", run: |s| forms_case(ClassicalCase::ComplexId, s + 2) },
        Case { id: "self-adjoint/H-conj", anchor: "self-adjoint", run: |s| forms_case(ClassicalCase::QuatConj, s + 3) },
        Case { id: "r:self-adjoint/antilinear", anchor: "r:self-adjoint", run: |s| forms_complexified(s + 4) },
        Case {
            id: "A[G]/group-ring",
            anchor: "A[G]",
            run: |_| {
                let flip = Mat::diagonal(&[int(1), int(-1)]);
                for a0 in [reals(), complex(), quaternions(), matrix_algebra(&reals(), 2)] {
                    let a = tensor_product(&a0, &group_algebra(&FiniteGroup::z2()));
                    let tau = InvolutionMap::new(&a, Mat::identity(a0.dim()).kron(&flip))?;
                    let lhs = kr(&a, &tau, &RealFiniteSpace::point())?;
                    let rhs = k0(&a0)?;
                    ensure!(lhs.rank == rhs.rank, "{lhs} vs {rhs}");
                }
                Ok("R, C, H, M2(R)".into())
            },
        },
        Case {
            id: "kr/additivity",
            anchor: "Swan",
            run: |_| {
                let (a, t) = clifford(1, 1);
                let (x, y) = (RealFiniteSpace::point(), RealFiniteSpace::swap_pair());
                let sum = kr(&a, &t, &x)?.sum(&kr(&a, &t, &y)?);
                let whole = kr(&a, &t, &x.disjoint_union(&y))?;
                ensure!(whole == sum, "{whole} vs {sum}");
                Ok(whole.to_string())
            },
        },
    ]
}

/// Runs every case whose id starts with `filter` on up to `parallel`
/// threads. Failures are reported, never raised.
pub fn run_suite(seed: u64, parallel: usize, filter: Option<&str>) -> Report {
    let selected: Vec<Case> =
        cases().into_iter().filter(|c| filter.map_or(true, |f| c.id.starts_with(f))).collect();
    let run_all = || -> Vec<Check> {
        selected
            .par_iter()
            .map(|c| {
                let (status, detail) = match (c.run)(seed) {
                    Ok(d) => (Status::Pass, d),
                    Err(Problem::Fail(d)) => (Status::Fail, d),
                    Err(Problem::Error(d)) => (Status::Error, d),
                };
                Check { id: c.id.into(), anchor: c.anchor.into(), status, detail }
            })
            .collect()
    };
    let checks = match rayon::ThreadPoolBuilder::new().num_threads(parallel.max(1)).build() {
        Ok(pool) => pool.install(run_all),
        Err(_) => run_all(),
    };
    let mut report = Report::new("suite");
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    report.results = json!({"seed": seed, "cases": checks.len(), "passed": passed});
    report.checks = checks;
    if report.checks.is_empty() {
        return report.fail_with("UsageError", format!("no case matches filter {:?}", filter.unwrap_or("")));
    }
    report.settle();
    report
}
