//! Acceptance criteria 1 to 12, run in order with exact comparisons. Prints
//! one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

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
use twistk_core::structure::{fingerprint, radical, DivisionType};
use twistk_core::Error;

use DivisionType::{C, H, R};

const SEED: u64 = 20240601;

type Outcome = Result<(), String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn conj_by(a: &Algebra, u: &[twistk_core::exact::Rat]) -> InvolutionMap {
    InvolutionMap::conjugation(a, u).expect("conjugating unit")
}

fn diag(a: &Algebra, d: &[i64]) -> Vector {
    matrix_diag(a, &d.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

fn complex_conj() -> InvolutionMap {
    InvolutionMap::new(&complex(), Mat::diagonal(&[int(1), int(-1)])).unwrap()
}

fn hquat_conj_i() -> InvolutionMap {
    let h = quaternions();
    conj_by(&h, &h.basis(1))
}

fn types(g: &K0Group) -> Vec<DivisionType> {
    g.types()
}

fn crossed_fingerprint(tau: &InvolutionMap) -> Vec<(usize, DivisionType)> {
    fingerprint(&crossed_product(&GroupAction::from_involution(tau)).result).unwrap()
}

fn criterion_1() -> Outcome {
    let c = complex();
    let conj = crossed_fingerprint(&complex_conj());
    check!(conj == vec![(2, R)], "C x| Z/2 conj: {conj:?}");
    let triv = crossed_fingerprint(&InvolutionMap::identity(&c));
    check!(triv == vec![(1, C), (1, C)], "C x| Z/2 trivial: {triv:?}");
    let h = crossed_fingerprint(&hquat_conj_i());
    check!(h == vec![(2, C)], "H x| Z/2 conj-by-i: {h:?}");
    Ok(())
}

fn criterion_2() -> Outcome {
    let z2 = FiniteGroup::z2();
    for m in [2usize, 4] {
        let a = matrix_algebra(&reals(), m);
        let mut d = vec![1i64; m];
        d[m - 1] = -1;
        let x = vec![a.unit().clone(), diag(&reals(), &d)];
        let action = GroupAction::by_conjugation(&z2, &a, &x).map_err(|e| format!("{e}"))?;
        let map = untwist_inner(&action, &x).map_err(|e| format!("M{m}(R): {e}"))?;
        check!(map.is_bijective(), "M{m}(R): untwisting map not bijective");
        let twisted = k0(&crossed_product(&action).result).map_err(|e| format!("{e}"))?;
        let untwisted = k0(&tensor_product(&a, &group_algebra(&z2))).map_err(|e| format!("{e}"))?;
        check!(twisted.basis == untwisted.basis, "M{m}(R): {twisted} vs {untwisted}");
    }
    let h = quaternions();
    let x = vec![h.unit().clone(), h.basis(1)];
    let action = GroupAction::by_conjugation(&z2, &h, &x).map_err(|e| format!("{e}"))?;
    match untwist_inner(&action, &x) {
        Err(Error::NotARepresentation { .. }) => Ok(()),
        other => Err(format!("H with x = i: expected NotARepresentation, got {other:?}")),
    }
}

fn criterion_3() -> Outcome {
    let tau = hquat_conj_i();
    let v = is_balanced(&tau, SEED);
    check!(v.balanced == Balance::Yes, "H conj-by-i: {:?}", v.balanced);
    let u = v.witness.ok_or("H conj-by-i: no witness")?;
    check!(witness_intertwines(&tau, &u), "H conj-by-i: witness does not intertwine");
    for n in 1..=4usize {
        for p in 0..=n {
            let (a, tau) = clifford(p, n - p);
            let v = is_balanced(&tau, SEED);
            check!(v.balanced == Balance::Yes, "C^{{{p},{}}}: {:?}", n - p, v.balanced);
            check!(witness_intertwines(&tau, v.witness.as_ref().unwrap()), "C^{{{p},{}}}: bad witness", n - p);
            check!(a.dim() == 1 << n, "C^{{{p},{}}}: dim {}", n - p, a.dim());
        }
    }
    let m4 = matrix_algebra(&reals(), 4);
    let v = is_balanced(&conj_by(&m4, &diag(&reals(), &[1, 1, 1, -1])), SEED);
    check!(v.balanced == Balance::No, "M4(R): {:?}", v.balanced);
    check!(v.odd_dim == 6, "M4(R): odd dim {}", v.odd_dim);
    check!(matches!(v.method, BalanceMethod::ExactGrid { .. }), "M4(R): method {:?}", v.method);
    Ok(())
}

fn balanced_catalog() -> Vec<(String, InvolutionMap)> {
    let mut out = vec![("H conj-by-i".to_string(), hquat_conj_i())];
    for n in 1..=3usize {
        for p in 0..=n {
            out.push((format!("C^{{{p},{}}}", n - p), clifford(p, n - p).1));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    for (name, tau) in balanced_catalog() {
        if is_balanced(&tau, SEED).balanced != Balance::Yes {
            return Err(format!("{name}: not balanced"));
        }
        let a0 = even_subalgebra(&tau).map_err(|e| format!("{e}"))?;
        for pts in [1usize, 2] {
            let lhs = kr(tau.target(), &tau, &RealFiniteSpace::fixed_points(pts)).map_err(|e| format!("{e}"))?;
            let rhs = k0(&power(&a0, pts)).map_err(|e| format!("{e}"))?;
            check!(lhs == rhs, "{name}, {pts} points: KR {lhs} vs K0(A0^X) {rhs}");
        }
    }
    let pt = RealFiniteSpace::point();
    let h = kr(&quaternions(), &hquat_conj_i(), &pt).map_err(|e| format!("{e}"))?;
    check!(h.rank == 1 && types(&h) == vec![C], "H conj-by-i: {h}");
    let (c02, t02) = clifford(0, 2);
    let g = kr(&c02, &t02, &pt).map_err(|e| format!("{e}"))?;
    check!(g.rank == 1 && types(&g) == vec![C], "C^{{0,2}}: {g}");
    let (c11, t11) = clifford(1, 1);
    let g = kr(&c11, &t11, &pt).map_err(|e| format!("{e}"))?;
    check!(g.rank == 2, "C^{{1,1}}: {g}");
    Ok(())
}

fn criterion_5() -> Outcome {
    let pt = RealFiniteSpace::point();
    let sw = RealFiniteSpace::swap_pair();
    let h = quaternions();
    let (c02, t02) = clifford(0, 2);
    let cases: [(&str, Algebra, InvolutionMap, &RealFiniteSpace, DivisionType); 5] = [
        ("H conj-i, pt", h.clone(), hquat_conj_i(), &pt, C),
        ("H conj-i, swap", h, hquat_conj_i(), &sw, H),
        ("C^{0,2}, pt", c02.clone(), t02.clone(), &pt, C),
        ("C^{0,2}, swap", c02, t02, &sw, R),
        ("C conj, pt", complex(), complex_conj(), &pt, R),
    ];
    for (name, a, tau, x, d) in cases {
        let g = kr(&a, &tau, x).map_err(|e| format!("{name}: {e}"))?;
        check!(g.rank == 1 && types(&g) == vec![d], "{name}: {g}");
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let r = reals();
    let pt = RealFiniteSpace::point();
    let plus = gr(&r, 1, &pt, &GwMode::Complexified).map_err(|e| format!("{e}"))?;
    check!(plus.k0.rank == 2, "+1 complexified: {}", plus.k0);
    let minus = gr(&r, -1, &pt, &GwMode::Complexified).map_err(|e| format!("{e}"))?;
    check!(minus.k0.rank == 1 && types(&minus.k0) == vec![C], "-1 complexified: {}", minus.k0);
    let real = gr(&r, 1, &pt, &GwMode::Real(InvolutionMap::identity(&r))).map_err(|e| format!("{e}"))?;
    check!(real.k0.rank == 4, "+1 real: {}", real.k0);
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut stars = Vec::new();
    for case in [ClassicalCase::RealId, ClassicalCase::ComplexConj, ClassicalCase::QuatConj] {
        stars.push(case.star());
        stars.push(AntiInvolutionMap::conjugate_transpose(&case.star(), 2).map_err(|e| format!("{e}"))?);
    }
    for star in &stars {
        for eps in [1, -1] {
            let c = cross_check_gra(star, eps).map_err(|e| format!("{e}"))?;
            check!(c.matches, "{} eps {eps}: forms {} vs gr {}", c.label, c.forms_rank, c.k_rank);
        }
    }
    let r = ClassicalCase::RealId.star();
    let plus = cross_check_gra(&r, 1).unwrap();
    let minus = cross_check_gra(&r, -1).unwrap();
    check!(plus.forms_rank == 2 && plus.k_rank == 2, "(R, +1): {plus:?}");
    check!(minus.forms_rank == 1 && minus.k_rank == 1, "(R, -1): {minus:?}");
    Ok(())
}

/// Algebras with involution used by the Morita and radical checks.
fn involution_catalog() -> Vec<(String, InvolutionMap)> {
    let r = reals();
    let c = complex();
    let h = quaternions();
    let m2 = matrix_algebra(&r, 2);
    vec![
        ("R id".into(), InvolutionMap::identity(&r)),
        ("C conj".into(), complex_conj()),
        ("C id".into(), InvolutionMap::identity(&c)),
        ("H id".into(), InvolutionMap::identity(&h)),
        ("H conj-by-i".into(), hquat_conj_i()),
        ("M2(R) conj-by-diag(1,-1)".into(), conj_by(&m2, &diag(&r, &[1, -1]))),
        ("C^{1,1}".into(), clifford(1, 1).1),
        ("C^{0,2}".into(), clifford(0, 2).1),
    ]
}

fn criterion_8() -> Outcome {
    for (name, tau) in involution_catalog() {
        let action = GroupAction::from_involution(&tau);
        for n in [2usize, 3] {
            let rep = morita_check(&action, n).map_err(|e| format!("{name}: {e}"))?;
            check!(rep.agrees, "{name}, n = {n}: {} vs {}", rep.base, rep.matrix);
        }
    }
    Ok(())
}

/// Simple algebras of dimension at most 36, with base units whose square is
/// central.
fn simple_catalog() -> Vec<(String, Algebra, Vec<Vector>)> {
    let mut out = Vec::new();
    for (dname, d) in [("R", reals()), ("C", complex()), ("H", quaternions())] {
        for m in 1..=3usize {
            let a = matrix_algebra(&d, m);
            let mut cands = Vec::new();
            for mask in 0u32..(1 << m) {
                let signs: Vec<i64> = (0..m).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
                cands.push(diag(&d, &signs));
            }
            if m >= 2 {
                let mut e = vec![vec![d.zero(); m]; m];
                e[0][1] = d.unit().clone();
                e[1][0] = d.unit().clone();
                for k in 2..m {
                    e[k][k] = d.unit().clone();
                }
                cands.push(matrix_element(&d, &e));
            }
            for k in 1..d.dim() {
                let e: Vec<Vec<Vector>> =
                    (0..m).map(|r| (0..m).map(|s| if r == s { d.basis(k) } else { d.zero() }).collect()).collect();
                cands.push(matrix_element(&d, &e));
            }
            out.push((format!("M{m}({dname})"), a, cands));
        }
    }
    for (p, q) in [(2usize, 1usize), (0, 3)] {
        let (a, _) = clifford(p, q);
        let cands = (0..a.dim()).map(|k| a.basis(k)).collect();
        out.push((format!("C^{{{p},{q}}}"), a, cands));
    }
    out.into_iter()
        .map(|(name, a, cands)| {
            let keep = cands.into_iter().filter(|v| a.is_unit(v) && a.is_central(&a.mul(v, v))).collect();
            (name, a, keep)
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let catalog = simple_catalog();
    for (name, a, cands) in &catalog {
        let fp = fingerprint(a).map_err(|e| format!("{name}: {e}"))?;
        check!(fp.len() == 1 && a.dim() <= 36 && !cands.is_empty(), "{name}: catalog entry not simple: {fp:?}");
    }
    let mut s = Sampler::new(SEED);
    for trial in 0..100 {
        let (name, a, cands) = s.pick(&catalog);
        let v = s.pick(cands).clone();
        let (w, winv) = s.unit_of(a, 1);
        let u = a.mul(&a.mul(&w, &v), &winv);
        let tau = InvolutionMap::conjugation(a, &u).map_err(|e| format!("trial {trial}, {name}: {e}"))?;
        let cp = crossed_product(&GroupAction::from_involution(&tau)).result;
        let rad = radical(&cp);
        check!(rad.is_empty(), "trial {trial}, {name}: radical of dim {}", rad.len());
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let c = complex();
    let m2c = matrix_algebra(&c, 2);
    let tau = conj_by(&m2c, &diag(&c, &[1, -1]));
    let lhs = kr(&m2c, &tau, &RealFiniteSpace::point()).map_err(|e| format!("{e}"))?;
    let rhs = k_equivariant(&GroupAction::trivial(&FiniteGroup::z2(), &c), &GSpace::trivial(&FiniteGroup::z2(), 1))
        .map_err(|e| format!("{e}"))?;
    check!(lhs.rank == 2 && types(&lhs) == vec![C, C], "KR: {lhs}");
    check!(lhs == rhs, "KR {lhs} vs K_G {rhs}");
    Ok(())
}

fn criterion_11() -> Outcome {
    let mut s = Sampler::new(SEED ^ 11);
    for case in ClassicalCase::ALL {
        let star = case.star();
        let a = case.algebra();
        for trial in 0..100 {
            let eps = if trial % 2 == 0 { 1 } else { -1 };
            let skew_commutative = eps == -1 && matches!(case, ClassicalCase::RealId | ClassicalCase::ComplexId);
            let r = if skew_commutative { 2 } else { 1 + (trial / 2) % 3 };
            let form = random_form(&star, eps, r, &mut s).map_err(|e| format!("{case} #{trial}: {e}"))?;
            let d = diagonalize(&form).map_err(|e| format!("{case} #{trial}: {e}"))?;
            check!(form.gram_of(&d.witness) == d.normal, "{case} #{trial}: witness does not give the normal form");
            check!(d.normal == d.expected_normal(&a, eps), "{case} #{trial}: normal form is not block diagonal");
            let inv = d.invariants(eps);
            let p = random_basis(&a, r, &mut s);
            let moved = form.congruent(&p).map_err(|e| format!("{case} #{trial}: {e}"))?;
            let inv2 = diagonalize(&moved).map_err(|e| format!("{case} #{trial}: {e}"))?.invariants(eps);
            check!(inv == inv2, "{case} #{trial}: invariants moved {inv:?} -> {inv2:?}");
            let psi = random_form(&star, 1, r, &mut s).map_err(|e| format!("{case} #{trial}: {e}"))?;
            let t = transfer_operator(&psi, &form).map_err(|e| format!("{case} #{trial}: {e}"))?;
            check!(t.self_adjoint, "{case} #{trial}: transfer operator is not eps-self-adjoint");
        }
    }
    let c = complex();
    let herm = ClassicalCase::ComplexConj.star();
    let bil = ClassicalCase::ComplexId.star();
    for trial in 0..100 {
        let eps = if trial % 2 == 0 { 1 } else { -1 };
        let r = if eps == 1 { 1 + trial % 3 } else { 2 };
        let psi = random_form(&herm, 1, r, &mut s).map_err(|e| format!("complexified #{trial}: {e}"))?;
        let phi = random_form(&bil, eps, r, &mut s).map_err(|e| format!("complexified #{trial}: {e}"))?;
        let t = transfer_operator(&psi, &phi).map_err(|e| format!("complexified #{trial}: {e}"))?;
        check!(t.self_adjoint, "complexified #{trial}: identity fails");
        let j = scalar_action(&c, r, &c.basis(1));
        check!(&t.theta * &j == -&(&j * &t.theta), "complexified #{trial}: theta is not antilinear");
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    let z2 = FiniteGroup::z2();
    let flip = Mat::diagonal(&[int(1), int(-1)]);
    for (name, a0) in [("R", reals()), ("C", complex()), ("H", quaternions()), ("M2(R)", matrix_algebra(&reals(), 2))] {
        let a = tensor_product(&a0, &group_algebra(&z2));
        let tau = InvolutionMap::new(&a, Mat::identity(a0.dim()).kron(&flip)).map_err(|e| format!("{name}: {e}"))?;
        let lhs = kr(&a, &tau, &RealFiniteSpace::point()).map_err(|e| format!("{name}: {e}"))?;
        let rhs = k0(&a0).map_err(|e| format!("{name}: {e}"))?;
        check!(lhs.rank == rhs.rank, "{name}: KR {lhs} vs K0 {rhs}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("crossed-product identifications", criterion_1),
        ("untwisting inner actions", criterion_2),
        ("balancedness", criterion_3),
        ("balanced KR equals K0 of the even part", criterion_4),
        ("KR table", criterion_5),
        ("GR groups", criterion_6),
        ("forms versus K-theory cross-check", criterion_7),
        ("Morita invariance", criterion_8),
        ("crossed products of simple algebras are semisimple", criterion_9),
        ("central simple shadow", criterion_10),
        ("forms property suite", criterion_11),
        ("group-ring variant", criterion_12),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("{} of {} criteria passed in {:.2} s", criteria.len() - failed, criteria.len(), total.as_secs_f64());
    if failed == 0 && total.as_secs() < 60 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
