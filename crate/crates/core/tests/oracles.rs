//! Checks against values computed here by hand or by small test-side
//! routines that share no code with the structure module.

use num_traits::{Signed, Zero};

use twistk_core::algebra::{Algebra, AlgebraMap};
use twistk_core::constructions::{
    clifford, complex, crossed_product, group_algebra, matrix_algebra, quaternions, reals, section_algebra,
    FiniteGroup, GroupAction, RealFiniteSpace,
};
use twistk_core::exact::{int, rat, Mat, Rat, Vector};
use twistk_core::involutions::InvolutionMap;
use twistk_core::structure::{classify_triple, fingerprint, wedderburn, DivisionType};

/// Signature by symmetric elimination: a zero diagonal is repaired by adding
/// a row and column with a nonzero off-diagonal entry.
fn oracle_signature(m: &Mat) -> i64 {
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut sig = 0;
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let Some((i, j)) = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        alive.retain(|&i| i != p);
        for &i in &alive {
            let f = &a[i][p] / &d;
            for &k in &alive {
                let v = &f * &a[p][k];
                a[i][k] -= v;
            }
        }
    }
    sig
}

fn oracle_center_dim(a: &Algebra) -> usize {
    let n = a.dim();
    let mut rows = Vec::new();
    for b in 0..n {
        let e = a.basis(b);
        let c = &a.right_regular(&e) - &a.left_regular(&e);
        for i in 0..n {
            rows.push(c.row(i).to_vec());
        }
    }
    n - Mat::from_rows(rows).rank()
}

fn idempotent_set(a: &Algebra) -> Vec<Vector> {
    let mut e: Vec<Vector> = wedderburn(a).unwrap().factors.into_iter().map(|f| f.central_idempotent).collect();
    e.sort();
    e
}

#[test]
fn trace_form_signatures() {
    assert_eq!(oracle_signature(&reals().trace_form()), 1);
    assert_eq!(oracle_signature(&complex().trace_form()), 0);
    assert_eq!(oracle_signature(&quaternions().trace_form()), -2);
    for m in 1..=3 {
        assert_eq!(oracle_signature(&matrix_algebra(&reals(), m).trace_form()), m as i64);
    }
    assert_eq!(oracle_signature(&matrix_algebra(&quaternions(), 2).trace_form()), -4);
}

#[test]
fn oracle_signature_agrees_with_engine_on_random_forms() {
    let mut s = twistk_core::random::Sampler::new(11);
    for _ in 0..40 {
        let x = s.small_matrix(5, 5, 3);
        let sym = &x + &x.transpose();
        let engine = sym.signature().unwrap();
        assert_eq!(oracle_signature(&sym), engine.signature());
    }
}

/// The swap-pair section algebra of (ℍ, conj by i) twisted by ℤ/2 is
/// 16-dimensional with center ℝ and trace signature −4, i.e. M₂(ℍ).
#[test]
fn quaternionic_swap_pair_is_m2h() {
    let h = quaternions();
    let tau = InvolutionMap::conjugation(&h, &h.basis(1)).unwrap();
    let (_, action) = section_algebra(&h, &tau, &RealFiniteSpace::swap_pair());
    let cp = crossed_product(&action).result;
    assert_eq!(cp.dim(), 16);
    assert_eq!(oracle_center_dim(&cp), 1);
    assert_eq!(oracle_signature(&cp.trace_form()), -4);
    assert_eq!(classify_triple(16, 1, -4), Ok((2, DivisionType::H)));
    assert_eq!(fingerprint(&cp).unwrap(), vec![(2, DivisionType::H)]);
}

#[test]
fn cyclic_four_idempotents_by_hand() {
    let a = group_algebra(&FiniteGroup::cyclic(4));
    let q = |v: [i64; 4], d: i64| v.iter().map(|&x| rat(x, d)).collect::<Vector>();
    let mut hand = vec![q([1, 1, 1, 1], 4), q([1, -1, 1, -1], 4), q([1, 0, -1, 0], 2)];
    hand.sort();
    assert_eq!(idempotent_set(&a), hand);
}

#[test]
fn symmetric_three_idempotents_by_hand() {
    let g = FiniteGroup::symmetric3();
    let a = group_algebra(&g);
    let order = |x: usize| (1..=6).find(|&k| (0..k).fold(g.identity(), |acc, _| g.mul(acc, x)) == g.identity()).unwrap();
    let trivial: Vector = (0..6).map(|_| rat(1, 6)).collect();
    let sign: Vector = (0..6).map(|x| rat(if order(x) == 2 { -1 } else { 1 }, 6)).collect();
    let rest: Vector = (0..6)
        .map(|x| {
            let one = if x == g.identity() { int(1) } else { int(0) };
            one - &trivial[x] - &sign[x]
        })
        .collect();
    let mut hand = vec![trivial, sign, rest];
    hand.sort();
    assert_eq!(idempotent_set(&a), hand);
}

/// ℂ ⋊ ℤ/2 with conjugation maps onto M₂(ℝ) by 1 ↦ I, i ↦ J, τ ↦ diag(1, −1).
#[test]
fn complex_conjugation_crossed_product_is_m2r() {
    let c = complex();
    let conj = InvolutionMap::new(&c, Mat::diagonal(&[int(1), int(-1)])).unwrap();
    let cp = crossed_product(&GroupAction::from_involution(&conj)).result;
    let m2 = matrix_algebra(&reals(), 2);
    let img = |e: [i64; 4]| e.iter().map(|&x| int(x)).collect::<Vector>();
    let one = img([1, 0, 0, 1]);
    let j = img([0, -1, 1, 0]);
    let d = img([1, 0, 0, -1]);
    let jd = m2.mul(&j, &d);
    // crossed product index is a * |G| + g
    let cols = vec![one, d, j, jd];
    let map = AlgebraMap::new(&cp, &m2, Mat::from_columns(4, &cols)).unwrap();
    assert!(map.is_bijective());
}

/// In M₂(ℝ) ⋊ ℤ/2 with τ = conj by j = diag(1, −1), the elements (1 ± jτ)/2
/// are orthogonal central idempotents summing to 1.
#[test]
fn plus_twist_splits_by_hand() {
    let m2 = matrix_algebra(&reals(), 2);
    let jm = m2.basis(0).iter().zip(m2.basis(3)).map(|(a, b)| a - b).collect::<Vector>();
    let tau = InvolutionMap::conjugation(&m2, &jm).unwrap();
    let cp = crossed_product(&GroupAction::from_involution(&tau));
    let b = &cp.result;
    let jt = b.mul(&cp.embed.apply(&jm), &cp.group_units[1]);
    let half = rat(1, 2);
    let plus: Vector = b.unit().iter().zip(&jt).map(|(u, x)| (u + x) * &half).collect();
    let minus: Vector = b.unit().iter().zip(&jt).map(|(u, x)| (u - x) * &half).collect();
    for e in [&plus, &minus] {
        assert!(b.is_central(e));
        assert_eq!(&b.mul(e, e), e);
    }
    assert!(b.mul(&plus, &minus).iter().all(Zero::is_zero));
    let mut hand = vec![plus, minus];
    hand.sort();
    assert_eq!(idempotent_set(b), hand);
    assert_eq!(fingerprint(b).unwrap(), vec![(2, DivisionType::R), (2, DivisionType::R)]);
}

/// C^{2,0} is ℍ under e₁ ↦ i, e₂ ↦ j.
#[test]
fn clifford_two_zero_is_quaternions() {
    let (c20, _) = clifford(2, 0);
    let h = quaternions();
    // bitmask basis: 1, e1, e2, e1e2
    let cols: Vec<Vector> = [0usize, 1, 2, 3].iter().map(|&k| h.basis(k)).collect();
    let map = AlgebraMap::new(&c20, &h, Mat::from_columns(4, &cols)).unwrap();
    assert!(map.is_bijective());
}
