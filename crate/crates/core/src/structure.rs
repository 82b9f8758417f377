//! Radical, center, and Wedderburn decomposition of semisimple algebras,
//! with each simple factor identified as `M_m(D)` for `D ∈ {ℝ, ℂ, ℍ}`.
//!
//! Scalars have characteristic zero, so the radical is the kernel of the
//! trace form. Simple factors are separated by rational central idempotents
//! and classified by the triple (dimension, center dimension, trace-form
//! signature), which never requires constructing a primitive idempotent.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::exact::mat::independent_subset;
use crate::exact::{self, factor_rational, int, Mat, Rat, RatPoly, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisionType {
    R,
    C,
    H,
}

impl DivisionType {
    /// Real dimension of the division algebra.
    pub fn dim(self) -> usize {
        match self {
            DivisionType::R => 1,
            DivisionType::C => 2,
            DivisionType::H => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            DivisionType::R => "R",
            DivisionType::C => "C",
            DivisionType::H => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "R" => Some(DivisionType::R),
            "C" => Some(DivisionType::C),
            "H" => Some(DivisionType::H),
            _ => None,
        }
    }
}

impl fmt::Display for DivisionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactor {
    pub central_idempotent: Vector,
    pub dim: usize,
    pub center_dim: usize,
    pub trace_signature: i64,
    pub m: usize,
    pub dtype: DivisionType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnReport {
    pub radical_dim: usize,
    pub factors: Vec<SimpleFactor>,
    pub rationally_split: bool,
}

impl WedderburnReport {
    pub fn is_semisimple(&self) -> bool {
        self.radical_dim == 0
    }

    /// Sorted `(m, D)` labels of the factors.
    pub fn fingerprint(&self) -> Fingerprint {
        let mut f: Vec<_> = self.factors.iter().map(|s| (s.m, s.dtype)).collect();
        f.sort_by_key(|&(m, d)| (d, m));
        f
    }

    /// The idempotents are central, idempotent, pairwise orthogonal and sum
    /// to the unit, and the factor dimensions add up to `dim A`.
    pub fn verify(&self, a: &Algebra) -> bool {
        let mut sum = a.zero();
        for (i, f) in self.factors.iter().enumerate() {
            let e = &f.central_idempotent;
            if !a.is_central(e) || a.mul(e, e) != *e {
                return false;
            }
            for g in &self.factors[i + 1..] {
                if !exact::is_zero(&a.mul(e, &g.central_idempotent)) {
                    return false;
                }
            }
            sum = exact::add(&sum, e);
        }
        sum == *a.unit() && self.factors.iter().map(|f| f.dim).sum::<usize>() == a.dim()
    }
}

/// Sorted multiset of `(m, D)`, one entry per simple factor `M_m(D)`.
pub type Fingerprint = Vec<(usize, DivisionType)>;

/// Kernel of the trace form: empty exactly when `a` is semisimple.
pub fn radical(a: &Algebra) -> Vec<Vector> {
    a.trace_form().kernel()
}

/// Basis of the center, obtained by intersecting the centralizers of the
/// basis elements one at a time.
pub fn center(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let mut basis: Vec<Vector> = (0..n).map(|i| a.basis(i)).collect();
    for i in 0..n {
        if basis.len() <= 1 {
            break;
        }
        let cols: Vec<Vector> = basis
            .iter()
            .map(|v| exact::sub(&a.mul_basis_right(v, i), &a.mul_basis_left(i, v)))
            .collect();
        if cols.iter().all(|c| exact::is_zero(c)) {
            continue;
        }
        let k = Mat::from_columns(n, &cols).kernel();
        basis = k
            .iter()
            .map(|coeffs| {
                let mut v = a.zero();
                for (c, b) in coeffs.iter().zip(&basis) {
                    if !c.is_zero() {
                        exact::axpy(&mut v, c, b);
                    }
                }
                v
            })
            .collect();
    }
    basis
}

/// `(m², 1, m) → M_m(ℝ)`, `(2m², 2, 0) → M_m(ℂ)`, `(4m², 1, -2m) → M_m(ℍ)`.
pub fn classify_triple(dim: usize, center_dim: usize, signature: i64) -> Result<(usize, DivisionType), Error> {
    let err = Error::UnclassifiedTriple { dim, center_dim, signature };
    let m = match (center_dim, signature) {
        (1, s) if s > 0 => (s as usize, DivisionType::R),
        (2, 0) => (isqrt(dim / 2), DivisionType::C),
        (1, s) if s < 0 && s % 2 == 0 => ((-s / 2) as usize, DivisionType::H),
        _ => return Err(err),
    };
    if m.0 == 0 || m.0 * m.0 * m.1.dim() != dim {
        return Err(err);
    }
    Ok(m)
}

fn isqrt(x: usize) -> usize {
    let mut r = 0;
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Identifies a simple algebra as `M_m(D)`.
pub fn identify_simple(a: &Algebra) -> Result<(usize, DivisionType), Error> {
    let s = a.trace_form().signature()?;
    classify_triple(a.dim(), center(a).len(), s.signature())
}

/// Largest number of central candidates tried per splitting step.
const SWEEP_LIMIT: usize = 4096;

/// Deterministic candidates in the span of `basis`: the basis vectors, sums
/// of pairs, then all combinations with coefficients in `0..=3`.
fn sweep(basis: &[Vector]) -> impl Iterator<Item = Vector> + '_ {
    let k = basis.len();
    let singles = basis.iter().cloned();
    let pairs = (0..k).flat_map(move |i| (i + 1..k).map(move |j| exact::add(&basis[i], &basis[j])));
    let total = 4usize.checked_pow(k as u32).unwrap_or(usize::MAX);
    let combos = (1..total).map(move |mut code| {
        let mut v = exact::zeros(basis[0].len());
        for b in basis {
            let c = (code % 4) as i64;
            code /= 4;
            if c != 0 {
                exact::axpy(&mut v, &int(c), b);
            }
        }
        v
    });
    singles.chain(pairs).chain(combos).take(SWEEP_LIMIT)
}

/// `p(w)` in the algebra `eA` with unit `e`.
fn eval_in(a: &Algebra, p: &RatPoly, w: &[Rat], e: &[Rat]) -> Vector {
    p.coeffs().iter().rev().fold(a.zero(), |acc, c| {
        let mut next = a.mul(&acc, w);
        exact::axpy(&mut next, c, e);
        next
    })
}

/// Minimal polynomial of `w` in the algebra `eA`, of degree at most `bound`.
fn minimal_polynomial_in(a: &Algebra, w: &[Rat], e: &[Rat], bound: usize) -> RatPoly {
    let mut power = e.to_vec();
    crate::exact::poly::minimal_polynomial_of_sequence(a.dim(), bound, || {
        let next = a.mul(&power, w);
        core::mem::replace(&mut power, next)
    })
}

enum Step {
    Split(Vec<Vector>),
    Field,
}

/// One attempt to split the central idempotent `e`, whose block `eZ` of the
/// center has basis `ez`.
fn split_step(a: &Algebra, e: &[Rat], ez: &[Vector]) -> Result<Step, Error> {
    let zdim = ez.len();
    for w in sweep(ez) {
        let p = minimal_polynomial_in(a, &w, e, zdim);
        let f = factor_rational(&p)?;
        if f.factors.len() >= 2 {
            let parts: Vec<RatPoly> = f.factors.iter().map(|(q, m)| q.pow(*m)).collect();
            let idems = parts
                .iter()
                .map(|q| {
                    let r = p.div_rem(q).0;
                    let (_, s, _) = r.ext_gcd(q);
                    let crt = s.mul(&r).rem(&p);
                    eval_in(a, &crt, &w, e)
                })
                .collect();
            return Ok(Step::Split(idems));
        }
        let (q, mult) = &f.factors[0];
        if *mult > 1 {
            // a nilpotent central element: impossible once the radical is zero
            return Err(Error::NonSemisimple { radical_dim: 0 });
        }
        if q.degree() == Some(zdim) {
            return if q.is_real_split_type() {
                Ok(Step::Field)
            } else {
                Err(Error::IrrationalSplitting { polynomial: q.clone() })
            };
        }
    }
    Err(Error::SplittingSearchExhausted)
}

/// Wedderburn decomposition. An algebra with nonzero radical yields a report
/// with `radical_dim > 0` and no factors.
pub fn wedderburn(a: &Algebra) -> Result<WedderburnReport, Error> {
    let t = a.trace_form();
    let rad = t.kernel();
    if !rad.is_empty() {
        return Ok(WedderburnReport { radical_dim: rad.len(), factors: Vec::new(), rationally_split: false });
    }
    let z = center(a);
    let mut pending = vec![a.unit().clone()];
    let mut primitive: Vec<(Vector, usize)> = Vec::new();
    while let Some(e) = pending.pop() {
        let ez_all: Vec<Vector> = z.iter().map(|v| a.mul(&e, v)).collect();
        let ez: Vec<Vector> = independent_subset(a.dim(), &ez_all).into_iter().map(|i| ez_all[i].clone()).collect();
        if ez.len() == 1 {
            primitive.push((e, 1));
            continue;
        }
        match split_step(a, &e, &ez)? {
            Step::Split(idems) => pending.extend(idems.into_iter().rev()),
            Step::Field => primitive.push((e, ez.len())),
        }
    }
    let mut factors = primitive
        .into_iter()
        .map(|(e, zdim)| simple_factor(a, &t, e, zdim))
        .collect::<Result<Vec<_>, _>>()?;
    factors.sort_by_key(|f| (f.dtype, f.m));
    Ok(WedderburnReport { radical_dim: 0, factors, rationally_split: true })
}

fn simple_factor(a: &Algebra, t: &Mat, e: Vector, center_dim: usize) -> Result<SimpleFactor, Error> {
    let le = a.left_regular(&e);
    let cols = le.independent_columns();
    let b = Mat::from_columns(a.dim(), &cols.iter().map(|&j| le.col(j)).collect::<Vec<_>>());
    let restricted = &(&b.transpose() * t) * &b;
    let inertia = restricted.signature()?;
    let dim = cols.len();
    let (m, dtype) = classify_triple(dim, center_dim, inertia.signature())?;
    Ok(SimpleFactor { central_idempotent: e, dim, center_dim, trace_signature: inertia.signature(), m, dtype })
}

pub fn fingerprint(a: &Algebra) -> Result<Fingerprint, Error> {
    let w = wedderburn(a)?;
    if !w.is_semisimple() {
        return Err(Error::NonSemisimple { radical_dim: w.radical_dim });
    }
    Ok(w.fingerprint())
}

/// Left regular action matrices, one per basis element.
pub fn regular_module(a: &Algebra) -> Vec<Mat> {
    (0..a.dim()).map(|i| a.left_regular(&a.basis(i))).collect()
}

/// Multiplicity of the simple module of each factor (in the order of
/// `wedderburn(a).factors`) in the module given by `action[i] = ρ(b_i)`.
pub fn decompose_module(a: &Algebra, action: &[Mat]) -> Result<Vec<usize>, Error> {
    let n = a.dim();
    if action.len() != n {
        return Err(Error::Shape(alloc::format!("expected {n} action matrices")));
    }
    let k = action.first().map_or(0, Mat::rows);
    if action.iter().any(|m| m.rows() != k || m.cols() != k) {
        return Err(Error::Shape(alloc::format!("action matrices must all be {k}x{k}")));
    }
    let rho = |v: &[Rat]| -> Mat {
        let mut m = Mat::zeros(k, k);
        for (c, r) in v.iter().zip(action) {
            if !c.is_zero() {
                m = &m + &r.scale(c);
            }
        }
        m
    };
    if rho(a.unit()) != Mat::identity(k) {
        return Err(Error::NotUnital);
    }
    for i in 0..n {
        for j in 0..n {
            let mut prod = Mat::zeros(k, k);
            for (l, c) in a.basis_product(i, j) {
                prod = &prod + &action[*l].scale(c);
            }
            if &action[i] * &action[j] != prod {
                return Err(Error::NotAModule { i, j });
            }
        }
    }
    let w = wedderburn(a)?;
    if !w.is_semisimple() {
        return Err(Error::NonSemisimple { radical_dim: w.radical_dim });
    }
    w.factors
        .iter()
        .map(|f| {
            let r = rho(&f.central_idempotent).rank();
            let simple = f.dim / f.m;
            if r % simple != 0 {
                return Err(Error::Shape("module rank is not a multiple of the simple module".into()));
            }
            Ok(r / simple)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        complex, crossed_product, dual_numbers, group_algebra, matrix_algebra, quaternions, reals, tensor_product,
        FiniteGroup, GroupAction,
    };
    use crate::exact::from_i64s;
    use crate::involutions::InvolutionMap;
    use DivisionType::*;

    #[test]
    fn radicals() {
        assert!(radical(&quaternions()).is_empty());
        assert_eq!(radical(&dual_numbers()), vec![from_i64s(&[0, 1])]);
        assert!(radical(&group_algebra(&FiniteGroup::z2())).is_empty());
    }

    #[test]
    fn centers() {
        let m2 = matrix_algebra(&reals(), 2);
        assert_eq!(center(&m2).len(), 1);
        assert_eq!(center(&quaternions()).len(), 1);
        assert_eq!(center(&tensor_product(&complex(), &complex())).len(), 4);
    }

    #[test]
    fn identify() {
        assert_eq!(identify_simple(&quaternions()), Ok((1, H)));
        assert_eq!(identify_simple(&matrix_algebra(&reals(), 2)), Ok((2, R)));
        assert_eq!(identify_simple(&complex()), Ok((1, C)));
        assert_eq!(identify_simple(&matrix_algebra(&quaternions(), 2)), Ok((2, H)));
        assert!(classify_triple(5, 1, 1).is_err());
    }

    #[test]
    fn crossed_products() {
        let c = complex();
        let conj = InvolutionMap::new(&c, Mat::diagonal(&from_i64s(&[1, -1]))).unwrap();
        let cp = crossed_product(&GroupAction::from_involution(&conj));
        assert_eq!(fingerprint(&cp.result), Ok(vec![(2, R)]));
        let triv = crossed_product(&GroupAction::trivial(&FiniteGroup::z2(), &c));
        assert_eq!(fingerprint(&triv.result), Ok(vec![(1, C), (1, C)]));
        let h = quaternions();
        let ci = InvolutionMap::conjugation(&h, &h.basis(1)).unwrap();
        let w = wedderburn(&crossed_product(&GroupAction::from_involution(&ci)).result).unwrap();
        assert_eq!(w.fingerprint(), vec![(2, C)]);
        assert_eq!(w.factors[0].dim, 8);
    }

    #[test]
    fn group_algebra_split() {
        let g = group_algebra(&FiniteGroup::z2());
        let w = wedderburn(&g).unwrap();
        assert_eq!(w.fingerprint(), vec![(1, R), (1, R)]);
        assert!(w.verify(&g));
        // ℝ[S3] = ℝ × ℝ × M_2(ℝ)
        let s3 = group_algebra(&FiniteGroup::symmetric3());
        let w = wedderburn(&s3).unwrap();
        assert_eq!(w.fingerprint(), vec![(1, R), (1, R), (2, R)]);
        assert!(w.verify(&s3));
        // ℝ[ℤ/4] = ℝ × ℝ × ℂ
        assert_eq!(fingerprint(&group_algebra(&FiniteGroup::cyclic(4))), Ok(vec![(1, R), (1, R), (1, C)]));
    }

    #[test]
    fn irrational_center() {
        // ℝ[ℤ/5] needs cos(2π/5)
        let err = fingerprint(&group_algebra(&FiniteGroup::cyclic(5))).unwrap_err();
        assert!(matches!(err, Error::IrrationalSplitting { .. }));
        assert_eq!(fingerprint(&dual_numbers()), Err(Error::NonSemisimple { radical_dim: 1 }));
    }

    #[test]
    fn modules() {
        let g = group_algebra(&FiniteGroup::z2());
        let w = wedderburn(&g).unwrap();
        let reg = decompose_module(&g, &regular_module(&g)).unwrap();
        assert_eq!(reg, w.factors.iter().map(|f| f.m).collect::<Vec<_>>());
        // sign representation: τ ↦ -1
        let sign = vec![Mat::identity(1), Mat::from_i64(&[[-1]])];
        let mult = decompose_module(&g, &sign).unwrap();
        assert_eq!(mult.iter().sum::<usize>(), 1);
        let plus = w.factors.iter().position(|f| f.central_idempotent == vec![exact::rat(1, 2); 2]).unwrap();
        assert_eq!(mult[plus], 0);
        let zero = vec![Mat::zeros(0, 0), Mat::zeros(0, 0)];
        assert_eq!(decompose_module(&g, &zero), Ok(vec![0, 0]));
        let bad = vec![Mat::identity(1), Mat::from_i64(&[[2]])];
        assert_eq!(decompose_module(&g, &bad), Err(Error::NotAModule { i: 1, j: 1 }));
        let m2 = matrix_algebra(&complex(), 2);
        assert_eq!(decompose_module(&m2, &regular_module(&m2)), Ok(vec![2]));
    }
}
