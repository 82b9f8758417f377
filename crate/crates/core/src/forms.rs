//! ε-symmetric forms over algebras with anti-involution.
//!
//! Modules are free left modules `A^r` (row vectors), and the form with
//! Gram matrix `g` is
//!
//! ```text
//! B(x, y) = Σ_ij y_j · g_ij · x_i*,
//! ```
//!
//! so that `B(x, a y) = a B(x, y)`, `B(a x, y) = B(x, y) a*` and
//! `B(e_i, e_j) = g_ij`. The form is ε-symmetric, `B(y, x) = ε B(x, y)*`,
//! exactly when `g_ji = ε g_ij*`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::Algebra;
use crate::constructions::{complex, gw_twist, quaternions, reals, GwMode, RealFiniteSpace};
use crate::error::Error;
use crate::exact::{self, Mat, Rat, Vector};
use crate::involutions::AntiInvolutionMap;
use crate::ktheory::kr;
use crate::random::Sampler;
use crate::structure::{fingerprint, DivisionType};

/// Element of `A^r`: one algebra coordinate vector per slot.
pub type ModuleVector = Vec<Vector>;

/// The division algebras with involution for which forms are classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalCase {
    /// ℝ with the identity.
    RealId,
    /// ℂ with complex conjugation.
    ComplexConj,
    /// ℂ with the identity.
    ComplexId,
    /// ℍ with quaternion conjugation.
    QuatConj,
}

impl ClassicalCase {
    pub const ALL: [ClassicalCase; 4] =
        [ClassicalCase::RealId, ClassicalCase::ComplexConj, ClassicalCase::ComplexId, ClassicalCase::QuatConj];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalCase::RealId => "R/id",
            ClassicalCase::ComplexConj => "C/conj",
            ClassicalCase::ComplexId => "C/id",
            ClassicalCase::QuatConj => "H/conj",
        }
    }

    pub fn algebra(self) -> Algebra {
        match self {
            ClassicalCase::RealId => reals(),
            ClassicalCase::ComplexConj | ClassicalCase::ComplexId => complex(),
            ClassicalCase::QuatConj => quaternions(),
        }
    }

    pub fn star(self) -> AntiInvolutionMap {
        let a = self.algebra();
        match self {
            ClassicalCase::RealId | ClassicalCase::ComplexId => AntiInvolutionMap::identity(&a),
            ClassicalCase::ComplexConj | ClassicalCase::QuatConj => AntiInvolutionMap::standard_conjugation(&a),
        }
        .expect("classical anti-involution")
    }

    /// Basis index of the axis along which diagonal entries are real, when
    /// their sign is a congruence invariant.
    pub fn sign_axis(self, epsilon: i64) -> Option<usize> {
        match (self, epsilon) {
            (ClassicalCase::RealId | ClassicalCase::ComplexConj | ClassicalCase::QuatConj, 1) => Some(0),
            (ClassicalCase::ComplexConj, -1) => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for ClassicalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Recognizes `(M_m(D), *)` with `*` of the classical type for `D`, from the
/// Wedderburn fingerprint and the dimension of the `*`-fixed space.
pub fn recognize(star: &AntiInvolutionMap) -> Result<(ClassicalCase, usize), Error> {
    let a = star.target();
    let unsupported = || Error::UnsupportedCase(alloc::format!("no classical form theory for {a:?}"));
    let fp = fingerprint(a).map_err(|_| unsupported())?;
    let [(m, d)] = fp[..] else {
        return Err(unsupported());
    };
    let fixed = star.fixed_dim();
    let case = match d {
        DivisionType::R if fixed == m * (m + 1) / 2 => ClassicalCase::RealId,
        DivisionType::C if fixed == m * m => ClassicalCase::ComplexConj,
        DivisionType::C if fixed == m * (m + 1) => ClassicalCase::ComplexId,
        DivisionType::H if fixed == m * (2 * m - 1) => ClassicalCase::QuatConj,
        _ => return Err(unsupported()),
    };
    Ok((case, m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    algebra: Algebra,
    star: AntiInvolutionMap,
    epsilon: i64,
    gram: Vec<Vec<Vector>>,
}

/// Validates ε-symmetry entrywise and invertibility on the realification.
pub fn make_form(star: &AntiInvolutionMap, epsilon: i64, gram: Vec<Vec<Vector>>) -> Result<HermitianForm, Error> {
    let a = star.target();
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::UnsupportedCase(alloc::format!("epsilon must be ±1, got {epsilon}")));
    }
    let r = gram.len();
    if gram.iter().any(|row| row.len() != r || row.iter().any(|x| x.len() != a.dim())) {
        return Err(Error::Shape("gram matrix must be square with entries in the algebra".into()));
    }
    for i in 0..r {
        for j in 0..r {
            let expect = exact::scale(&star.apply(&gram[i][j]), &exact::int(epsilon));
            if gram[j][i] != expect {
                return Err(Error::NotEpsilonSymmetric { i, j });
            }
        }
    }
    let form = HermitianForm { algebra: a.clone(), star: star.clone(), epsilon, gram };
    if form.realification().rank() != r * a.dim() {
        return Err(Error::Singular);
    }
    Ok(form)
}

impl HermitianForm {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn star(&self) -> &AntiInvolutionMap {
        &self.star
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn gram(&self) -> &[Vec<Vector>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// `B(x, y)`
    pub fn eval(&self, x: &[Vector], y: &[Vector]) -> Vector {
        let a = &self.algebra;
        let mut out = a.zero();
        for (i, xi) in x.iter().enumerate() {
            if exact::is_zero(xi) {
                continue;
            }
            let xs = self.star.apply(xi);
            for (j, yj) in y.iter().enumerate() {
                if !exact::is_zero(yj) {
                    out = exact::add(&out, &a.mul(&a.mul(yj, &self.gram[i][j]), &xs));
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ B(x, ·)` over ℝ: the functional `y ↦ Σ_j y_j v_j` is
    /// recorded by `v_j = Σ_i g_ij x_i*`, and slot `(i, a)` of `A^r` has
    /// index `i * dim A + a`.
    pub fn realification(&self) -> Mat {
        let a = &self.algebra;
        let d = a.dim();
        let r = self.rank();
        let mut m = Mat::zeros(r * d, r * d);
        for i in 0..r {
            for k in 0..d {
                let s = self.star.apply(&a.basis(k));
                for j in 0..r {
                    let v = a.mul(&self.gram[i][j], &s);
                    for (c, x) in v.into_iter().enumerate() {
                        if !x.is_zero() {
                            m.set(j * d + c, i * d + k, x);
                        }
                    }
                }
            }
        }
        m
    }

    /// Gram matrix `B(f_k, f_l)` of the vectors `f`.
    pub fn gram_of(&self, f: &[ModuleVector]) -> Vec<Vec<Vector>> {
        f.iter().map(|x| f.iter().map(|y| self.eval(x, y)).collect()).collect()
    }

    /// The same form in the basis given by the rows of `p`.
    pub fn congruent(&self, p: &[ModuleVector]) -> Result<HermitianForm, Error> {
        make_form(&self.star, self.epsilon, self.gram_of(p))
    }
}

fn unit_vector(a: &Algebra, r: usize, i: usize, k: usize) -> ModuleVector {
    (0..r).map(|j| if j == i { a.basis(k) } else { a.zero() }).collect()
}

fn from_real(a: &Algebra, r: usize, v: &[Rat]) -> ModuleVector {
    let d = a.dim();
    (0..r).map(|i| v[i * d..(i + 1) * d].to_vec()).collect()
}

fn module_add(x: &[Vector], y: &[Vector]) -> ModuleVector {
    x.iter().zip(y).map(|(u, v)| exact::add(u, v)).collect()
}

/// `c · x` for a scalar `c ∈ A` acting on the left.
fn module_scale(a: &Algebra, c: &[Rat], x: &[Vector]) -> ModuleVector {
    x.iter().map(|v| a.mul(c, v)).collect()
}

/// `θ = ψ⁻¹ φ` on the realification, with `B_ψ(θx, y) = B_φ(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub theta: Mat,
    /// `B_ψ(x, θy) = ε (*_ψ *_φ)(B_ψ(θx, y))` held on all basis pairs; with
    /// a common anti-involution this reads `B(θx, y) = ε B(x, θy)`.
    pub self_adjoint: bool,
}

pub fn transfer_operator(psi: &HermitianForm, phi: &HermitianForm) -> Result<Transfer, Error> {
    if psi.epsilon != 1 {
        return Err(Error::UnsupportedCase("the reference form must be symmetric (epsilon = +1)".into()));
    }
    if psi.algebra != phi.algebra || psi.rank() != phi.rank() {
        return Err(Error::Shape("forms must live on the same module".into()));
    }
    let a = &psi.algebra;
    let (r, d) = (psi.rank(), a.dim());
    let rinv = psi.realification().inverse().ok_or(Error::Singular)?;
    let theta = &rinv * &phi.realification();
    let eps = exact::int(phi.epsilon);
    let images: Vec<ModuleVector> = (0..r * d).map(|c| from_real(a, r, &theta.col(c))).collect();
    let mut self_adjoint = true;
    'pairs: for x in 0..r * d {
        let ex = unit_vector(a, r, x / d, x % d);
        for y in 0..r * d {
            let ey = unit_vector(a, r, y / d, y % d);
            let left = psi.eval(&images[x], &ey);
            if left != phi.eval(&ex, &ey) {
                self_adjoint = false;
                break 'pairs;
            }
            let right = psi.eval(&ex, &images[y]);
            let twisted = exact::scale(&psi.star.apply(&phi.star.apply(&left)), &eps);
            if right != twisted {
                self_adjoint = false;
                break 'pairs;
            }
        }
    }
    Ok(Transfer { theta, self_adjoint })
}

/// The realified action of a central scalar `iota` on `A^r`.
pub fn scalar_action(a: &Algebra, r: usize, iota: &[Rat]) -> Mat {
    Mat::identity(r).kron(&a.left_regular(iota))
}

/// One block of a normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// A one-dimensional block `⟨d⟩`.
    Diagonal(Vector),
    /// `[[0, 1], [ε, 0]]`.
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub case: ClassicalCase,
    pub blocks: Vec<Block>,
    /// Rows are the new basis vectors.
    pub witness: Vec<ModuleVector>,
    /// Gram matrix in the new basis, equal to the block form.
    pub normal: Vec<Vec<Vector>>,
}

/// Exact Gram–Schmidt over a classical division algebra: anisotropic
/// vectors are split off one at a time, isotropic ones are first mixed
/// (`f_k + a f_l` for basis elements `a`), and when no mixing helps the pair
/// spans a hyperbolic plane. Nonzero diagonal entries are kept as they are,
/// since normalizing them to ±1 would need square roots.
pub fn diagonalize(form: &HermitianForm) -> Result<Diagonalization, Error> {
    let (case, m) = recognize(&form.star)?;
    if m != 1 {
        return Err(Error::UnsupportedCase("diagonalization needs a division algebra".into()));
    }
    let a = &form.algebra;
    let r = form.rank();
    let eps = exact::int(form.epsilon);
    let mut remaining: Vec<ModuleVector> = (0..r).map(|i| unit_vector(a, r, i, 0)).collect();
    // unit_vector uses basis(0), which is the unit for the classical algebras
    debug_assert!(a.basis(0) == *a.unit());
    let mut blocks = Vec::new();
    let mut witness = Vec::new();
    while !remaining.is_empty() {
        let g = form.gram_of(&remaining);
        let n = remaining.len();
        if let Some(k) = (0..n).find(|&k| !exact::is_zero(&g[k][k])) {
            let dinv = a.inverse(&g[k][k]).ok_or(Error::Singular)?;
            let pivot = remaining.remove(k);
            for (l, f) in remaining.iter_mut().enumerate() {
                let l = if l >= k { l + 1 } else { l };
                let c = a.mul(&g[k][l], &dinv);
                if !exact::is_zero(&c) {
                    *f = module_add(f, &module_scale(a, &exact::neg(&c), &pivot));
                }
            }
            blocks.push(Block::Diagonal(g[k][k].clone()));
            witness.push(pivot);
            continue;
        }
        let (k, l) = (0..n)
            .find_map(|k| (0..n).find(|&l| !exact::is_zero(&g[k][l])).map(|l| (k, l)))
            .ok_or(Error::Singular)?;
        let mixed = (0..a.dim()).find_map(|t| {
            let f = module_add(&remaining[k], &module_scale(a, &a.basis(t), &remaining[l]));
            (!exact::is_zero(&form.eval(&f, &f))).then_some(f)
        });
        if let Some(f) = mixed {
            remaining[k] = f;
            continue;
        }
        let hinv = a.inverse(&g[k][l]).ok_or(Error::Singular)?;
        let e = remaining[k].clone();
        let f = module_scale(a, &hinv, &remaining[l]);
        let rest: Vec<ModuleVector> = remaining
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != k && t != l)
            .map(|(_, v)| {
                let beta = form.eval(&e, v);
                let alpha = exact::scale(&form.eval(&f, v), &eps);
                let v = module_add(v, &module_scale(a, &exact::neg(&alpha), &e));
                module_add(&v, &module_scale(a, &exact::neg(&beta), &f))
            })
            .collect();
        blocks.push(Block::Hyperbolic);
        witness.push(e);
        witness.push(f);
        remaining = rest;
    }
    let normal = form.gram_of(&witness);
    let d = Diagonalization { case, blocks, witness, normal };
    if d.normal != d.expected_normal(a, form.epsilon) {
        return Err(Error::UnsupportedCase("diagonalization did not reach a normal form".into()));
    }
    Ok(d)
}

impl Diagonalization {
    /// The block-diagonal Gram matrix described by `blocks`.
    pub fn expected_normal(&self, a: &Algebra, epsilon: i64) -> Vec<Vec<Vector>> {
        let r: usize = self.blocks.iter().map(|b| if matches!(b, Block::Hyperbolic) { 2 } else { 1 }).sum();
        let mut g = vec![vec![a.zero(); r]; r];
        let mut at = 0;
        for b in &self.blocks {
            match b {
                Block::Diagonal(x) => {
                    g[at][at] = x.clone();
                    at += 1;
                }
                Block::Hyperbolic => {
                    g[at][at + 1] = a.unit().clone();
                    g[at + 1][at] = exact::scale(a.unit(), &exact::int(epsilon));
                    at += 2;
                }
            }
        }
        g
    }

    pub fn invariants(&self, epsilon: i64) -> GWInvariants {
        let rank = self.witness.len();
        let hyperbolic_only = self.blocks.iter().all(|b| matches!(b, Block::Hyperbolic));
        let signature = self.case.sign_axis(epsilon).map(|axis| {
            let mut s = 0i64;
            for b in &self.blocks {
                match b {
                    Block::Diagonal(x) => {
                        debug_assert!(x.iter().enumerate().all(|(k, c)| k == axis || c.is_zero()));
                        s += if x[axis].is_positive() { 1 } else { -1 };
                    }
                    Block::Hyperbolic => {}
                }
            }
            s
        });
        GWInvariants { rank, signature, hyperbolic_only }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWInvariants {
    pub rank: usize,
    pub signature: Option<i64>,
    pub hyperbolic_only: bool,
}

/// The Grothendieck–Witt group of a classical case at a point, as the free
/// abelian group on its complete invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwPoint {
    pub case: ClassicalCase,
    pub m: usize,
    pub epsilon: i64,
    pub invariants: Vec<&'static str>,
    pub rank: usize,
}

/// `M_m(D)` with its classical anti-involution reduces to `D` by Morita
/// equivalence; over `D`, forms are classified by rank, plus the signature
/// in the cases listed by [`ClassicalCase::sign_axis`].
pub fn gw_point(star: &AntiInvolutionMap, epsilon: i64) -> Result<GwPoint, Error> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::UnsupportedCase(alloc::format!("epsilon must be ±1, got {epsilon}")));
    }
    let (case, m) = recognize(star)?;
    let invariants = if case.sign_axis(epsilon).is_some() { vec!["rank", "signature"] } else { vec!["rank"] };
    let rank = invariants.len();
    Ok(GwPoint { case, m, epsilon, invariants, rank })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraCheck {
    pub label: String,
    pub epsilon: i64,
    pub forms_rank: usize,
    pub k_rank: usize,
    pub matches: bool,
}

/// Compares the forms side (`gw_point` of `(A0, *)`) with the K-theory side
/// (`KR` of the complexified twist of `A0`) at a point. The star must be a
/// positive one (`x* x = 0` only for `x = 0`), so (ℂ, id) is rejected.
pub fn cross_check_gra(star: &AntiInvolutionMap, epsilon: i64) -> Result<GraCheck, Error> {
    let a0 = star.target();
    let forms = gw_point(star, epsilon)?;
    if forms.case == ClassicalCase::ComplexId {
        return Err(Error::UnsupportedCase("the cross-check needs a positive anti-involution".into()));
    }
    let (a, tau) = gw_twist(a0, epsilon, &GwMode::Complexified)?;
    let k = kr(&a, &tau, &RealFiniteSpace::point())?;
    let label = if forms.m == 1 {
        alloc::format!("{}", forms.case)
    } else {
        alloc::format!("M{}({})", forms.m, forms.case)
    };
    Ok(GraCheck { label, epsilon, forms_rank: forms.rank, k_rank: k.rank, matches: forms.rank == k.rank })
}

/// A random invertible ε-symmetric form of rank `r` with small entries.
/// Fails with [`Error::Singular`] when no draw is invertible, as for skew
/// forms of odd rank over a commutative algebra with trivial star.
pub fn random_form(star: &AntiInvolutionMap, epsilon: i64, r: usize, s: &mut Sampler) -> Result<HermitianForm, Error> {
    let a = star.target();
    let eps = exact::int(epsilon);
    for _ in 0..RANDOM_FORM_ATTEMPTS {
        let mut g = vec![vec![a.zero(); r]; r];
        for i in 0..r {
            let x = s.small_vector(a.dim(), 3);
            g[i][i] = exact::add(&x, &exact::scale(&star.apply(&x), &eps));
            for j in i + 1..r {
                let x = s.small_vector(a.dim(), 3);
                g[j][i] = exact::scale(&star.apply(&x), &eps);
                g[i][j] = x;
            }
        }
        match make_form(star, epsilon, g) {
            Err(Error::Singular) => continue,
            other => return other,
        }
    }
    Err(Error::Singular)
}

const RANDOM_FORM_ATTEMPTS: usize = 64;

/// A random basis change (rows of an invertible matrix over `A`).
pub fn random_basis(a: &Algebra, r: usize, s: &mut Sampler) -> Vec<ModuleVector> {
    loop {
        let p: Vec<ModuleVector> = (0..r).map(|_| (0..r).map(|_| s.small_vector(a.dim(), 2)).collect()).collect();
        let cols: Vec<Vector> = p.iter().flat_map(|row| {
            (0..a.dim()).map(move |k| row.iter().flat_map(|x| a.mul(&a.basis(k), x)).collect::<Vector>())
        }).collect();
        if Mat::from_columns(r * a.dim(), &cols).rank() == r * a.dim() {
            return p;
        }
    }
}
