//! Algebra involutions τ, anti-involutions *, the even/odd grading of an
//! involution, balancedness, and untwisting of inner actions.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Algebra, AlgebraMap};
use crate::constructions::{crossed_product, group_algebra, tensor_product, CrossedProduct, GroupAction};
use crate::error::Error;
use crate::exact::{self, int, Mat, Rat, Vector};
use crate::random::Sampler;

/// An algebra automorphism `τ` with `τ² = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionMap {
    target: Algebra,
    matrix: Mat,
}

impl InvolutionMap {
    /// Checks `τ² = id`, `τ(1) = 1` and `τ(b_i b_j) = τ(b_i) τ(b_j)`.
    pub fn new(a: &Algebra, matrix: Mat) -> Result<Self, Error> {
        let n = a.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Shape(alloc::format!("involution matrix must be {n}x{n}")));
        }
        if &matrix * &matrix != Mat::identity(n) {
            return Err(Error::NotInvolutive);
        }
        let map = AlgebraMap::new(a, a, matrix)?;
        Ok(InvolutionMap { target: a.clone(), matrix: map.matrix().clone() })
    }

    pub(crate) fn new_unchecked(a: &Algebra, matrix: Mat) -> Self {
        InvolutionMap { target: a.clone(), matrix }
    }

    pub fn identity(a: &Algebra) -> Self {
        InvolutionMap::new_unchecked(a, Mat::identity(a.dim()))
    }

    /// Conjugation `a ↦ u a u⁻¹` by a unit whose square is central, which
    /// makes the conjugation square to the identity.
    pub fn conjugation(a: &Algebra, u: &[Rat]) -> Result<Self, Error> {
        let map = AlgebraMap::conjugation(a, u)?;
        if !a.is_central(&a.mul(u, u)) {
            return Err(Error::NotInvolutive);
        }
        Ok(InvolutionMap::new_unchecked(a, map.matrix().clone()))
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn as_algebra_map(&self) -> AlgebraMap {
        AlgebraMap::new_unchecked(&self.target, &self.target, self.matrix.clone())
    }

    /// `τ ⊗ σ` on `A ⊗ B`.
    pub fn tensor(&self, other: &InvolutionMap) -> InvolutionMap {
        let t = tensor_product(&self.target, &other.target);
        InvolutionMap::new_unchecked(&t, self.matrix.kron(&other.matrix))
    }
}

/// A linear `*` with `(ab)* = b* a*`, `1* = 1` and `a** = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiInvolutionMap {
    target: Algebra,
    matrix: Mat,
}

impl AntiInvolutionMap {
    pub fn new(a: &Algebra, matrix: Mat) -> Result<Self, Error> {
        let n = a.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Shape(alloc::format!("anti-involution matrix must be {n}x{n}")));
        }
        if &matrix * &matrix != Mat::identity(n) {
            return Err(Error::NotInvolutive);
        }
        if matrix.mul_vec(a.unit()) != *a.unit() {
            return Err(Error::NotUnital);
        }
        let images = matrix.columns();
        for i in 0..n {
            for j in 0..n {
                let mut lhs = a.zero();
                for (k, c) in a.basis_product(i, j) {
                    exact::axpy(&mut lhs, c, &images[*k]);
                }
                if lhs != a.mul(&images[j], &images[i]) {
                    return Err(Error::NotAntiMultiplicative { i, j });
                }
            }
        }
        Ok(AntiInvolutionMap { target: a.clone(), matrix })
    }

    /// The identity, an anti-involution exactly when `a` is commutative.
    pub fn identity(a: &Algebra) -> Result<Self, Error> {
        AntiInvolutionMap::new(a, Mat::identity(a.dim()))
    }

    /// `b_0 ↦ b_0`, every other basis element negated: complex conjugation
    /// on ℂ and quaternion conjugation on ℍ.
    pub fn standard_conjugation(a: &Algebra) -> Result<Self, Error> {
        let d: Vector = (0..a.dim()).map(|i| if i == 0 { int(1) } else { int(-1) }).collect();
        AntiInvolutionMap::new(a, Mat::diagonal(&d))
    }

    /// On `matrix_algebra(base, n)`: `(E_rs ⊗ x)* = E_sr ⊗ x*`.
    pub fn conjugate_transpose(base_star: &AntiInvolutionMap, n: usize) -> Result<Self, Error> {
        let base = &base_star.target;
        let m = crate::constructions::matrix_algebra(base, n);
        let d = base.dim();
        let mut mat = Mat::zeros(m.dim(), m.dim());
        for r in 0..n {
            for s in 0..n {
                for k in 0..d {
                    for l in 0..d {
                        let c = base_star.matrix.get(l, k);
                        if !c.is_zero() {
                            mat.set((s * n + r) * d + l, (r * n + s) * d + k, c.clone());
                        }
                    }
                }
            }
        }
        AntiInvolutionMap::new(&m, mat)
    }

    /// `* ⊗ *` on `A ⊗ B`.
    pub fn tensor(&self, other: &AntiInvolutionMap) -> Result<Self, Error> {
        let t = tensor_product(&self.target, &other.target);
        AntiInvolutionMap::new(&t, self.matrix.kron(&other.matrix))
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// Dimension of the space of `*`-fixed elements.
    pub fn fixed_dim(&self) -> usize {
        let n = self.target.dim();
        n - (&self.matrix - &Mat::identity(n)).rank()
    }
}

/// The decomposition `A = A₀ ⊕ A₁` into `±1` eigenspaces of an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub even: Vec<Vector>,
    pub odd: Vec<Vector>,
}

pub fn grading(tau: &InvolutionMap) -> Grading {
    let n = tau.target.dim();
    let id = Mat::identity(n);
    Grading {
        even: (&tau.matrix - &id).kernel(),
        odd: (&tau.matrix + &id).kernel(),
    }
}

/// The fixed subalgebra `A₀ = A^τ` as an algebra in its own right.
pub fn even_subalgebra(tau: &InvolutionMap) -> Result<Algebra, Error> {
    let a = &tau.target;
    let g = grading(tau);
    let labels = g.even.iter().enumerate().map(|(i, _)| alloc::format!("f{i}")).collect();
    a.subalgebra(&g.even, a.unit(), labels)
}

/// `e± = (1 ± τ)/2` in a crossed product by ℤ/2.
pub fn plus_minus_idempotents(cp: &CrossedProduct) -> Result<(Vector, Vector), Error> {
    let g = cp.group();
    if g.order() != 2 {
        return Err(Error::UnsupportedCase("plus/minus idempotents need a group of order 2".into()));
    }
    let r = &cp.result;
    let one = &cp.group_units[g.identity()];
    let tau = &cp.group_units[1 - g.identity()];
    let half = exact::rat(1, 2);
    let plus = exact::scale(&exact::add(one, tau), &half);
    let minus = exact::scale(&exact::sub(one, tau), &half);
    debug_assert!(r.mul(&plus, &plus) == plus && r.mul(&minus, &minus) == minus);
    debug_assert!(exact::is_zero(&r.mul(&plus, &minus)));
    Ok((plus, minus))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Balance {
    Yes,
    No,
    ProbablyNo,
}

/// How a balancedness verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceMethod {
    /// An odd unit was found and verified.
    Witness,
    /// `det(L_u)` vanishes on a grid large enough to force it to vanish
    /// identically on `A₁`.
    ExactGrid { points: u64 },
    /// Random odd elements were all singular.
    Sampling { trials: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedVerdict {
    pub balanced: Balance,
    pub witness: Option<Vector>,
    /// For [`Balance::ProbablyNo`]: an upper bound on the probability that a
    /// balanced involution would have produced the observed samples.
    pub error_bound: Option<Rat>,
    pub odd_dim: usize,
    pub method: BalanceMethod,
}

/// Largest grid evaluated before switching to sampling.
pub const GRID_BUDGET: u64 = 200_000;
pub const SAMPLING_TRIALS: u32 = 20;

/// Decides whether `τ` admits an odd unit `u` (`τ(u) = -u`).
///
/// `det(L_u)` is a polynomial on `A₁` whose degree in the coordinate of the
/// odd basis vector `o_i` is at most `rank(L_{o_i})`. After a short witness
/// sweep, the polynomial is evaluated on a product grid with
/// `rank(L_{o_i}) + 1` values per coordinate, which decides exactly whether
/// it vanishes identically. Grids beyond [`GRID_BUDGET`] fall back to
/// seeded sampling from `0..2³²`.
pub fn is_balanced(tau: &InvolutionMap, seed: u64) -> BalancedVerdict {
    let a = &tau.target;
    let n = a.dim();
    let odd = grading(tau).odd;
    let k = odd.len();
    let verdict = |balanced, witness, error_bound, method| BalancedVerdict {
        balanced,
        witness,
        error_bound,
        odd_dim: k,
        method,
    };
    if k == 0 {
        return verdict(Balance::No, None, None, BalanceMethod::ExactGrid { points: 1 });
    }
    // witness sweep: odd basis vectors, then pairwise sums
    let mut candidates: Vec<Vector> = odd.clone();
    for i in 0..k {
        for j in i + 1..k {
            candidates.push(exact::add(&odd[i], &odd[j]));
        }
    }
    for u in candidates {
        if a.is_unit(&u) {
            return verdict(Balance::Yes, Some(u), None, BalanceMethod::Witness);
        }
    }

    // integer left-regular matrices, one per odd basis vector
    let ls: Vec<Vec<BigInt>> = odd
        .iter()
        .map(|o| {
            let l = a.left_regular(o);
            let den = exact::common_denominator(l.entries());
            l.entries().iter().map(|x| (x * &den).to_integer()).collect()
        })
        .collect();
    let degrees: Vec<u64> = odd.iter().map(|o| a.left_regular(o).rank() as u64).collect();
    let grid = degrees.iter().try_fold(1u64, |acc, d| acc.checked_mul(d + 1));
    let ls_small: Option<Vec<Vec<i128>>> = ls
        .iter()
        .map(|l| l.iter().map(|v| v.to_i128()).collect())
        .collect();
    let singular = |x: &[i64]| -> bool {
        if let Some(small) = &ls_small {
            let mut m = vec![0i128; n * n];
            let mut ok = true;
            'fill: for (l, &xi) in small.iter().zip(x) {
                if xi != 0 {
                    for (e, v) in m.iter_mut().zip(l) {
                        match v.checked_mul(xi as i128).and_then(|p| e.checked_add(p)) {
                            Some(s) => *e = s,
                            None => {
                                ok = false;
                                break 'fill;
                            }
                        }
                    }
                }
            }
            if ok {
                if let Some(zero) = bareiss_zero_i128(&mut m, n) {
                    return zero;
                }
            }
        }
        let mut m = vec![BigInt::zero(); n * n];
        for (l, xi) in ls.iter().zip(x) {
            if *xi != 0 {
                for (e, v) in m.iter_mut().zip(l) {
                    *e += v * xi;
                }
            }
        }
        let rows = (0..n)
            .map(|i| m[i * n..(i + 1) * n].iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        Mat::from_rows(rows).det().is_zero()
    };
    let to_vector = |x: &[i64]| -> Vector {
        let mut u = a.zero();
        for (o, xi) in odd.iter().zip(x) {
            exact::axpy(&mut u, &int(*xi), o);
        }
        u
    };

    match grid {
        Some(points) if points <= GRID_BUDGET => {
            let mut x = vec![0i64; k];
            loop {
                if !singular(&x) {
                    let u = to_vector(&x);
                    debug_assert!(a.is_unit(&u));
                    return verdict(Balance::Yes, Some(u), None, BalanceMethod::Witness);
                }
                // odometer over the grid
                let mut pos = 0;
                loop {
                    if pos == k {
                        return verdict(Balance::No, None, None, BalanceMethod::ExactGrid { points });
                    }
                    x[pos] += 1;
                    if (x[pos] as u64) <= degrees[pos] {
                        break;
                    }
                    x[pos] = 0;
                    pos += 1;
                }
            }
        }
        _ => {
            let mut s = Sampler::new(seed);
            for _ in 0..SAMPLING_TRIALS {
                let x: Vec<i64> = (0..k).map(|_| s.next_u32() as i64).collect();
                if !singular(&x) {
                    let u = to_vector(&x);
                    return verdict(Balance::Yes, Some(u), None, BalanceMethod::Witness);
                }
            }
            // Schwartz–Zippel: a nonzero polynomial of degree <= n vanishes
            // at a uniform point of S^k with probability <= n / |S|
            let per_trial = Rat::new(BigInt::from(n), BigInt::one() << 32);
            let bound = (0..SAMPLING_TRIALS).fold(Rat::one(), |acc, _| acc * &per_trial);
            verdict(
                Balance::ProbablyNo,
                None,
                Some(bound),
                BalanceMethod::Sampling { trials: SAMPLING_TRIALS },
            )
        }
    }
}

/// Zero test of an integer determinant by `i128` Bareiss; `None` on overflow.
fn bareiss_zero_i128(a: &mut [i128], n: usize) -> Option<bool> {
    if n == 0 {
        return Some(false);
    }
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let p = (k + 1..n).find(|&r| a[r * n + k] != 0);
            match p {
                None => return Some(true),
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                }
            }
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(a[i * n + k].checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Some(a[n * n - 1] == 0)
}

/// The isomorphism `A[G] → A ⋊ G`, `a g ↦ a · g · x(g)⁻¹`, for an action by
/// conjugation through a genuine representation `x`.
///
/// The source is `tensor_product(A, group_algebra(G))`, whose basis
/// `a_i ⊗ g` sits at the same index `i * |G| + g` as `a_i g` in the crossed
/// product. The returned map is verified multiplicative and bijective.
pub fn untwist_inner(action: &GroupAction, x: &[Vector]) -> Result<AlgebraMap, Error> {
    let a = action.target();
    let g = action.group();
    let o = g.order();
    if x.len() != o || x.iter().any(|v| v.len() != a.dim()) {
        return Err(Error::Shape("one element x(g) of A per group element".into()));
    }
    let xinv = x
        .iter()
        .map(|v| a.inverse(v).ok_or(Error::NotInvertible))
        .collect::<Result<Vec<_>, _>>()?;
    for h in 0..o {
        for k in 0..o {
            if a.mul(&x[h], &x[k]) != x[g.mul(h, k)] {
                return Err(Error::NotARepresentation { g: h, h: k });
            }
        }
    }
    for h in 0..o {
        for i in 0..a.dim() {
            let inner = a.mul(&a.mul(&x[h], &a.basis(i)), &xinv[h]);
            if inner != action.apply(h, &a.basis(i)) {
                return Err(Error::NotInnerViaX { g: h, basis: i });
            }
        }
    }
    let cp = crossed_product(action);
    let source = tensor_product(a, &group_algebra(g));
    let y: Vec<Vector> = (0..o)
        .map(|h| cp.result.mul(&cp.group_units[h], &cp.embed.apply(&xinv[h])))
        .collect();
    let cols: Vec<Vector> = (0..a.dim() * o)
        .map(|idx| {
            let (i, h) = (idx / o, idx % o);
            cp.result.mul(&cp.embed.apply(&a.basis(i)), &y[h])
        })
        .collect();
    let f = AlgebraMap::new(&source, &cp.result, Mat::from_columns(cp.result.dim(), &cols))?;
    if !f.is_bijective() {
        return Err(Error::NotInvertible);
    }
    Ok(f)
}

/// `τ(a u) = -τ(a) u` on every basis element: right multiplication by an odd
/// unit exchanges `A` with its sign-twisted copy.
pub fn witness_intertwines(tau: &InvolutionMap, u: &[Rat]) -> bool {
    let a = &tau.target;
    (0..a.dim()).all(|i| {
        let b = a.basis(i);
        tau.apply(&a.mul(&b, u)) == exact::neg(&a.mul(&tau.apply(&b), u))
    })
}
