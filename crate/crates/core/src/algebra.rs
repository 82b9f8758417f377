//! Finite-dimensional unital algebras over ℚ (standing in for ℝ) given by
//! structure constants, and validated algebra homomorphisms between them.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exact::{self, Mat, Rat, Vector};

/// Sparse product `b_i b_j` as `(k, c_ijk)` pairs with `c_ijk != 0`.
pub type SparseVector = Vec<(usize, Rat)>;

/// A unital associative algebra with basis `b_0 .. b_{n-1}` and
/// `b_i b_j = Σ_k c[i][j][k] b_k`.
///
/// Associativity and the unit are checked when the algebra is built from raw
/// data. Cloning is cheap; the structure constants are shared.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraData>);

struct AlgebraData {
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVector>,
    unit: Vector,
}

impl Algebra {
    /// Builds an algebra from a dense structure tensor `c[i][j][k]`.
    pub fn new(structure: &[Vec<Vector>], unit: Vector, labels: Vec<String>) -> Result<Self, Error> {
        let n = unit.len();
        if structure.len() != n
            || structure.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::Shape(alloc::format!("structure tensor must be {n}x{n}x{n}")));
        }
        let table = structure
            .iter()
            .flat_map(|row| row.iter().map(|v| sparse(v)))
            .collect();
        Algebra::from_table(table, unit, labels)
    }

    /// Builds an algebra from sparse products, `table[i * n + j] = b_i b_j`.
    pub fn from_table(table: Vec<SparseVector>, unit: Vector, labels: Vec<String>) -> Result<Self, Error> {
        let n = unit.len();
        if table.len() != n * n || table.iter().flatten().any(|(k, _)| *k >= n) {
            return Err(Error::Shape(alloc::format!("product table must have {n}x{n} entries")));
        }
        if labels.len() != n {
            return Err(Error::Shape(alloc::format!("expected {n} basis labels")));
        }
        let a = Algebra::from_table_unchecked(table, unit, labels);
        a.check_unit()?;
        a.check_associative()?;
        Ok(a)
    }

    /// For constructions whose associativity follows from already validated
    /// inputs.
    pub(crate) fn from_table_unchecked(mut table: Vec<SparseVector>, unit: Vector, labels: Vec<String>) -> Self {
        for entry in &mut table {
            entry.retain(|(_, c)| !c.is_zero());
            entry.sort_by_key(|(k, _)| *k);
        }
        Algebra(Arc::new(AlgebraData { dim: unit.len(), labels, table, unit }))
    }

    fn check_unit(&self) -> Result<(), Error> {
        let u = self.unit();
        for i in 0..self.dim() {
            let b = exact::basis_vector(self.dim(), i);
            if self.mul(u, &b) != b || self.mul(&b, u) != b {
                return Err(Error::BadUnit { index: i });
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), Error> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let mut left = exact::zeros(n);
                    for (m, c) in ij {
                        accumulate(&mut left, c, self.basis_product(*m, k));
                    }
                    let mut right = exact::zeros(n);
                    for (m, c) in self.basis_product(j, k) {
                        accumulate(&mut right, c, self.basis_product(i, *m));
                    }
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &Vector {
        &self.0.unit
    }

    pub fn zero(&self) -> Vector {
        exact::zeros(self.dim())
    }

    pub fn basis(&self, i: usize) -> Vector {
        exact::basis_vector(self.dim(), i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVector {
        &self.0.table[i * self.0.dim + j]
    }

    /// Dense structure tensor `c[i][j][k]`.
    pub fn structure_tensor(&self) -> Vec<Vec<Vector>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = exact::zeros(n);
                        for (k, c) in self.basis_product(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vector {
        let n = self.dim();
        let mut out = exact::zeros(n);
        let bnz: Vec<usize> = (0..n).filter(|&j| !b[j].is_zero()).collect();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for &j in &bnz {
                let s = ai * &b[j];
                accumulate(&mut out, &s, self.basis_product(i, j));
            }
        }
        out
    }

    /// `b_i · v`
    pub fn mul_basis_left(&self, i: usize, v: &[Rat]) -> Vector {
        let mut out = self.zero();
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                accumulate(&mut out, x, self.basis_product(i, j));
            }
        }
        out
    }

    /// `v · b_j`
    pub fn mul_basis_right(&self, v: &[Rat], j: usize) -> Vector {
        let mut out = self.zero();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                accumulate(&mut out, x, self.basis_product(i, j));
            }
        }
        out
    }

    pub fn commutator(&self, a: &[Rat], b: &[Rat]) -> Vector {
        exact::sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn pow(&self, a: &[Rat], e: usize) -> Vector {
        (0..e).fold(self.unit().clone(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_regular(&self, a: &[Rat]) -> Mat {
        assert_eq!(a.len(), self.dim(), "coordinate vector length mismatch");
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul_basis_right(a, j)).collect();
        Mat::from_columns(n, &cols)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_regular(&self, a: &[Rat]) -> Mat {
        assert_eq!(a.len(), self.dim(), "coordinate vector length mismatch");
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.mul_basis_left(j, a)).collect();
        Mat::from_columns(n, &cols)
    }

    /// `t_k = tr(L_{b_k})`.
    pub fn trace_functional(&self) -> Vector {
        let n = self.dim();
        (0..n)
            .map(|k| {
                (0..n).fold(Rat::zero(), |acc, l| {
                    match self.basis_product(k, l).binary_search_by_key(&l, |(m, _)| *m) {
                        Ok(pos) => acc + &self.basis_product(k, l)[pos].1,
                        Err(_) => acc,
                    }
                })
            })
            .collect()
    }

    /// `T[i][j] = tr(L_{b_i} L_{b_j})`, computed as `tr(L_{b_i b_j})`.
    pub fn trace_form(&self) -> Mat {
        let n = self.dim();
        let t = self.trace_functional();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self
                    .basis_product(i, j)
                    .iter()
                    .fold(Rat::zero(), |acc, (k, c)| acc + c * &t[*k]);
                m.set(j, i, v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Two-sided inverse, if `a` is a unit.
    pub fn inverse(&self, a: &[Rat]) -> Option<Vector> {
        let x = self.left_regular(a).solve_vec(self.unit())?;
        (self.mul(&x, a) == *self.unit()).then_some(x)
    }

    pub fn is_unit(&self, a: &[Rat]) -> bool {
        self.left_regular(a).rank() == self.dim()
    }

    /// True if `z` commutes with every basis element.
    pub fn is_central(&self, z: &[Rat]) -> bool {
        (0..self.dim()).all(|i| self.mul_basis_left(i, z) == self.mul_basis_right(z, i))
    }

    /// The same algebra on the basis `b'_i = Σ_k p[k][i] b_k` (columns of
    /// `p`).
    pub fn change_basis(&self, p: &Mat) -> Result<Algebra, Error> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::Shape(alloc::format!("basis change must be {n}x{n}")));
        }
        let pinv = p.inverse().ok_or(Error::NotInvertible)?;
        let cols = p.columns();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(sparse(&pinv.mul_vec(&self.mul(&cols[i], &cols[j]))));
            }
        }
        let labels = (0..n).map(|i| alloc::format!("b'{i}")).collect();
        Ok(Algebra::from_table_unchecked(table, pinv.mul_vec(self.unit()), labels))
    }

    /// The subalgebra spanned by `basis` as an algebra in its own right,
    /// with its inclusion map. The span must contain `unit_in` (the
    /// subalgebra's unit, which need not be the ambient unit) and be closed
    /// under multiplication.
    pub fn subalgebra(&self, basis: &[Vector], unit_in: &[Rat], labels: Vec<String>) -> Result<Algebra, Error> {
        let coords = Coordinates::new(self.dim(), basis)?;
        let d = basis.len();
        let mut table = Vec::with_capacity(d * d);
        for x in basis {
            for y in basis {
                let c = coords
                    .of(&self.mul(x, y))
                    .ok_or_else(|| Error::Shape("subspace is not closed under multiplication".into()))?;
                table.push(sparse(&c));
            }
        }
        let unit = coords
            .of(unit_in)
            .ok_or_else(|| Error::Shape("unit does not lie in the subspace".into()))?;
        let labels = if labels.len() == d {
            labels
        } else {
            (0..d).map(|i| alloc::format!("s{i}")).collect()
        };
        let a = Algebra::from_table_unchecked(table, unit, labels);
        a.check_unit()?;
        Ok(a)
    }

    fn same_structure(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.table == other.0.table && self.0.unit == other.0.unit)
    }
}

impl PartialEq for Algebra {
    /// Equal structure constants and unit; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.same_structure(other)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, basis {:?})", self.dim(), self.labels())
    }
}

pub(crate) fn accumulate(out: &mut [Rat], s: &Rat, v: &SparseVector) {
    for (k, c) in v {
        if s.is_one() {
            out[*k] += c;
        } else {
            out[*k] += s * c;
        }
    }
}

pub(crate) fn sparse(v: &[Rat]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Coordinates with respect to a linearly independent family, read off from
/// an invertible square minor.
pub(crate) struct Coordinates {
    basis: Vec<Vector>,
    rows: Vec<usize>,
    minor_inverse: Mat,
}

impl Coordinates {
    pub fn new(n: usize, basis: &[Vector]) -> Result<Self, Error> {
        let d = basis.len();
        if d == 0 {
            return Ok(Coordinates { basis: Vec::new(), rows: Vec::new(), minor_inverse: Mat::zeros(0, 0) });
        }
        let b = Mat::from_columns(n, basis);
        let rows = b.transpose().independent_columns();
        if rows.len() != d {
            return Err(Error::Shape("basis vectors are linearly dependent".into()));
        }
        let minor = Mat::from_rows(rows.iter().map(|&r| b.row(r).to_vec()).collect());
        let minor_inverse = minor.inverse().ok_or(Error::NotInvertible)?;
        Ok(Coordinates { basis: basis.to_vec(), rows, minor_inverse })
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn of(&self, v: &[Rat]) -> Option<Vector> {
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.minor_inverse.mul_vec(&picked);
        let mut back = exact::zeros(v.len());
        for (x, b) in c.iter().zip(&self.basis) {
            exact::axpy(&mut back, x, b);
        }
        (back == v).then_some(c)
    }
}

/// A unital algebra homomorphism, stored as a `target.dim × source.dim`
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    source: Algebra,
    target: Algebra,
    matrix: Mat,
}

impl AlgebraMap {
    /// Checks the shape, `f(1) = 1`, and `f(b_i b_j) = f(b_i) f(b_j)` on all
    /// basis pairs.
    pub fn new(source: &Algebra, target: &Algebra, matrix: Mat) -> Result<Self, Error> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape("algebra map matrix must be target.dim x source.dim".into()));
        }
        let f = AlgebraMap::new_unchecked(source, target, matrix);
        if f.apply(source.unit()) != *target.unit() {
            return Err(Error::NotUnital);
        }
        let images = f.matrix.columns();
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let mut lhs = target.zero();
                for (k, c) in source.basis_product(i, j) {
                    exact::axpy(&mut lhs, c, &images[*k]);
                }
                if lhs != target.mul(&images[i], &images[j]) {
                    return Err(Error::NotMultiplicative { i, j });
                }
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Algebra, target: &Algebra, matrix: Mat) -> Self {
        AlgebraMap { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(a: &Algebra) -> Self {
        AlgebraMap::new_unchecked(a, a, Mat::identity(a.dim()))
    }

    /// The inner automorphism `a ↦ u a u⁻¹`. Multiplicativity is automatic
    /// for conjugation, so only invertibility of `u` is checked.
    pub fn conjugation(a: &Algebra, u: &[Rat]) -> Result<Self, Error> {
        let uinv = a.inverse(u).ok_or(Error::NotInvertible)?;
        let cols: Vec<Vector> = (0..a.dim())
            .map(|i| a.mul(&a.mul_basis_right(u, i), &uinv))
            .collect();
        Ok(AlgebraMap::new_unchecked(a, a, Mat::from_columns(a.dim(), &cols)))
    }

    pub fn source(&self) -> &Algebra {
        &self.source
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

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AlgebraMap) -> Result<AlgebraMap, Error> {
        if inner.target != self.source {
            return Err(Error::Shape("composed maps do not match".into()));
        }
        Ok(AlgebraMap::new_unchecked(&inner.source, &self.target, &self.matrix * &inner.matrix))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.rank() == self.source.dim()
    }
}

/// Labels `a⊗b` for a product basis, first factor major.
pub(crate) fn product_labels(a: &[String], b: &[String], sep: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(alloc::format!("{x}{sep}{y}"));
        }
    }
    out
}
