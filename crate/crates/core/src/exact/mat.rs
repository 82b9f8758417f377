use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, Rat, Vector};
use crate::error::Error;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Outcome of [`Mat::solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// `particular` solves the system (one column per right-hand side); every
    /// solution is `particular` plus a combination of `kernel`.
    Consistent { particular: Mat, kernel: Vec<Vector> },
    Inconsistent,
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    /// `positive - negative`
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Reduced row echelon form: `rows[r]` has a leading one in column `pivots[r]`.
pub(crate) struct Rref {
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Mat {
    /// # Panics
    /// If `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix entry count mismatch");
        Mat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rat::one();
        }
        m
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let n = d.len();
        let mut m = Mat::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.entries[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn from_i64<const C: usize>(rows: &[[i64; C]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| super::from_i64s(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rat) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).fold(Rat::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, s: &Rat) -> Mat {
        Mat::new(self.rows, self.cols, self.entries.iter().map(|x| x * s).collect())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    /// Kronecker product; block `(i, j)` is `self[i][j] * other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Mat::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Block-diagonal matrix with the given square or rectangular blocks.
    pub fn block_diagonal(blocks: &[Mat]) -> Mat {
        let r = blocks.iter().map(Mat::rows).sum();
        let c = blocks.iter().map(Mat::cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub(crate) fn rref(&self) -> Rref {
        rref_rows(&self.integer_rows(), self.cols)
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = common_denominator(row);
                row.iter().map(|x| (x * &l).to_integer()).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        bareiss_forward(&mut a, self.cols).pivots.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Indices of a maximal linearly independent subset of the columns,
    /// chosen greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut a = self.integer_rows();
        bareiss_forward(&mut a, self.cols).pivots
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let l = common_denominator(row);
                let r = row.iter().map(|x| (x * &l).to_integer()).collect();
                scale *= l;
                r
            })
            .collect();
        let e = bareiss_forward(&mut a, n);
        if e.pivots.len() < n {
            return Rat::zero();
        }
        let mut d = a[n - 1][n - 1].clone();
        if e.swaps % 2 == 1 {
            d = -d;
        }
        Rat::new(d, scale)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        match self.solve_linear(&Mat::identity(self.rows)) {
            LinearSolution::Consistent { particular, kernel } if kernel.is_empty() => {
                Some(particular)
            }
            _ => None,
        }
    }

    /// Solves `self * X = rhs` exactly.
    ///
    /// # Panics
    /// If `self.rows() != rhs.rows()`.
    pub fn solve_linear(&self, rhs: &Mat) -> LinearSolution {
        assert_eq!(self.rows, rhs.rows, "solve_linear: row count mismatch");
        let n = self.cols;
        let mut aug = Mat::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let e = aug.rref();
        if e.pivots.iter().any(|&p| p >= n) {
            return LinearSolution::Inconsistent;
        }
        let mut particular = Mat::zeros(n, rhs.cols);
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            for t in 0..rhs.cols {
                particular.set(p, t, row[n + t].clone());
            }
        }
        let kernel = kernel_from_rref(&e, n);
        LinearSolution::Consistent { particular, kernel }
    }

    /// Solves `self * x = b` for a single vector, returning any solution.
    pub fn solve_vec(&self, b: &[Rat]) -> Option<Vector> {
        let rhs = Mat::from_columns(self.rows, &[b.to_vec()]);
        match self.solve_linear(&rhs) {
            LinearSolution::Consistent { particular, .. } => Some(particular.col(0)),
            LinearSolution::Inconsistent => None,
        }
    }

    /// Inertia of a symmetric matrix by exact symmetric elimination.
    ///
    /// Diagonal pivots are used while one is nonzero; otherwise a 2×2 block
    /// `[[0, b], [b, 0]]` is split off, contributing one positive and one
    /// negative eigenvalue. Both are congruences, so inertia is preserved.
    pub fn signature(&self) -> Result<Inertia, Error> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut s: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut inertia = Inertia { positive: 0, negative: 0, zero: 0 };
        loop {
            let n = s.len();
            if n == 0 {
                break;
            }
            if let Some(p) = (0..n).find(|&i| !s[i][i].is_zero()) {
                let d = s[p][p].clone();
                if d.is_positive() {
                    inertia.positive += 1;
                } else {
                    inertia.negative += 1;
                }
                let col: Vector = (0..n).map(|i| &s[i][p] / &d).collect();
                let prow = s[p].clone();
                let mut next = Vec::with_capacity(n - 1);
                for i in (0..n).filter(|&i| i != p) {
                    let f = &col[i];
                    let row = (0..n)
                        .filter(|&j| j != p)
                        .map(|j| {
                            if f.is_zero() || prow[j].is_zero() {
                                s[i][j].clone()
                            } else {
                                &s[i][j] - f * &prow[j]
                            }
                        })
                        .collect();
                    next.push(row);
                }
                s = next;
                continue;
            }
            let off = (0..n).find_map(|i| (i + 1..n).find(|&j| !s[i][j].is_zero()).map(|j| (i, j)));
            let Some((p, q)) = off else {
                inertia.zero += n;
                break;
            };
            inertia.positive += 1;
            inertia.negative += 1;
            let b = s[p][q].clone();
            let rp = s[p].clone();
            let rq = s[q].clone();
            let keep: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
            s = keep
                .iter()
                .map(|&i| {
                    keep.iter()
                        .map(|&j| {
                            let corr = &rp[i] * &rq[j] + &rq[i] * &rp[j];
                            if corr.is_zero() {
                                s[i][j].clone()
                            } else {
                                &s[i][j] - corr / &b
                            }
                        })
                        .collect()
                })
                .collect();
        }
        Ok(inertia)
    }
}

pub(crate) struct Forward {
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

/// Fraction-free (Bareiss) forward elimination in place. Every entry that
/// survives is a minor of the input, so all divisions are exact.
pub(crate) fn bareiss_forward(a: &mut [Vec<BigInt>], ncols: usize) -> Forward {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut swaps = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        if p != r {
            a.swap(r, p);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let piv = &prow[c];
        for row in rest.iter_mut() {
            let f = core::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = piv * &row[j];
                if !f.is_zero() && !prow[j].is_zero() {
                    v -= &f * &prow[j];
                }
                if !prev.is_one() {
                    debug_assert!((&v % &prev).is_zero());
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    Forward { pivots, swaps }
}

fn rref_rows(int_rows: &[Vec<BigInt>], ncols: usize) -> Rref {
    let mut a = int_rows.to_vec();
    let fwd = bareiss_forward(&mut a, ncols);
    let rank = fwd.pivots.len();
    let mut rows: Vec<Vector> = a
        .into_iter()
        .take(rank)
        .zip(&fwd.pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|x| Rat::new(x, lead.clone())).collect()
        })
        .collect();
    // back substitution to clear entries above each pivot
    for r in (0..rank).rev() {
        let p = fwd.pivots[r];
        let (above, below) = rows.split_at_mut(r);
        let prow = &below[0];
        for row in above.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..ncols {
                if !prow[j].is_zero() {
                    row[j] -= &f * &prow[j];
                }
            }
        }
    }
    Rref { rows, pivots: fwd.pivots }
}

fn kernel_from_rref(e: &Rref, n: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        if p < n {
            is_pivot[p] = true;
        }
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = super::zeros(n);
            v[f] = Rat::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if p < n && !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            v
        })
        .collect()
}

/// Independent subset (by index) of `vectors`, each of length `n`.
pub fn independent_subset(n: usize, vectors: &[Vector]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Mat::from_columns(n, vectors).independent_columns()
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;

    fn mul(self, rhs: &'a Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut m = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        m.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;

    fn add(self, rhs: &'a Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::new(self.rows, self.cols, super::add(&self.entries, &rhs.entries))
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;

    fn sub(self, rhs: &'a Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::new(self.rows, self.cols, super::sub(&self.entries, &rhs.entries))
    }
}

impl Neg for &Mat {
    type Output = Mat;

    fn neg(self) -> Mat {
        Mat::new(self.rows, self.cols, super::neg(&self.entries))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(&super::format_rat(self.get(i, j)))?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_i64s, int, rat};

    #[test]
    fn solve_identity() {
        let m = Mat::identity(2);
        let rhs = Mat::from_i64(&[[3], [5]]);
        let LinearSolution::Consistent { particular, kernel } = m.solve_linear(&rhs) else {
            panic!("expected a solution");
        };
        assert_eq!(particular, Mat::from_i64(&[[3], [5]]));
        assert!(kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let m = Mat::from_i64(&[[1, 1]]);
        let LinearSolution::Consistent { particular, kernel } = m.solve_linear(&Mat::from_i64(&[[0]]))
        else {
            panic!("expected a solution");
        };
        assert_eq!(particular, Mat::from_i64(&[[0], [0]]));
        assert_eq!(kernel, vec![from_i64s(&[-1, 1])]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = Mat::from_i64(&[[1], [2]]);
        assert_eq!(m.solve_linear(&Mat::from_i64(&[[1], [3]])), LinearSolution::Inconsistent);
    }

    #[test]
    fn signature_examples() {
        let d = Mat::diagonal(&from_i64s(&[1, 1, -1]));
        assert_eq!(d.signature().unwrap(), Inertia { positive: 2, negative: 1, zero: 0 });
        let s = Mat::from_i64(&[[0, 0], [0, 1]]);
        assert_eq!(s.signature().unwrap(), Inertia { positive: 1, negative: 0, zero: 1 });
        let h = Mat::from_i64(&[[0, 1], [1, 0]]);
        assert_eq!(h.signature().unwrap(), Inertia { positive: 1, negative: 1, zero: 0 });
        assert_eq!(Mat::from_i64(&[[0, 1], [2, 0]]).signature(), Err(Error::NotSymmetric));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Mat::from_rows(vec![vec![rat(1, 2), int(3)], vec![int(-1), int(4)]]);
        assert_eq!(m.det(), int(5));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert_eq!(Mat::from_i64(&[[1, 2], [2, 4]]).inverse(), None);
        assert_eq!(Mat::from_i64(&[[0, 1], [1, 0]]).det(), int(-1));
    }

    #[test]
    fn rank_and_kernel_with_skipped_columns() {
        let m = Mat::from_i64(&[[0, 1, 2, 3], [0, 2, 4, 7], [0, 0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(crate::exact::is_zero(&m.mul_vec(v)));
        }
    }
}
