use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{format_rat, int, LinearSolution, Mat, Rat, Vector};

/// Univariate polynomial over ℚ, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        RatPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        RatPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `t - r`
    pub fn linear_root(r: &Rat) -> Self {
        RatPoly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, s: &Rat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        RatPoly::new(c)
    }

    pub fn pow(&self, e: usize) -> RatPoly {
        (0..e).fold(RatPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// # Panics
    /// If `divisor` is zero.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    r[k + j] -= &c * d;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Bezout coefficients `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = core::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = core::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        assert!(m.is_square());
        let n = m.rows();
        self.coeffs.iter().rev().fold(Mat::zeros(n, n), |acc, c| {
            let mut next = &acc * m;
            for i in 0..n {
                let v = next.get(i, i) + c;
                next.set(i, i, v);
            }
            next
        })
    }

    /// Discriminant of a quadratic `a t² + b t + c`, i.e. `b² - 4ac`.
    pub fn quadratic_discriminant(&self) -> Option<Rat> {
        if self.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        Some(b * b - int(4) * a * c)
    }

    /// True for degree 1, or degree 2 with negative discriminant: the factors
    /// whose real splitting field is ℝ or ℂ.
    pub fn is_real_split_type(&self) -> bool {
        match self.degree() {
            Some(1) => true,
            Some(2) => self.quadratic_discriminant().is_some_and(|d| d.is_negative()),
            _ => false,
        }
    }
}

/// Monic polynomial of least degree annihilating a square matrix, found by
/// locating the first power of `m` linearly dependent on the lower ones.
pub fn minimal_polynomial(m: &Mat) -> RatPoly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    let flatten = |x: &Mat| -> Vector { x.entries().to_vec() };
    let mut power = Mat::identity(n);
    minimal_polynomial_of_sequence(n * n, n, || {
        let v = flatten(&power);
        power = &power * m;
        v
    })
}

/// Minimal relation among the sequence `v_0, v_1, ...` (each of length `len`):
/// the monic `p` of least degree with `Σ p_k v_k = 0`. `bound` caps the degree.
pub(crate) fn minimal_polynomial_of_sequence(
    len: usize,
    bound: usize,
    mut next: impl FnMut() -> Vector,
) -> RatPoly {
    let mut seq: Vec<Vector> = Vec::new();
    for k in 0..=bound.max(1) {
        let v = next();
        if k > 0 {
            let m = Mat::from_columns(len, &seq);
            let rhs = Mat::from_columns(len, &[v.clone()]);
            if let LinearSolution::Consistent { particular, .. } = m.solve_linear(&rhs) {
                let mut c: Vec<Rat> = particular.col(0).into_iter().map(|x| -x).collect();
                c.push(Rat::one());
                return RatPoly::new(c);
            }
        } else if super::is_zero(&v) {
            return RatPoly::one();
        }
        seq.push(v);
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                f.write_str(&format_rat(&mag))?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(minimal_polynomial(&Mat::identity(3)), RatPoly::from_i64s(&[-1, 1]));
        let rot = Mat::from_i64(&[[0, -1], [1, 0]]);
        assert_eq!(minimal_polynomial(&rot), RatPoly::from_i64s(&[1, 0, 1]));
        let d = Mat::diagonal(&crate::exact::from_i64s(&[2, 2, 5]));
        // (t-2)(t-5) = t^2 - 7t + 10
        assert_eq!(minimal_polynomial(&d), RatPoly::from_i64s(&[10, -7, 1]));
        assert_eq!(minimal_polynomial(&Mat::zeros(2, 2)), RatPoly::t());
    }

    #[test]
    fn division_and_gcd() {
        let p = RatPoly::from_i64s(&[-1, 0, 0, 1]); // t^3 - 1
        let d = RatPoly::from_i64s(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q, RatPoly::from_i64s(&[1, 1, 1]));
        assert!(r.is_zero());
        let a = RatPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(p.gcd(&a), d);
        let (g, s, t) = p.ext_gcd(&a);
        assert_eq!(s.mul(&p).add(&t.mul(&a)), g);
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", RatPoly::from_i64s(&[1, 0, -3, 1])), "t^3 - 3t^2 + 1");
        assert_eq!(alloc::format!("{}", RatPoly::zero()), "0");
    }
}
