//! Exact rational scalars, coordinate vectors, dense matrices and polynomials.
//!
//! Nothing in this module rounds. Every other module of the crate builds on
//! these primitives, so they are kept small and allocation-conscious rather
//! than generic.

pub mod factor;
pub mod mat;
pub mod poly;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use factor::{factor_rational, Factorization};
pub use mat::{Inertia, LinearSolution, Mat};
pub use poly::{minimal_polynomial, RatPoly};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Coordinate vector with respect to some fixed basis.
pub type Vector = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatParseError {
    Empty,
    ZeroDenominator,
    Malformed(String),
}

impl fmt::Display for RatParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatParseError::Empty => f.write_str("empty rational literal"),
            RatParseError::ZeroDenominator => f.write_str("rational literal has zero denominator"),
            RatParseError::Malformed(s) => write!(f, "malformed rational literal {s:?}"),
        }
    }
}

impl core::error::Error for RatParseError {}

/// Parses `"p"` or `"p/q"` with optional signs on either part.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RatParseError::Empty);
    }
    let parse_int = |s: &str| -> Result<BigInt, RatParseError> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RatParseError::Malformed(text.to_string()));
        }
        s.parse::<BigInt>()
            .map_err(|_| RatParseError::Malformed(text.to_string()))
    };
    match text.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(RatParseError::ZeroDenominator);
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Canonical `"p/q"` form (`"p"` for integers).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn zeros(n: usize) -> Vector {
    alloc::vec![Rat::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[Rat], s: &Rat) -> Vector {
    v.iter().map(|x| x * s).collect()
}

pub fn neg(v: &[Rat]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Rat], s: &Rat, v: &[Rat]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn from_i64s(v: &[i64]) -> Vector {
    v.iter().map(|&x| int(x)).collect()
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Least common multiple of the denominators in `v`.
pub(crate) fn common_denominator<'a>(v: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    v.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), int(-4));
        assert_eq!(parse_rat(" 2/-4 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("1/0"), Err(RatParseError::ZeroDenominator));
        assert!(matches!(parse_rat("1.5"), Err(RatParseError::Malformed(_))));
        assert!(matches!(parse_rat("--1"), Err(RatParseError::Malformed(_))));
        assert_eq!(parse_rat(""), Err(RatParseError::Empty));
        assert_eq!(format_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rat(&int(7)), "7");
    }
}
