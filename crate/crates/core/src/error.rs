use alloc::string::String;
use core::fmt;

use crate::exact::RatPoly;

/// Errors raised by the constructors and analyses of this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A shape or length precondition was violated.
    Shape(String),
    NotSymmetric,
    ZeroPolynomial,
    /// An unfactored polynomial part exceeds the Kronecker degree cap.
    DegreeTooLarge { degree: usize },
    /// Integer values met during factorization exceed the trial-division range.
    FactorizationBound,
    /// `(b_i b_j) b_k != b_i (b_j b_k)`
    NotAssociative { i: usize, j: usize, k: usize },
    /// The unit fails `unit * b_i = b_i = b_i * unit`.
    BadUnit { index: usize },
    /// A linear map fails `f(b_i b_j) = f(b_i) f(b_j)`.
    NotMultiplicative { i: usize, j: usize },
    /// An anti-involution fails `(b_i b_j)* = b_j* b_i*`.
    NotAntiMultiplicative { i: usize, j: usize },
    NotUnital,
    /// A map that should square to the identity does not.
    NotInvolutive,
    NotInvertible,
    /// A group table is not a group law.
    InvalidGroup(String),
    /// A group action fails `maps[g] ∘ maps[h] = maps[gh]` or `maps[e] = id`.
    NotAnAction { g: usize, h: usize },
    /// A permutation action on points is inconsistent.
    InvalidSpace(String),
    /// `x(g) x(h) != x(gh)`.
    NotARepresentation { g: usize, h: usize },
    /// The action of `g` on basis element `basis` is not conjugation by `x(g)`.
    NotInnerViaX { g: usize, basis: usize },
    NonSemisimple { radical_dim: usize },
    /// The center needs irrational numbers to split over ℝ.
    IrrationalSplitting { polynomial: RatPoly },
    /// The deterministic sweep did not find a splitting central element.
    SplittingSearchExhausted,
    UnclassifiedTriple { dim: usize, center_dim: usize, signature: i64 },
    /// Action matrices fail `ρ(b_i) ρ(b_j) = ρ(b_i b_j)` or `ρ(1) = I`.
    NotAModule { i: usize, j: usize },
    /// A form fails `gram[j][i] = ε gram[i][j]*`.
    NotEpsilonSymmetric { i: usize, j: usize },
    Singular,
    UnsupportedCase(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape mismatch: {msg}"),
            Error::NotSymmetric => f.write_str("matrix is not symmetric"),
            Error::ZeroPolynomial => f.write_str("cannot factor the zero polynomial"),
            Error::DegreeTooLarge { degree } => {
                write!(f, "unfactored part of degree {degree} exceeds the Kronecker cap")
            }
            Error::FactorizationBound => f.write_str("integer too large for trial division"),
            Error::NotAssociative { i, j, k } => {
                write!(f, "not associative on basis triple ({i}, {j}, {k})")
            }
            Error::BadUnit { index } => write!(f, "unit fails on basis element {index}"),
            Error::NotMultiplicative { i, j } => {
                write!(f, "map is not multiplicative on basis pair ({i}, {j})")
            }
            Error::NotAntiMultiplicative { i, j } => {
                write!(f, "map is not anti-multiplicative on basis pair ({i}, {j})")
            }
            Error::NotUnital => f.write_str("map does not send the unit to the unit"),
            Error::NotInvolutive => f.write_str("map does not square to the identity"),
            Error::NotInvertible => f.write_str("element or matrix is not invertible"),
            Error::InvalidGroup(msg) => write!(f, "invalid group table: {msg}"),
            Error::NotAnAction { g, h } => {
                write!(f, "maps do not compose as a group action at ({g}, {h})")
            }
            Error::InvalidSpace(msg) => write!(f, "invalid finite space: {msg}"),
            Error::NotARepresentation { g, h } => {
                write!(f, "x(g)x(h) != x(gh) for (g, h) = ({g}, {h})")
            }
            Error::NotInnerViaX { g, basis } => {
                write!(f, "action of group element {g} is not conjugation by x(g) on basis element {basis}")
            }
            Error::NonSemisimple { radical_dim } => {
                write!(f, "algebra is not semisimple (radical dimension {radical_dim})")
            }
            Error::IrrationalSplitting { polynomial } => {
                write!(f, "center does not split rationally over the reals: minimal polynomial {polynomial}")
            }
            Error::SplittingSearchExhausted => {
                f.write_str("no splitting central element found by the deterministic sweep")
            }
            Error::UnclassifiedTriple { dim, center_dim, signature } => write!(
                f,
                "simple factor invariants (dim {dim}, center {center_dim}, signature {signature}) match no M_m(D)"
            ),
            Error::NotAModule { i, j } => {
                write!(f, "action matrices are not a module structure at ({i}, {j})")
            }
            Error::NotEpsilonSymmetric { i, j } => {
                write!(f, "gram matrix is not epsilon-symmetric at ({i}, {j})")
            }
            Error::Singular => f.write_str("form is singular"),
            Error::UnsupportedCase(msg) => write!(f, "unsupported case: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
