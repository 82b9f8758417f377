//! Factorization of rational polynomials into irreducibles over ℚ.
//!
//! Square-free parts are split off first (Yun), rational roots are extracted
//! from the candidate set `±(divisor of constant)/(divisor of leading)`, and
//! whatever remains is searched for factors by Kronecker interpolation. The
//! search is exponential, so the residual degree is capped.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{common_denominator, Rat, RatPoly};
use crate::error::Error;

/// Largest residual degree attempted by Kronecker's method.
pub const KRONECKER_DEGREE_CAP: usize = 8;

/// `p = leading * Π factor^multiplicity`, factors monic and irreducible over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub leading: Rat,
    pub factors: Vec<(RatPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.leading.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    /// Distinct irreducible factors, ignoring multiplicity.
    pub fn distinct(&self) -> impl Iterator<Item = &RatPoly> {
        self.factors.iter().map(|(f, _)| f)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

pub fn factor_rational(p: &RatPoly) -> Result<Factorization, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let leading = p.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree(&part)? {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
            .then(ma.cmp(mb))
    });
    Ok(Factorization { leading, factors })
}

/// Yun's algorithm on a monic polynomial: pairs `(a_i, i)` with `f = Π a_i^i`.
fn squarefree_decomposition(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0.monic();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        c = c.div_rem(&y).0;
        w = y;
        i += 1;
    }
    out
}

/// Primitive integer polynomial with positive leading coefficient.
fn primitive_integer(p: &RatPoly) -> Vec<BigInt> {
    let l = common_denominator(p.coeffs());
    let mut c: Vec<BigInt> = p.coeffs().iter().map(|x| (x * &l).to_integer()).collect();
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut c {
            *x /= &g;
        }
    }
    if c.last().is_some_and(Signed::is_negative) {
        for x in &mut c {
            *x = -&*x;
        }
    }
    c
}

fn to_ratpoly(c: &[BigInt]) -> RatPoly {
    RatPoly::new(c.iter().map(|x| Rat::from_integer(x.clone())).collect())
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

/// Positive divisors of `n != 0`, by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>, Error> {
    let n = n.abs().to_u64().ok_or(Error::FactorizationBound)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d != n / d {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

fn factor_squarefree(p: &RatPoly) -> Result<Vec<RatPoly>, Error> {
    let mut out = Vec::new();
    let mut g = primitive_integer(p);
    // rational roots
    if g.first().is_some_and(Zero::is_zero) && g.len() > 1 {
        out.push(RatPoly::t());
        g.remove(0);
    }
    if g.len() > 2 {
        let num = divisors(&g[0])?;
        let den = divisors(g.last().expect("nonconstant"))?;
        let mut roots = Vec::new();
        for u in &num {
            for v in &den {
                if !u.gcd(v).is_one() {
                    continue;
                }
                for s in [1, -1] {
                    let r = Rat::new(u * s, v.clone());
                    if to_ratpoly(&g).eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        let mut rest = to_ratpoly(&g);
        for r in roots {
            let lin = RatPoly::linear_root(&r);
            rest = rest.div_rem(&lin).0;
            out.push(lin);
        }
        g = primitive_integer(&rest);
    }
    let deg = g.len().saturating_sub(1);
    if deg == 0 {
        return Ok(out);
    }
    if deg > KRONECKER_DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree: deg });
    }
    kronecker(&g, &mut out)?;
    Ok(out)
}

/// Splits a primitive integer polynomial without rational roots into monic
/// irreducible factors over ℚ.
fn kronecker(g: &[BigInt], out: &mut Vec<RatPoly>) -> Result<(), Error> {
    let n = g.len() - 1;
    if n <= 3 {
        out.push(to_ratpoly(g).monic());
        return Ok(());
    }
    for d in 2..=n / 2 {
        if let Some(h) = kronecker_find(g, d)? {
            let (q, r) = to_ratpoly(g).div_rem(&h);
            debug_assert!(r.is_zero());
            kronecker(&primitive_integer(&h), out)?;
            kronecker(&primitive_integer(&q), out)?;
            return Ok(());
        }
    }
    out.push(to_ratpoly(g).monic());
    Ok(())
}

/// Looks for an integer factor of exact degree `d` by interpolating through
/// divisors of the values of `g` at `d + 1` integer points.
fn kronecker_find(g: &[BigInt], d: usize) -> Result<Option<RatPoly>, Error> {
    // choose the d+1 points whose values have the fewest divisors
    let mut pool: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut k: i64 = 0;
    while pool.len() < 2 * d + 4 {
        for x in [k, -k] {
            if pool.iter().any(|(p, _)| *p == BigInt::from(x)) {
                continue;
            }
            let x = BigInt::from(x);
            let v = eval_int(g, &x);
            debug_assert!(!v.is_zero(), "rational roots are removed first");
            pool.push((x, divisors(&v)?));
        }
        k += 1;
    }
    pool.sort_by_key(|(_, divs)| divs.len());
    pool.truncate(d + 1);

    let xs: Vec<Rat> = pool.iter().map(|(x, _)| Rat::from_integer(x.clone())).collect();
    let lagrange: Vec<RatPoly> = (0..=d)
        .map(|i| {
            (0..=d).filter(|&j| j != i).fold(RatPoly::one(), |acc, j| {
                let denom = (&xs[i] - &xs[j]).recip();
                acc.mul(&RatPoly::linear_root(&xs[j]).scale(&denom))
            })
        })
        .collect();
    let target = to_ratpoly(g);

    // odometer over signed divisor choices; first value kept positive
    let choices: Vec<Vec<BigInt>> = pool
        .iter()
        .enumerate()
        .map(|(i, (_, divs))| {
            let mut c = divs.clone();
            if i > 0 {
                c.extend(divs.iter().map(|x| -x));
            }
            c
        })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let cand = lagrange.iter().zip(&idx).enumerate().fold(
            RatPoly::zero(),
            |acc, (i, (l, &j))| acc.add(&l.scale(&Rat::from_integer(choices[i][j].clone()))),
        );
        if cand.degree() == Some(d) && cand.coeffs().iter().all(|c| c.denom().is_one()) {
            let (_, r) = target.div_rem(&cand);
            if r.is_zero() {
                return Ok(Some(cand));
            }
        }
        let mut pos = 0;
        loop {
            if pos > d {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monic_factors(p: &[i64]) -> Vec<(RatPoly, usize)> {
        factor_rational(&RatPoly::from_i64s(p)).unwrap().factors
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            monic_factors(&[-1, 0, 1]),
            vec![(RatPoly::from_i64s(&[-1, 1]), 1), (RatPoly::from_i64s(&[1, 1]), 1)]
        );
        assert_eq!(monic_factors(&[1, 0, 1]), vec![(RatPoly::from_i64s(&[1, 0, 1]), 1)]);
        assert_eq!(
            monic_factors(&[-1, 0, 0, 0, 1]),
            vec![
                (RatPoly::from_i64s(&[-1, 1]), 1),
                (RatPoly::from_i64s(&[1, 1]), 1),
                (RatPoly::from_i64s(&[1, 0, 1]), 1),
            ]
        );
    }

    #[test]
    fn kronecker_splits_quartic_without_roots() {
        // (t^2 + 1)(t^2 - 2) = t^4 - t^2 - 2
        let f = monic_factors(&[-2, 0, -1, 0, 1]);
        assert_eq!(
            f,
            vec![(RatPoly::from_i64s(&[-2, 0, 1]), 1), (RatPoly::from_i64s(&[1, 0, 1]), 1)]
        );
        // t^4 + 1 is irreducible over ℚ
        assert_eq!(monic_factors(&[1, 0, 0, 0, 1]).len(), 1);
    }

    #[test]
    fn multiplicities_and_leading() {
        // 3 (t - 1/3)^2 (t^2 + t + 1)
        let p = RatPoly::from_i64s(&[-1, 3])
            .pow(2)
            .mul(&RatPoly::from_i64s(&[1, 1, 1]))
            .scale(&crate::exact::rat(1, 3));
        let f = factor_rational(&p).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors[0], (RatPoly::linear_root(&crate::exact::rat(1, 3)), 2));
    }

    #[test]
    fn degree_cap() {
        // t^10 + t + 1 has no rational roots and degree above the cap
        let mut c = vec![0i64; 11];
        c[0] = 1;
        c[1] = 1;
        c[10] = 1;
        assert_eq!(
            factor_rational(&RatPoly::from_i64s(&c)),
            Err(Error::DegreeTooLarge { degree: 10 })
        );
        assert_eq!(factor_rational(&RatPoly::zero()), Err(Error::ZeroPolynomial));
    }
}
