//! K₀ of semisimple algebras, and the equivariant, Real and
//! Grothendieck–Witt K-groups over finite spaces, each computed as K₀ of a
//! crossed product of the section algebra.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::constructions::{
    crossed_product, equivariant_section_action, gw_twist, matrix_algebra, section_algebra, GSpace, GroupAction,
    GwMode, RealFiniteSpace,
};
use crate::error::Error;
use crate::exact::Mat;
use crate::involutions::InvolutionMap;
use crate::structure::{wedderburn, DivisionType, Fingerprint};

/// The free abelian group on the simple factors of a semisimple algebra.
///
/// Equality compares the rank and the multiset of division types; the
/// matrix sizes `m` are carried along for display but change under Morita
/// equivalence, so they do not take part.
#[derive(Clone, Debug)]
pub struct K0Group {
    pub rank: usize,
    pub basis: Fingerprint,
}

impl K0Group {
    pub fn from_fingerprint(basis: Fingerprint) -> Self {
        K0Group { rank: basis.len(), basis }
    }

    /// Sorted division types of the generators.
    pub fn types(&self) -> Vec<DivisionType> {
        let mut t: Vec<_> = self.basis.iter().map(|&(_, d)| d).collect();
        t.sort();
        t
    }

    /// Direct sum, as for a disjoint union of spaces.
    pub fn sum(&self, other: &K0Group) -> K0Group {
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().copied());
        basis.sort_by_key(|&(m, d)| (d, m));
        K0Group::from_fingerprint(basis)
    }
}

impl PartialEq for K0Group {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.types() == other.types()
    }
}

impl Eq for K0Group {}

impl fmt::Display for K0Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{} [", self.rank)?;
        for (i, (m, d)) in self.basis.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "M{m}({d})")?;
        }
        f.write_str("]")
    }
}

/// Which construction produced a Grothendieck–Witt group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrRoute {
    /// `A0 ⊗ M_2(ℝ)` or `A0 ⊗ ℍ` for the complexification of `A0`.
    Complexified,
    /// `A ⊗ ℝ[t]/(t² = ε)`.
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRGroup {
    pub epsilon: i64,
    pub k0: K0Group,
    pub route: GrRoute,
}

pub fn k0(a: &Algebra) -> Result<K0Group, Error> {
    let w = wedderburn(a)?;
    if !w.is_semisimple() {
        return Err(Error::NonSemisimple { radical_dim: w.radical_dim });
    }
    Ok(K0Group::from_fingerprint(w.fingerprint()))
}

/// `K_G^A(X) = K₀((Π_X A) ⋊ G)` with `G` acting on the fiber and permuting
/// the points.
pub fn k_equivariant(fiber_action: &GroupAction, space: &GSpace) -> Result<K0Group, Error> {
    let action = equivariant_section_action(fiber_action, space)?;
    k0(&crossed_product(&action).result)
}

/// `KR^A(X) = K₀(B ⋊ ℤ/2)` for the section algebra `B` of `X × A`.
pub fn kr(fiber: &Algebra, tau: &InvolutionMap, space: &RealFiniteSpace) -> Result<K0Group, Error> {
    if tau.target() != fiber {
        return Err(Error::Shape("involution must act on the fiber".into()));
    }
    let (_, action) = section_algebra(fiber, tau, space);
    k0(&crossed_product(&action).result)
}

/// `_εGR` as the KR-group of the algebra produced by [`gw_twist`].
pub fn gr(a0: &Algebra, epsilon: i64, space: &RealFiniteSpace, mode: &GwMode) -> Result<GRGroup, Error> {
    let (a, tau) = gw_twist(a0, epsilon, mode)?;
    let route = match mode {
        GwMode::Complexified => GrRoute::Complexified,
        GwMode::Real(_) => GrRoute::Real,
    };
    Ok(GRGroup { epsilon, k0: kr(&a, &tau, space)?, route })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoritaReport {
    pub n: usize,
    pub base: K0Group,
    pub matrix: K0Group,
    /// Equal rank and equal multiset of division types.
    pub agrees: bool,
}

/// The action of `G` on `M_n(A)` entrywise.
pub fn slotwise_action(action: &GroupAction, n: usize) -> Result<GroupAction, Error> {
    let a = action.target();
    let m = matrix_algebra(a, n);
    let id = Mat::identity(n * n);
    let maps = (0..action.group().order())
        .map(|g| crate::algebra::AlgebraMap::new_unchecked(&m, &m, id.kron(action.map(g).matrix())))
        .collect();
    GroupAction::new(action.group(), &m, maps)
}

/// Compares `K₀(A ⋊ G)` with `K₀(M_n(A) ⋊ G)`.
pub fn morita_check(action: &GroupAction, n: usize) -> Result<MoritaReport, Error> {
    if n < 2 {
        return Err(Error::Shape("Morita check needs n >= 2".into()));
    }
    let base = k0(&crossed_product(action).result)?;
    let matrix = k0(&crossed_product(&slotwise_action(action, n)?).result)?;
    let agrees = base == matrix;
    Ok(MoritaReport { n, base, matrix, agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::constructions::{clifford, complex, direct_product, group_algebra, quaternions, reals, FiniteGroup};
    use crate::exact::from_i64s;
    use DivisionType::*;

    fn types(g: &K0Group) -> Vec<DivisionType> {
        g.types()
    }

    #[test]
    fn k0_examples() {
        assert_eq!(k0(&group_algebra(&FiniteGroup::z2())).unwrap().basis, vec![(1, R), (1, R)]);
        assert_eq!(k0(&matrix_algebra(&complex(), 2)).unwrap().basis, vec![(2, C)]);
        let g = k0(&direct_product(&quaternions(), &matrix_algebra(&reals(), 3))).unwrap();
        assert_eq!(g.rank, 2);
    }

    #[test]
    fn equivariant() {
        let z2 = FiniteGroup::z2();
        let c = k_equivariant(&GroupAction::trivial(&z2, &complex()), &GSpace::trivial(&z2, 1)).unwrap();
        assert_eq!(types(&c), vec![C, C]);
        let free = k_equivariant(&GroupAction::trivial(&z2, &reals()), &GSpace::free_orbit(&z2)).unwrap();
        assert_eq!(free.basis, vec![(2, R)]);
        let pt = k_equivariant(&GroupAction::trivial(&z2, &reals()), &GSpace::trivial(&z2, 1)).unwrap();
        assert_eq!(pt.rank, 2);
    }

    #[test]
    fn kr_quaternions_and_clifford() {
        let h = quaternions();
        let ci = InvolutionMap::conjugation(&h, &h.basis(1)).unwrap();
        assert_eq!(types(&kr(&h, &ci, &RealFiniteSpace::point()).unwrap()), vec![C]);
        assert_eq!(types(&kr(&h, &ci, &RealFiniteSpace::swap_pair()).unwrap()), vec![H]);
        let (c02, tau) = clifford(0, 2);
        assert_eq!(types(&kr(&c02, &tau, &RealFiniteSpace::point()).unwrap()), vec![C]);
        assert_eq!(types(&kr(&c02, &tau, &RealFiniteSpace::swap_pair()).unwrap()), vec![R]);
    }

    #[test]
    fn kr_is_additive() {
        let (c11, tau) = clifford(1, 1);
        let x = RealFiniteSpace::point();
        let y = RealFiniteSpace::swap_pair();
        let sum = kr(&c11, &tau, &x).unwrap().sum(&kr(&c11, &tau, &y).unwrap());
        assert_eq!(kr(&c11, &tau, &x.disjoint_union(&y)).unwrap(), sum);
    }

    #[test]
    fn gr_groups() {
        let r = reals();
        let pt = RealFiniteSpace::point();
        assert_eq!(gr(&r, 1, &pt, &GwMode::Complexified).unwrap().k0.rank, 2);
        assert_eq!(types(&gr(&r, -1, &pt, &GwMode::Complexified).unwrap().k0), vec![C]);
        let real = GwMode::Real(InvolutionMap::identity(&r));
        assert_eq!(gr(&r, 1, &pt, &real).unwrap().k0.rank, 4);
    }

    #[test]
    fn morita() {
        let c = complex();
        let conj = InvolutionMap::new(&c, Mat::diagonal(&from_i64s(&[1, -1]))).unwrap();
        let rep = morita_check(&GroupAction::from_involution(&conj), 2).unwrap();
        assert!(rep.agrees);
        assert_eq!(rep.base.basis, vec![(2, R)]);
        assert_eq!(rep.matrix.basis, vec![(4, R)]);
        let rep = morita_check(&GroupAction::trivial(&FiniteGroup::z2(), &reals()), 3).unwrap();
        assert!(rep.agrees);
        assert_eq!(rep.matrix.types(), vec![R, R]);
    }
}
