//! Named algebras, finite groups and spaces, and the combinators that build
//! every algebra-with-involution the K-theory computations need.
//!
//! Product bases are always ordered with the first factor major, so that
//! `tensor_product(A, B)` has `a_i ⊗ b_j` at index `i * dim B + j` and the
//! crossed product `A ⋊ G` has `a_i g` at index `i * |G| + g`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{product_labels, sparse, Algebra, AlgebraMap, SparseVector};
use crate::error::Error;
use crate::exact::{self, int, Mat, Rat, Vector};
use crate::involutions::InvolutionMap;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates that `table[g * order + h] = gh` is a group law.
    pub fn new(order: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self, Error> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidGroup("table must be order x order with entries < order".into()));
        }
        if labels.len() != order {
            return Err(Error::InvalidGroup("one label per element required".into()));
        }
        let m = |g: usize, h: usize| table[g * order + h];
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or_else(|| Error::InvalidGroup(alloc::format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(alloc::format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, identity, inverse, labels })
    }

    /// ℤ/n with elements `1, g, g^2, ...`; for `n = 2` the generator is `τ`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let labels = (0..n)
            .map(|k| match (n, k) {
                (_, 0) => "1".to_string(),
                (2, 1) => "τ".to_string(),
                (_, 1) => "g".to_string(),
                _ => alloc::format!("g^{k}"),
            })
            .collect();
        FiniteGroup::new(n, table, labels).expect("cyclic group table")
    }

    pub fn z2() -> Self {
        FiniteGroup::cyclic(2)
    }

    /// ℤ/2 × ℤ/2.
    pub fn klein_four() -> Self {
        let table = (0..16).map(|k| (k / 4) ^ (k % 4)).collect();
        let labels = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::new(4, table, labels).expect("klein four table")
    }

    /// The symmetric group on three letters, a non-abelian test case.
    pub fn symmetric3() -> Self {
        // elements as permutations of {0,1,2}
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let mut table = Vec::with_capacity(36);
        for g in &perms {
            for h in &perms {
                table.push(idx([g[h[0]], g[h[1]], g[h[2]]]));
            }
        }
        let labels = ["1", "(01)", "(12)", "(02)", "(012)", "(021)"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::new(6, table, labels).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A finite set of points with a permutation action of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSpace {
    group: FiniteGroup,
    points: usize,
    perms: Vec<Vec<usize>>,
}

impl GSpace {
    /// `perms[g][x]` is the image of point `x` under `g`.
    pub fn new(group: &FiniteGroup, points: usize, perms: Vec<Vec<usize>>) -> Result<Self, Error> {
        if perms.len() != group.order() || perms.iter().any(|p| p.len() != points) {
            return Err(Error::InvalidSpace("one permutation of the points per group element".into()));
        }
        for p in &perms {
            let mut seen = vec![false; points];
            for &x in p {
                if x >= points || core::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidSpace("not a permutation".into()));
                }
            }
        }
        if perms[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidSpace("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..points).any(|x| perms[g][perms[h][x]] != perms[gh][x]) {
                    return Err(Error::InvalidSpace(alloc::format!("not an action at ({g}, {h})")));
                }
            }
        }
        Ok(GSpace { group: group.clone(), points, perms })
    }

    /// `points` points, every group element acting as the identity.
    pub fn trivial(group: &FiniteGroup, points: usize) -> Self {
        let perms = vec![(0..points).collect(); group.order()];
        GSpace::new(group, points, perms).expect("trivial action")
    }

    /// The group acting on itself by left multiplication (one free orbit).
    pub fn free_orbit(group: &FiniteGroup) -> Self {
        let perms = (0..group.order())
            .map(|g| (0..group.order()).map(|x| group.mul(g, x)).collect())
            .collect();
        GSpace::new(group, group.order(), perms).expect("regular action")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }
}

/// A finite set with an involution `x ↦ x̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealFiniteSpace {
    involution: Vec<usize>,
}

impl RealFiniteSpace {
    pub fn new(involution: Vec<usize>) -> Result<Self, Error> {
        let n = involution.len();
        if involution.iter().any(|&y| y >= n) {
            return Err(Error::InvalidSpace("involution image out of range".into()));
        }
        if (0..n).any(|x| involution[involution[x]] != x) {
            return Err(Error::InvalidSpace("map is not self-inverse".into()));
        }
        Ok(RealFiniteSpace { involution })
    }

    pub fn point() -> Self {
        RealFiniteSpace { involution: vec![0] }
    }

    /// `{+1, -1}` with the two points swapped.
    pub fn swap_pair() -> Self {
        RealFiniteSpace { involution: vec![1, 0] }
    }

    /// `n` points, each fixed.
    pub fn fixed_points(n: usize) -> Self {
        RealFiniteSpace { involution: (0..n).collect() }
    }

    /// `Y × {±1}` with `(y, ε) ↦ (y, -ε)`, for `Y` a set of `n` fixed points.
    pub fn doubled(n: usize) -> Self {
        RealFiniteSpace { involution: (0..2 * n).map(|x| x ^ 1).collect() }
    }

    pub fn disjoint_union(&self, other: &RealFiniteSpace) -> Self {
        let off = self.points();
        let mut inv = self.involution.clone();
        inv.extend(other.involution.iter().map(|&y| y + off));
        RealFiniteSpace { involution: inv }
    }

    pub fn points(&self) -> usize {
        self.involution.len()
    }

    pub fn bar(&self, x: usize) -> usize {
        self.involution[x]
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn has_trivial_involution(&self) -> bool {
        self.involution.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// The same space as a ℤ/2-space.
    pub fn to_gspace(&self) -> GSpace {
        let n = self.points();
        GSpace::new(&FiniteGroup::z2(), n, vec![(0..n).collect(), self.involution.clone()])
            .expect("involution defines a Z/2 action")
    }
}

/// A group acting on an algebra by automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    target: Algebra,
    maps: Vec<AlgebraMap>,
}

impl GroupAction {
    /// Checks `maps[e] = id` and `maps[g] ∘ maps[h] = maps[gh]`. Each map must
    /// already be an automorphism of `target`.
    pub fn new(group: &FiniteGroup, target: &Algebra, maps: Vec<AlgebraMap>) -> Result<Self, Error> {
        if maps.len() != group.order() {
            return Err(Error::Shape("one automorphism per group element".into()));
        }
        if maps.iter().any(|m| m.source() != target || m.target() != target) {
            return Err(Error::Shape("action maps must be endomorphisms of the target".into()));
        }
        let e = group.identity();
        if *maps[e].matrix() != Mat::identity(target.dim()) {
            return Err(Error::NotAnAction { g: e, h: e });
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if maps[g].matrix() * maps[h].matrix() != *maps[group.mul(g, h)].matrix() {
                    return Err(Error::NotAnAction { g, h });
                }
            }
        }
        Ok(GroupAction { group: group.clone(), target: target.clone(), maps })
    }

    pub fn trivial(group: &FiniteGroup, target: &Algebra) -> Self {
        let maps = vec![AlgebraMap::identity(target); group.order()];
        GroupAction { group: group.clone(), target: target.clone(), maps }
    }

    /// The ℤ/2 action generated by an algebra involution.
    pub fn from_involution(tau: &InvolutionMap) -> Self {
        let a = tau.target();
        let maps = vec![AlgebraMap::identity(a), tau.as_algebra_map()];
        GroupAction { group: FiniteGroup::z2(), target: a.clone(), maps }
    }

    /// The action `g(a) = x(g) a x(g)⁻¹`. Only needs each `x(g)` to be a unit
    /// with the conjugations composing correctly, not `x` a representation.
    pub fn by_conjugation(group: &FiniteGroup, target: &Algebra, x: &[Vector]) -> Result<Self, Error> {
        if x.len() != group.order() {
            return Err(Error::Shape("one conjugating unit per group element".into()));
        }
        let maps = x
            .iter()
            .map(|u| AlgebraMap::conjugation(target, u))
            .collect::<Result<Vec<_>, _>>()?;
        GroupAction::new(group, target, maps)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn map(&self, g: usize) -> &AlgebraMap {
        &self.maps[g]
    }

    /// `g(v)`
    pub fn apply(&self, g: usize, v: &[Rat]) -> Vector {
        self.maps[g].apply(v)
    }

    /// For ℤ/2 actions, the generator as an involution.
    pub fn as_involution(&self) -> Option<InvolutionMap> {
        (self.group.order() == 2).then(|| {
            let g = 1 - self.group.identity();
            InvolutionMap::new_unchecked(&self.target, self.maps[g].matrix().clone())
        })
    }
}

/// `A ⋊ G` together with the embedding of `A` and the group units.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub result: Algebra,
    pub embed: AlgebraMap,
    pub group_units: Vec<Vector>,
    pub action: GroupAction,
}

// ---------------------------------------------------------------------------
// named algebras

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn table_from_fn(n: usize, f: impl Fn(usize, usize) -> SparseVector) -> Vec<SparseVector> {
    (0..n * n).map(|k| f(k / n, k % n)).collect()
}

pub fn reals() -> Algebra {
    Algebra::from_table(vec![vec![(0, int(1))]], exact::from_i64s(&[1]), labels(&["1"]))
        .expect("reals")
}

/// ℂ on `{1, i}`.
pub fn complex() -> Algebra {
    clifford_algebra(1, 0, &["1", "i"])
}

/// ℍ on `{1, i, j, k}` with `ij = k`.
pub fn quaternions() -> Algebra {
    clifford_algebra(2, 0, &["1", "i", "j", "k"])
}

/// ℝ[x]/(x²), which has a nonzero radical.
pub fn dual_numbers() -> Algebra {
    let t = table_from_fn(2, |i, j| match (i, j) {
        (0, k) | (k, 0) => vec![(k, int(1))],
        _ => vec![],
    });
    Algebra::from_table(t, exact::from_i64s(&[1, 0]), labels(&["1", "x"])).expect("dual numbers")
}

/// `ℝ[t]/(t² = ε)` on `{1, t}`.
pub fn quadratic_extension(epsilon: i64) -> Algebra {
    let t = table_from_fn(2, |i, j| match (i, j) {
        (1, 1) => vec![(0, int(epsilon))],
        (0, k) | (k, 0) => vec![(k, int(1))],
        _ => unreachable!(),
    });
    Algebra::from_table(t, exact::from_i64s(&[1, 0]), labels(&["1", "t"])).expect("quadratic extension")
}

/// Structure tensor of the octonions (Cayley–Dickson, Fano-plane triples).
/// The algebra is not associative, so [`Algebra::new`] rejects it.
pub fn octonion_structure() -> Vec<Vec<Vector>> {
    const TRIPLES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];
    let mut c = vec![vec![exact::zeros(8); 8]; 8];
    for k in 0..8 {
        c[0][k][k] = int(1);
        c[k][0][k] = int(1);
    }
    for k in 1..8 {
        c[k][k][0] = int(-1);
    }
    for [a, b, d] in TRIPLES {
        for (x, y, z) in [(a, b, d), (b, d, a), (d, a, b)] {
            c[x][y][z] = int(1);
            c[y][x][z] = int(-1);
        }
    }
    c
}

pub fn octonion_labels() -> Vec<String> {
    labels(&["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"])
}

/// Sign and result mask of the Clifford monomial product `e_S e_T`, with the
/// first `p` generators squaring to -1 and the rest to +1.
fn clifford_monomial_product(p: usize, s: usize, t: usize) -> (i64, usize) {
    let mut sign = 1i64;
    // move each generator of t leftwards past the larger generators of s
    for g in 0..usize::BITS as usize {
        if t >> g & 1 == 1 {
            let larger = (s >> (g + 1)).count_ones();
            if larger % 2 == 1 {
                sign = -sign;
            }
        }
    }
    let common = s & t;
    for g in 0..usize::BITS as usize {
        if common >> g & 1 == 1 && g < p {
            sign = -sign;
        }
    }
    (sign, s ^ t)
}

fn clifford_algebra(p: usize, q: usize, names: &[&str]) -> Algebra {
    let n = 1usize << (p + q);
    let t = table_from_fn(n, |s, t| {
        let (sign, m) = clifford_monomial_product(p, s, t);
        vec![(m, int(sign))]
    });
    let labels = if names.len() == n {
        labels(names)
    } else {
        (0..n)
            .map(|s| {
                if s == 0 {
                    "1".to_string()
                } else {
                    (0..p + q)
                        .filter(|g| s >> g & 1 == 1)
                        .map(|g| alloc::format!("e{}", g + 1))
                        .collect()
                }
            })
            .collect()
    };
    Algebra::from_table_unchecked(t, exact::basis_vector(n, 0), labels)
}

/// The Clifford algebra `C^{p,q}` on monomials `e_S` (basis index = bitmask
/// of `S`): generators `e_1..e_p` square to -1 and `e_{p+1}..e_{p+q}` to +1.
/// Returns the canonical involution `e_S ↦ (-1)^{|S|} e_S`.
pub fn clifford(p: usize, q: usize) -> (Algebra, InvolutionMap) {
    let a = clifford_algebra(p, q, &[]);
    let n = a.dim();
    let d: Vector = (0..n)
        .map(|s| if s.count_ones() % 2 == 0 { int(1) } else { int(-1) })
        .collect();
    let tau = InvolutionMap::new(&a, Mat::diagonal(&d)).expect("canonical Clifford involution");
    (a, tau)
}

/// `M_n(base)` on `E_rs ⊗ b_k`, index `(r * n + s) * dim + k`.
pub fn matrix_algebra(base: &Algebra, n: usize) -> Algebra {
    assert!(n >= 1, "matrix size must be positive");
    let d = base.dim();
    let dim = n * n * d;
    let idx = |r: usize, s: usize, k: usize| (r * n + s) * d + k;
    let mut table = vec![Vec::new(); dim * dim];
    for r in 0..n {
        for s in 0..n {
            for u in 0..n {
                for k in 0..d {
                    for l in 0..d {
                        let prod: SparseVector = base
                            .basis_product(k, l)
                            .iter()
                            .map(|(m, c)| (idx(r, u, *m), c.clone()))
                            .collect();
                        table[idx(r, s, k) * dim + idx(s, u, l)] = prod;
                    }
                }
            }
        }
    }
    let mut unit = exact::zeros(dim);
    for r in 0..n {
        for (k, c) in base.unit().iter().enumerate() {
            unit[idx(r, r, k)] = c.clone();
        }
    }
    let mut names = Vec::with_capacity(dim);
    for r in 0..n {
        for s in 0..n {
            for k in 0..d {
                if d == 1 {
                    names.push(alloc::format!("E{}{}", r + 1, s + 1));
                } else {
                    names.push(alloc::format!("E{}{}⊗{}", r + 1, s + 1, base.label(k)));
                }
            }
        }
    }
    Algebra::from_table_unchecked(table, unit, names)
}

/// The element `Σ_{r,s} E_rs ⊗ entries[r][s]` of `matrix_algebra(base, n)`.
pub fn matrix_element(base: &Algebra, entries: &[Vec<Vector>]) -> Vector {
    let n = entries.len();
    let d = base.dim();
    let mut v = exact::zeros(n * n * d);
    for (r, row) in entries.iter().enumerate() {
        assert_eq!(row.len(), n, "square matrix of base elements expected");
        for (s, x) in row.iter().enumerate() {
            for (k, c) in x.iter().enumerate() {
                v[(r * n + s) * d + k] = c.clone();
            }
        }
    }
    v
}

/// `diag(d_1, ..., d_n)` with each `d_r` a multiple of the base unit.
pub fn matrix_diag(base: &Algebra, diag: &[Rat]) -> Vector {
    let n = diag.len();
    let entries: Vec<Vec<Vector>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|s| if r == s { exact::scale(base.unit(), &diag[r]) } else { base.zero() })
                .collect()
        })
        .collect();
    matrix_element(base, &entries)
}

pub fn group_algebra(g: &FiniteGroup) -> Algebra {
    let n = g.order();
    let t = table_from_fn(n, |a, b| vec![(g.mul(a, b), int(1))]);
    Algebra::from_table_unchecked(t, exact::basis_vector(n, g.identity()), g.labels().to_vec())
}

/// `A × B` on the basis of `A` followed by that of `B`.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Algebra {
    let (m, n) = (a.dim(), b.dim());
    let dim = m + n;
    let t = table_from_fn(dim, |i, j| {
        if i < m && j < m {
            a.basis_product(i, j).clone()
        } else if i >= m && j >= m {
            b.basis_product(i - m, j - m).iter().map(|(k, c)| (k + m, c.clone())).collect()
        } else {
            Vec::new()
        }
    });
    let mut unit = a.unit().clone();
    unit.extend(b.unit().iter().cloned());
    let mut names: Vec<String> = a.labels().iter().map(|l| alloc::format!("({l},0)")).collect();
    names.extend(b.labels().iter().map(|l| alloc::format!("(0,{l})")));
    Algebra::from_table_unchecked(t, unit, names)
}

/// `A^k = A × ... × A`, copy `x` occupying indices `x * dim A ..`.
pub fn power(a: &Algebra, k: usize) -> Algebra {
    assert!(k >= 1);
    let d = a.dim();
    let dim = k * d;
    let t = table_from_fn(dim, |i, j| {
        if i / d == j / d {
            let off = (i / d) * d;
            a.basis_product(i % d, j % d).iter().map(|(m, c)| (m + off, c.clone())).collect()
        } else {
            Vec::new()
        }
    });
    let unit = (0..k).flat_map(|_| a.unit().iter().cloned()).collect();
    let names = (0..k)
        .flat_map(|x| a.labels().iter().map(move |l| alloc::format!("{l}@{x}")))
        .collect();
    Algebra::from_table_unchecked(t, unit, names)
}

/// `A ⊗ B` on `a_i ⊗ b_j`, index `i * dim B + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Algebra {
    let (m, n) = (a.dim(), b.dim());
    let dim = m * n;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..m {
        for k in 0..m {
            let ak = a.basis_product(i, k);
            if ak.is_empty() {
                continue;
            }
            for j in 0..n {
                for l in 0..n {
                    let bl = b.basis_product(j, l);
                    let mut prod: SparseVector = Vec::with_capacity(ak.len() * bl.len());
                    for (p, c) in ak {
                        for (q, d) in bl {
                            prod.push((p * n + q, c * d));
                        }
                    }
                    table[(i * n + j) * dim + (k * n + l)] = prod;
                }
            }
        }
    }
    let mut unit = exact::zeros(dim);
    for (i, x) in a.unit().iter().enumerate() {
        for (j, y) in b.unit().iter().enumerate() {
            if !x.is_zero() && !y.is_zero() {
                unit[i * n + j] = x * y;
            }
        }
    }
    Algebra::from_table_unchecked(table, unit, product_labels(a.labels(), b.labels(), "⊗"))
}

/// `A^op`, with `b_i ∘ b_j = b_j b_i`.
pub fn opposite(a: &Algebra) -> Algebra {
    let n = a.dim();
    let t = table_from_fn(n, |i, j| a.basis_product(j, i).clone());
    Algebra::from_table_unchecked(t, a.unit().clone(), a.labels().to_vec())
}

/// The crossed product `A ⋊ G` with `(a g)(b h) = a g(b) gh`.
pub fn crossed_product(action: &GroupAction) -> CrossedProduct {
    let a = action.target();
    let g = action.group();
    let (n, o) = (a.dim(), g.order());
    let dim = n * o;
    // images[h][j] = h(a_j), sparse
    let images: Vec<Vec<SparseVector>> = (0..o)
        .map(|h| action.map(h).matrix().columns().iter().map(|c| sparse(c)).collect())
        .collect();
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..n {
        for gi in 0..o {
            for j in 0..n {
                // a_i * g(a_j)
                let mut prod = exact::zeros(n);
                for (m, c) in &images[gi][j] {
                    crate::algebra::accumulate(&mut prod, c, a.basis_product(i, *m));
                }
                let prod = sparse(&prod);
                for h in 0..o {
                    let gh = g.mul(gi, h);
                    table[(i * o + gi) * dim + (j * o + h)] =
                        prod.iter().map(|(k, c)| (k * o + gh, c.clone())).collect();
                }
            }
        }
    }
    let e = g.identity();
    let mut unit = exact::zeros(dim);
    for (i, c) in a.unit().iter().enumerate() {
        unit[i * o + e] = c.clone();
    }
    let result = Algebra::from_table_unchecked(table, unit, product_labels(a.labels(), g.labels(), "·"));
    let mut embed_m = Mat::zeros(dim, n);
    for i in 0..n {
        embed_m.set(i * o + e, i, Rat::one());
    }
    let embed = AlgebraMap::new_unchecked(a, &result, embed_m);
    let group_units: Vec<Vector> = (0..o)
        .map(|h| {
            let mut v = exact::zeros(dim);
            for (i, c) in a.unit().iter().enumerate() {
                v[i * o + h] = c.clone();
            }
            v
        })
        .collect();
    let cp = CrossedProduct { result, embed, group_units, action: action.clone() };
    debug_assert!(cp.check_invariants());
    cp
}

impl CrossedProduct {
    /// `u_g · a = g(a) · u_g` on every basis element and `u_g u_h = u_{gh}`.
    pub fn check_invariants(&self) -> bool {
        let a = self.action.target();
        let g = self.action.group();
        let r = &self.result;
        for h in 0..g.order() {
            for i in 0..a.dim() {
                let lhs = r.mul(&self.group_units[h], &self.embed.apply(&a.basis(i)));
                let rhs = r.mul(&self.embed.apply(&self.action.apply(h, &a.basis(i))), &self.group_units[h]);
                if lhs != rhs {
                    return false;
                }
            }
            for k in 0..g.order() {
                if r.mul(&self.group_units[h], &self.group_units[k]) != self.group_units[g.mul(h, k)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    /// Coordinates of `a g` for `a` in the base algebra.
    pub fn element(&self, a: &[Rat], g: usize) -> Vector {
        self.result.mul(&self.embed.apply(a), &self.group_units[g])
    }
}

/// How [`gw_twist`] enlarges the base algebra.
#[derive(Clone, Debug)]
pub enum GwMode {
    /// `A0 ⊗ M_2(ℝ)` (ε = +1) or `A0 ⊗ ℍ` (ε = -1), for a real form `A0`.
    Complexified,
    /// `A ⊗ ℝ[t]/(t² = ε)` for an algebra `A` with the given involution.
    Real(InvolutionMap),
}

/// The algebra-with-involution whose KR-group computes the ε-symmetric
/// Grothendieck–Witt group.
///
/// * complexified, ε = +1: `A0 ⊗ M_2(ℝ)`, involution `id ⊗ conj by diag(1, -1)`;
/// * complexified, ε = -1: `A0 ⊗ ℍ`, involution `id ⊗ conj by k` (negates i, j);
/// * real: `A ⊗ ℝ[t]/(t² = ε)`, the given involution extended by `t ↦ t`.
pub fn gw_twist(a0: &Algebra, epsilon: i64, mode: &GwMode) -> Result<(Algebra, InvolutionMap), Error> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::UnsupportedCase(alloc::format!("epsilon must be ±1, got {epsilon}")));
    }
    let id = Mat::identity(a0.dim());
    match mode {
        GwMode::Complexified => {
            let (second, twist) = if epsilon == 1 {
                let m2 = matrix_algebra(&reals(), 2);
                let j = matrix_diag(&reals(), &[int(1), int(-1)]);
                let tau = InvolutionMap::conjugation(&m2, &j)?;
                (m2, tau)
            } else {
                let h = quaternions();
                let tau = InvolutionMap::conjugation(&h, &h.basis(3))?;
                (h, tau)
            };
            let t = tensor_product(a0, &second);
            let tau = InvolutionMap::new(&t, id.kron(twist.matrix()))?;
            Ok((t, tau))
        }
        GwMode::Real(inv) => {
            if inv.target() != a0 {
                return Err(Error::Shape("involution must act on the base algebra".into()));
            }
            let q = quadratic_extension(epsilon);
            let t = tensor_product(a0, &q);
            let tau = InvolutionMap::new(&t, inv.matrix().kron(&Mat::identity(2)))?;
            Ok((t, tau))
        }
    }
}

/// Sections of the trivial Real algebra bundle `X × fiber` with the ℤ/2
/// action `(τ s)(x) = τ(s(x̄))`. Point `x` occupies coordinates
/// `x * dim .. (x + 1) * dim`.
pub fn section_algebra(fiber: &Algebra, tau: &InvolutionMap, space: &RealFiniteSpace) -> (Algebra, GroupAction) {
    let b = power(fiber, space.points());
    let d = fiber.dim();
    let mut m = Mat::zeros(b.dim(), b.dim());
    for x in 0..space.points() {
        let xb = space.bar(x);
        for i in 0..d {
            for j in 0..d {
                m.set(x * d + i, xb * d + j, tau.matrix().get(i, j).clone());
            }
        }
    }
    let inv = InvolutionMap::new_unchecked(&b, m);
    let action = GroupAction::from_involution(&inv);
    (b, action)
}

/// Sections of `X × fiber` for a finite G-space `X`, with
/// `(g s)(x) = g(s(g⁻¹ x))`.
pub fn equivariant_section_action(fiber_action: &GroupAction, space: &GSpace) -> Result<GroupAction, Error> {
    let group = fiber_action.group();
    if space.group() != group {
        return Err(Error::Shape("space and fiber action use different groups".into()));
    }
    let fiber = fiber_action.target();
    let b = power(fiber, space.points());
    let d = fiber.dim();
    let maps = (0..group.order())
        .map(|g| {
            let gm = fiber_action.map(g).matrix();
            let ginv = group.inv(g);
            let mut m = Mat::zeros(b.dim(), b.dim());
            for x in 0..space.points() {
                let src = space.act(ginv, x);
                for i in 0..d {
                    for j in 0..d {
                        m.set(x * d + i, src * d + j, gm.get(i, j).clone());
                    }
                }
            }
            AlgebraMap::new_unchecked(&b, &b, m)
        })
        .collect();
    GroupAction::new(group, &b, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::from_i64s;

    #[test]
    fn named_algebras_are_associative() {
        for a in [reals(), complex(), quaternions(), dual_numbers(), quadratic_extension(-1)] {
            let s = a.structure_tensor();
            assert!(Algebra::new(&s, a.unit().clone(), a.labels().to_vec()).is_ok());
        }
    }

    #[test]
    fn octonions_rejected() {
        let err = Algebra::new(&octonion_structure(), exact::basis_vector(8, 0), octonion_labels()).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }));
    }

    #[test]
    fn octonions_are_alternative_but_normed() {
        // every imaginary unit squares to -1 and units pairwise anticommute
        let c = octonion_structure();
        for a in 1..8 {
            assert_eq!(c[a][a], from_i64s(&[-1, 0, 0, 0, 0, 0, 0, 0]));
            for b in 1..8 {
                if a != b {
                    let s: Vector = c[a][b].iter().zip(&c[b][a]).map(|(x, y)| x + y).collect();
                    assert!(exact::is_zero(&s));
                }
            }
        }
    }

    #[test]
    fn clifford_generators() {
        for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 3), (2, 2)] {
            let (a, tau) = clifford(p, q);
            assert_eq!(a.dim(), 1 << (p + q));
            let s = a.structure_tensor();
            assert!(Algebra::new(&s, a.unit().clone(), a.labels().to_vec()).is_ok());
            for g in 0..p + q {
                let e = a.basis(1 << g);
                let sq = if g < p { -1 } else { 1 };
                assert_eq!(a.mul(&e, &e), exact::scale(a.unit(), &int(sq)));
                assert_eq!(tau.apply(&e), exact::neg(&e));
                for h in g + 1..p + q {
                    let f = a.basis(1 << h);
                    assert_eq!(a.mul(&e, &f), exact::neg(&a.mul(&f, &e)));
                }
            }
        }
    }

    #[test]
    fn clifford_20_is_quaternions() {
        let (c, _) = clifford(2, 0);
        assert_eq!(c, quaternions());
        assert_eq!(c.labels(), ["1", "e1", "e2", "e1e2"]);
    }

    #[test]
    fn matrix_and_tensor_dims() {
        assert_eq!(matrix_algebra(&reals(), 2).dim(), 4);
        assert_eq!(matrix_algebra(&complex(), 2).dim(), 8);
        assert_eq!(matrix_algebra(&quaternions(), 1), quaternions());
        assert_eq!(tensor_product(&complex(), &complex()).dim(), 4);
        assert_eq!(direct_product(&complex(), &quaternions()).dim(), 6);
        assert!(group_algebra(&FiniteGroup::z2()).is_commutative());
        let m = matrix_algebra(&complex(), 2);
        let s = m.structure_tensor();
        assert!(Algebra::new(&s, m.unit().clone(), m.labels().to_vec()).is_ok());
        let t = tensor_product(&quaternions(), &complex());
        assert!(Algebra::new(&t.structure_tensor(), t.unit().clone(), t.labels().to_vec()).is_ok());
    }

    #[test]
    fn groups() {
        for g in [FiniteGroup::cyclic(5), FiniteGroup::klein_four(), FiniteGroup::symmetric3()] {
            for a in 0..g.order() {
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
            }
        }
        assert!(FiniteGroup::new(2, vec![0, 0, 0, 1], vec!["a".into(), "b".into()]).is_err());
        let s3 = FiniteGroup::symmetric3();
        assert_ne!(s3.mul(1, 2), s3.mul(2, 1));
    }

    #[test]
    fn real_spaces() {
        assert!(RealFiniteSpace::new(vec![1, 2, 0]).is_err());
        let x = RealFiniteSpace::point().disjoint_union(&RealFiniteSpace::swap_pair());
        assert_eq!(x.involution(), [0, 2, 1]);
        assert!(x.to_gspace().act(1, 1) == 2);
        assert!(RealFiniteSpace::fixed_points(3).has_trivial_involution());
    }

    #[test]
    fn crossed_product_conjugation_relation() {
        // ℂ ⋊ ℤ/2 with complex conjugation: τ·i = (-i)·τ
        let c = complex();
        let conj = InvolutionMap::new(&c, Mat::diagonal(&from_i64s(&[1, -1]))).unwrap();
        let cp = crossed_product(&GroupAction::from_involution(&conj));
        assert!(cp.check_invariants());
        let r = &cp.result;
        let tau = &cp.group_units[1];
        let i = cp.embed.apply(&c.basis(1));
        assert_eq!(r.mul(tau, &i), r.mul(&exact::neg(&i), tau));
        let s = r.structure_tensor();
        assert!(Algebra::new(&s, r.unit().clone(), r.labels().to_vec()).is_ok());
    }

    #[test]
    fn trivial_action_gives_tensor_with_group_algebra() {
        let h = quaternions();
        let g = FiniteGroup::cyclic(3);
        let cp = crossed_product(&GroupAction::trivial(&g, &h));
        assert_eq!(cp.result, tensor_product(&h, &group_algebra(&g)));
    }

    #[test]
    fn quaternion_crossed_product_dimension() {
        let h = quaternions();
        let tau = InvolutionMap::conjugation(&h, &h.basis(1)).unwrap();
        let cp = crossed_product(&GroupAction::from_involution(&tau));
        assert_eq!(cp.result.dim(), 8);
        assert!(cp.check_invariants());
    }

    #[test]
    fn nonabelian_crossed_product_is_associative() {
        // S3 acting on ℝ^3 = ℝ×ℝ×ℝ by permuting factors
        let g = FiniteGroup::symmetric3();
        let space = GSpace::free_orbit(&g);
        let act = equivariant_section_action(&GroupAction::trivial(&g, &reals()), &space).unwrap();
        let cp = crossed_product(&act);
        assert!(cp.check_invariants());
        let r = &cp.result;
        assert!(Algebra::new(&r.structure_tensor(), r.unit().clone(), r.labels().to_vec()).is_ok());
    }

    #[test]
    fn gw_twists() {
        let (a, tau) = gw_twist(&reals(), 1, &GwMode::Complexified).unwrap();
        assert_eq!(a, matrix_algebra(&reals(), 2));
        // conj by diag(1,-1): E11, E22 fixed; E12, E21 negated
        assert_eq!(*tau.matrix(), Mat::diagonal(&from_i64s(&[1, -1, -1, 1])));
        let (h, tau) = gw_twist(&reals(), -1, &GwMode::Complexified).unwrap();
        assert_eq!(h, quaternions());
        assert_eq!(*tau.matrix(), Mat::diagonal(&from_i64s(&[1, -1, -1, 1])));
        let (r2, tau) = gw_twist(&reals(), 1, &GwMode::Real(InvolutionMap::identity(&reals()))).unwrap();
        assert_eq!(r2, quadratic_extension(1));
        assert_eq!(*tau.matrix(), Mat::identity(2));
        assert!(gw_twist(&reals(), 2, &GwMode::Complexified).is_err());
    }

    #[test]
    fn section_algebra_swap() {
        let h = quaternions();
        let sigma = InvolutionMap::conjugation(&h, &h.basis(1)).unwrap();
        let (b, act) = section_algebra(&h, &sigma, &RealFiniteSpace::swap_pair());
        assert_eq!(b.dim(), 8);
        // τ(j, 0) = (0, σ(j)) = (0, -j)
        let mut s = b.zero();
        s[2] = int(1);
        let mut expect = b.zero();
        expect[6] = int(-1);
        assert_eq!(act.apply(1, &s), expect);
        assert!(act.as_involution().is_some());
        let tau_b = act.as_involution().unwrap();
        assert!(InvolutionMap::new(&b, tau_b.matrix().clone()).is_ok());
        let (b1, act1) = section_algebra(&h, &sigma, &RealFiniteSpace::point());
        assert_eq!(b1, h);
        assert_eq!(act1.map(1).matrix(), sigma.matrix());
    }
}
