//! Lie skew-ideals of `M_n` under the transpose involution.
//!
//! `M_4 = F·I ⊕ K1 ⊕ K2 ⊕ [S,K]`, where `K1 ⊕ K2` is the skew part and
//! `[S,K]` is the traceless symmetric part. Every Lie skew-ideal of `M_4` is the
//! direct sum of some of these four components, giving sixteen ideals.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{solve_in_basis, SubspaceBasis};
use crate::matrix::{basis_k1_m4, basis_k2_m4, skew_basis_transpose, Matrix, Q};

/// Largest `n` accepted by [`generate_lie_skew_ideal`].
pub const MAX_GENERATE_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    Z,
    K1,
    K2,
    K,
    SK,
}

impl Component {
    pub const M4: [Component; 4] = [Component::Z, Component::K1, Component::K2, Component::SK];

    pub fn name(self) -> &'static str {
        match self {
            Component::Z => "Z",
            Component::K1 => "K1",
            Component::K2 => "K2",
            Component::K => "K",
            Component::SK => "SK",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Component::Z),
            "K1" => Ok(Component::K1),
            "K2" => Ok(Component::K2),
            "K" => Ok(Component::K),
            "SK" => Ok(Component::SK),
            other => Err(Error::Input(format!("unknown component `{other}`"))),
        }
    }
}

pub type ComponentSet = BTreeSet<Component>;

pub fn component_names(set: &ComponentSet) -> Vec<&'static str> {
    set.iter().map(|c| c.name()).collect()
}

/// Basis matrices of a component of `M_n`.
pub fn component_matrices(n: usize, component: Component) -> Result<Vec<Matrix<Q>>> {
    if n < 2 {
        return Err(Error::Input("components need n >= 2".into()));
    }
    match component {
        Component::Z => Ok(vec![Matrix::identity(n)]),
        Component::K1 | Component::K2 if n != 4 => Err(Error::DimensionMismatch {
            expected: 4,
            found: n,
        }),
        Component::K1 => Ok(basis_k1_m4().to_vec()),
        Component::K2 => Ok(basis_k2_m4().to_vec()),
        Component::K => Ok(skew_basis_transpose(n)),
        Component::SK => Ok(traceless_symmetric_basis(n)),
    }
}

/// `{E_ii − E_nn : i < n} ∪ {E_ij + E_ji : i < j}`.
fn traceless_symmetric_basis(n: usize) -> Vec<Matrix<Q>> {
    let last = Matrix::<Q>::unit(n, n - 1, n - 1);
    let mut out: Vec<Matrix<Q>> = (0..n - 1)
        .map(|i| &Matrix::unit(n, i, i) - &last)
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(&Matrix::unit(n, i, j) + &Matrix::unit(n, j, i));
        }
    }
    out
}

pub fn component_basis(n: usize, component: Component) -> Result<SubspaceBasis> {
    Ok(SubspaceBasis::span(n, component_matrices(n, component)?))
}

/// The direct sum of the listed components.
pub fn component_sum(n: usize, set: &ComponentSet) -> Result<SubspaceBasis> {
    let mut acc = SubspaceBasis::zero(n);
    for &c in set {
        acc = acc.sum(&component_basis(n, c)?);
    }
    Ok(acc)
}

/// Coordinates of a `4×4` matrix in the component bases, with `SK` the
/// traceless symmetric matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct M4Projection {
    pub z: Vec<Q>,
    pub k1: Vec<Q>,
    pub k2: Vec<Q>,
    pub sk: Vec<Q>,
}

impl M4Projection {
    pub fn coordinates(&self, component: Component) -> &[Q] {
        match component {
            Component::Z => &self.z,
            Component::K1 => &self.k1,
            Component::K2 => &self.k2,
            Component::SK | Component::K => &self.sk,
        }
    }

    /// The part of the matrix lying in `component`.
    pub fn part(&self, component: Component) -> Matrix<Q> {
        let basis = component_matrices(4, component).expect("M4 component");
        self.coordinates(component)
            .iter()
            .zip(&basis)
            .fold(Matrix::zeros(4), |acc, (c, b)| &acc + &b.scale(c))
    }

    /// Components with a nonzero coordinate.
    pub fn support(&self) -> ComponentSet {
        Component::M4
            .into_iter()
            .filter(|&c| self.coordinates(c).iter().any(|x| !num::Zero::is_zero(x)))
            .collect()
    }

    pub fn reconstruct(&self) -> Matrix<Q> {
        Component::M4
            .into_iter()
            .fold(Matrix::zeros(4), |acc, c| &acc + &self.part(c))
    }
}

pub fn project_m4(a: &Matrix<Q>) -> Result<M4Projection> {
    if a.n() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: a.n(),
        });
    }
    let mut all = Vec::with_capacity(16);
    let mut sizes = Vec::with_capacity(4);
    for c in Component::M4 {
        let basis = component_matrices(4, c)?;
        sizes.push(basis.len());
        all.extend(basis);
    }
    let coords = solve_in_basis(&all, a)
        .ok_or_else(|| Error::Inconsistent("the components do not span M4".into()))?;
    let mut it = coords.into_iter();
    let mut take = |k: usize| it.by_ref().take(k).collect::<Vec<_>>();
    Ok(M4Projection {
        z: take(sizes[0]),
        k1: take(sizes[1]),
        k2: take(sizes[2]),
        sk: take(sizes[3]),
    })
}

/// Whether `b` is closed under commutators with every `E_ij − E_ji`.
pub fn is_lie_skew_ideal(b: &SubspaceBasis) -> bool {
    let skew = skew_basis_transpose::<Q>(b.n());
    b.matrices()
        .iter()
        .all(|x| skew.iter().all(|k| b.contains(&x.commutator(k))))
}

/// The smallest Lie skew-ideal of `M_n` containing `generators`.
pub fn generate_lie_skew_ideal(generators: &[Matrix<Q>], n: usize) -> Result<SubspaceBasis> {
    if n == 0 || n > MAX_GENERATE_N {
        return Err(Error::Input(format!(
            "generation supports 1 <= n <= {MAX_GENERATE_N}, got {n}"
        )));
    }
    for g in generators {
        if g.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.n(),
            });
        }
    }
    let skew = skew_basis_transpose::<Q>(n);
    let mut span = SubspaceBasis::span(n, generators);
    // the dimension grows every round until it stabilizes, so n² rounds suffice
    let mut frontier = span.matrices();
    for _ in 0..n * n {
        let mut next = Vec::new();
        for x in &frontier {
            for k in &skew {
                let c = x.commutator(k);
                if span.insert(&c) {
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            return Ok(span);
        }
        frontier = next;
    }
    Ok(span)
}

/// The components of `M_4` whose direct sum is the Lie skew-ideal `b`.
pub fn classify_lie_skew_ideal(b: &SubspaceBasis) -> Result<ComponentSet> {
    if b.n() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: b.n(),
        });
    }
    if !is_lie_skew_ideal(b) {
        return Err(Error::NotLieSkewIdeal(format!(
            "subspace of dimension {} is not closed under commutators with skew matrices",
            b.dim()
        )));
    }
    let mut set = ComponentSet::new();
    for c in Component::M4 {
        if b.contains_subspace(&component_basis(4, c)?) {
            set.insert(c);
        }
    }
    if component_sum(4, &set)? != *b {
        return Err(Error::Inconsistent(format!(
            "Lie skew-ideal of dimension {} is not a sum of components",
            b.dim()
        )));
    }
    Ok(set)
}

/// All sixteen Lie skew-ideals of `M_4` with their component sets.
pub fn all_lie_skew_ideals_m4() -> Vec<(ComponentSet, SubspaceBasis)> {
    (0u32..16)
        .map(|mask| {
            let set: ComponentSet = Component::M4
                .into_iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, c)| c)
                .collect();
            let span = component_sum(4, &set).expect("M4 components");
            (set, span)
        })
        .collect()
}

/// The orthogonal matrix swapping `K1` and `K2` under conjugation.
pub fn swap_matrix() -> Matrix<Q> {
    Matrix::from_i64(&[
        &[0, 0, 1, 0],
        &[0, 0, 0, -1],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
    ])
}

/// Whether `P Pᵗ = I` and `P⁻¹ K1 P = K2` for [`swap_matrix`].
pub fn verify_swap() -> Result<bool> {
    let p = swap_matrix();
    if &p * &p.transpose() != Matrix::identity(4) {
        return Ok(false);
    }
    let conjugated = basis_k1_m4::<Q>()
        .iter()
        .map(|k| k.conjugate(&p))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceBasis::span(4, &conjugated) == component_basis(4, Component::K2)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    /// Whether the ideal is invariant under every orthogonal conjugation.
    pub invariant: bool,
    /// The smallest orthogonally invariant ideal containing it.
    pub collapsed: ComponentSet,
}

/// Collapses a component set under `O(4)`: conjugation by [`swap_matrix`]
/// exchanges `K1` and `K2`, so an invariant ideal contains both or neither.
pub fn o4_collapse(set: &ComponentSet) -> Result<Collapse> {
    if set.contains(&Component::K) {
        return Err(Error::Input("use K1 and K2 for components of M4".into()));
    }
    if !verify_swap()? {
        return Err(Error::Inconsistent(
            "the swap matrix does not exchange K1 and K2".into(),
        ));
    }
    let has_k1 = set.contains(&Component::K1);
    let has_k2 = set.contains(&Component::K2);
    let mut collapsed = set.clone();
    if has_k1 || has_k2 {
        collapsed.insert(Component::K1);
        collapsed.insert(Component::K2);
    }
    Ok(Collapse {
        invariant: has_k1 == has_k2,
        collapsed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Scalar;

    fn set(items: &[Component]) -> ComponentSet {
        items.iter().copied().collect()
    }

    #[test]
    fn component_dimensions() {
        let dims: Vec<usize> = Component::M4
            .iter()
            .map(|&c| component_basis(4, c).unwrap().dim())
            .collect();
        assert_eq!(dims, [1, 3, 3, 9]);
        let all = Component::M4.iter().copied().collect();
        assert_eq!(component_sum(4, &all).unwrap().dim(), 16);
        assert_eq!(component_basis(2, Component::SK).unwrap().dim(), 2);
        assert_eq!(component_basis(3, Component::K).unwrap().dim(), 3);
        assert!(component_basis(3, Component::K1).is_err());
    }

    #[test]
    fn projections() {
        let p = project_m4(&Matrix::identity(4)).unwrap();
        assert_eq!(p.support(), set(&[Component::Z]));

        let unit_skew = &Matrix::<Q>::unit(4, 0, 1) - &Matrix::unit(4, 1, 0);
        let p = project_m4(&unit_skew).unwrap();
        let half = Q::from_ratio(1, 2);
        let zero = Q::from_i64(0);
        assert_eq!(p.k1, vec![half.clone(), zero.clone(), zero.clone()]);
        assert_eq!(p.k2, vec![half, zero.clone(), zero]);
        assert_eq!(p.reconstruct(), unit_skew);

        let k1 = basis_k1_m4::<Q>()[0].clone();
        assert_eq!(project_m4(&k1).unwrap().support(), set(&[Component::K1]));
    }

    #[test]
    fn symmetric_and_skew_parts_land_in_their_components() {
        let a = Matrix::<Q>::from_fn(4, |i, j| Q::from_i64((3 * i * i + 7 * j + i * j) as i64 % 11 - 5));
        let p = project_m4(&a).unwrap();
        assert_eq!(p.reconstruct(), a);
        let sym = &p.part(Component::Z) + &p.part(Component::SK);
        let skew = &p.part(Component::K1) + &p.part(Component::K2);
        assert!(sym.is_symmetric());
        assert!(skew.is_skew());
    }

    #[test]
    fn generation_examples() {
        assert_eq!(generate_lie_skew_ideal(&[Matrix::identity(4)], 4).unwrap().dim(), 1);
        let k1 = basis_k1_m4::<Q>()[0].clone();
        assert_eq!(
            generate_lie_skew_ideal(&[k1], 4).unwrap(),
            component_basis(4, Component::K1).unwrap()
        );
        let mut d = Matrix::<Q>::zeros(4);
        d[(0, 0)] = Q::from_i64(1);
        d[(1, 1)] = Q::from_i64(-1);
        assert_eq!(generate_lie_skew_ideal(&[d], 4).unwrap().dim(), 9);
        assert!(generate_lie_skew_ideal(&[], 9).is_err());
    }

    #[test]
    fn classification_examples() {
        let skew = SubspaceBasis::span(4, skew_basis_transpose::<Q>(4));
        assert_eq!(
            classify_lie_skew_ideal(&skew).unwrap(),
            set(&[Component::K1, Component::K2])
        );
        let traceless = generate_lie_skew_ideal(
            &[Matrix::unit(4, 0, 1), Matrix::unit(4, 1, 0), &Matrix::unit(4, 0, 0) - &Matrix::unit(4, 1, 1)],
            4,
        )
        .unwrap();
        assert_eq!(traceless.dim(), 15);
        assert_eq!(
            classify_lie_skew_ideal(&traceless).unwrap(),
            set(&[Component::K1, Component::K2, Component::SK])
        );
        let zk1 = component_sum(4, &set(&[Component::Z, Component::K1])).unwrap();
        assert_eq!(classify_lie_skew_ideal(&zk1).unwrap(), set(&[Component::Z, Component::K1]));

        let line = SubspaceBasis::span(4, [Matrix::<Q>::unit(4, 0, 1)]);
        assert!(matches!(classify_lie_skew_ideal(&line), Err(Error::NotLieSkewIdeal(_))));
    }

    #[test]
    fn all_sixteen_are_closed_and_distinct() {
        let ideals = all_lie_skew_ideals_m4();
        assert_eq!(ideals.len(), 16);
        for (i, (components, span)) in ideals.iter().enumerate() {
            assert!(is_lie_skew_ideal(span));
            assert_eq!(&classify_lie_skew_ideal(span).unwrap(), components);
            for (_, other) in &ideals[i + 1..] {
                assert_ne!(span, other);
            }
        }
    }

    #[test]
    fn swap_and_collapse() {
        assert!(verify_swap().unwrap());
        let c = o4_collapse(&set(&[Component::K1])).unwrap();
        assert!(!c.invariant);
        assert_eq!(c.collapsed, set(&[Component::K1, Component::K2]));
        assert!(o4_collapse(&set(&[Component::Z, Component::SK])).unwrap().invariant);
        assert!(o4_collapse(&set(&[Component::K1, Component::K2])).unwrap().invariant);
    }
}
