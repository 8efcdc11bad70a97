//! Nonabelian Galois cohomology `H¹(ℤ/2, Γ)` of a group with an involution.
//!
//! A cocycle is an element `γ` with `γ·σ(γ) = e`; two cocycles are cohomologous when
//! `γ' = β·γ·σ(β)⁻¹` for some `β`.

use crate::group::{Automorphism, FiniteGroup, GGroup, GroupError};
use crate::partition::orbit_partition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("element {element} is not a cocycle: g·σ(g) != e")]
    NotACocycle { element: usize },
    #[error("the group is not abelian")]
    NotAbelian,
    #[error("automorphism does not commute with σ")]
    NotEquivariant,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `β·γ·σ(β)⁻¹`.
#[inline]
pub fn twisted_conjugate(gg: &GGroup, beta: usize, gamma: usize) -> usize {
    let g = gg.group();
    g.mul(g.mul(beta, gamma), g.inv(gg.s(beta)))
}

pub fn is_cocycle(gg: &GGroup, gamma: usize) -> bool {
    gg.group().mul(gamma, gg.s(gamma)) == 0
}

/// Cocycles `Z¹`, in increasing index order.
pub fn z1(gg: &GGroup) -> Vec<usize> {
    gg.group()
        .elements()
        .filter(|&g| is_cocycle(gg, g))
        .collect()
}

/// Cohomology classes of a [`GGroup`].
///
/// Classes are ordered by least member and each is represented by that member, so
/// class 0 is the class of the identity and is represented by `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Classes {
    classes: Vec<Vec<usize>>,
    class_of: Vec<Option<usize>>,
}

impl H1Classes {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Class index of a cocycle, `None` for non-cocycles.
    pub fn class_of(&self, gamma: usize) -> Option<usize> {
        self.class_of.get(gamma).copied().flatten()
    }

    pub fn cocycles(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

pub fn h1(gg: &GGroup) -> H1Classes {
    let n = gg.group().order();
    let orbits = orbit_partition(n, n, |gamma, beta| twisted_conjugate(gg, beta, gamma));
    let classes: Vec<Vec<usize>> = orbits
        .into_iter()
        .filter(|c| is_cocycle(gg, c[0]))
        .collect();
    let mut class_of = vec![None; n];
    for (k, c) in classes.iter().enumerate() {
        for &g in c {
            class_of[g] = Some(k);
        }
    }
    H1Classes { classes, class_of }
}

/// `#(ker N / im(1 − σ))` for abelian groups, with `N(a) = a·σ(a)`.
pub fn h1_abelian(gg: &GGroup) -> Result<usize, CohomologyError> {
    let g = gg.group();
    if !g.is_abelian() {
        return Err(CohomologyError::NotAbelian);
    }
    let kernel = g.elements().filter(|&a| g.mul(a, gg.s(a)) == 0).count();
    let mut image: Vec<usize> = g.elements().map(|a| g.mul(a, g.inv(gg.s(a)))).collect();
    image.sort_unstable();
    image.dedup();
    debug_assert_eq!(kernel % image.len(), 0);
    Ok(kernel / image.len())
}

/// The inner form: same group, involution `g ↦ γ·σ(g)·γ⁻¹`.
pub fn twist_ggroup(gg: &GGroup, gamma: usize) -> Result<GGroup, CohomologyError> {
    if !is_cocycle(gg, gamma) {
        return Err(CohomologyError::NotACocycle { element: gamma });
    }
    let inner = Automorphism::inner(gg.group(), gamma);
    Ok(GGroup::new(gg.group().clone(), inner.compose(gg.sigma()))?)
}

/// Real structure `g ↦ σ(g)·γ⁻¹` on the underlying set of `Γ`, the torsor of the class of `γ`.
pub fn torsor_involution(gg: &GGroup, gamma: usize) -> Result<Permutation, CohomologyError> {
    if !is_cocycle(gg, gamma) {
        return Err(CohomologyError::NotACocycle { element: gamma });
    }
    let g = gg.group();
    let gi = g.inv(gamma);
    Ok(
        Permutation::new(g.elements().map(|x| g.mul(gg.s(x), gi)).collect())
            .expect("right translation of σ is bijective"),
    )
}

/// Permutation of class indices induced by an automorphism commuting with `σ`.
pub fn h1_action(
    gg: &GGroup,
    classes: &H1Classes,
    alpha: &Automorphism,
) -> Result<Permutation, CohomologyError> {
    if alpha.images().len() != gg.group().order() {
        return Err(GroupError::WrongDegree {
            len: alpha.images().len(),
            order: gg.group().order(),
        }
        .into());
    }
    if !alpha.commutes_with(gg.sigma()) {
        return Err(CohomologyError::NotEquivariant);
    }
    let images = classes
        .representatives()
        .into_iter()
        .map(|r| {
            classes
                .class_of(alpha.apply(r))
                .expect("equivariant maps send cocycles to cocycles")
        })
        .collect();
    Ok(Permutation::new(images).expect("automorphisms permute classes"))
}

/// Orbit of `x` under `β ↦ β·x·σ(β)⁻¹`, sorted. `σ` need not be an involution.
pub fn twisted_class(group: &FiniteGroup, sigma: &Automorphism, x: usize) -> Vec<usize> {
    let mut orbit: Vec<usize> = group
        .elements()
        .map(|b| group.mul(group.mul(b, x), group.inv(sigma.apply(b))))
        .collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, elementary_abelian_2, symmetric};

    fn gg(g: FiniteGroup, images: Vec<usize>) -> GGroup {
        GGroup::from_images(g, images).unwrap()
    }

    #[test]
    fn trivial_action_counts_conjugacy_classes_of_involutions() {
        // with σ = id, H¹ is the set of conjugacy classes of elements of order ≤ 2
        let s3 = GGroup::trivial_action(symmetric(3).unwrap());
        assert_eq!(h1(&s3).len(), 2);
        let c2 = GGroup::trivial_action(cyclic(2).unwrap());
        let classes = h1(&c2);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes.representatives(), vec![0, 1]);
    }

    #[test]
    fn inversion_on_cyclic_groups() {
        for n in 1..=12 {
            let c = cyclic(n).unwrap();
            let inv = Automorphism::inversion(&c).unwrap();
            let g = GGroup::new(c, inv).unwrap();
            let expected = if n % 2 == 0 { 2 } else { 1 };
            assert_eq!(h1(&g).len(), expected, "n = {n}");
            assert_eq!(h1_abelian(&g).unwrap(), expected);
        }
    }

    #[test]
    fn swap_on_v4_has_trivial_h1() {
        let g = gg(elementary_abelian_2(2).unwrap(), vec![0, 2, 1, 3]);
        assert_eq!(h1(&g).len(), 1);
        assert_eq!(z1(&g), vec![0, 3]);
    }

    #[test]
    fn twisting_by_a_non_cocycle_fails() {
        let g = gg(cyclic(4).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(
            twist_ggroup(&g, 1),
            Err(CohomologyError::NotACocycle { element: 1 })
        );
        assert!(torsor_involution(&g, 2).unwrap().is_involution());
    }

    #[test]
    fn non_equivariant_action_is_rejected() {
        let g = gg(elementary_abelian_2(2).unwrap(), vec![0, 2, 1, 3]);
        let classes = h1(&g);
        let a = Automorphism::new(g.group(), vec![0, 1, 3, 2]).unwrap();
        assert_eq!(
            h1_action(&g, &classes, &a),
            Err(CohomologyError::NotEquivariant)
        );
    }

    #[test]
    fn twisted_class_of_identity_in_c4_with_inversion() {
        let c4 = cyclic(4).unwrap();
        let inv = Automorphism::inversion(&c4).unwrap();
        // β·x·σ(β)⁻¹ = x + 2β
        assert_eq!(twisted_class(&c4, &inv, 0), vec![0, 2]);
        assert_eq!(twisted_class(&c4, &inv, 1), vec![1, 3]);
    }
}
