use std::fmt;

use super::{FiniteGroup, GroupError};
use crate::perm::Permutation;

/// Orders above this are refused by [`automorphisms`].
pub const AUTOMORPHISM_ORDER_LIMIT: usize = 64;

/// Searches that find more automorphisms than this are abandoned.
pub const AUTOMORPHISM_COUNT_LIMIT: usize = 250_000;

/// A bijective homomorphism of a [`FiniteGroup`] onto itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism(Permutation);

impl Automorphism {
    /// Checks bijectivity and the homomorphism property.
    pub fn new(group: &FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != group.order() {
            return Err(GroupError::WrongDegree {
                len: images.len(),
                order: group.order(),
            });
        }
        let perm = Permutation::new(images).map_err(|_| GroupError::NotBijective)?;
        for x in group.elements() {
            for y in group.elements() {
                if perm.apply(group.mul(x, y)) != group.mul(perm.apply(x), perm.apply(y)) {
                    return Err(GroupError::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(Automorphism(perm))
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Automorphism(Permutation::identity(group.order()))
    }

    /// Inner automorphism `x ↦ g x g⁻¹`.
    pub fn inner(group: &FiniteGroup, g: usize) -> Self {
        Automorphism(
            Permutation::new(group.elements().map(|x| group.conj(g, x)).collect())
                .expect("conjugation is bijective"),
        )
    }

    /// `x ↦ x⁻¹`, an automorphism exactly when the group is abelian.
    pub fn inversion(group: &FiniteGroup) -> Result<Self, GroupError> {
        Automorphism::new(group, group.elements().map(|x| group.inv(x)).collect())
    }

    /// Wraps a permutation already known to be an automorphism.
    pub(crate) fn from_perm_unchecked(perm: Permutation) -> Self {
        Automorphism(perm)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0.apply(x)
    }

    pub fn images(&self) -> &[usize] {
        self.0.images()
    }

    pub fn as_perm(&self) -> &Permutation {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism(self.0.compose(&other.0))
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism(self.0.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.0.is_involution()
    }

    pub fn commutes_with(&self, other: &Automorphism) -> bool {
        self.compose(other) == other.compose(self)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aut{:?}", self.0)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A finite group with an involutive automorphism `σ`, modelling complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GGroup {
    group: FiniteGroup,
    sigma: Automorphism,
}

impl GGroup {
    pub fn new(group: FiniteGroup, sigma: Automorphism) -> Result<Self, GroupError> {
        if sigma.images().len() != group.order() {
            return Err(GroupError::WrongDegree {
                len: sigma.images().len(),
                order: group.order(),
            });
        }
        if !sigma.is_involution() {
            return Err(GroupError::NotInvolutive);
        }
        Ok(GGroup { group, sigma })
    }

    /// Validates `images` as an automorphism and an involution.
    pub fn from_images(group: FiniteGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        let sigma = Automorphism::new(&group, images)?;
        GGroup::new(group, sigma)
    }

    pub fn trivial_action(group: FiniteGroup) -> Self {
        let sigma = Automorphism::identity(&group);
        GGroup { group, sigma }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    #[inline]
    pub fn s(&self, g: usize) -> usize {
        self.sigma.apply(g)
    }

    /// Elements fixed by `σ`, the real points.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.sigma.as_perm().fixed_points()
    }

    /// Restriction to a `σ`-stable subgroup, relabelled as in [`FiniteGroup::subgroup`].
    pub fn restrict(&self, elements: &[usize]) -> Result<GGroup, GroupError> {
        let sub = self.group.subgroup(elements)?;
        let images = elements
            .iter()
            .map(|&g| {
                elements
                    .binary_search(&self.s(g))
                    .map_err(|_| GroupError::InvalidParameter("subgroup is not σ-stable".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GGroup::from_images(sub, images)
    }

    /// `Γ ⋊ ⟨σ⟩`; see [`FiniteGroup::semidirect_with_involution`].
    pub fn galois_extension(&self) -> FiniteGroup {
        self.group
            .semidirect_with_involution(&self.sigma)
            .expect("semidirect product of a valid group is a group")
    }
}

/// Backtracking search for homomorphisms `source → target` that are bijective.
///
/// Generator images are chosen among target elements of equal order; each partial
/// assignment is propagated over the subgroup it generates and rejected on conflict.
struct IsoSearch<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    limit: usize,
}

impl<'a> IsoSearch<'a> {
    fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, limit: usize) -> Self {
        let gens = source.generators();
        let candidates = gens
            .iter()
            .map(|&g| {
                let k = source.element_order(g);
                target
                    .elements()
                    .filter(|&t| target.element_order(t) == k)
                    .collect()
            })
            .collect();
        IsoSearch {
            source,
            target,
            gens,
            candidates,
            limit,
        }
    }

    /// Extends the map along right multiplication by the assigned generators.
    fn propagate(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.source.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; self.target.order()];
        map[0] = 0;
        used[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (j, &g) in self.gens[..images.len()].iter().enumerate() {
                let y = self.source.mul(x, g);
                let fy = self.target.mul(map[x], images[j]);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    map[y] = fy;
                    used[fy] = true;
                    stack.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&self, stop_at_first: bool) -> Result<Vec<Permutation>, GroupError> {
        let mut found = Vec::new();
        let mut images = Vec::with_capacity(self.gens.len());
        self.dfs(&mut images, stop_at_first, &mut found)?;
        Ok(found)
    }

    fn dfs(
        &self,
        images: &mut Vec<usize>,
        stop: bool,
        found: &mut Vec<Permutation>,
    ) -> Result<(), GroupError> {
        if images.len() == self.gens.len() {
            if let Some(map) = self.propagate(images) {
                if map.iter().all(|&v| v != usize::MAX) {
                    found.push(Permutation::new(map).expect("injective total map"));
                    if found.len() > self.limit {
                        return Err(GroupError::SizeLimitExceeded {
                            what: "automorphism enumeration (count)",
                            order: found.len(),
                            limit: self.limit,
                        });
                    }
                }
            }
            return Ok(());
        }
        let k = images.len();
        for &t in &self.candidates[k] {
            images.push(t);
            if self.propagate(images).is_some() {
                self.dfs(images, stop, found)?;
            }
            images.pop();
            if stop && !found.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// All automorphisms, sorted by image vector so the identity comes first.
///
/// Refuses orders above [`AUTOMORPHISM_ORDER_LIMIT`].
pub fn automorphisms(group: &FiniteGroup) -> Result<Vec<Automorphism>, GroupError> {
    automorphisms_with_limit(group, AUTOMORPHISM_ORDER_LIMIT)
}

pub fn automorphisms_with_limit(
    group: &FiniteGroup,
    max_order: usize,
) -> Result<Vec<Automorphism>, GroupError> {
    if group.order() > max_order {
        return Err(GroupError::SizeLimitExceeded {
            what: "automorphism enumeration",
            order: group.order(),
            limit: max_order,
        });
    }
    let mut auts = IsoSearch::new(group, group, AUTOMORPHISM_COUNT_LIMIT).run(false)?;
    auts.sort();
    Ok(auts.into_iter().map(Automorphism).collect())
}

/// Automorphisms that square to the identity, including the identity itself.
pub fn involutions(group: &FiniteGroup) -> Result<Vec<Automorphism>, GroupError> {
    Ok(automorphisms(group)?
        .into_iter()
        .filter(Automorphism::is_involution)
        .collect())
}

/// An isomorphism `a → b` as a map on element indices, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    let mut profile_a: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
    let mut profile_b: Vec<usize> = b.elements().map(|x| b.element_order(x)).collect();
    profile_a.sort_unstable();
    profile_b.sort_unstable();
    if profile_a != profile_b {
        return None;
    }
    IsoSearch::new(a, b, usize::MAX)
        .run(true)
        .ok()?
        .into_iter()
        .next()
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}
