//! Finite quotient stacks `[X/Γ]` with a real structure.
//!
//! `X` is a finite set with an involution `σ_X` and a left `Γ`-action satisfying
//! `σ_X(g·x) = σ(g)·σ_X(x)`. Real points of the stack are counted by twisting with each
//! cohomology class, and compared with the number of points of the inertia stack.

use std::collections::BTreeSet;

use crate::cohomology::{h1, torsor_involution, twist_ggroup};
use crate::group::GGroup;
use crate::partition::orbit_partition;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("σ_X is not a permutation of the carrier of size {carrier}")]
    SigmaNotAPermutation { carrier: usize },
    #[error("σ_X is not an involution")]
    SigmaNotInvolutive,
    #[error("expected {expected} action rows (one per group element), got {got}")]
    ActionRowCount { expected: usize, got: usize },
    #[error("action row {g} is not a permutation of the carrier of size {carrier}")]
    ActionRowNotAPermutation { g: usize, carrier: usize },
    #[error("the identity moves point {x}")]
    IdentityMoves { x: usize },
    #[error("not an action: {g}·({h}·{x}) != ({g}{h})·{x}")]
    NotAnAction { g: usize, h: usize, x: usize },
    #[error("action is not compatible with the real structures at g = {g}, x = {x}")]
    NotEquivariant { g: usize, x: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("point {x} is outside the carrier")]
    PointOutOfRange { x: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A finite `Γ`-set with compatible real structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGSpace {
    gg: GGroup,
    carrier: usize,
    sigma_x: Permutation,
    action: Vec<usize>,
}

impl FiniteGSpace {
    /// `action[g][x]` is `g·x`.
    pub fn new(
        gg: GGroup,
        sigma_x: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, SpaceError> {
        let m = sigma_x.len();
        let n = gg.group().order();
        let sigma_x = Permutation::new(sigma_x)
            .map_err(|_| SpaceError::SigmaNotAPermutation { carrier: m })?;
        if !sigma_x.is_involution() {
            return Err(SpaceError::SigmaNotInvolutive);
        }
        if action.len() != n {
            return Err(SpaceError::ActionRowCount {
                expected: n,
                got: action.len(),
            });
        }
        let mut flat = Vec::with_capacity(n * m);
        for (g, row) in action.into_iter().enumerate() {
            if row.len() != m || Permutation::new(row.clone()).is_err() {
                return Err(SpaceError::ActionRowNotAPermutation { g, carrier: m });
            }
            flat.extend(row);
        }
        let space = FiniteGSpace {
            gg,
            carrier: m,
            sigma_x,
            action: flat,
        };
        space.check_axioms()?;
        Ok(space)
    }

    fn check_axioms(&self) -> Result<(), SpaceError> {
        let g = self.gg.group();
        for x in 0..self.carrier {
            if self.act(0, x) != x {
                return Err(SpaceError::IdentityMoves { x });
            }
        }
        for a in g.elements() {
            for x in 0..self.carrier {
                for b in g.elements() {
                    if self.act(a, self.act(b, x)) != self.act(g.mul(a, b), x) {
                        return Err(SpaceError::NotAnAction { g: a, h: b, x });
                    }
                }
                if self.sigma_x.apply(self.act(a, x))
                    != self.act(self.gg.s(a), self.sigma_x.apply(x))
                {
                    return Err(SpaceError::NotEquivariant { g: a, x });
                }
            }
        }
        Ok(())
    }

    /// A single point with the trivial action; its stack is the classifying stack `BΓ`.
    pub fn point(gg: GGroup) -> Self {
        let n = gg.group().order();
        FiniteGSpace {
            gg,
            carrier: 1,
            sigma_x: Permutation::identity(1),
            action: vec![0; n],
        }
    }

    /// Disjoint union of coset spaces `E/K` of `E = Γ ⋊ ⟨σ⟩`, one per subgroup `K`.
    ///
    /// `Γ` acts by left multiplication and `σ_X` is left multiplication by `(e, σ)`.
    /// Subgroups are given as element lists of [`GGroup::galois_extension`].
    pub fn from_cosets(gg: GGroup, subgroups: &[Vec<usize>]) -> Result<Self, QuotientError> {
        let e = gg.galois_extension();
        let n = gg.group().order();
        let mut offset = 0;
        let mut sigma_x = Vec::new();
        let mut action = vec![Vec::new(); n];
        for k in subgroups {
            if !e.is_subgroup(k) {
                return Err(QuotientError::Unsupported(format!(
                    "{k:?} is not a subgroup of Γ ⋊ ⟨σ⟩"
                )));
            }
            let cosets = orbit_partition(e.order(), k.len(), |a, j| e.mul(a, k[j]));
            let coset_of = crate::partition::class_index(e.order(), &cosets);
            let rep = |c: usize| cosets[c][0];
            sigma_x.extend((0..cosets.len()).map(|c| offset + coset_of[e.mul(n, rep(c))]));
            for (g, row) in action.iter_mut().enumerate() {
                row.extend((0..cosets.len()).map(|c| offset + coset_of[e.mul(g, rep(c))]));
            }
            offset += cosets.len();
        }
        let space =
            FiniteGSpace::new(gg, sigma_x, action).expect("coset spaces satisfy the axioms");
        Ok(space)
    }

    pub fn ggroup(&self) -> &GGroup {
        &self.gg
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn sigma_x(&self) -> &Permutation {
        &self.sigma_x
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.carrier + x]
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        let m = self.carrier;
        (0..self.gg.group().order())
            .map(|g| self.action[g * m..(g + 1) * m].to_vec())
            .collect()
    }

    /// `Γ`-orbits on the carrier, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbit_partition(self.carrier, self.gg.group().order(), |x, g| self.act(g, x))
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.gg
            .group()
            .elements()
            .filter(|&g| self.act(g, x) == x)
            .collect()
    }
}

/// The contribution of one cohomology class to the real locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedPiece {
    pub class: usize,
    pub gamma: usize,
    /// Points with `x = γ·σ_X(x)`.
    pub fixed_points: Vec<usize>,
    /// Elements fixed by the twisted involution `g ↦ γσ(g)γ⁻¹`.
    pub real_group: Vec<usize>,
    /// Orbits of `real_group` on `fixed_points`.
    pub orbits: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealLocus {
    pub pieces: Vec<TwistedPiece>,
}

impl RealLocus {
    pub fn total(&self) -> usize {
        self.pieces.iter().map(|p| p.orbits.len()).sum()
    }
}

/// Real points of `[X/Γ]`: one piece `X^{γσ}/Γ^{γσ}` per class `γ` of `H¹`.
pub fn real_locus(space: &FiniteGSpace) -> RealLocus {
    let gg = &space.gg;
    let classes = h1(gg);
    let pieces = classes
        .representatives()
        .into_iter()
        .enumerate()
        .map(|(class, gamma)| {
            let fixed_points: Vec<usize> = (0..space.carrier)
                .filter(|&x| space.act(gamma, space.sigma_x.apply(x)) == x)
                .collect();
            let twisted = twist_ggroup(gg, gamma).expect("class representatives are cocycles");
            let real_group = twisted.fixed_points();
            let local = orbit_partition(fixed_points.len(), real_group.len(), |i, k| {
                let y = space.act(real_group[k], fixed_points[i]);
                fixed_points
                    .binary_search(&y)
                    .expect("real group preserves twisted fixed points")
            });
            let orbits = local
                .into_iter()
                .map(|o| o.into_iter().map(|i| fixed_points[i]).collect())
                .collect();
            TwistedPiece {
                class,
                gamma,
                fixed_points,
                real_group,
                orbits,
            }
        })
        .collect();
    RealLocus { pieces }
}

/// A real point found by the torsor oracle: a class and an equivariant map `Γ → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsorPoint {
    pub class: usize,
    pub gamma: usize,
    /// `map[g] = f(g)` for the canonical representative of the isomorphism class.
    pub map: Vec<usize>,
}

/// Real points of `[X/Γ]` counted directly as isomorphism classes of pairs `(P, f)`.
///
/// For each class `γ`, `P` is `Γ` with the real structure `φ(g) = σ(g)·γ⁻¹`. Every map
/// `f(g) = g·y` is tested for `f∘φ = σ_X∘f` pointwise, and maps are identified under the
/// right translations of `P` that commute with `φ`. Deliberately shares no code with
/// [`real_locus`] beyond the list of class representatives.
pub fn torsor_oracle(space: &FiniteGSpace) -> Vec<TorsorPoint> {
    let gg = &space.gg;
    let g = gg.group();
    let mut out = Vec::new();
    for (class, gamma) in h1(gg).representatives().into_iter().enumerate() {
        let phi = torsor_involution(gg, gamma).expect("class representatives are cocycles");
        let right = |h: usize| -> Permutation {
            Permutation::new(g.elements().map(|x| g.mul(x, h)).collect())
                .expect("right translation")
        };
        let torsor_auts: Vec<Permutation> = g
            .elements()
            .map(right)
            .filter(|r| r.compose(&phi) == phi.compose(r))
            .collect();
        let mut canonical: BTreeSet<Vec<usize>> = BTreeSet::new();
        for y in 0..space.carrier {
            let f: Vec<usize> = g.elements().map(|h| space.act(h, y)).collect();
            let equivariant = g
                .elements()
                .all(|h| f[phi.apply(h)] == space.sigma_x.apply(f[h]));
            if !equivariant {
                continue;
            }
            let min = torsor_auts
                .iter()
                .map(|r| g.elements().map(|h| f[r.apply(h)]).collect::<Vec<_>>())
                .min()
                .expect("identity is a torsor automorphism");
            canonical.insert(min);
        }
        out.extend(
            canonical
                .into_iter()
                .map(|map| TorsorPoint { class, gamma, map }),
        );
    }
    out
}

/// Points of the inertia stack: pairs `(x, g)` with `g·x = x`, up to `(x, g) ~ (h·x, hgh⁻¹)`.
pub fn inertia_classes(space: &FiniteGSpace) -> Vec<Vec<(usize, usize)>> {
    let g = space.gg.group();
    let pairs: Vec<(usize, usize)> = (0..space.carrier)
        .flat_map(|x| {
            g.elements()
                .filter(move |&k| space.act(k, x) == x)
                .map(move |k| (x, k))
        })
        .collect();
    let index = |p: (usize, usize)| {
        pairs
            .binary_search(&p)
            .expect("conjugate of a stabilizing pair stabilizes")
    };
    orbit_partition(pairs.len(), g.order(), |i, h| {
        let (x, k) = pairs[i];
        index((space.act(h, x), g.conj(h, k)))
    })
    .into_iter()
    .map(|c| c.into_iter().map(|i| pairs[i]).collect())
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteVerdict {
    pub real: usize,
    pub inertia: usize,
    pub holds: bool,
}

/// Compares `#|[X/Γ](ℝ)|` with `#|I[X/Γ](ℂ)|`.
pub fn smith_thom_finite(space: &FiniteGSpace) -> FiniteVerdict {
    let real = real_locus(space).total();
    let inertia = inertia_classes(space).len();
    FiniteVerdict {
        real,
        inertia,
        holds: real <= inertia,
    }
}

/// Real points over one orbit of `X/Γ` against the cohomology of a stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCount {
    pub point: usize,
    pub orbit: Vec<usize>,
    pub real_points: usize,
    pub stabilizer: Vec<usize>,
    pub stabilizer_h1: usize,
}

/// Counts real points of `[X/Γ]` lying over the orbit of `x`, and `#H¹` of `Stab(x)`.
///
/// Only real points `x = σ_X(x)` are supported, since then `σ` preserves `Stab(x)`.
pub fn fiber_count(space: &FiniteGSpace, x: usize) -> Result<FiberCount, QuotientError> {
    if x >= space.carrier {
        return Err(QuotientError::PointOutOfRange { x });
    }
    if space.sigma_x.apply(x) != x {
        return Err(QuotientError::Unsupported(format!(
            "point {x} is not fixed by σ_X, so σ need not preserve its stabilizer"
        )));
    }
    let orbit: Vec<usize> = space
        .orbits()
        .into_iter()
        .find(|o| o.contains(&x))
        .expect("every point has an orbit");
    let real_points = real_locus(space)
        .pieces
        .iter()
        .flat_map(|p| p.orbits.iter())
        .filter(|o| orbit.binary_search(&o[0]).is_ok())
        .count();
    let stabilizer = space.stabilizer(x);
    let restricted = space
        .gg
        .restrict(&stabilizer)
        .expect("σ preserves the stabilizer of a real point");
    let stabilizer_h1 = h1(&restricted).len();
    Ok(FiberCount {
        point: x,
        orbit,
        real_points,
        stabilizer,
        stabilizer_h1,
    })
}
