//! Gerbes over real curves banded by a finite abelian (or arbitrary finite) group,
//! described by monodromy.
//!
//! The band `A` carries the real structure `σ_p` of a base point `p`. The fundamental group
//! of the complex curve acts on `A` through a list of generator automorphisms. Each
//! connected component of the real locus is described by
//!
//! * a word `ω` in the generators, the transport from `p` to a real point of the component,
//!   which turns `σ_p` into the real structure `ρ(ω)∘σ_p` seen from that component;
//! * the monodromy of its loops, which must commute with that real structure;
//! * its shape, which decides how the real cover contributes to `h*`.

use std::collections::{BTreeMap, BTreeSet};

use crate::cohomology::{h1, h1_action, CohomologyError, H1Classes};
use crate::group::{Automorphism, GGroup};
use crate::partition::orbit_partition;
use crate::perm::{generated_group, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GerbeError {
    #[error("{what} has degree {got}, the band has order {expected}")]
    DegreeMismatch {
        what: String,
        got: usize,
        expected: usize,
    },
    #[error(
        "component {component}: letter {letter} does not name one of the {generators} generators"
    )]
    WordOutOfRange {
        component: usize,
        letter: i64,
        generators: usize,
    },
    #[error("component {component}: ρ(ω)∘σ_p is not an involution")]
    OmegaNotCocycle { component: usize },
    #[error(
        "component {component}: loop {index} does not commute with the real structure ρ(ω)∘σ_p"
    )]
    LoopNotEquivariant { component: usize, index: usize },
    #[error("component {component}: an interval has no loops, but {count} were given")]
    IntervalWithLoops { component: usize, count: usize },
    #[error("surface relation broken: {0}")]
    SurfaceRelationBroken(String),
    #[error("component {component}: the table has no entry for an orbit of size {orbit_size}")]
    MissingTableEntry { component: usize, orbit_size: usize },
    #[error("the base table has no entry for a cover of degree {degree}")]
    MissingBaseTableEntry { degree: usize },
    #[error("the inertia of a gerbe over an open curve must be supplied")]
    OpenCurveUnsupported,
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// A word in the generators: `k > 0` is generator `k` (1-based), `-k` its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GerbeBase {
    /// A smooth proper curve of the given genus. With `standard_generators`, the generators
    /// are `a₁, b₁, …, a_g, b_g` and must satisfy `Π [aᵢ, bᵢ] = 1`.
    ProperCurve {
        genus: u32,
        standard_generators: bool,
    },
    /// A non-proper curve; the inertia count can only be supplied from outside.
    OpenCurve { inertia_h_star: Option<u64> },
    /// `h*` of a connected cover of the complex curve, by degree.
    TableDriven { cover_h_star: BTreeMap<usize, u64> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealShape {
    /// A circle; each orbit of the loops on `H¹` is a connected cover, itself a circle.
    Circle,
    /// A contractible component; every class of `H¹` contributes a point.
    Interval,
    /// `h*` of the cover belonging to an orbit, by orbit size.
    Table(BTreeMap<usize, u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealComponent {
    pub label: String,
    pub shape: RealShape,
    pub loops: Vec<Automorphism>,
    pub omega: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyGerbe {
    fiber: GGroup,
    generators: Vec<Automorphism>,
    base: GerbeBase,
    components: Vec<RealComponent>,
}

/// `ω∘σ_p`, the real structure seen after transport along `ω`.
pub fn base_change_sigma(sigma_p: &Automorphism, omega: &Automorphism) -> Option<Automorphism> {
    let s = omega.compose(sigma_p);
    s.is_involution().then_some(s)
}

/// `H¹` of one real component with the action of its loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealCover {
    pub effective_sigma: Automorphism,
    pub classes: H1Classes,
    /// Orbits of the loops on class indices, ordered by least class.
    pub orbits: Vec<Vec<usize>>,
}

impl RealCover {
    /// Orbit sizes in decreasing order.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

/// Orbits of the fundamental group on conjugacy classes of the band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InertiaCover {
    pub conjugacy_classes: Vec<Vec<usize>>,
    /// Orbits on conjugacy class indices.
    pub orbits: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleInequality {
    /// `Σᵢ #(H¹ᵢ / loops)` over the real circles.
    pub lhs: u64,
    /// `2·#(A/π₁) + (g−1)·#A`.
    pub rhs: i64,
    /// Difference between half the inertia count and `rhs`; zero for abelian bands.
    pub correction: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GerbeVerdict {
    pub real: u64,
    pub inertia: u64,
    pub holds: bool,
    pub circles: Option<CircleInequality>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionClass {
    /// Least member of the class.
    pub representative: Automorphism,
    pub members: Vec<Automorphism>,
    /// Order of the group generated by the monodromy and its `σ_p`-conjugates.
    pub monodromy_order: usize,
}

impl MonodromyGerbe {
    pub fn new(
        fiber: GGroup,
        generators: Vec<Automorphism>,
        base: GerbeBase,
        components: Vec<RealComponent>,
    ) -> Result<Self, GerbeError> {
        let g = MonodromyGerbe {
            fiber,
            generators,
            base,
            components,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GerbeError> {
        let n = self.fiber.group().order();
        let degree = |what: String, a: &Automorphism| {
            if a.images().len() == n {
                Ok(())
            } else {
                Err(GerbeError::DegreeMismatch {
                    what,
                    got: a.images().len(),
                    expected: n,
                })
            }
        };
        for (i, a) in self.generators.iter().enumerate() {
            degree(format!("generator {}", i + 1), a)?;
        }
        if let GerbeBase::ProperCurve {
            genus,
            standard_generators,
        } = self.base
        {
            if genus == 0 && self.generators.iter().any(|a| !a.is_identity()) {
                return Err(GerbeError::SurfaceRelationBroken(
                    "a genus 0 curve is simply connected, so its monodromy must be trivial".into(),
                ));
            }
            if standard_generators {
                if self.generators.len() != 2 * genus as usize {
                    return Err(GerbeError::SurfaceRelationBroken(format!(
                        "expected {} generators for genus {genus}, got {}",
                        2 * genus,
                        self.generators.len()
                    )));
                }
                let mut prod = Automorphism::identity(self.fiber.group());
                for pair in self.generators.chunks(2) {
                    let (a, b) = (&pair[0], &pair[1]);
                    prod = prod.compose(&a.compose(b).compose(&a.inverse()).compose(&b.inverse()));
                }
                if !prod.is_identity() {
                    return Err(GerbeError::SurfaceRelationBroken(
                        "the product of commutators is not the identity".into(),
                    ));
                }
            }
        }
        for (c, comp) in self.components.iter().enumerate() {
            for (j, l) in comp.loops.iter().enumerate() {
                degree(format!("component {c} loop {j}"), l)?;
            }
            if comp.shape == RealShape::Interval && !comp.loops.is_empty() {
                return Err(GerbeError::IntervalWithLoops {
                    component: c,
                    count: comp.loops.len(),
                });
            }
            let sigma = self.effective_sigma(c)?;
            for (index, l) in comp.loops.iter().enumerate() {
                if !l.commutes_with(&sigma) {
                    return Err(GerbeError::LoopNotEquivariant {
                        component: c,
                        index,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn fiber(&self) -> &GGroup {
        &self.fiber
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn base(&self) -> &GerbeBase {
        &self.base
    }

    pub fn components(&self) -> &[RealComponent] {
        &self.components
    }

    /// `ρ(w)`, composing letters left to right as `ρ(w₁)∘ρ(w₂)∘…`.
    pub fn word_action(&self, component: usize, w: &Word) -> Result<Automorphism, GerbeError> {
        let mut acc = Automorphism::identity(self.fiber.group());
        for &letter in &w.0 {
            let k = letter.unsigned_abs() as usize;
            if letter == 0 || k > self.generators.len() {
                return Err(GerbeError::WordOutOfRange {
                    component,
                    letter,
                    generators: self.generators.len(),
                });
            }
            let a = &self.generators[k - 1];
            acc = if letter > 0 {
                acc.compose(a)
            } else {
                acc.compose(&a.inverse())
            };
        }
        Ok(acc)
    }

    /// Real structure on the band seen from component `c`.
    pub fn effective_sigma(&self, c: usize) -> Result<Automorphism, GerbeError> {
        let comp = self
            .components
            .get(c)
            .ok_or(GerbeError::NoSuchComponent(c))?;
        let omega = self.word_action(c, &comp.omega)?;
        base_change_sigma(self.fiber.sigma(), &omega)
            .ok_or(GerbeError::OmegaNotCocycle { component: c })
    }

    pub fn real_cover(&self, c: usize) -> Result<RealCover, GerbeError> {
        let effective_sigma = self.effective_sigma(c)?;
        let gg = GGroup::new(self.fiber.group().clone(), effective_sigma.clone())
            .map_err(CohomologyError::from)?;
        let classes = h1(&gg);
        let perms: Vec<Permutation> = self.components[c]
            .loops
            .iter()
            .map(|l| h1_action(&gg, &classes, l))
            .collect::<Result<_, _>>()?;
        let orbits = orbit_partition(classes.len(), perms.len(), |i, k| perms[k].apply(i));
        Ok(RealCover {
            effective_sigma,
            classes,
            orbits,
        })
    }

    /// `h*` of the part of the real locus lying over component `c`.
    pub fn component_h_star(&self, c: usize) -> Result<u64, GerbeError> {
        let cover = self.real_cover(c)?;
        match &self.components[c].shape {
            RealShape::Circle => Ok(2 * cover.orbits.len() as u64),
            RealShape::Interval => Ok(cover.classes.len() as u64),
            RealShape::Table(table) => cover
                .orbits
                .iter()
                .map(|o| {
                    table
                        .get(&o.len())
                        .copied()
                        .ok_or(GerbeError::MissingTableEntry {
                            component: c,
                            orbit_size: o.len(),
                        })
                })
                .sum(),
        }
    }

    pub fn real_h_star(&self) -> Result<u64, GerbeError> {
        (0..self.components.len())
            .map(|c| self.component_h_star(c))
            .sum()
    }

    pub fn inertia_cover(&self) -> InertiaCover {
        let g = self.fiber.group();
        let conjugacy_classes = g.conjugacy_classes();
        let class_of = crate::partition::class_index(g.order(), &conjugacy_classes);
        let gens = &self.generators;
        let orbits = orbit_partition(conjugacy_classes.len(), gens.len(), |i, k| {
            class_of[gens[k].apply(conjugacy_classes[i][0])]
        });
        InertiaCover {
            conjugacy_classes,
            orbits,
        }
    }

    /// `h*` of the complex points of the inertia stack.
    pub fn inertia_h_star(&self) -> Result<u64, GerbeError> {
        let cover = self.inertia_cover();
        match &self.base {
            GerbeBase::ProperCurve { genus, .. } => {
                let g = i64::from(*genus);
                let total: i64 = cover
                    .orbits
                    .iter()
                    .map(|d| 2 + 2 * (d.len() as i64 * (g - 1) + 1))
                    .sum();
                Ok(total as u64)
            }
            GerbeBase::OpenCurve { inertia_h_star } => {
                inertia_h_star.ok_or(GerbeError::OpenCurveUnsupported)
            }
            GerbeBase::TableDriven { cover_h_star } => cover
                .orbits
                .iter()
                .map(|d| {
                    cover_h_star
                        .get(&d.len())
                        .copied()
                        .ok_or(GerbeError::MissingBaseTableEntry { degree: d.len() })
                })
                .sum(),
        }
    }

    /// The inequality restricted to real circles over a proper base, in terms of orbit counts.
    pub fn circle_inequality(&self) -> Result<Option<CircleInequality>, GerbeError> {
        let GerbeBase::ProperCurve { genus, .. } = self.base else {
            return Ok(None);
        };
        if self.components.iter().any(|c| c.shape != RealShape::Circle) {
            return Ok(None);
        }
        let lhs = (0..self.components.len())
            .map(|c| self.real_cover(c).map(|r| r.orbits.len() as u64))
            .sum::<Result<u64, _>>()?;
        let n = self.fiber.group().order();
        let element_orbits =
            orbit_partition(n, self.generators.len(), |x, k| self.generators[k].apply(x)).len();
        let rhs = 2 * element_orbits as i64 + (i64::from(genus) - 1) * n as i64;
        let half_inertia = self.inertia_h_star()? as i64 / 2;
        Ok(Some(CircleInequality {
            lhs,
            rhs,
            correction: half_inertia - rhs,
            holds: lhs as i64 <= rhs + (half_inertia - rhs),
        }))
    }

    pub fn smith_thom(&self) -> Result<GerbeVerdict, GerbeError> {
        let real = self.real_h_star()?;
        let inertia = self.inertia_h_star()?;
        Ok(GerbeVerdict {
            real,
            inertia,
            holds: real <= inertia,
            circles: self.circle_inequality()?,
        })
    }

    /// Group generated by the monodromy together with its conjugates by `σ_p`.
    pub fn monodromy_closure(&self) -> Vec<Automorphism> {
        let s = self.fiber.sigma();
        let mut gens: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            gens.push(a.as_perm().clone());
            gens.push(s.compose(a).compose(s).as_perm().clone());
        }
        generated_group(self.fiber.group().order(), &gens)
            .into_iter()
            .map(Automorphism::from_perm_unchecked)
            .collect()
    }

    /// Class of `ρ(ω)` under `ω ↦ α∘ω∘σ(α)⁻¹`, `σ(α) = σ_p∘α∘σ_p`, for `α` in the monodromy.
    ///
    /// Two transports define isomorphic real structures on a section exactly when they lie
    /// in the same class.
    pub fn section_class(&self, omega: &Word) -> Result<SectionClass, GerbeError> {
        let w = self.word_action(usize::MAX, omega)?;
        let s = self.fiber.sigma();
        let monodromy = self.monodromy_closure();
        let members: BTreeSet<Automorphism> = monodromy
            .iter()
            .map(|a| a.compose(&w).compose(&s.compose(a).compose(s).inverse()))
            .collect();
        let members: Vec<Automorphism> = members.into_iter().collect();
        Ok(SectionClass {
            representative: members[0].clone(),
            members,
            monodromy_order: monodromy.len(),
        })
    }
}
