//! Stacky curves described by their coarse space, branch data and real components.
//!
//! A stacky curve here is `[U/Γ]` for a curve `U` with a finite group action whose
//! generic stabilizer is a central subgroup `K`. The data recorded is what the
//! cohomological counts need. That is `h*` of the complex coarse space, the stabilizers
//! at branch points, and the shapes of the components of the real coarse space with
//! their cut points.

pub mod kummer;

use crate::cohomology::h1;
use crate::group::{Automorphism, FiniteGroup, GGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("generic stabilizer of order {kernel_order} is not central in the stabilizer at branch point {point}")]
    KernelNotCentral { point: usize, kernel_order: usize },
    #[error("branch point {point}: several central subgroups of order {kernel_order}; pass the kernel explicitly")]
    AmbiguousKernel { point: usize, kernel_order: usize },
    #[error("branch point {point} has a non-abelian stabilizer")]
    NotAbelianStabilizer { point: usize },
    #[error("real branch point {point} has a non-cyclic stabilizer after removing the kernel")]
    NonCyclicRealStabilizer { point: usize },
    #[error("the components list {listed} cut points but {expected} real branch points have even stabilizer order")]
    InconsistentCutPoints { listed: usize, expected: usize },
    #[error("the action is not faithful (generic stabilizer of order {kernel_order})")]
    NotFaithful { kernel_order: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inertia count would be negative")]
    NegativeCount,
    #[error("kernel order must be positive")]
    ZeroKernel,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Shape of a connected component of the real coarse space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentShape {
    Circle,
    OpenInterval,
    HalfOpenInterval,
    ClosedInterval,
}

/// A component together with the number of real branch points on it where the real locus
/// of the faithful quotient is cut, i.e. those with stabilizer of even order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RealComponent {
    pub shape: ComponentShape,
    pub cut_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPoint {
    pub stabilizer: FiniteGroup,
    pub real: bool,
    /// The generic stabilizer inside this stabilizer, if it must be pinned down.
    pub kernel: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackyCurveSpec {
    /// `h*` of the complex points of the coarse space.
    pub coarse_h_star: u64,
    /// Order of the generic stabilizer `K`.
    pub kernel_order: usize,
    /// Whether `Γ` is abelian, or more generally the caller vouches that every real point of
    /// the faithful quotient has at most `#K` preimages.
    pub abelian: bool,
    pub proper: bool,
    pub branch_points: Vec<BranchPoint>,
    pub real_components: Vec<RealComponent>,
}

/// A connected piece of the real locus left after cutting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    Circle,
    /// Arc between two parameter values in `[0, 1]`; on a circle the arc may wrap around.
    Arc {
        start: f64,
        end: f64,
    },
}

impl Piece {
    pub fn h_star(&self) -> u64 {
        match self {
            Piece::Circle => 2,
            Piece::Arc { .. } => 1,
        }
    }
}

/// `#H¹(ℤ/2, μ_n)` for complex conjugation acting by inversion.
pub fn h1_of_mu_n(n: usize) -> usize {
    if n.is_multiple_of(2) {
        2
    } else {
        1
    }
}

/// Places `cut_points` cuts evenly on the component and lists the resulting pieces.
pub fn cut_component(c: RealComponent) -> Vec<Piece> {
    let s = c.cut_points;
    match c.shape {
        ComponentShape::Circle if s == 0 => vec![Piece::Circle],
        ComponentShape::Circle => {
            let t: Vec<f64> = (0..s).map(|i| i as f64 / s as f64).collect();
            (0..s)
                .map(|i| Piece::Arc {
                    start: t[i],
                    end: t[(i + 1) % s],
                })
                .collect()
        }
        _ => {
            let mut bounds = vec![0.0];
            bounds.extend((1..=s).map(|i| i as f64 / (s + 1) as f64));
            bounds.push(1.0);
            bounds
                .windows(2)
                .map(|w| Piece::Arc {
                    start: w[0],
                    end: w[1],
                })
                .collect()
        }
    }
}

/// `h*` of the real locus of one component of a faithful quotient, in closed form.
pub fn component_real_h_star(c: RealComponent) -> u64 {
    let s = c.cut_points as u64;
    match c.shape {
        ComponentShape::Circle if s == 0 => 2,
        ComponentShape::Circle => s,
        ComponentShape::OpenInterval
        | ComponentShape::HalfOpenInterval
        | ComponentShape::ClosedInterval => s + 1,
    }
}

impl BranchPoint {
    /// The generic stabilizer inside this stabilizer, as a sorted list.
    fn kernel_elements(&self, point: usize, kernel_order: usize) -> Result<Vec<usize>, CurveError> {
        let g = &self.stabilizer;
        if let Some(k) = &self.kernel {
            let mut k = k.clone();
            k.sort_unstable();
            let center = g.center();
            if k.len() != kernel_order
                || !g.is_subgroup(&k)
                || k.iter().any(|x| center.binary_search(x).is_err())
            {
                return Err(CurveError::KernelNotCentral {
                    point,
                    kernel_order,
                });
            }
            return Ok(k);
        }
        let center = g.center();
        let center_group = g.subgroup(&center)?;
        let candidates: Vec<Vec<usize>> = center_group
            .subgroups()
            .into_iter()
            .filter(|s| s.len() == kernel_order)
            .map(|s| s.into_iter().map(|i| center[i]).collect())
            .collect();
        match candidates.len() {
            0 => Err(CurveError::KernelNotCentral {
                point,
                kernel_order,
            }),
            1 => Ok(candidates.into_iter().next().expect("one candidate")),
            _ => Err(CurveError::AmbiguousKernel {
                point,
                kernel_order,
            }),
        }
    }

    /// Stabilizer modulo the generic stabilizer.
    pub fn faithful_stabilizer(
        &self,
        point: usize,
        kernel_order: usize,
    ) -> Result<FiniteGroup, CurveError> {
        let k = self.kernel_elements(point, kernel_order)?;
        Ok(self.stabilizer.quotient(&k)?.0)
    }
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    g.elements().any(|x| g.element_order(x) == g.order())
}

/// `#H¹` of a real cyclic stabilizer, computed from the group rather than its order.
pub fn real_stabilizer_h1(g: &FiniteGroup) -> Option<usize> {
    if !is_cyclic(g) {
        return None;
    }
    let inv = Automorphism::inversion(g).ok()?;
    Some(h1(&GGroup::new(g.clone(), inv).ok()?).len())
}

impl StackyCurveSpec {
    pub fn is_faithful(&self) -> bool {
        self.kernel_order == 1
    }

    /// Checks the kernel at every branch point and that the cut points on the components
    /// match the real branch points whose faithful stabilizer has nontrivial `H¹`.
    pub fn validate(&self) -> Result<(), CurveError> {
        if self.kernel_order == 0 {
            return Err(CurveError::ZeroKernel);
        }
        let mut expected = 0;
        for (i, bp) in self.branch_points.iter().enumerate() {
            let q = bp.faithful_stabilizer(i, self.kernel_order)?;
            if bp.real {
                match real_stabilizer_h1(&q) {
                    None => return Err(CurveError::NonCyclicRealStabilizer { point: i }),
                    Some(2) => expected += 1,
                    Some(_) => {}
                }
            }
        }
        let listed: usize = self.real_components.iter().map(|c| c.cut_points).sum();
        if listed != expected {
            return Err(CurveError::InconsistentCutPoints { listed, expected });
        }
        Ok(())
    }

    /// The same curve with every stabilizer divided by the generic one.
    pub fn faithful_quotient(&self) -> Result<StackyCurveSpec, CurveError> {
        let mut branch_points = Vec::new();
        for (i, bp) in self.branch_points.iter().enumerate() {
            let q = bp.faithful_stabilizer(i, self.kernel_order)?;
            if q.order() > 1 {
                branch_points.push(BranchPoint {
                    stabilizer: q,
                    real: bp.real,
                    kernel: None,
                });
            }
        }
        Ok(StackyCurveSpec {
            kernel_order: 1,
            branch_points,
            ..self.clone()
        })
    }
}

/// `h*` of the complex points of the inertia stack:
/// `#K·h*(M) + Σ_y #conj(Γ_y) − #Δ·#K` over the branch points `y`.
pub fn inertia_h_star(spec: &StackyCurveSpec) -> Result<u64, CurveError> {
    let k = spec.kernel_order as i64;
    let mut total = k * spec.coarse_h_star as i64;
    for bp in &spec.branch_points {
        total += bp.stabilizer.conjugacy_classes().len() as i64 - k;
    }
    u64::try_from(total).map_err(|_| CurveError::NegativeCount)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorization {
    pub inertia: u64,
    pub kernel_order: usize,
    pub faithful_inertia: u64,
    pub holds: bool,
}

/// Checks that the inertia count is `#K` times that of the faithful quotient,
/// which needs abelian stabilizers.
pub fn inertia_factorization(spec: &StackyCurveSpec) -> Result<Factorization, CurveError> {
    if let Some(point) = spec
        .branch_points
        .iter()
        .position(|bp| !bp.stabilizer.is_abelian())
    {
        return Err(CurveError::NotAbelianStabilizer { point });
    }
    let inertia = inertia_h_star(spec)?;
    let faithful_inertia = inertia_h_star(&spec.faithful_quotient()?)?;
    Ok(Factorization {
        inertia,
        kernel_order: spec.kernel_order,
        faithful_inertia,
        holds: inertia == spec.kernel_order as u64 * faithful_inertia,
    })
}

/// `h*` of the real locus of a faithful stacky curve: each component is cut at its cut points.
pub fn real_h_star_faithful(spec: &StackyCurveSpec) -> Result<u64, CurveError> {
    if !spec.is_faithful() {
        return Err(CurveError::NotFaithful {
            kernel_order: spec.kernel_order,
        });
    }
    Ok(spec
        .real_components
        .iter()
        .map(|&c| component_real_h_star(c))
        .sum())
}

/// Upper bound on the real `h*` of a non-faithful curve with abelian group.
///
/// Each piece of the faithful quotient's real locus has at most `#K` preimages, each of
/// `h*` at most that of the piece.
pub fn real_h_star_abelian_bound(spec: &StackyCurveSpec) -> Result<u64, CurveError> {
    let k = spec.kernel_order as u64;
    let faithful = spec.faithful_quotient()?;
    Ok(faithful
        .real_components
        .iter()
        .flat_map(|&c| cut_component(c))
        .map(|p| k * p.h_star())
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveVerdict {
    pub real: u64,
    /// `true` when `real` is an upper bound rather than an exact count.
    pub real_is_bound: bool,
    pub inertia: u64,
    pub holds: bool,
}

/// Exact comparison for faithful curves, bounded comparison for abelian ones.
pub fn smith_thom_curve(spec: &StackyCurveSpec) -> Result<CurveVerdict, CurveError> {
    spec.validate()?;
    let inertia = inertia_h_star(spec)?;
    let (real, real_is_bound) = if spec.is_faithful() {
        (real_h_star_faithful(spec)?, false)
    } else if spec.abelian {
        (real_h_star_abelian_bound(spec)?, true)
    } else {
        return Err(CurveError::Unsupported(
            "the action is neither faithful nor covered by the abelian kernel bound".into(),
        ));
    };
    Ok(CurveVerdict {
        real,
        real_is_bound,
        inertia,
        holds: real <= inertia,
    })
}
