//! Instance generators.
//!
//! Random gerbes are produced from a presentation of the group of a real curve: the
//! orientation-preserving part is the fundamental group of the complex curve, and each
//! reflection `cᵢ` fixes one real circle. A homomorphism `Φ` from that group to `Aut(A)`
//! is sampled on generators so that every relation holds, and the gerbe data is read off.
//! This guarantees the data comes from an actual étale cover of a real curve.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;
use realstack_core::curve::{
    BranchPoint, ComponentShape, RealComponent as CurveComponent, StackyCurveSpec,
};
use realstack_core::gerbe::{GerbeBase, MonodromyGerbe, RealComponent, RealShape, Word};
use realstack_core::group::{
    automorphisms, catalog, cyclic, direct_product, elementary_abelian_2, involutions,
    Automorphism, FiniteGroup, GGroup,
};
use realstack_core::quotient::FiniteGSpace;

/// Every catalog group of bounded order with every involution, and the subgroups of
/// `Γ ⋊ ⟨σ⟩` whose coset spaces fit in the carrier bound.
pub struct SpaceUniverse {
    pub entries: Vec<(GGroup, Vec<Vec<usize>>)>,
    pub max_carrier: usize,
}

impl SpaceUniverse {
    pub fn new(max_order: usize, max_carrier: usize) -> Self {
        let mut entries = Vec::new();
        for (_, g) in catalog(max_order) {
            for s in involutions(&g).expect("catalog orders are within the automorphism bound") {
                let gg = GGroup::new(g.clone(), s).expect("involution");
                let e = gg.galois_extension();
                let subs = e
                    .subgroups()
                    .into_iter()
                    .filter(|k| e.order() / k.len() <= max_carrier)
                    .collect();
                entries.push((gg, subs));
            }
        }
        SpaceUniverse {
            entries,
            max_carrier,
        }
    }

    /// A random space: a random `(Γ, σ)` and random coset spaces up to a random total size.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> FiniteGSpace {
        let (gg, subs) = self.entries.choose(rng).expect("nonempty universe");
        let order = 2 * gg.group().order();
        let mut remaining = rng.random_range(0..=self.max_carrier);
        let mut chosen = Vec::new();
        while remaining > 0 {
            let fitting: Vec<&Vec<usize>> = subs
                .iter()
                .filter(|k| order / k.len() <= remaining)
                .collect();
            let k = *fitting.choose(rng).expect("the whole group always fits");
            remaining -= order / k.len();
            chosen.push(k.clone());
        }
        FiniteGSpace::from_cosets(gg.clone(), &chosen).expect("subgroups of the extension")
    }

    /// One space per isomorphism class: multisets of conjugacy classes of subgroups.
    pub fn enumerate(&self) -> Vec<FiniteGSpace> {
        let mut out = Vec::new();
        for (gg, subs) in &self.entries {
            let e = gg.galois_extension();
            let mut reps: Vec<Vec<usize>> = Vec::new();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for k in subs {
                if seen.contains(k) {
                    continue;
                }
                for g in e.elements() {
                    let mut c: Vec<usize> = k.iter().map(|&x| e.conj(g, x)).collect();
                    c.sort_unstable();
                    seen.insert(c);
                }
                reps.push(k.clone());
            }
            let index: Vec<usize> = reps.iter().map(|k| e.order() / k.len()).collect();
            let mut stack: Vec<usize> = Vec::new();
            multisets(&index, 0, self.max_carrier, &mut stack, &mut |choice| {
                let ks: Vec<Vec<usize>> = choice.iter().map(|&i| reps[i].clone()).collect();
                out.push(
                    FiniteGSpace::from_cosets(gg.clone(), &ks).expect("subgroups of the extension"),
                );
            });
        }
        out
    }
}

fn multisets(
    index: &[usize],
    start: usize,
    budget: usize,
    stack: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    emit(stack);
    for i in start..index.len() {
        if index[i] <= budget {
            stack.push(i);
            multisets(index, i, budget - index[i], stack, emit);
            stack.pop();
        }
    }
}

/// Automorphisms and involutions of `(ℤ/2)^n` for `n ≤ max_rank`.
pub struct BandCache {
    bands: Vec<(FiniteGroup, Vec<Automorphism>, Vec<Automorphism>)>,
}

impl BandCache {
    pub fn new(max_rank: u32) -> Self {
        let bands = (0..=max_rank)
            .map(|n| {
                let a = elementary_abelian_2(n).expect("small rank");
                let auts = automorphisms(&a).expect("small band");
                let invs = auts.iter().filter(|x| x.is_involution()).cloned().collect();
                (a, auts, invs)
            })
            .collect();
        BandCache { bands }
    }

    pub fn max_rank(&self) -> u32 {
        self.bands.len() as u32 - 1
    }
}

/// Signature of the group of a real curve of genus `g` with `k ≥ 1` real circles.
/// `orientable` means the real locus separates the complex curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub genus: u32,
    pub circles: u32,
    pub orientable: bool,
    /// Handles `h`: `g = 2h + k − 1` when orientable, `g = h + k − 1` otherwise.
    pub handles: u32,
}

pub fn signatures(max_genus: u32) -> Vec<Signature> {
    let mut out = Vec::new();
    for k in 1..=max_genus + 1 {
        for h in 0..=max_genus {
            if 2 * h + k - 1 <= max_genus {
                out.push(Signature {
                    genus: 2 * h + k - 1,
                    circles: k,
                    orientable: true,
                    handles: h,
                });
            }
            if h >= 1 && h + k - 1 <= max_genus {
                out.push(Signature {
                    genus: h + k - 1,
                    circles: k,
                    orientable: false,
                    handles: h,
                });
            }
        }
    }
    out
}

fn pick_aut<R: Rng>(rng: &mut R, auts: &[Automorphism]) -> Automorphism {
    // lean towards the identity so that nontrivial cohomology is common
    if rng.random_bool(0.3) {
        auts[0].clone()
    } else {
        auts.choose(rng).expect("identity is present").clone()
    }
}

fn pick_commuting_involution<R: Rng>(
    rng: &mut R,
    invs: &[Automorphism],
    with: &Automorphism,
) -> Automorphism {
    let ok: Vec<&Automorphism> = invs.iter().filter(|s| s.commutes_with(with)).collect();
    (*ok.choose(rng).expect("the identity commutes")).clone()
}

/// A gerbe with band `(ℤ/2)^n` over a proper real curve with a nonempty real locus.
pub fn random_gerbe<R: Rng>(rng: &mut R, bands: &BandCache, max_genus: u32) -> MonodromyGerbe {
    let n = rng.random_range(0..=bands.max_rank());
    let sig = *signatures(max_genus)
        .choose(rng)
        .expect("genus 0 with one circle always exists");
    gerbe_with_signature(rng, bands, n, sig)
}

pub fn gerbe_with_signature<R: Rng>(
    rng: &mut R,
    bands: &BandCache,
    n: u32,
    sig: Signature,
) -> MonodromyGerbe {
    let (a, auts, invs) = &bands.bands[n as usize];
    let id = Automorphism::identity(a);
    let k = sig.circles as usize;

    // handle generators: pairs (a_j, b_j) or glide reflections d_j
    let handle_words: Vec<Automorphism> = (0..if sig.orientable {
        2 * sig.handles
    } else {
        sig.handles
    })
        .map(|_| pick_aut(rng, auts))
        .collect();
    let handle_product = if sig.orientable {
        handle_words.chunks(2).fold(id.clone(), |acc, p| {
            acc.compose(
                &p[0]
                    .compose(&p[1])
                    .compose(&p[0].inverse())
                    .compose(&p[1].inverse()),
            )
        })
    } else {
        handle_words
            .iter()
            .fold(id.clone(), |acc, d| acc.compose(&d.compose(d)))
    };
    // boundary loops e_i with reflections c_i commuting with them; e_1⋯e_k·(handles) = 1
    let mut e: Vec<Automorphism> = (0..k - 1).map(|_| pick_aut(rng, auts)).collect();
    let partial = e.iter().fold(id.clone(), |acc, x| acc.compose(x));
    e.push(partial.inverse().compose(&handle_product.inverse()));
    let c: Vec<Automorphism> = e
        .iter()
        .map(|ei| pick_commuting_involution(rng, invs, ei))
        .collect();
    let c1 = &c[0];

    // generators of the orientation-preserving subgroup, with transversal {1, c_1}
    let mut generators = Vec::new();
    let even: Vec<&Automorphism> = if sig.orientable {
        handle_words.iter().chain(e.iter()).collect()
    } else {
        e.iter().collect()
    };
    for x in even {
        generators.push(x.clone());
        generators.push(c1.compose(x).compose(c1));
    }
    if !sig.orientable {
        for d in &handle_words {
            generators.push(d.compose(c1));
            generators.push(c1.compose(d));
        }
    }
    let mut omegas = vec![Word::default()];
    for ci in &c[1..] {
        generators.push(ci.compose(c1));
        omegas.push(Word(vec![generators.len() as i64]));
        generators.push(c1.compose(ci));
    }

    let components = e
        .iter()
        .zip(omegas)
        .enumerate()
        .map(|(i, (ei, omega))| RealComponent {
            label: format!("circle {}", i + 1),
            shape: RealShape::Circle,
            loops: vec![ei.clone()],
            omega,
        })
        .collect();
    let fiber = GGroup::new(a.clone(), c1.clone()).expect("involution");
    let base = GerbeBase::ProperCurve {
        genus: sig.genus,
        standard_generators: false,
    };
    MonodromyGerbe::new(fiber, generators, base, components)
        .expect("data read off a group homomorphism is consistent")
}

/// A stacky curve whose stabilizers are `C_k × C_m` or `C_{km}` with kernel of order `k`.
pub fn random_abelian_curve<R: Rng>(rng: &mut R) -> StackyCurveSpec {
    let k = rng.random_range(1..=4usize);
    let genus = rng.random_range(0..=3u64);
    let count = rng.random_range(0..=5usize);
    let mut branch_points = Vec::new();
    let mut cuts = 0;
    for _ in 0..count {
        let m = rng.random_range(1..=6usize);
        let real = rng.random_bool(0.5);
        let bp = if rng.random_bool(0.5) {
            let stabilizer = direct_product(&cyclic(k).expect("k ≥ 1"), &cyclic(m).expect("m ≥ 1"))
                .expect("small");
            BranchPoint {
                stabilizer,
                real,
                kernel: Some((0..k).map(|a| a * m).collect()),
            }
        } else {
            BranchPoint {
                stabilizer: cyclic(k * m).expect("positive"),
                real,
                kernel: None,
            }
        };
        // the faithful stabilizer is cyclic of order m only in the cyclic case or when gcd(k, m) = 1
        let faithful = bp
            .faithful_stabilizer(branch_points.len(), k)
            .expect("central kernel");
        let cyclic_faithful = faithful
            .elements()
            .any(|x| faithful.element_order(x) == faithful.order());
        if real && !cyclic_faithful {
            continue;
        }
        if real && faithful.order() % 2 == 0 {
            cuts += 1;
        }
        branch_points.push(bp);
    }
    let real_components = if cuts > 0 || rng.random_bool(0.5) {
        vec![CurveComponent {
            shape: ComponentShape::Circle,
            cut_points: cuts,
        }]
    } else {
        vec![]
    };
    StackyCurveSpec {
        coarse_h_star: 2 + 2 * genus,
        kernel_order: k,
        abelian: true,
        proper: true,
        branch_points,
        real_components,
    }
}

/// Sizes of the orbits of the monodromy on the band, for covering-space checks.
pub fn orbit_sizes(g: &MonodromyGerbe) -> BTreeMap<usize, usize> {
    let mut sizes = BTreeMap::new();
    for o in g.inertia_cover().orbits {
        *sizes.entry(o.len()).or_insert(0) += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn signatures_cover_small_genera() {
        let s = signatures(1);
        assert!(s.contains(&Signature {
            genus: 0,
            circles: 1,
            orientable: true,
            handles: 0
        }));
        assert!(s.contains(&Signature {
            genus: 1,
            circles: 2,
            orientable: true,
            handles: 0
        }));
        assert!(s.contains(&Signature {
            genus: 1,
            circles: 1,
            orientable: false,
            handles: 1
        }));
        assert!(s.iter().all(|x| x.genus <= 1 && x.circles >= 1));
    }

    #[test]
    fn enumeration_counts_isomorphism_classes_of_small_sets() {
        // Γ trivial: sets with an involution, up to isomorphism, on at most 2 points
        let u = SpaceUniverse::new(1, 2);
        // ∅, {fixed}, {fixed, fixed}, {swapped pair}
        assert_eq!(u.enumerate().len(), 4);
    }

    #[test]
    fn sampled_spaces_respect_the_bound() {
        let u = SpaceUniverse::new(8, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(u.sample(&mut rng).carrier() <= 6);
        }
    }

    #[test]
    fn random_gerbes_are_valid() {
        let bands = BandCache::new(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let g = random_gerbe(&mut rng, &bands, 4);
            assert!(g.smith_thom().is_ok());
        }
    }

    #[test]
    fn random_abelian_curves_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            random_abelian_curve(&mut rng).validate().unwrap();
        }
    }
}
