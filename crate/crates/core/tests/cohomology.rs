use std::collections::BTreeSet;

use proptest::prelude::*;
use realstack_core::cohomology::{
    h1, h1_abelian, h1_action, is_cocycle, twist_ggroup, twisted_conjugate, z1,
};
use realstack_core::group::{automorphisms, catalog, involutions, GGroup};

/// Every group of order at most 24 in the catalog with every involution.
fn all_ggroups(max_order: usize) -> Vec<GGroup> {
    catalog(max_order)
        .into_iter()
        .flat_map(|(_, g)| {
            involutions(&g)
                .unwrap()
                .into_iter()
                .map(move |s| GGroup::new(g.clone(), s).unwrap())
        })
        .collect()
}

/// Classes computed as connected components of the "cohomologous" relation, pair by pair.
fn naive_class_count(gg: &GGroup) -> usize {
    let cocycles = z1(gg);
    let mut reps: Vec<usize> = Vec::new();
    for &c in &cocycles {
        let known = reps.iter().any(|&r| {
            gg.group()
                .elements()
                .any(|b| twisted_conjugate(gg, b, r) == c)
        });
        if !known {
            reps.push(c);
        }
    }
    reps.len()
}

#[test]
fn class_counts_match_a_pairwise_search() {
    for gg in all_ggroups(12) {
        assert_eq!(h1(&gg).len(), naive_class_count(&gg));
    }
}

#[test]
fn abelian_formula_agrees_with_enumeration() {
    for gg in all_ggroups(24) {
        if gg.group().is_abelian() {
            assert_eq!(h1(&gg).len(), h1_abelian(&gg).unwrap());
        } else {
            assert!(h1_abelian(&gg).is_err());
        }
    }
}

#[test]
fn classes_are_bounded_by_stable_conjugacy_classes() {
    for gg in all_ggroups(24) {
        let g = gg.group();
        let classes = g.conjugacy_classes();
        let stable = classes
            .iter()
            .filter(|c| {
                let set: BTreeSet<usize> = c.iter().copied().collect();
                c.iter().all(|&x| set.contains(&gg.s(x)))
            })
            .count();
        assert!(h1(&gg).len() <= stable);
    }
}

fn ggroup() -> impl Strategy<Value = GGroup> {
    proptest::sample::select(all_ggroups(16))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn class_zero_is_the_trivial_class(gg in ggroup()) {
        let c = h1(&gg);
        prop_assert_eq!(c.representatives()[0], 0);
        prop_assert_eq!(c.class_of(0), Some(0));
        prop_assert_eq!(c.cocycles(), z1(&gg));
        for (k, class) in c.classes().iter().enumerate() {
            prop_assert_eq!(class[0], c.representatives()[k]);
        }
    }

    #[test]
    fn odd_order_groups_have_trivial_cohomology(gg in ggroup()) {
        if gg.group().order() % 2 == 1 {
            prop_assert_eq!(h1(&gg).len(), 1);
        }
    }

    #[test]
    fn twisting_preserves_the_number_of_classes(gg in ggroup(), pick in any::<prop::sample::Index>()) {
        let cocycles = z1(&gg);
        let gamma = *pick.get(&cocycles);
        let twisted = twist_ggroup(&gg, gamma).unwrap();
        // β ↦ β·γ⁻¹ is a bijection from twisted cocycles to cocycles
        prop_assert_eq!(h1(&twisted).len(), h1(&gg).len());
        let g = gg.group();
        for b in z1(&twisted) {
            prop_assert!(is_cocycle(&gg, g.mul(b, gamma)));
        }
    }

    #[test]
    fn the_action_on_classes_is_functorial(gg in ggroup(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let equivariant: Vec<_> = automorphisms(gg.group()).unwrap().into_iter().filter(|a| a.commutes_with(gg.sigma())).collect();
        let (a, b) = (i.get(&equivariant), j.get(&equivariant));
        let classes = h1(&gg);
        let pa = h1_action(&gg, &classes, a).unwrap();
        let pb = h1_action(&gg, &classes, b).unwrap();
        let pab = h1_action(&gg, &classes, &a.compose(b)).unwrap();
        prop_assert_eq!(pab, pa.compose(&pb));
        prop_assert_eq!(pa.apply(0), 0);
    }
}
