use proptest::prelude::*;
use realstack_core::group::{
    automorphisms, catalog, cyclic, dihedral, find_isomorphism, involutions, is_isomorphic,
    symmetric, Automorphism, FiniteGroup,
};

/// Every bijection fixing the identity that respects the table, by exhaustive enumeration.
fn brute_force_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    fn extend(
        g: &FiniteGroup,
        prefix: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.order();
        if prefix.len() == n {
            let hom =
                (0..n).all(|x| (0..n).all(|y| prefix[g.mul(x, y)] == g.mul(prefix[x], prefix[y])));
            if hom {
                out.push(prefix.clone());
            }
            return;
        }
        for t in 1..n {
            if !used[t] {
                used[t] = true;
                prefix.push(t);
                extend(g, prefix, used, out);
                prefix.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.order()];
    used[0] = true;
    extend(g, &mut vec![0], &mut used, &mut out);
    out.sort();
    out
}

#[test]
fn automorphism_search_agrees_with_enumeration_up_to_order_eight() {
    for (name, g) in catalog(8) {
        let fast: Vec<Vec<usize>> = automorphisms(&g)
            .unwrap()
            .iter()
            .map(|a| a.images().to_vec())
            .collect();
        assert_eq!(fast, brute_force_automorphisms(&g), "{name}");
    }
}

#[test]
fn involution_counts_of_small_groups() {
    let count = |g: &FiniteGroup| involutions(g).unwrap().len();
    assert_eq!(count(&cyclic(2).unwrap()), 1);
    assert_eq!(count(&cyclic(8).unwrap()), 4);
    assert_eq!(count(&symmetric(3).unwrap()), 4);
    assert_eq!(count(&dihedral(4).unwrap()), 6);
}

#[test]
fn catalog_tables_are_groups_and_pairwise_labelled_distinctly() {
    let c = catalog(24);
    assert!(c.len() >= 40);
    for (name, g) in &c {
        assert_eq!(FiniteGroup::from_table(g.rows()).as_ref(), Ok(g), "{name}");
    }
}

#[test]
fn dihedral_of_the_triangle_is_symmetric_on_three_letters() {
    assert!(is_isomorphic(&dihedral(3).unwrap(), &symmetric(3).unwrap()));
    assert!(find_isomorphism(&cyclic(6).unwrap(), &symmetric(3).unwrap()).is_none());
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    let groups: Vec<FiniteGroup> = catalog(16).into_iter().map(|(_, g)| g).collect();
    proptest::sample::select(groups)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn automorphisms_form_a_group(g in small_group(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let auts = automorphisms(&g).unwrap();
        let (a, b) = (i.get(&auts), j.get(&auts));
        prop_assert!(auts.binary_search(&a.compose(b)).is_ok());
        prop_assert!(auts.binary_search(&a.inverse()).is_ok());
        prop_assert!(Automorphism::new(&g, a.images().to_vec()).is_ok());
    }

    #[test]
    fn relabelled_tables_are_isomorphic(g in small_group(), seed in any::<u64>()) {
        // shuffle the non-identity labels and rebuild the table
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (2..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = 1 + (s >> 33) as usize % i;
            perm.swap(i, j);
        }
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let rows = (0..n).map(|a| (0..n).map(|b| perm[g.mul(inv[a], inv[b])]).collect()).collect();
        let h = FiniteGroup::from_table(rows).unwrap();
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(automorphisms(&g).unwrap().len(), automorphisms(&h).unwrap().len());
    }

    #[test]
    fn quotients_by_normal_subgroups_have_the_right_order(g in small_group()) {
        for k in g.subgroups() {
            if g.is_normal(&k) {
                let (q, proj) = g.quotient(&k).unwrap();
                prop_assert_eq!(q.order() * k.len(), g.order());
                for a in g.elements() {
                    for b in g.elements() {
                        prop_assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
                    }
                }
            }
        }
    }
}
