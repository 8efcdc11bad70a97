//! Turning union-find labelings into ordered class lists.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

/// Groups indices by label. Classes are sorted internally and ordered by their least member.
pub fn classes_from_labels(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = by_label.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Partition of `0..n` generated by the relation `i ~ f(i, k)` for every `k` in `0..m`.
pub fn orbit_partition(n: usize, m: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for k in 0..m {
            uf.union(i, f(i, k));
        }
    }
    classes_from_labels(&uf.into_labeling())
}

/// Inverse lookup: `class_of[i]` is the position of the class containing `i`.
pub fn class_index(n: usize, classes: &[Vec<usize>]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; n];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            idx[i] = c;
        }
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_ordered_by_least_member() {
        assert_eq!(
            classes_from_labels(&[7, 3, 7, 3, 9]),
            vec![vec![0, 2], vec![1, 3], vec![4]]
        );
    }

    #[test]
    fn orbit_partition_of_negation_mod_five() {
        let p = orbit_partition(5, 1, |i, _| (5 - i) % 5);
        assert_eq!(p, vec![vec![0], vec![1, 4], vec![2, 3]]);
        assert_eq!(class_index(5, &p), vec![0, 1, 2, 2, 1]);
    }
}
