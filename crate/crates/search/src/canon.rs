//! Canonical forms used to skip isomorphic duplicates.

use realstack_core::quotient::FiniteGSpace;

/// Smallest encoding of `(σ_X, action)` over all relabellings of the carrier, prefixed by
/// the group table and `σ`. Equal keys mean isomorphic spaces over the same `(Γ, σ)`.
pub fn space_key(space: &FiniteGSpace) -> String {
    let gg = space.ggroup();
    let m = space.carrier();
    let rows = space.action_rows();
    let sigma_x = space.sigma_x().images();
    let mut best: Option<Vec<usize>> = None;
    let mut relabel: Vec<usize> = (0..m).collect();
    let mut inverse = vec![0; m];
    permutations(&mut relabel, 0, &mut |p| {
        for (x, &px) in p.iter().enumerate() {
            inverse[px] = x;
        }
        let mut enc = Vec::with_capacity(m * (rows.len() + 1));
        // new label y is old point inverse[y]
        enc.extend((0..m).map(|y| p[sigma_x[inverse[y]]]));
        for row in &rows {
            enc.extend((0..m).map(|y| p[row[inverse[y]]]));
        }
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    });
    format!(
        "{:?}|{:?}|{:?}",
        gg.group().table(),
        gg.sigma().images(),
        best.unwrap_or_default()
    )
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use realstack_core::group::{cyclic, GGroup};

    #[test]
    fn relabelled_spaces_share_a_key() {
        let gg = GGroup::trivial_action(cyclic(2).unwrap());
        let a = FiniteGSpace::new(
            gg.clone(),
            vec![0, 1, 2],
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        let b = FiniteGSpace::new(
            gg.clone(),
            vec![0, 1, 2],
            vec![vec![0, 1, 2], vec![1, 0, 2]],
        )
        .unwrap();
        let c = FiniteGSpace::new(gg, vec![0, 2, 1], vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(space_key(&a), space_key(&b));
        assert_ne!(space_key(&a), space_key(&c));
    }
}
