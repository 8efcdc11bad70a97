//! Permutations of `0..n` stored as image vectors.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A bijection of `0..n`, stored as `images[i] = π(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

/// The vector handed to [`Permutation::new`] is not a bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{images:?} is not a permutation of 0..{}", images.len())]
pub struct NotAPermutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, NotAPermutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(NotAPermutation { images });
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Number of points moved or fixed, i.e. `n`.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| self.0[j] == i)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == i).collect()
    }

    /// Conjugate `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.compose(other).compose(&self.inverse())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = NotAPermutation;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

/// Closure of a set of permutations of a common degree under composition.
///
/// Returns the generated group sorted lexicographically, so the identity comes first.
pub fn generated_group(degree: usize, generators: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Orbits of the group generated by `perms` on `0..degree`, each sorted, listed by least element.
pub fn orbits(degree: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(degree);
    for p in perms {
        for i in 0..degree {
            uf.union(i, p.apply(i));
        }
    }
    crate::partition::classes_from_labels(&uf.into_labeling())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeats_and_out_of_range() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::new(vec![1, 2, 0]).unwrap();
        let b = Permutation::new(vec![0, 2, 1]).unwrap();
        assert_eq!(a.compose(&b).images(), &[1, 0, 2]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn closure_of_a_transposition_and_a_cycle_is_s3() {
        let a = Permutation::new(vec![1, 2, 0]).unwrap();
        let b = Permutation::new(vec![1, 0, 2]).unwrap();
        let g = generated_group(3, &[a, b]);
        assert_eq!(g.len(), 6);
        assert!(g[0].is_identity());
    }

    #[test]
    fn orbit_partition() {
        let a = Permutation::new(vec![1, 0, 2, 4, 3]).unwrap();
        assert_eq!(orbits(5, &[a]), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
