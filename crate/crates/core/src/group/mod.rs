//! Finite groups given by Cayley tables, their automorphisms, and groups with an involution.
//!
//! Elements are the indices `0..n`; index `0` is always the identity.

mod aut;
pub mod catalog;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub use aut::{
    automorphisms, automorphisms_with_limit, find_isomorphism, involutions, is_isomorphic,
    Automorphism, GGroup, AUTOMORPHISM_COUNT_LIMIT, AUTOMORPHISM_ORDER_LIMIT,
};
pub use catalog::{
    catalog, cyclic, dihedral, direct_product, elementary_abelian_2, parse_group_name, quaternion,
    symmetric,
};

use crate::partition::orbit_partition;

/// Largest order accepted by [`FiniteGroup::from_table`]; associativity is verified exhaustively.
pub const MAX_TABLE_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("a group table needs at least one row")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {a}*{b} = {value} is outside 0..{order}")]
    NotClosed {
        a: usize,
        b: usize,
        value: usize,
        order: usize,
    },
    #[error("index 0 is not a two-sided identity (fails at element {x})")]
    NoIdentityAtZero { x: usize },
    #[error("element {a} has no two-sided inverse")]
    NoInverse { a: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("{what} supports order at most {limit}, got {order}")]
    SizeLimitExceeded {
        what: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("map has {len} images but the group has order {order}")]
    WrongDegree { len: usize, order: usize },
    #[error("map is not a bijection of the group elements")]
    NotBijective,
    #[error("map is not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("automorphism is not an involution")]
    NotInvolutive,
    #[error("elements {elements:?} do not form a normal subgroup")]
    NotNormal { elements: Vec<usize> },
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    InvalidParameter(String),
}

/// A finite group stored as a full multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, the identity at index 0, inverses and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_TABLE_ORDER {
            return Err(GroupError::SizeLimitExceeded {
                what: "Cayley table validation",
                order: n,
                limit: MAX_TABLE_ORDER,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: a,
                    len: row.len(),
                    expected: n,
                });
            }
            for (b, &value) in row.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::NotClosed {
                        a,
                        b,
                        value,
                        order: n,
                    });
                }
                table.push(value);
            }
        }
        for x in 0..n {
            if table[x] != x || table[x * n] != x {
                return Err(GroupError::NoIdentityAtZero { x });
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse { a }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
        })
    }

    /// Builds a table from a multiplication rule; used by the catalog constructors.
    pub(crate) fn from_fn(
        n: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let rows = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        FiniteGroup::from_table(rows)
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Flat row-major table; two groups have equal tables iff they are equal as labelled groups.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes ordered by least element; the first class is `{e}`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        orbit_partition(self.order, self.order, |x, g| self.conj(g, x))
    }

    /// Subgroup generated by `gens`, as a sorted list.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| member[x]).collect()
    }

    /// A small generating set chosen greedily, preferring elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in by_order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        self.is_subgroup(elements)
            && (0..self.order).all(|g| set.iter().all(|&k| set.contains(&self.conj(g, k))))
    }

    /// Every subgroup, each sorted, listed in order of discovery from the trivial group.
    ///
    /// Subgroups are grown one generator at a time, so every subgroup is reached.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([vec![0]]);
        seen.insert(vec![0]);
        while let Some(h) = queue.pop_front() {
            for x in 0..self.order {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.subgroup_generated(&gens);
                if seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
            out.push(h);
        }
        out
    }

    /// Quotient by a normal subgroup.
    ///
    /// Cosets are numbered by least representative, so the kernel becomes the identity 0.
    /// Returns the quotient and the projection as a lookup table.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal {
                elements: normal.to_vec(),
            });
        }
        let cosets = orbit_partition(self.order, normal.len(), |g, k| self.mul(g, normal[k]));
        let proj = crate::partition::class_index(self.order, &cosets);
        let q = cosets.len();
        let rows = (0..q)
            .map(|a| {
                (0..q)
                    .map(|b| proj[self.mul(cosets[a][0], cosets[b][0])])
                    .collect()
            })
            .collect();
        Ok((FiniteGroup::from_table(rows)?, proj))
    }

    /// A subgroup as a group in its own right; local index `k` stands for `elements[k]`.
    ///
    /// `elements` must be sorted, so the identity is local index 0.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup, GroupError> {
        if !self.is_subgroup(elements) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(GroupError::InvalidParameter(format!(
                "{elements:?} is not a sorted subgroup"
            )));
        }
        let local = |g: usize| {
            elements
                .binary_search(&g)
                .expect("closed under multiplication")
        };
        FiniteGroup::from_fn(elements.len(), |a, b| {
            local(self.mul(elements[a], elements[b]))
        })
    }

    /// `Γ ⋊ ⟨σ⟩` for an involutive automorphism `σ`.
    ///
    /// The pair `(g, s)` with `s ∈ {0, 1}` has index `g + s·n`, and
    /// `(g, s)(h, t) = (g·σˢ(h), s + t)`.
    pub fn semidirect_with_involution(
        &self,
        sigma: &Automorphism,
    ) -> Result<FiniteGroup, GroupError> {
        let n = self.order;
        FiniteGroup::from_fn(2 * n, |a, b| {
            let (g, s) = (a % n, a / n);
            let (h, t) = (b % n, b / n);
            let h = if s == 1 { sigma.apply(h) } else { h };
            self.mul(g, h) + ((s + t) % 2) * n
        })
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("table", &self.rows())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_group_tables() {
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse { a: 1 })
        );
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1]]),
            Err(GroupError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]),
            Err(GroupError::NoIdentityAtZero { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]),
            Err(GroupError::NotClosed { .. })
        ));
        assert_eq!(FiniteGroup::from_table(vec![]), Err(GroupError::Empty));
    }

    #[test]
    fn detects_non_associativity() {
        // a loop of order 5 that is a Latin square with identity but not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(rows),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn quotient_of_c4_by_c2() {
        let c4 = cyclic(4).unwrap();
        let (q, proj) = c4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        assert!(c4.quotient(&[0, 1]).is_err());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(symmetric(3).unwrap().subgroups().len(), 6);
        assert_eq!(symmetric(4).unwrap().subgroups().len(), 30);
        assert_eq!(elementary_abelian_2(3).unwrap().subgroups().len(), 16);
        assert_eq!(quaternion().subgroups().len(), 6);
    }

    #[test]
    fn centers() {
        assert_eq!(quaternion().center().len(), 2);
        assert_eq!(symmetric(3).unwrap().center(), vec![0]);
        assert_eq!(dihedral(4).unwrap().center().len(), 2);
    }

    #[test]
    fn semidirect_product_with_inversion_on_c3_is_s3() {
        let c3 = cyclic(3).unwrap();
        let inv = Automorphism::new(&c3, vec![0, 2, 1]).unwrap();
        let g = c3.semidirect_with_involution(&inv).unwrap();
        assert!(is_isomorphic(&g, &symmetric(3).unwrap()));
    }
}
