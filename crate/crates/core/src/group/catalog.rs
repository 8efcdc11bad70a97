//! Named small groups with fixed element labellings.

use std::collections::{BTreeSet, HashMap};

use super::{FiniteGroup, GroupError};

/// `ℤ/n` with element `k` the residue `k`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "cyclic group of order 0".into(),
        ));
    }
    FiniteGroup::from_fn(n, |a, b| (a + b) % n)
}

/// Symmetries of the regular `n`-gon, of order `2n`.
///
/// Index `i < n` is the rotation `rⁱ`; index `n + i` is the reflection `s rⁱ`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "dihedral group of a 0-gon".into(),
        ));
    }
    FiniteGroup::from_fn(2 * n, |a, b| {
        let (sa, i) = (a / n, a % n);
        let (sb, j) = (b / n, b % n);
        // r^i s = s r^{-i}
        let exp = if sb == 1 {
            (j + n - i) % n
        } else {
            (i + j) % n
        };
        ((sa + sb) % 2) * n + exp
    })
}

/// `(ℤ/2)^k`; element indices are bit vectors and multiplication is XOR.
pub fn elementary_abelian_2(k: u32) -> Result<FiniteGroup, GroupError> {
    if k > 7 {
        return Err(GroupError::SizeLimitExceeded {
            what: "elementary abelian 2-group",
            order: 1usize << k.min(63),
            limit: super::MAX_TABLE_ORDER,
        });
    }
    FiniteGroup::from_fn(1 << k, |a, b| a ^ b)
}

/// Permutations of `0..n` in lexicographic order (identity first), composed as functions.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n > 5 {
        return Err(GroupError::SizeLimitExceeded {
            what: "symmetric group",
            order: n,
            limit: 5,
        });
    }
    let perms = lex_permutations(n);
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    FiniteGroup::from_fn(perms.len(), |a, b| {
        let c: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
        index[c.as_slice()]
    })
}

fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in lex_permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// Quaternion group. Indices `0..4` are `1, i, j, k` and `4..8` their negatives.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign, unit) with units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, |a, b| {
        let (s, u) = UNIT[a % 4][b % 4];
        ((s + a / 4 + b / 4) % 2) * 4 + u
    })
    .expect("quaternion table is a group")
}

/// `G × H` with `(g, h)` at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let m = h.order();
    let n = g.order() * m;
    if n > super::MAX_TABLE_ORDER {
        return Err(GroupError::SizeLimitExceeded {
            what: "direct product",
            order: n,
            limit: super::MAX_TABLE_ORDER,
        });
    }
    FiniteGroup::from_fn(n, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
}

/// Parses names such as `C6`, `D4` (order 8), `S3`, `V4`, `Q8`, `C2^3` and products `C2xS3`.
pub fn parse_group_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownName(name.to_string());
    let mut acc: Option<FiniteGroup> = None;
    for factor in name.split(['x', '×', '*']) {
        let f = factor.trim();
        let g = parse_factor(f).ok_or_else(unknown)??;
        acc = Some(match acc {
            None => g,
            Some(a) => direct_product(&a, &g)?,
        });
    }
    acc.ok_or_else(unknown)
}

fn parse_factor(f: &str) -> Option<Result<FiniteGroup, GroupError>> {
    match f {
        "1" | "C1" | "trivial" => return Some(Ok(FiniteGroup::trivial())),
        "V4" | "K4" => return Some(elementary_abelian_2(2)),
        "Q8" => return Some(Ok(quaternion())),
        _ => {}
    }
    if let Some(k) = f.strip_prefix("C2^") {
        return Some(elementary_abelian_2(k.parse().ok()?));
    }
    let (head, tail) = f.split_at(f.char_indices().nth(1)?.0);
    let n: usize = tail.parse().ok()?;
    match head {
        "C" | "Z" => Some(cyclic(n)),
        "D" => Some(dihedral(n)),
        "S" => Some(symmetric(n)),
        _ => None,
    }
}

/// Small groups up to `max_order` (at most 24 are listed), deduplicated by table bytes.
///
/// Names use the syntax of [`parse_group_name`].
pub fn catalog(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=24).map(|n| format!("C{n}")));
    names.extend((2..=12).map(|n| format!("D{n}")));
    names.extend((2..=4).map(|k| format!("C2^{k}")));
    names.extend(["S3", "S4", "Q8"].map(String::from));
    names.extend(
        [
            "C2xC4", "C2xC6", "C2xC8", "C4xC4", "C2^2xC4", "C3xC3", "C2xS3", "C3xS3", "C2xD4",
            "C2xQ8", "C2xC12", "C2^2xC6", "C4xS3", "C3xQ8", "C2xD6", "C3xD4", "C2^3xC3", "C3xC6",
        ]
        .map(String::from),
    );
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for name in names {
        let g = parse_group_name(&name).expect("catalog names parse");
        if g.order() <= max_order && seen.insert(g.table().to_vec()) {
            out.push((name, g));
        }
    }
    out.sort_by_key(|(_, g)| g.order());
    out
}
