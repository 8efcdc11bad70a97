//! Real points of `[A/±1]` for a real abelian variety `A`.
//!
//! `A(ℝ)` is `(S¹)^g × (ℤ/2)^k`. The quotient stack has two real pieces, `A(ℝ)/±1` and the
//! same space for the quadratic twist, which has an isomorphic real group.
//! [`real_h_star_brute_force`] triangulates `A(ℝ)` by a cubical grid and computes mod 2
//! Betti numbers of the quotient from boundary ranks.

use std::collections::HashMap;

use super::CurveError;

/// Grid points per circle. Even, so no positive-dimensional cell is preserved by `x ↦ −x`.
const GRID: usize = 6;

/// Largest dimension supported by the brute force.
pub const MAX_DIMENSION: u32 = 2;

/// `h*` of the real locus of `[A/±1]` in closed form: `2 · 2^k · h*((S¹)^g/±1)`.
///
/// A circle modulo inversion is an interval and a torus modulo inversion is a sphere,
/// so this is `2^(k+g)` for `g ∈ {1, 2}`.
pub fn real_h_star(dimension: u32, real_torsion_rank: u32) -> Result<u64, CurveError> {
    check(dimension, real_torsion_rank)?;
    Ok(1u64 << (real_torsion_rank + dimension))
}

/// `h*` of the inertia of `[A/±1]` for elliptic curves: `h*(P¹) + #A[2]`.
pub fn elliptic_inertia_h_star() -> u64 {
    2 + 4
}

fn check(dimension: u32, real_torsion_rank: u32) -> Result<(), CurveError> {
    if dimension == 0 || dimension > MAX_DIMENSION {
        return Err(CurveError::Unsupported(format!(
            "abelian varieties of dimension {dimension}"
        )));
    }
    if real_torsion_rank > dimension {
        return Err(CurveError::Unsupported(format!(
            "A(ℝ) has at most 2^{dimension} components, got rank {real_torsion_rank}"
        )));
    }
    Ok(())
}

/// A cube in the grid: lower corner, the set of spanned directions, and the component label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cell {
    corner: Vec<usize>,
    dirs: u32,
    label: u32,
}

impl Cell {
    fn dim(&self) -> usize {
        self.dirs.count_ones() as usize
    }

    fn negate(&self) -> Cell {
        let corner = self
            .corner
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let spanned = self.dirs & (1 << i) != 0;
                (2 * GRID - v - usize::from(spanned)) % GRID
            })
            .collect();
        // −ε = ε in the component group (ℤ/2)^k
        Cell {
            corner,
            dirs: self.dirs,
            label: self.label,
        }
    }

    fn faces(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 0..self.corner.len() {
            if self.dirs & (1 << i) != 0 {
                let dirs = self.dirs & !(1 << i);
                out.push(Cell {
                    corner: self.corner.clone(),
                    dirs,
                    label: self.label,
                });
                let mut up = self.corner.clone();
                up[i] = (up[i] + 1) % GRID;
                out.push(Cell {
                    corner: up,
                    dirs,
                    label: self.label,
                });
            }
        }
        out
    }
}

fn all_cells(dimension: usize, labels: u32) -> Vec<Cell> {
    let mut corners = vec![vec![]];
    for _ in 0..dimension {
        corners = corners
            .into_iter()
            .flat_map(|c: Vec<usize>| {
                (0..GRID).map(move |v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    let mut cells = Vec::new();
    for label in 0..labels {
        for dirs in 0..(1u32 << dimension) {
            for corner in &corners {
                cells.push(Cell {
                    corner: corner.clone(),
                    dirs,
                    label,
                });
            }
        }
    }
    cells
}

/// Rank over `F₂` of a matrix given by rows of bit words.
fn rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len) * 64;
    for col in 0..width {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Sum of mod 2 Betti numbers of `A(ℝ)/±1`, counted over both real pieces of the stack.
pub fn real_h_star_brute_force(dimension: u32, real_torsion_rank: u32) -> Result<u64, CurveError> {
    check(dimension, real_torsion_rank)?;
    let d = dimension as usize;
    let cells = all_cells(d, 1 << real_torsion_rank);
    // orbit representative: the smaller of a cell and its negative
    let mut orbit_index: HashMap<Cell, usize> = HashMap::new();
    let mut by_dim: Vec<Vec<Cell>> = vec![Vec::new(); d + 1];
    for c in &cells {
        let rep = c.clone().min(c.negate());
        if !orbit_index.contains_key(&rep) {
            orbit_index.insert(rep.clone(), by_dim[rep.dim()].len());
            by_dim[rep.dim()].push(rep);
        }
    }
    let index_of = |c: &Cell| orbit_index[&c.clone().min(c.negate())];
    // boundary ∂_j : C_j → C_{j-1}, one row per j-cell
    let mut ranks = vec![0usize; d + 2];
    for j in 1..=d {
        let width = by_dim[j - 1].len().div_ceil(64);
        let rows = by_dim[j]
            .iter()
            .map(|c| {
                let mut row = vec![0u64; width];
                for f in c.faces() {
                    let i = index_of(&f);
                    row[i / 64] ^= 1 << (i % 64);
                }
                row
            })
            .collect();
        ranks[j] = rank_f2(rows);
    }
    let betti: usize = (0..=d)
        .map(|j| by_dim[j].len() - ranks[j] - ranks[j + 1])
        .sum();
    Ok(2 * betti as u64)
}
