//! Hermite normal form for small integer lattices.

use num_integer::Integer;

/// A full-rank sublattice of `Z^m` stored as the rows of its Hermite normal form.
///
/// Row `k` has its first nonzero entry (the pivot, always positive) in column `k`;
/// entries above each pivot are reduced into `[0, pivot)`. The form is unique for a
/// given lattice, so two generating sets of the same lattice give identical bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermiteBasis {
    rows: Vec<Vec<i64>>,
}

/// Outcome of reducing an arbitrary generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    /// Nonzero echelon rows, one per pivot.
    pub rows: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
}

/// Row-reduces `generators` (each of length `dim`) over the integers.
pub fn reduce(generators: &[Vec<i64>], dim: usize) -> Reduction {
    let mut mat: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .filter(|g: &Vec<i128>| g.iter().any(|&x| x != 0))
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..dim {
        if pivot_row >= mat.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..mat.len() {
                if mat[r][col] != 0 && best.map_or(true, |b| mat[r][col].abs() < mat[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            mat.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..mat.len() {
                if mat[r][col] != 0 {
                    let q = Integer::div_floor(&mat[r][col], &mat[pivot_row][col]);
                    let (head, tail) = mat.split_at_mut(r);
                    for (x, p) in tail[0].iter_mut().zip(&head[pivot_row]) {
                        *x -= q * p;
                    }
                    if tail[0][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if mat[pivot_row][col] == 0 {
            continue;
        }
        if mat[pivot_row][col] < 0 {
            for x in mat[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = mat[pivot_row][col];
        for r in 0..pivot_row {
            let q = Integer::div_floor(&mat[r][col], &p);
            if q != 0 {
                let (head, tail) = mat.split_at_mut(pivot_row);
                for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                    *x -= q * y;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    mat.truncate(pivot_row);
    let rows = mat
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("HNF entry overflows i64"))
                .collect()
        })
        .collect();
    Reduction {
        rank: pivot_row,
        rows,
        pivots,
    }
}

impl HermiteBasis {
    /// Builds the canonical basis of `span_Z(generators)`, or `None` when the span is
    /// not of full rank `dim`.
    pub fn from_generators(generators: &[Vec<i64>], dim: usize) -> Option<Self> {
        let red = reduce(generators, dim);
        (red.rank == dim).then_some(HermiteBasis { rows: red.rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Index of this lattice in `Z^m`, i.e. `|det|` of the basis.
    pub fn index(&self) -> u64 {
        self.rows.iter().enumerate().map(|(k, r)| r[k] as u64).product()
    }

    /// Integer coordinates of `v` in this basis, if `v` belongs to the lattice.
    pub fn coefficients(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.dim() {
            return None;
        }
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coeffs = Vec::with_capacity(self.dim());
        for (k, row) in self.rows.iter().enumerate() {
            let p = row[k] as i128;
            if rest[k] % p != 0 {
                return None;
            }
            let c = rest[k] / p;
            for (x, &y) in rest.iter_mut().zip(row) {
                *x -= c * y as i128;
            }
            coeffs.push(i64::try_from(c).ok()?);
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coefficients(v).is_some()
    }
}
