//! Exact two-phase simplex over the rationals, Bland's rule throughout.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        solution: Vec<BigRational>,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = BigRational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . y` over columns `< allowed`; returns false when unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z: BigRational = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .map(|(row, &b)| &cost[b] * &row[j])
                    .sum();
                (&cost[j] - z).is_positive()
            });
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((i, _)) = leave else { return false };
            self.pivot(i, j);
        }
    }

    fn objective(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .sum()
    }
}

/// Maximizes `c . y` subject to `A y = b`, `y >= 0`.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, v) in ai.iter().enumerate() {
            row[j] = if flip { -v } else { v.clone() };
        }
        row[n + i] = BigRational::one();
        row[width] = if flip { -bi } else { bi.clone() };
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };

    let mut phase1 = vec![BigRational::zero(); width];
    for x in phase1[n..].iter_mut() {
        *x = -BigRational::one();
    }
    t.optimize(&phase1, width);
    if t.objective(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = vec![BigRational::zero(); width];
    phase2[..n].clone_from_slice(c);
    if !t.optimize(&phase2, n) {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![BigRational::zero(); n];
    for (i, &bcol) in t.basis.iter().enumerate() {
        solution[bcol] = t.rhs(i).clone();
    }
    LpOutcome::Optimal {
        value: t.objective(&phase2),
        solution,
    }
}
