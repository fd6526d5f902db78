//! Root data for SU(2) (`A1`), SU(3) (`A2`) and U(2) (`U2`), weight diagrams by
//! Freudenthal's recursion, and the shifted step sets they induce.
//!
//! Weight coordinates per group:
//!
//! * `A1`: multiples of the fundamental weight, so the root is `2` and `rho = 1`.
//! * `A2`: Dynkin labels `(a, b)`; simple roots `(2,-1)` and `(-1,2)`, `rho = (1,1)`.
//! * `U2`: diagonal torus coordinates `(l1, l2)`; root `(1,-1)`, `rho = (1/2,-1/2)`.
//!
//! The lattice `L*` of weights inside the root subspace has basis `{1}` for A1,
//! the two fundamental weights for A2, and `{(1,-1)}` for U2. Step sets built
//! here use coordinates in that basis.

pub mod u2;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{HermiteBasis, WeightedStepSet};
use crate::numeric::int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupName {
    A1,
    A2,
    U2,
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" | "SU2" | "SU(2)" => Ok(GroupName::A1),
            "A2" | "SU3" | "SU(3)" => Ok(GroupName::A2),
            "U2" | "U(2)" => Ok(GroupName::U2),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupName::A1 => "A1",
            GroupName::A2 => "A2",
            GroupName::U2 => "U2",
        })
    }
}

/// A Weyl group element as an integer matrix acting on weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub sign: i64,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        WeylElement {
            matrix,
            sign: self.sign * other.sign,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub name: GroupName,
    /// Dimension of the weight space `t*`.
    pub rank_t: usize,
    /// Dimension of the root subspace `X*`.
    pub m: usize,
    /// Invariant inner product on weight coordinates.
    pub gram: Vec<Vec<BigRational>>,
    pub simple_roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    /// `2 rho`, kept integral.
    pub two_rho: Vec<i64>,
    pub weyl: Vec<WeylElement>,
    /// Basis of `L*` (rows), in weight coordinates.
    pub basis_xstar: Vec<Vec<i64>>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn gram_from(rows: &[&[(i64, i64)]]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&(n, d)| q(n, d)).collect()).collect()
}

/// Returns the data for a named group.
pub fn build_root_system(name: GroupName) -> RootSystemData {
    let (rank_t, gram, simple, positive, basis) = match name {
        GroupName::A1 => (1, gram_from(&[&[(1, 2)]]), vec![vec![2]], vec![vec![2]], vec![vec![1]]),
        GroupName::A2 => (
            2,
            gram_from(&[&[(2, 3), (1, 3)], &[(1, 3), (2, 3)]]),
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![2, -1], vec![-1, 2], vec![1, 1]],
            vec![vec![1, 0], vec![0, 1]],
        ),
        GroupName::U2 => (
            2,
            gram_from(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]),
            vec![vec![1, -1]],
            vec![vec![1, -1]],
            vec![vec![1, -1]],
        ),
    };
    let two_rho = (0..rank_t)
        .map(|k| positive.iter().map(|a: &Vec<i64>| a[k]).sum())
        .collect();
    let mut r = RootSystemData {
        name,
        rank_t,
        m: simple.len(),
        gram,
        simple_roots: simple,
        positive_roots: positive,
        two_rho,
        weyl: Vec::new(),
        basis_xstar: basis,
    };
    r.weyl = r.generate_weyl_group();
    r
}

impl FromStr for RootSystemData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(build_root_system(s.parse()?))
    }
}

impl RootSystemData {
    pub fn inner(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if *x != 0 && *y != 0 {
                    acc += &self.gram[i][j] * int(x * y);
                }
            }
        }
        acc
    }

    /// `2 <mu, alpha> / <alpha, alpha>`.
    pub fn coroot_pairing(&self, mu: &[i64], alpha: &[i64]) -> BigRational {
        int(2) * self.inner(mu, alpha) / self.inner(alpha, alpha)
    }

    fn reflection(&self, alpha: &[i64]) -> WeylElement {
        let n = self.rank_t;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let c = self.coroot_pairing(&e, alpha);
            assert!(c.is_integer(), "reflection is not integral on weights");
            let c = c.to_integer().to_i64().unwrap();
            cols.push(e.iter().zip(alpha).map(|(x, a)| x - c * a).collect::<Vec<i64>>());
        }
        WeylElement {
            matrix: (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect(),
            sign: -1,
        }
    }

    fn generate_weyl_group(&self) -> Vec<WeylElement> {
        let n = self.rank_t;
        let identity = WeylElement {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
            sign: 1,
        };
        let gens: Vec<WeylElement> = self.simple_roots.iter().map(|a| self.reflection(a)).collect();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        seen.insert(identity.matrix.clone());
        let mut out = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let next = g.compose(&w);
                if seen.insert(next.matrix.clone()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        out
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.m == self.rank_t
    }

    /// `dim G = rank + 2 #(positive roots)`.
    pub fn dim_group(&self) -> usize {
        self.rank_t + 2 * self.positive_roots.len()
    }

    pub fn rho(&self) -> Vec<BigRational> {
        self.two_rho.iter().map(|&x| q(x, 2)).collect()
    }

    /// `rho - w rho`, an element of the root lattice.
    pub fn rho_shift(&self, w: &WeylElement) -> Vec<i64> {
        self.two_rho
            .iter()
            .zip(w.apply(&self.two_rho))
            .map(|(a, b)| {
                debug_assert!((a - b) % 2 == 0);
                (a - b) / 2
            })
            .collect()
    }

    pub fn is_dominant(&self, mu: &[i64]) -> bool {
        mu.len() == self.rank_t && self.simple_roots.iter().all(|a| !self.inner(mu, a).is_negative())
    }

    /// Dominant and off every wall.
    pub fn is_regular_dominant(&self, mu: &[i64]) -> bool {
        mu.len() == self.rank_t && self.simple_roots.iter().all(|a| self.inner(mu, a).is_positive())
    }

    pub fn dominant_representative(&self, mu: &[i64]) -> Vec<i64> {
        self.weyl
            .iter()
            .map(|w| w.apply(mu))
            .find(|v| self.is_dominant(v))
            .expect("every W-orbit meets the closed chamber")
    }

    pub fn check_weight(&self, mu: &[i64]) -> Result<()> {
        if mu.len() != self.rank_t {
            return Err(Error::CoordinateMismatch(format!(
                "{} weights have {} coordinates, got {}",
                self.name,
                self.rank_t,
                mu.len()
            )));
        }
        Ok(())
    }

    fn check_dominant(&self, mu: &[i64]) -> Result<()> {
        self.check_weight(mu)?;
        if !self.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_vec()));
        }
        Ok(())
    }

    /// Coordinates of a rational vector of `X*` in the `L*` basis, if it lies in `X*`.
    pub fn to_lstar_rational(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let b = &self.basis_xstar;
        let k = b.len();
        // normal equations B B^T c = B v
        let mut mat: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| int(b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum()))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<BigRational> = (0..k)
            .map(|i| b[i].iter().zip(v).map(|(x, y)| int(*x) * y).sum())
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&r| !mat[r][col].is_zero())?;
            mat.swap(col, piv);
            rhs.swap(col, piv);
            for r in 0..k {
                if r != col && !mat[r][col].is_zero() {
                    let f = &mat[r][col] / &mat[col][col];
                    for c in 0..k {
                        let sub = &f * &mat[col][c];
                        mat[r][c] -= sub;
                    }
                    let sub = &f * &rhs[col];
                    rhs[r] -= sub;
                }
            }
        }
        let c: Vec<BigRational> = (0..k).map(|i| &rhs[i] / &mat[i][i]).collect();
        let back: Vec<BigRational> = (0..self.rank_t)
            .map(|t| c.iter().zip(b).map(|(ci, row)| ci * int(row[t])).sum())
            .collect();
        (back.as_slice() == v).then_some(c)
    }

    /// Integer `L*` coordinates of a weight in `X*`; `None` when `v` is not in `X*`.
    pub fn to_lstar(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.rank_t {
            return None;
        }
        let c = self.to_lstar_rational(&v.iter().map(|&x| int(x)).collect::<Vec<_>>())?;
        c.iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn from_lstar(&self, c: &[i64]) -> Vec<i64> {
        (0..self.rank_t)
            .map(|t| c.iter().zip(&self.basis_xstar).map(|(ci, row)| ci * row[t]).sum())
            .collect()
    }

    pub fn from_lstar_rational(&self, c: &[BigRational]) -> Vec<BigRational> {
        (0..self.rank_t)
            .map(|t| c.iter().zip(&self.basis_xstar).map(|(ci, row)| ci * int(row[t])).sum())
            .collect()
    }

    pub fn positive_roots_lstar(&self) -> Vec<Vec<i64>> {
        self.positive_roots
            .iter()
            .map(|a| self.to_lstar(a).expect("roots lie in L*"))
            .collect()
    }

    pub fn rho_lstar(&self) -> Vec<BigRational> {
        self.to_lstar_rational(&self.rho()).expect("rho lies in X*")
    }

    /// `|Pi(G)|`: index of the root lattice in `L*`.
    pub fn pi_group_order(&self) -> u64 {
        let simple: Vec<Vec<i64>> = self
            .simple_roots
            .iter()
            .map(|a| self.to_lstar(a).expect("roots lie in L*"))
            .collect();
        HermiteBasis::from_generators(&simple, self.m)
            .expect("simple roots are independent")
            .index()
    }

    /// Weyl dimension formula.
    pub fn dim_weyl(&self, mu: &[i64]) -> Result<BigUint> {
        self.check_dominant(mu)?;
        let shifted: Vec<i64> = mu.iter().zip(&self.two_rho).map(|(a, r)| 2 * a + r).collect();
        let mut acc = BigRational::one();
        for alpha in &self.positive_roots {
            acc *= self.inner(&shifted, alpha) / self.inner(&self.two_rho, alpha);
        }
        debug_assert!(acc.is_integer());
        Ok(acc.to_integer().to_biguint().expect("dimension is positive"))
    }

    /// `prod_{alpha > 0} 2 sinh(<alpha, tau>/2)` for `tau` in coordinates dual to the weights.
    pub fn weyl_denominator(&self, tau: &[f64]) -> f64 {
        self.positive_roots
            .iter()
            .map(|a| {
                let p: f64 = a.iter().zip(tau).map(|(x, t)| *x as f64 * t).sum();
                2.0 * (p / 2.0).sinh()
            })
            .product()
    }

    /// Same product for `tau` given in coordinates dual to the `L*` basis.
    pub fn weyl_denominator_lstar(&self, tau: &[f64]) -> f64 {
        self.positive_roots_lstar()
            .iter()
            .map(|a| {
                let p: f64 = a.iter().zip(tau).map(|(x, t)| *x as f64 * t).sum();
                2.0 * (p / 2.0).sinh()
            })
            .product()
    }
}

/// Weights of the irreducible representation with highest weight `lambda` and their
/// multiplicities, sorted lexicographically.
pub fn weight_multiplicities(r: &RootSystemData, lambda: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
    r.check_dominant(lambda)?;
    let norm = |v: &[i64]| r.inner(v, v);
    let bound = norm(lambda);

    // all lambda - sum n_i alpha_i inside the ball |mu| <= |lambda|, with their depth
    let mut depth: HashMap<Vec<i64>, usize> = HashMap::new();
    depth.insert(lambda.to_vec(), 0);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        let d = depth[&mu];
        for a in &r.simple_roots {
            let next: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if norm(&next) <= bound && !depth.contains_key(&next) {
                depth.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    let mut dominant: Vec<(usize, Vec<i64>)> = depth
        .iter()
        .filter(|(mu, _)| r.is_dominant(mu))
        .map(|(mu, &d)| (d, mu.clone()))
        .collect();
    dominant.sort();

    let twice = |v: &[i64]| -> Vec<i64> { v.iter().zip(&r.two_rho).map(|(a, b)| 2 * a + b).collect() };
    let top = norm(&twice(lambda));
    let mut mult: HashMap<Vec<i64>, BigRational> = HashMap::new();
    for (d, mu) in &dominant {
        if *d == 0 {
            mult.insert(mu.clone(), BigRational::one());
            continue;
        }
        let mut sum = BigRational::zero();
        for alpha in &r.positive_roots {
            for k in 1.. {
                let nu: Vec<i64> = mu.iter().zip(alpha).map(|(x, a)| x + k * a).collect();
                let pair = r.inner(&nu, alpha);
                if norm(&nu) > bound && pair.is_positive() {
                    break;
                }
                if let Some(m) = mult.get(&r.dominant_representative(&nu)) {
                    sum += m * pair;
                }
            }
        }
        // |lambda+rho|^2 - |mu+rho|^2, scaled by 4 on both sides
        let gap = &top - norm(&twice(mu));
        let m = int(8) * sum / gap;
        assert!(m.is_integer() && !m.is_negative(), "Freudenthal produced {m}");
        if !m.is_zero() {
            mult.insert(mu.clone(), m);
        }
    }

    let mut entries: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (mu, m) in &mult {
        let m = m.to_integer().to_u64().expect("multiplicity fits in u64");
        for w in &r.weyl {
            entries.insert(w.apply(mu), m);
        }
    }
    Ok(entries.into_iter().collect())
}

/// The weight multiset of `V_lambda` together with its shifted step set `M_lambda - lambda`.
#[derive(Debug, Clone)]
pub struct WeightDiagram {
    pub root: RootSystemData,
    pub lambda: Vec<i64>,
    pub entries: Vec<(Vec<i64>, u64)>,
    pub dimension: u64,
    /// Steps `mu - lambda` in `L*` coordinates, weighted by multiplicity.
    pub step_set: WeightedStepSet,
    /// Center of mass of the weights, in weight coordinates.
    pub q_star: Vec<BigRational>,
}

/// Builds the weight diagram of `V_lambda`.
///
/// Fails with [`Error::WallWeight`] when the shifted weights do not span `X*`
/// (for example the trivial representation, or `l1 = l2` for U2).
pub fn freudenthal_diagram(r: &RootSystemData, lambda: &[i64]) -> Result<WeightDiagram> {
    let entries = weight_multiplicities(r, lambda)?;
    let dimension = entries.iter().map(|(_, m)| m).sum();
    let mut steps = Vec::with_capacity(entries.len());
    let mut weights = Vec::with_capacity(entries.len());
    for (mu, m) in &entries {
        let diff: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a - b).collect();
        steps.push(r.to_lstar(&diff).expect("weights differ by roots"));
        weights.push(*m as i64);
    }
    let step_set = match WeightedStepSet::with_integer_weights(r.m, steps, &weights) {
        Ok(s) => s,
        Err(e @ Error::SpanDeficient { .. }) => return Err(Error::WallWeight(lambda.to_vec(), Box::new(e))),
        Err(e) => return Err(e),
    };
    let com = r.from_lstar_rational(&step_set.center_of_mass_exact());
    let q_star = com.iter().zip(lambda).map(|(c, l)| c + int(*l)).collect();
    Ok(WeightDiagram {
        root: r.clone(),
        lambda: lambda.to_vec(),
        entries,
        dimension,
        step_set,
        q_star,
    })
}

impl WeightDiagram {
    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.entries
            .binary_search_by(|(w, _)| w.as_slice().cmp(mu))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// `L*` coordinates of `nu - N lambda`, or `None` when that is not in `X*`.
    pub fn shifted(&self, nu: &[i64], n: u64) -> Option<Vec<i64>> {
        if nu.len() != self.lambda.len() {
            return None;
        }
        let diff: Vec<i64> = nu.iter().zip(&self.lambda).map(|(a, l)| a - n as i64 * l).collect();
        self.root.to_lstar(&diff)
    }

    /// Inverse of [`WeightDiagram::shifted`].
    pub fn unshifted(&self, gamma: &[i64], n: u64) -> Vec<i64> {
        self.root
            .from_lstar(gamma)
            .iter()
            .zip(&self.lambda)
            .map(|(g, l)| g + n as i64 * l)
            .collect()
    }
}
