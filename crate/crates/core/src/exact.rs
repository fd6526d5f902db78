//! Exact coefficients of `k(w)^N`: weighted path counts, weight multiplicities in
//! tensor powers, and irreducible multiplicities by the Weyl alternating sum.
//!
//! Rational weights are scaled to integers by their common denominator `D`, so a
//! table always stores big integers together with the single denominator `D^N`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::WeightedStepSet;
use crate::numeric::ln_biguint;
use crate::roots::WeightDiagram;

pub const DEFAULT_MEM_CAP: u128 = 1 << 28;

/// Work below this many multiply-adds is done on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountStrategy {
    /// `O(log N)` convolutions by repeated squaring.
    BinaryPowering,
    /// `N - 1` convolutions with the single-step table.
    Sequential,
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    /// Maximum number of cells in the final table.
    pub mem_cap: u128,
    pub parallel: bool,
    pub strategy: CountStrategy,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            mem_cap: DEFAULT_MEM_CAP,
            parallel: true,
            strategy: CountStrategy::BinaryPowering,
        }
    }
}

/// Dense array over a box `lo .. lo + shape`, last coordinate fastest.
#[derive(Debug, Clone)]
struct Grid {
    lo: Vec<i64>,
    shape: Vec<usize>,
    values: Vec<BigUint>,
}

impl Grid {
    fn flat(&self, point: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for ((p, lo), len) in point.iter().zip(&self.lo).zip(&self.shape) {
            let off = p - lo;
            if off < 0 || off as usize >= *len {
                return None;
            }
            idx = idx * len + off as usize;
        }
        Some(idx)
    }

    fn unflat(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        for k in (0..self.shape.len()).rev() {
            out[k] = idx % self.shape[k];
            idx /= self.shape[k];
        }
        out
    }

    fn point(&self, idx: usize) -> Vec<i64> {
        self.unflat(idx)
            .iter()
            .zip(&self.lo)
            .map(|(&o, lo)| lo + o as i64)
            .collect()
    }
}

fn convolve(a: &Grid, b: &Grid, parallel: bool) -> Grid {
    let (a, b) = {
        let na = a.values.iter().filter(|v| !v.is_zero()).count();
        let nb = b.values.iter().filter(|v| !v.is_zero()).count();
        if na <= nb {
            (a, b)
        } else {
            (b, a)
        }
    };
    let nz: Vec<(Vec<usize>, &BigUint)> = a
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (a.unflat(i), v))
        .collect();
    let shape: Vec<usize> = a.shape.iter().zip(&b.shape).map(|(x, y)| x + y - 1).collect();
    let lo: Vec<i64> = a.lo.iter().zip(&b.lo).map(|(x, y)| x + y).collect();
    let cells: usize = shape.iter().product();
    let dim = shape.len();

    let cell = |o: usize| -> BigUint {
        let mut idx = vec![0usize; dim];
        let mut rest = o;
        for k in (0..dim).rev() {
            idx[k] = rest % shape[k];
            rest /= shape[k];
        }
        let mut acc = BigUint::zero();
        'outer: for (ai, av) in &nz {
            let mut flat = 0usize;
            for k in 0..dim {
                if idx[k] < ai[k] || idx[k] - ai[k] >= b.shape[k] {
                    continue 'outer;
                }
                flat = flat * b.shape[k] + (idx[k] - ai[k]);
            }
            let bv = &b.values[flat];
            if !bv.is_zero() {
                acc += *av * bv;
            }
        }
        acc
    };
    let values = if parallel && cells.saturating_mul(nz.len()) >= PARALLEL_THRESHOLD {
        (0..cells).into_par_iter().map(cell).collect()
    } else {
        (0..cells).map(cell).collect()
    };
    Grid { lo, shape, values }
}

/// Coefficients `P_N^c(gamma)` of `k(w)^N`, indexed by lattice points in the
/// bounding box of `N conv(S)`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    n: u64,
    grid: Grid,
    denom: BigUint,
}

impl CoefficientTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.grid.lo.len()
    }

    /// Lower corner of the bounding box.
    pub fn offsets(&self) -> &[i64] {
        &self.grid.lo
    }

    pub fn upper(&self) -> Vec<i64> {
        self.grid
            .lo
            .iter()
            .zip(&self.grid.shape)
            .map(|(lo, len)| lo + *len as i64 - 1)
            .collect()
    }

    pub fn shape(&self) -> &[usize] {
        &self.grid.shape
    }

    pub fn cells(&self) -> usize {
        self.grid.values.len()
    }

    /// Common denominator `D^N` of all entries.
    pub fn denominator(&self) -> &BigUint {
        &self.denom
    }

    /// Numerator of the entry at `gamma` (zero outside the box).
    pub fn scaled(&self, gamma: &[i64]) -> BigUint {
        if gamma.len() != self.dim() {
            return BigUint::zero();
        }
        self.grid
            .flat(gamma)
            .map(|i| self.grid.values[i].clone())
            .unwrap_or_default()
    }

    pub fn value(&self, gamma: &[i64]) -> BigRational {
        BigRational::new(BigInt::from(self.scaled(gamma)), BigInt::from(self.denom.clone()))
    }

    /// The entry as an integer, when it is one.
    pub fn integer_value(&self, gamma: &[i64]) -> Option<BigUint> {
        let num = self.scaled(gamma);
        if self.denom.is_one() {
            return Some(num);
        }
        let (q, r) = num.div_rem(&self.denom);
        r.is_zero().then_some(q)
    }

    /// Natural log of the entry; `-inf` when it is zero.
    pub fn log_value(&self, gamma: &[i64]) -> f64 {
        let num = self.scaled(gamma);
        if num.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_biguint(&num) - ln_biguint(&self.denom)
    }

    /// `sum_gamma P_N^c(gamma)`, which equals `V(S)^N`.
    pub fn total(&self) -> BigRational {
        let sum: BigUint = self.grid.values.iter().sum();
        BigRational::new(BigInt::from(sum), BigInt::from(self.denom.clone()))
    }

    /// Nonzero entries `(gamma, numerator)` in lexicographic order of `gamma`.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<i64>, &BigUint)> + '_ {
        self.grid
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (self.grid.point(i), v))
    }
}

/// Number of cells in the table for `N` steps.
pub fn table_cells(s: &WeightedStepSet, n: u64) -> u128 {
    (0..s.dim())
        .map(|k| {
            let lo = s.steps().iter().map(|b| b[k]).min().unwrap();
            let hi = s.steps().iter().map(|b| b[k]).max().unwrap();
            n as u128 * (hi - lo) as u128 + 1
        })
        .product()
}

pub fn count_paths(s: &WeightedStepSet, n: u64) -> Result<CoefficientTable> {
    count_paths_with(s, n, CountOptions::default())
}

pub fn count_paths_with(s: &WeightedStepSet, n: u64, opts: CountOptions) -> Result<CoefficientTable> {
    if n == 0 {
        return Err(Error::Invalid("number of steps must be positive".into()));
    }
    let required = table_cells(s, n);
    if required > opts.mem_cap {
        return Err(Error::MemoryCapExceeded {
            required,
            cap: opts.mem_cap,
        });
    }

    let d = s.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<BigUint> = s
        .weights()
        .iter()
        .map(|w| {
            let v = w * BigRational::from_integer(d.clone());
            debug_assert!(v.is_integer() && v.is_positive());
            v.to_integer().to_biguint().unwrap()
        })
        .collect();
    let dim = s.dim();
    let lo: Vec<i64> = (0..dim)
        .map(|k| s.steps().iter().map(|b| b[k]).min().unwrap())
        .collect();
    let shape: Vec<usize> = (0..dim)
        .map(|k| (s.steps().iter().map(|b| b[k]).max().unwrap() - lo[k] + 1) as usize)
        .collect();
    let mut base = Grid {
        lo,
        shape: shape.clone(),
        values: vec![BigUint::zero(); shape.iter().product()],
    };
    for (b, w) in s.steps().iter().zip(scaled) {
        let i = base.flat(b).unwrap();
        base.values[i] = w;
    }

    let grid = match opts.strategy {
        CountStrategy::Sequential => {
            let mut acc = base.clone();
            for _ in 1..n {
                acc = convolve(&acc, &base, opts.parallel);
            }
            acc
        }
        CountStrategy::BinaryPowering => {
            let mut acc: Option<Grid> = None;
            let mut e = n;
            loop {
                if e & 1 == 1 {
                    acc = Some(match acc {
                        None => base.clone(),
                        Some(a) => convolve(&a, &base, opts.parallel),
                    });
                }
                e >>= 1;
                if e == 0 {
                    break;
                }
                base = convolve(&base, &base, opts.parallel);
            }
            acc.unwrap()
        }
    };
    let denom = d.to_biguint().unwrap().pow(n.to_u32().expect("N fits in u32"));
    Ok(CoefficientTable { n, grid, denom })
}

/// Exact multiplicities in `V_lambda^{tensor N}`.
#[derive(Debug, Clone)]
pub struct TensorPowerTable {
    diagram: WeightDiagram,
    table: CoefficientTable,
}

impl TensorPowerTable {
    pub fn new(d: &WeightDiagram, n: u64) -> Result<Self> {
        Self::with_options(d, n, CountOptions::default())
    }

    pub fn with_options(d: &WeightDiagram, n: u64, opts: CountOptions) -> Result<Self> {
        Ok(TensorPowerTable {
            diagram: d.clone(),
            table: count_paths_with(&d.step_set, n, opts)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.table.n
    }

    pub fn diagram(&self) -> &WeightDiagram {
        &self.diagram
    }

    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }

    /// `m_N(lambda; nu) = P_N(nu - N lambda)`; zero when `nu` is not of the form
    /// `N lambda + X*`.
    pub fn weight_multiplicity(&self, nu: &[i64]) -> Result<BigUint> {
        self.diagram.root.check_weight(nu)?;
        Ok(match self.diagram.shifted(nu, self.n()) {
            Some(gamma) => self.table.integer_value(&gamma).expect("integral weights"),
            None => BigUint::zero(),
        })
    }

    /// `a_N(lambda; mu) = sum_w sgn(w) m_N(lambda; mu + rho - w rho)`.
    pub fn irreducible_multiplicity(&self, mu: &[i64]) -> Result<BigUint> {
        let r = &self.diagram.root;
        r.check_weight(mu)?;
        if !r.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_vec()));
        }
        let mut acc = BigInt::zero();
        for w in &r.weyl {
            let target: Vec<i64> = mu.iter().zip(r.rho_shift(w)).map(|(a, b)| a + b).collect();
            let m = BigInt::from(self.weight_multiplicity(&target)?);
            if w.sign > 0 {
                acc += m;
            } else {
                acc -= m;
            }
        }
        assert!(!acc.is_negative(), "alternating sum is negative at {mu:?}");
        Ok(acc.to_biguint().unwrap())
    }

    /// Weights of `V_lambda^{tensor N}` with nonzero multiplicity, lexicographic.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .table
            .nonzero()
            .map(|(g, _)| self.diagram.unshifted(&g, self.n()))
            .collect();
        out.sort();
        out
    }

    pub fn dominant_weights(&self) -> Vec<Vec<i64>> {
        self.weights()
            .into_iter()
            .filter(|w| self.diagram.root.is_dominant(w))
            .collect()
    }
}

pub fn weight_multiplicity(d: &WeightDiagram, n: u64, nu: &[i64]) -> Result<BigUint> {
    TensorPowerTable::new(d, n)?.weight_multiplicity(nu)
}

pub fn irreducible_multiplicity(d: &WeightDiagram, n: u64, mu: &[i64]) -> Result<BigUint> {
    TensorPowerTable::new(d, n)?.irreducible_multiplicity(mu)
}
