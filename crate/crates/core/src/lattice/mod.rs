//! Weighted step sets and the integer geometry around them.
//!
//! Steps live in `Z^m`, written in a fixed primitive basis of the ambient
//! lattice. Everything in this module is exact: lattice data comes from a
//! Hermite normal form and polytope membership from an exact rational LP.

pub mod hnf;
pub mod lp;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{int, ln_rational};
pub use hnf::HermiteBasis;
use lp::LpOutcome;

/// A finite set of lattice steps with strictly positive rational weights.
///
/// Construction checks that the step differences span `Q^m` and precomputes the
/// lattice they generate together with its index in `Z^m`.
#[derive(Debug, Clone)]
pub struct WeightedStepSet {
    dim: usize,
    steps: Vec<Vec<i64>>,
    weights: Vec<BigRational>,
    log_weights: Vec<f64>,
    basis_diff: HermiteBasis,
    pi_order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
            Location::Outside => "outside",
        })
    }
}

/// A point of `Q^m` together with its position relative to `conv(S)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopePoint {
    pub coords: Vec<BigRational>,
    pub location: Location,
}

impl WeightedStepSet {
    pub fn new(dim: usize, steps: Vec<Vec<i64>>, weights: Vec<BigRational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        if steps.len() != weights.len() {
            return Err(Error::LengthMismatch {
                what: "weights",
                expected: steps.len(),
                got: weights.len(),
            });
        }
        let mut seen = HashSet::new();
        for s in &steps {
            if s.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: s.len(),
                });
            }
            if !seen.insert(s.clone()) {
                return Err(Error::DuplicateStep { coords: s.clone() });
            }
        }
        if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight { index });
        }
        let diffs: Vec<Vec<i64>> = steps
            .iter()
            .skip(1)
            .map(|s| s.iter().zip(&steps[0]).map(|(a, b)| a - b).collect())
            .collect();
        let basis_diff = match HermiteBasis::from_generators(&diffs, dim) {
            Some(b) => b,
            None => {
                return Err(Error::SpanDeficient {
                    rank: hnf::reduce(&diffs, dim).rank,
                    dim,
                })
            }
        };
        let pi_order = basis_diff.index();
        let log_weights = weights.iter().map(|w| ln_rational(w).unwrap()).collect();
        Ok(WeightedStepSet {
            dim,
            steps,
            weights,
            log_weights,
            basis_diff,
            pi_order,
        })
    }

    /// Convenience constructor for integer weights.
    pub fn with_integer_weights(dim: usize, steps: Vec<Vec<i64>>, weights: &[i64]) -> Result<Self> {
        Self::new(dim, steps, weights.iter().map(|&w| int(w)).collect())
    }

    /// One-dimensional step set from scalar steps.
    pub fn one_dim(steps: &[i64], weights: &[i64]) -> Result<Self> {
        Self::with_integer_weights(1, steps.iter().map(|&s| vec![s]).collect(), weights)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Vec<i64>] {
        &self.steps
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn has_integral_weights(&self) -> bool {
        self.weights.iter().all(|w| w.is_integer())
    }

    /// `V(S)`, the total weight.
    pub fn total_weight(&self) -> BigRational {
        self.weights.iter().sum()
    }

    pub fn step_index(&self, step: &[i64]) -> Option<usize> {
        self.steps.iter().position(|s| s.as_slice() == step)
    }

    /// Hermite basis of the lattice spanned by step differences.
    pub fn difference_lattice(&self) -> &HermiteBasis {
        &self.basis_diff
    }

    /// Order of the finite quotient group: the index of the difference lattice.
    pub fn pi_order(&self) -> u64 {
        self.pi_order
    }

    /// Exact center of mass `sum c(b) b / V(S)`.
    pub fn center_of_mass_exact(&self) -> Vec<BigRational> {
        let total = self.total_weight();
        (0..self.dim)
            .map(|k| {
                let s: BigRational = self.steps.iter().zip(&self.weights).map(|(b, w)| w * int(b[k])).sum();
                s / &total
            })
            .collect()
    }

    /// Congruence condition for a length-`n` path to end at `gamma`:
    /// `gamma - n * beta0` must lie in the difference lattice.
    pub fn support_test(&self, n: u64, gamma: &[i64]) -> bool {
        self.support_test_from(0, n, gamma)
    }

    /// Same test anchored at step `anchor`; the answer does not depend on it.
    pub fn support_test_from(&self, anchor: usize, n: u64, gamma: &[i64]) -> bool {
        if gamma.len() != self.dim {
            return false;
        }
        let n = n as i64;
        let shifted: Vec<i64> = gamma.iter().zip(&self.steps[anchor]).map(|(g, b)| g - n * b).collect();
        self.basis_diff.contains(&shifted)
    }

    /// Exact classification of `x` against `P = conv(S)`.
    ///
    /// Solves `max eps` subject to `x = sum t_b b`, `sum t_b = 1`, `t_b >= eps`.
    /// Infeasible means outside; `eps* > 0` means some representation uses every
    /// step with positive weight, which for a full-dimensional hull is interiority.
    pub fn classify_point(&self, x: &[BigRational]) -> Result<PolytopePoint> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let k = self.steps.len();
        // variables: s_0..s_{k-1}, eps   with t_b = s_b + eps
        let mut a = Vec::with_capacity(self.dim + 1);
        for coord in 0..self.dim {
            let mut row: Vec<BigRational> = self.steps.iter().map(|b| int(b[coord])).collect();
            row.push(int(self.steps.iter().map(|b| b[coord]).sum()));
            a.push(row);
        }
        let mut ones = vec![BigRational::one(); k];
        ones.push(int(k as i64));
        a.push(ones);
        let mut b: Vec<BigRational> = x.to_vec();
        b.push(BigRational::one());
        let mut c = vec![BigRational::zero(); k];
        c.push(BigRational::one());
        let location = match lp::maximize(&a, &b, &c) {
            LpOutcome::Infeasible => Location::Outside,
            LpOutcome::Optimal { value, .. } if value.is_positive() => Location::Interior,
            LpOutcome::Optimal { .. } => Location::Boundary,
            LpOutcome::Unbounded => unreachable!("eps is bounded by 1/|S|"),
        };
        Ok(PolytopePoint {
            coords: x.to_vec(),
            location,
        })
    }

    pub fn classify_f64(&self, x: &[f64]) -> Result<PolytopePoint> {
        let exact = x
            .iter()
            .map(|&v| BigRational::from_float(v).ok_or(Error::NonFinite))
            .collect::<Result<Vec<_>>>()?;
        self.classify_point(&exact)
    }

    pub fn classify_lattice_point(&self, x: &[i64]) -> Result<PolytopePoint> {
        self.classify_point(&x.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    /// Parses the JSON step-set format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StepSetFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("step-set JSON: {e}")))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&StepSetFile::from(self)).expect("serializable")
    }
}

/// On-disk step-set schema.
///
/// ```json
/// { "dim": 1, "steps": [ { "coords": [0], "weight": 1 }, { "coords": [1], "weight": "2/3" } ] }
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepSetFile {
    pub dim: usize,
    pub steps: Vec<StepEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepEntry {
    pub coords: Vec<i64>,
    pub weight: WeightRepr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightRepr {
    Integer(i64),
    Text(String),
}

impl WeightRepr {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            WeightRepr::Integer(n) => Ok(int(*n)),
            WeightRepr::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"p/q"` or `"n"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parsed = if t.contains('/') {
        BigRational::from_str(t).ok()
    } else {
        BigInt::from_str(t).ok().map(BigRational::from_integer)
    };
    parsed.ok_or_else(|| Error::Invalid(format!("cannot parse rational {s:?}")))
}

impl TryFrom<StepSetFile> for WeightedStepSet {
    type Error = Error;

    fn try_from(file: StepSetFile) -> Result<Self> {
        let weights = file
            .steps
            .iter()
            .map(|e| e.weight.to_rational())
            .collect::<Result<Vec<_>>>()?;
        let steps = file.steps.into_iter().map(|e| e.coords).collect();
        WeightedStepSet::new(file.dim, steps, weights)
    }
}

impl From<&WeightedStepSet> for StepSetFile {
    fn from(s: &WeightedStepSet) -> Self {
        StepSetFile {
            dim: s.dim,
            steps: s
                .steps
                .iter()
                .zip(&s.weights)
                .map(|(c, w)| StepEntry {
                    coords: c.clone(),
                    weight: match (w.is_integer(), i64::try_from(w.to_integer())) {
                        (true, Ok(n)) => WeightRepr::Integer(n),
                        _ => WeightRepr::Text(w.to_string()),
                    },
                })
                .collect(),
        }
    }
}
