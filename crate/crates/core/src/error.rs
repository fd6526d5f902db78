use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("step differences do not span the ambient space (rank {rank} < {dim})")]
    SpanDeficient { rank: usize, dim: usize },
    #[error("weight of step {index} is not strictly positive")]
    NonPositiveWeight { index: usize },
    #[error("step {coords:?} appears more than once")]
    DuplicateStep { coords: Vec<i64> },
    #[error("{what}: expected {expected} entries, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate mismatch: {0}")]
    CoordinateMismatch(String),
    #[error("input contains a non-finite value")]
    NonFinite,
    #[error("point is not in the interior of the step polytope")]
    NotInterior,
    #[error("point lies on the boundary of the step polytope; the rate function is not resolved there")]
    BoundaryUnsupported,
    #[error("moment-map inversion did not converge after {iterations} iterations (residual {residual:e}, |tau| {tau_norm:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tau_norm: f64,
        best_tau: Vec<f64>,
    },
    #[error("table needs {required} cells, above the cap of {cap}")]
    MemoryCapExceeded { required: u128, cap: u128 },
    #[error("alpha {0:?} is not one of the steps")]
    NotInStepSet(Vec<i64>),
    #[error("offset {0:?} is not in the difference lattice")]
    FNotInDifferenceLattice(Vec<i64>),
    #[error("target fails the lattice congruence: the exact count is zero")]
    SupportViolation,
    #[error("unknown root system {0:?} (expected A1, A2 or U2)")]
    UnknownName(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("dominant weight {0:?} lies on a wall; its shifted weight set is degenerate: {1}")]
    WallWeight(Vec<i64>, Box<Error>),
    #[error("{0:?} is not a weight of the representation")]
    NotAWeight(Vec<i64>),
    #[error("estimator requires a semisimple group")]
    NotSemisimple,
    #[error("index j={j} outside 1..={max}")]
    JOutOfRange { j: u32, max: u32 },
    #[error("invalid input: {0}")]
    Invalid(String),
}
