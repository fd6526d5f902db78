//! Weighted lattice paths, tensor-power multiplicities, and their asymptotics.
//!
//! The crate counts lattice paths with weighted steps exactly (big integers or
//! big rationals), computes weight and irreducible multiplicities in tensor
//! powers of representations of SU(2), SU(3) and U(2), and evaluates the
//! steepest-descent asymptotic formulas for all of these in log space.
//!
//! Coordinates: every step set lives in `Z^m` with respect to a primitive basis
//! of the ambient lattice. For the named groups the weight lattice inside the
//! root subspace provides that basis; see [`roots`].

pub mod asymptotics;
pub mod dual;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod numeric;
pub mod roots;

pub use asymptotics::{
    classify_regime, estimate_central_limit, estimate_irreducible_cl, estimate_irreducible_sd,
    estimate_moderate_deviation, estimate_strong_deviation, estimate_strong_deviation_auto,
    estimate_weight_multiplicity, AsymptoticEstimate, Estimator, Regime, RegimeDecision, RegimeThresholds,
};
pub use dual::{
    center_of_mass, eval_character, invert_moment_map, rate_function, CharacterEvaluation, DualPoint, SolverOptions,
};
pub use error::{Error, Result};
pub use exact::{
    count_paths, count_paths_with, irreducible_multiplicity, weight_multiplicity, CoefficientTable, CountOptions,
    CountStrategy, TensorPowerTable,
};
pub use lattice::{Location, PolytopePoint, WeightedStepSet};
pub use roots::u2::{u2_fixture, U2Golden};
pub use roots::{build_root_system, freudenthal_diagram, GroupName, RootSystemData, WeightDiagram, WeylElement};
