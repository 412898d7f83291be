//! A compiler and verification laboratory for CNF encodings of Boolean
//! cardinality constraints `≤k(x1,…,xn)`.
//!
//! * [`encoders`] compiles a constraint with one of seven encodings.
//! * [`propagation`] runs unit propagation, plain or with default values.
//! * [`verifier`] decides correctness, arc-consistency propagation (pac) and
//!   inconsistency detection (pic) by exhaustive enumeration.
//! * [`circuit`] simulates propagation with dual-rail monotone circuits and
//!   extracts such circuits from a formula.
//! * [`matching`] holds the three-valued function tables and the
//!   monotonicity test for propagatable functions.
//!
//! Exhaustive sweeps run on rayon when the `parallel` feature (on by
//! default) is enabled; see [`par::SweepMode`].

pub mod circuit;
pub mod dimacs;
pub mod dpll;
pub mod encoders;
pub mod error;
pub mod matching;
pub mod model;
pub mod par;
pub mod propagation;
pub mod verifier;

pub use dpll::dpll_satisfiable;
pub use encoders::{EncoderKind, EncodingResult, VarAllocator};
pub use error::{CircuitError, DimacsError, EncodeError, ModelError, OracleError, VerifyError};
pub use matching::{filtering_value, is_monotone_matching, MatchingTable};
pub use model::{
    arc_consistency, at_least_to_at_most, eval_constraint, CardinalityConstraint, Clause,
    CnfFormula, ConstraintStatus, FilterOutcome, Lit, PartialAssignment, TriValue, Var,
};
pub use par::SweepMode;
pub use propagation::{
    informed_unit_propagate, unit_propagate, DefaultValues, Outcome, PropagationResult, Propagator,
};
