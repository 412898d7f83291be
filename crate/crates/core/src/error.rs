use thiserror::Error;

use crate::model::{Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("variable indices start at 1")]
    ZeroVariable,
    #[error("clause contains both polarities of {0}")]
    Tautology(Var),
    #[error("{var} exceeds the formula's variable count {count}")]
    VariableOutOfRange { var: Var, count: u32 },
    #[error("assignment already holds the complement of {0}")]
    Inconsistent(Var),
    #[error("input variable {0} appears more than once")]
    RepeatedInput(Var),
    #[error("bound {k} exceeds the number of inputs {n}")]
    BoundExceedsArity { k: usize, n: usize },
    #[error("matching table arity {0} is too large to enumerate (max 8)")]
    ArityTooLarge(usize),
    #[error("matching table needs {expected} rows, got {got}")]
    TableSize { expected: usize, got: usize },
    #[error("filtering threshold must be at least 1")]
    ZeroThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("formula has {vars} variables; the exhaustive oracle is capped at {limit}")]
    TooLarge { vars: u32, limit: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("cardinality constraint needs at least one input")]
    NoInputs,
    #[error("encoding would emit {estimated} clauses, above the guard of {limit}")]
    SizeGuard { estimated: u128, limit: u128 },
    #[error("unknown encoder `{name}`; expected one of: {valid}")]
    UnknownEncoder { name: String, valid: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("formula is unsatisfiable; circuit extraction is undefined")]
    Unsatisfiable,
    #[error("terminal {0} is not bound")]
    UnboundTerminal(String),
    #[error("variable {0} is not fresh")]
    NotFresh(Var),
    #[error("variable {0} is outside the formula")]
    MissingOutput(Var),
    #[error("{0} is shared between the two halves but is not an input")]
    SharedVariable(Var),
    #[error("no circuit output for {0}")]
    NoSuchOutput(Lit),
    #[error("malformed gate list at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("n = {n} exceeds the exhaustive-check cap of {limit}")]
    ScaleCap { n: usize, limit: usize },
    #[error("target {0} is not an input variable")]
    NotAnInput(Var),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}
