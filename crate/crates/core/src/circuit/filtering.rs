//! Formula combinators over filtering-function outputs.

use std::collections::BTreeSet;

use crate::error::CircuitError;
use crate::model::{Clause, CnfFormula, Var};

fn widened(formula: &CnfFormula, var: Var) -> Result<CnfFormula, CircuitError> {
    let mut out = formula.clone();
    if var.index() > out.variable_count() {
        out.set_variable_count(var.index())?;
    }
    Ok(out)
}

/// Adds `(s ∨ ¬t) ∧ (¬s ∨ t)`, so that `t` carries the complement of the
/// filtering function computed at `s` (with `0` and `1` swapped).
///
/// Here `t` is the literal `¬s` renamed: unit propagation fixes `t` exactly
/// when it fixes `s`, to the same truth value.
pub fn negate_filtering_output(
    formula: &CnfFormula,
    s: Var,
    t: Var,
) -> Result<CnfFormula, CircuitError> {
    if s.index() > formula.variable_count() {
        return Err(CircuitError::MissingOutput(s));
    }
    if t == s || formula.mentions(t) {
        return Err(CircuitError::NotFresh(t));
    }
    let mut out = widened(formula, t)?;
    out.push(Clause::new([s.positive(), t.negative()])?)?;
    out.push(Clause::new([s.negative(), t.positive()])?)?;
    Ok(out)
}

/// `φ0 ∧ φ1 ∧ (s0 ∨ ¬s) ∧ (¬s1 ∨ s)`: `s` is `0` whenever the first half
/// fixes `s0 = 0` and `1` whenever the second half fixes `s1 = 1`.
///
/// The halves may share only the listed input variables.
pub fn combine_filtering(
    phi0: &CnfFormula,
    s0: Var,
    phi1: &CnfFormula,
    s1: Var,
    s: Var,
    inputs: &[Var],
) -> Result<CnfFormula, CircuitError> {
    let inputs: BTreeSet<Var> = inputs.iter().copied().collect();
    let left: BTreeSet<Var> = phi0.mentioned_variables().into_iter().chain([s0]).collect();
    let right: BTreeSet<Var> = phi1.mentioned_variables().into_iter().chain([s1]).collect();
    if let Some(&v) = left.intersection(&right).find(|v| !inputs.contains(v)) {
        return Err(CircuitError::SharedVariable(v));
    }
    if left.contains(&s) || right.contains(&s) || inputs.contains(&s) {
        return Err(CircuitError::NotFresh(s));
    }
    let count = phi0
        .variable_count()
        .max(phi1.variable_count())
        .max(s0.index())
        .max(s1.index())
        .max(s.index());
    let mut out = CnfFormula::new(count);
    for c in phi0.clauses().iter().chain(phi1.clauses()) {
        out.push(c.clone())?;
    }
    out.push(Clause::new([s0.positive(), s.negative()])?)?;
    out.push(Clause::new([s1.negative(), s.positive()])?)?;
    Ok(out)
}
