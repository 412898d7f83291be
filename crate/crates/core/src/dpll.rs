//! A small complete solver used as a correctness oracle. Branches on the
//! lowest open variable of an unsatisfied clause after propagating.

use crate::error::OracleError;
use crate::model::{CnfFormula, Lit, PartialAssignment, TriValue};
use crate::propagation::Propagator;

/// Largest formula the oracle accepts.
pub const DPLL_VAR_LIMIT: u32 = 64;

/// Decides whether `φ ∧ I` has a model.
pub fn dpll_satisfiable(
    formula: &CnfFormula,
    assignment: &PartialAssignment,
) -> Result<bool, OracleError> {
    check_limit(formula)?;
    Ok(satisfiable(&Propagator::new(formula), assignment))
}

pub(crate) fn check_limit(formula: &CnfFormula) -> Result<(), OracleError> {
    if formula.variable_count() > DPLL_VAR_LIMIT {
        return Err(OracleError::TooLarge {
            vars: formula.variable_count(),
            limit: DPLL_VAR_LIMIT,
        });
    }
    Ok(())
}

/// Same as [`dpll_satisfiable`] over a prebuilt propagator; the caller is
/// responsible for the size cap.
pub(crate) fn satisfiable(propagator: &Propagator<'_>, assignment: &PartialAssignment) -> bool {
    let result = propagator.propagate(assignment);
    if result.is_conflict() {
        return false;
    }
    let current = result.assignment;
    let branch = propagator.formula().clauses().iter().find_map(|c| {
        let mut open = None;
        for &l in c.lits() {
            match current.lit_value(l) {
                TriValue::One => return None,
                TriValue::Unset => {
                    open = Some(open.map_or(l, |o: Lit| o.min(l)));
                }
                TriValue::Zero => {}
            }
        }
        open
    });
    let Some(lit) = branch else {
        return true;
    };
    [lit, !lit].into_iter().any(|l| {
        let mut next = current.clone();
        next.set(l.var(), TriValue::from_bool(l.is_positive()));
        satisfiable(propagator, &next)
    })
}
