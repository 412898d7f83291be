//! Unit propagation to fixpoint, and the informed variant in which some
//! unassigned variables carry revisable default values.

use std::collections::BTreeMap;

use crate::model::{CardinalityConstraint, CnfFormula, Lit, PartialAssignment, TriValue, Var};

/// Why a literal is on the trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// Part of the queried assignment.
    Given,
    /// A default value, revisable by propagation.
    Default,
    /// A default that propagation overturned in an earlier round.
    Flipped,
    /// Implied by the clause at this index of the formula.
    Clause(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub lit: Lit,
    pub reason: Reason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Fixpoint,
    /// The clause at this index became empty.
    Conflict(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagationResult {
    pub outcome: Outcome,
    pub assignment: PartialAssignment,
    pub trail: Vec<TrailEntry>,
    /// Defaults overturned by the informed variant, in flip order.
    pub flips: Vec<Lit>,
}

impl PropagationResult {
    pub fn is_conflict(&self) -> bool {
        matches!(self.outcome, Outcome::Conflict(_))
    }

    /// Literals derived by propagation (not given, not defaulted).
    pub fn implied(&self) -> impl Iterator<Item = Lit> + '_ {
        self.trail
            .iter()
            .filter(|e| matches!(e.reason, Reason::Clause(_)))
            .map(|e| e.lit)
    }

    /// Replays the trail from scratch; used to check results are
    /// self-describing.
    pub fn replay(&self) -> PartialAssignment {
        let mut a = PartialAssignment::new(self.assignment.variable_count());
        for e in &self.trail {
            a.set(e.lit.var(), TriValue::from_bool(e.lit.is_positive()));
        }
        a
    }
}

/// Default values for informed propagation, keyed by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefaultValues(BTreeMap<Var, bool>);

impl DefaultValues {
    pub fn new() -> DefaultValues {
        DefaultValues::default()
    }

    pub fn insert(&mut self, var: Var, value: bool) -> &mut Self {
        self.0.insert(var, value);
        self
    }

    /// Every input of `q` unassigned in `a` defaults to the value that makes
    /// its literal false (`0` for positive inputs).
    pub fn literals_false(q: &CardinalityConstraint, a: &PartialAssignment) -> DefaultValues {
        DefaultValues(
            q.inputs()
                .iter()
                .filter(|l| a.get(l.var()) == TriValue::Unset)
                .map(|l| (l.var(), !l.is_positive()))
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(&v, &b)| (v, b))
    }
}

impl FromIterator<(Var, bool)> for DefaultValues {
    fn from_iter<T: IntoIterator<Item = (Var, bool)>>(iter: T) -> Self {
        DefaultValues(iter.into_iter().collect())
    }
}

/// Occurrence lists over an immutable formula; cheap to share between
/// threads, each run allocates its own scratch state.
#[derive(Debug, Clone)]
pub struct Propagator<'f> {
    formula: &'f CnfFormula,
    /// Clauses containing each literal, indexed by literal code.
    occurs: Vec<Vec<u32>>,
    units: Vec<usize>,
    empty: Option<usize>,
}

enum Stop {
    Fixpoint,
    Conflict(usize),
    Flip(Var),
}

struct Run {
    values: Vec<TriValue>,
    soft: Vec<bool>,
    position: Vec<u32>,
    false_seen: Vec<u32>,
    trail: Vec<TrailEntry>,
}

impl Run {
    fn value(&self, lit: Lit) -> TriValue {
        match self.values[lit.var().index() as usize] {
            TriValue::Unset => TriValue::Unset,
            v => TriValue::from_bool(v == TriValue::from_bool(lit.is_positive())),
        }
    }

    fn assign(&mut self, lit: Lit, reason: Reason) {
        let i = lit.var().index() as usize;
        self.values[i] = TriValue::from_bool(lit.is_positive());
        self.soft[i] = reason == Reason::Default;
        self.position[i] = self.trail.len() as u32;
        self.trail.push(TrailEntry { lit, reason });
    }
}

impl<'f> Propagator<'f> {
    pub fn new(formula: &'f CnfFormula) -> Propagator<'f> {
        let slots = 2 * (formula.variable_count() as usize + 1);
        let mut occurs = vec![Vec::new(); slots];
        let mut units = Vec::new();
        let mut empty = None;
        for (ci, clause) in formula.clauses().iter().enumerate() {
            match clause.len() {
                0 => {
                    empty.get_or_insert(ci);
                }
                1 => units.push(ci),
                _ => {}
            }
            for &l in clause.lits() {
                occurs[l.code()].push(ci as u32);
            }
        }
        Propagator {
            formula,
            occurs,
            units,
            empty,
        }
    }

    pub fn formula(&self) -> &'f CnfFormula {
        self.formula
    }

    /// Plain unit propagation of `formula ∧ assignment`.
    pub fn propagate(&self, assignment: &PartialAssignment) -> PropagationResult {
        self.propagate_informed(assignment, &DefaultValues::default())
    }

    /// Informed propagation: defaulted variables behave as assigned, except
    /// that propagation may overturn them. An overturned default becomes a
    /// firm value and propagation restarts without the stale consequences.
    ///
    /// When a falsified clause holds several defaulted literals, the one
    /// placed earliest on the trail is overturned.
    pub fn propagate_informed(
        &self,
        assignment: &PartialAssignment,
        defaults: &DefaultValues,
    ) -> PropagationResult {
        let mut flips: Vec<Lit> = Vec::new();
        loop {
            let (stop, run) = self.run(assignment, defaults, &flips);
            let outcome = match stop {
                Stop::Fixpoint => Outcome::Fixpoint,
                Stop::Conflict(c) => Outcome::Conflict(c),
                Stop::Flip(var) => {
                    let current = run.values[var.index() as usize] == TriValue::One;
                    flips.push(Lit::new(var, !current));
                    continue;
                }
            };
            let mut final_assignment = PartialAssignment::new(self.variable_count());
            for e in &run.trail {
                final_assignment.set(e.lit.var(), TriValue::from_bool(e.lit.is_positive()));
            }
            return PropagationResult {
                outcome,
                assignment: final_assignment,
                trail: run.trail,
                flips,
            };
        }
    }

    fn variable_count(&self) -> u32 {
        self.formula.variable_count()
    }

    fn run(
        &self,
        assignment: &PartialAssignment,
        defaults: &DefaultValues,
        flips: &[Lit],
    ) -> (Stop, Run) {
        let slots = self.variable_count() as usize + 1;
        let mut run = Run {
            values: vec![TriValue::Unset; slots],
            soft: vec![false; slots],
            position: vec![u32::MAX; slots],
            false_seen: vec![0; self.formula.len()],
            trail: Vec::new(),
        };
        if let Some(c) = self.empty {
            return (Stop::Conflict(c), run);
        }
        for lit in assignment.lits() {
            if (lit.var().index() as usize) < slots {
                run.assign(lit, Reason::Given);
            }
        }
        for &lit in flips {
            run.assign(lit, Reason::Flipped);
        }
        for (var, value) in defaults.iter() {
            let i = var.index() as usize;
            if i < slots && run.values[i] == TriValue::Unset {
                run.assign(Lit::new(var, value), Reason::Default);
            }
        }
        for &ci in &self.units {
            let lit = self.formula.clauses()[ci].lits()[0];
            if let Some(stop) = self.imply(&mut run, lit, ci) {
                return (stop, run);
            }
        }

        let mut head = 0;
        while head < run.trail.len() {
            let falsified = !run.trail[head].lit;
            head += 1;
            for &ci in &self.occurs[falsified.code()] {
                let ci = ci as usize;
                run.false_seen[ci] += 1;
                let clause = &self.formula.clauses()[ci];
                if (run.false_seen[ci] as usize) + 1 < clause.len() {
                    continue;
                }
                if let Some(stop) = self.examine(&mut run, ci) {
                    return (stop, run);
                }
            }
        }
        (Stop::Fixpoint, run)
    }

    fn imply(&self, run: &mut Run, lit: Lit, ci: usize) -> Option<Stop> {
        match run.value(lit) {
            TriValue::One => None,
            TriValue::Unset => {
                run.assign(lit, Reason::Clause(ci));
                None
            }
            TriValue::Zero if run.soft[lit.var().index() as usize] => Some(Stop::Flip(lit.var())),
            TriValue::Zero => Some(Stop::Conflict(ci)),
        }
    }

    fn examine(&self, run: &mut Run, ci: usize) -> Option<Stop> {
        let clause = &self.formula.clauses()[ci];
        let mut open = None;
        let mut open_count = 0;
        for &l in clause.lits() {
            match run.value(l) {
                TriValue::One => return None,
                TriValue::Unset => {
                    open_count += 1;
                    open = Some(l);
                }
                TriValue::Zero => {}
            }
        }
        match open_count {
            1 => {
                run.assign(open.expect("one open literal"), Reason::Clause(ci));
                None
            }
            0 => {
                let earliest_soft = clause
                    .lits()
                    .iter()
                    .map(|l| l.var())
                    .filter(|v| run.soft[v.index() as usize])
                    .min_by_key(|v| run.position[v.index() as usize]);
                Some(match earliest_soft {
                    Some(v) => Stop::Flip(v),
                    None => Stop::Conflict(ci),
                })
            }
            _ => None,
        }
    }
}

/// Unit propagation of `φ ∧ I` to its least fixpoint.
pub fn unit_propagate(formula: &CnfFormula, assignment: &PartialAssignment) -> PropagationResult {
    Propagator::new(formula).propagate(assignment)
}

/// Unit propagation under revisable defaults.
pub fn informed_unit_propagate(
    formula: &CnfFormula,
    assignment: &PartialAssignment,
    defaults: &DefaultValues,
) -> PropagationResult {
    Propagator::new(formula).propagate_informed(assignment, defaults)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Lit {
        Var::new(i).unwrap().positive()
    }

    fn formula(n: u32, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_clauses(
            n,
            clauses
                .iter()
                .map(|c| c.iter().map(|&d| Lit::from_dimacs(d).unwrap()).collect::<Vec<_>>()),
        )
        .unwrap()
    }

    #[test]
    fn single_negative_clause_filters_last_input() {
        let f = formula(3, &[&[-1, -2, -3]]);
        let a = PartialAssignment::from_lits(3, [x(1), x(2)]).unwrap();
        let r = unit_propagate(&f, &a);
        assert_eq!(r.outcome, Outcome::Fixpoint);
        assert_eq!(r.assignment.lit_value(!x(3)), TriValue::One);
        assert_eq!(r.implied().collect::<Vec<_>>(), vec![!x(3)]);
        assert_eq!(r.replay(), r.assignment);
    }

    #[test]
    fn empty_formula_changes_nothing() {
        let f = CnfFormula::new(2);
        let a = PartialAssignment::from_lits(2, [!x(2)]).unwrap();
        let r = unit_propagate(&f, &a);
        assert_eq!(r.outcome, Outcome::Fixpoint);
        assert_eq!(r.assignment, a);
    }

    #[test]
    fn complementary_units_conflict() {
        let f = formula(1, &[&[1], &[-1]]);
        let r = unit_propagate(&f, &PartialAssignment::new(1));
        assert!(r.is_conflict());
    }

    #[test]
    fn empty_clause_conflicts_immediately() {
        let mut f = CnfFormula::new(1);
        f.push(crate::model::Clause::new([]).unwrap()).unwrap();
        assert!(unit_propagate(&f, &PartialAssignment::new(1)).is_conflict());
    }

    #[test]
    fn given_literal_against_unit_clause_conflicts() {
        let f = formula(1, &[&[1]]);
        let a = PartialAssignment::from_lits(1, [!x(1)]).unwrap();
        assert!(unit_propagate(&f, &a).is_conflict());
    }

    #[test]
    fn chains_propagate_transitively() {
        let f = formula(4, &[&[-1, 2], &[-2, 3], &[-3, 4]]);
        let a = PartialAssignment::from_lits(4, [x(1)]).unwrap();
        let r = unit_propagate(&f, &a);
        assert!(r.assignment.is_complete());
        assert_eq!(r.implied().count(), 3);
    }

    #[test]
    fn informed_default_agreeing_with_propagation() {
        let f = formula(3, &[&[-1, -2, -3]]);
        let a = PartialAssignment::from_lits(3, [x(1), x(2)]).unwrap();
        let mut d = DefaultValues::new();
        d.insert(x(3).var(), false);
        let r = informed_unit_propagate(&f, &a, &d);
        assert_eq!(r.outcome, Outcome::Fixpoint);
        assert!(r.flips.is_empty());
        assert_eq!(r.assignment.get(x(3).var()), TriValue::Zero);
    }

    #[test]
    fn informed_flip_takes_earliest_default() {
        // (x ∨ y) with both defaulted to 0: x sits first on the trail.
        let f = formula(2, &[&[1, 2]]);
        let d: DefaultValues = [(x(1).var(), false), (x(2).var(), false)]
            .into_iter()
            .collect();
        let r = informed_unit_propagate(&f, &PartialAssignment::new(2), &d);
        assert_eq!(r.outcome, Outcome::Fixpoint);
        assert_eq!(r.flips, vec![x(1)]);
        assert_eq!(r.assignment.get(x(1).var()), TriValue::One);
        assert_eq!(r.assignment.get(x(2).var()), TriValue::Zero);
    }

    #[test]
    fn informed_flip_of_implied_default() {
        // x1=1 with (¬x1 ∨ x2) and x2 defaulted to 0: x2 is overturned.
        let f = formula(2, &[&[-1, 2]]);
        let a = PartialAssignment::from_lits(2, [x(1)]).unwrap();
        let d: DefaultValues = [(x(2).var(), false)].into_iter().collect();
        let r = informed_unit_propagate(&f, &a, &d);
        assert_eq!(r.outcome, Outcome::Fixpoint);
        assert_eq!(r.flips, vec![x(2)]);
        assert_eq!(r.assignment.get(x(2).var()), TriValue::One);
    }

    #[test]
    fn informed_conflict_on_firm_variables() {
        // the default feeds a conflict on the auxiliary x3
        let f = formula(3, &[&[2, 3], &[2, -3]]);
        let d: DefaultValues = [(x(1).var(), false)].into_iter().collect();
        let r = informed_unit_propagate(&f, &PartialAssignment::from_lits(3, [!x(2)]).unwrap(), &d);
        assert!(r.is_conflict());
    }

    #[test]
    fn informed_with_no_defaults_is_plain() {
        let f = formula(4, &[&[-1, 2], &[-2, -3], &[3, 4, 1]]);
        for bits in 0..81usize {
            let mut a = PartialAssignment::new(4);
            let mut idx = bits;
            for i in 1..=4 {
                a.set(Var::new(i).unwrap(), TriValue::from_digit(idx % 3));
                idx /= 3;
            }
            assert_eq!(
                unit_propagate(&f, &a),
                informed_unit_propagate(&f, &a, &DefaultValues::new())
            );
        }
    }
}
