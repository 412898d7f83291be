//! Three-valued domain types and the semantics of `≤k(x1,…,xn)`.
//!
//! Variables are 1-based, literals pack a variable and a polarity, and a
//! [`PartialAssignment`] maps every variable to `0`, `1` or `*`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::ModelError;

/// A propositional variable, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Result<Var, ModelError> {
        if index == 0 {
            return Err(ModelError::ZeroVariable);
        }
        Ok(Var(index))
    }

    /// Panics on zero; for indices already known to be valid.
    pub(crate) fn from_index(index: u32) -> Var {
        assert!(index >= 1, "variable indices start at 1");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A variable or its negation.
///
/// Ordered by variable first, negative polarity before positive, which is
/// the order clause literals are stored in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit((var.0 << 1) | positive as u32)
    }

    /// Parses a non-zero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Result<Lit, ModelError> {
        if value == 0 || value.unsigned_abs() > u32::MAX as u64 >> 1 {
            return Err(ModelError::ZeroVariable);
        }
        let var = Var(value.unsigned_abs() as u32);
        Ok(Lit::new(var, value > 0))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Dense index usable for per-literal tables: `2·var + polarity`.
    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var().0)
        } else {
            write!(f, "¬x{}", self.var().0)
        }
    }
}

/// A disjunction of literals, stored sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Builds a clause, dropping repeated literals. Tautologies are rejected.
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause, ModelError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(ModelError::Tautology(w[0].var()));
        }
        Ok(Clause { lits })
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.lits.iter().map(|l| l.var()).max()
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A conjunction of clauses over variables `1..=variable_count`.
///
/// Clause order is insertion order; duplicates are silently skipped.
#[derive(Debug, Clone, Default)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
    seen: HashSet<Clause>,
    variable_count: u32,
}

impl PartialEq for CnfFormula {
    fn eq(&self, other: &Self) -> bool {
        self.variable_count == other.variable_count && self.clauses == other.clauses
    }
}

impl Eq for CnfFormula {}

impl CnfFormula {
    pub fn new(variable_count: u32) -> CnfFormula {
        CnfFormula {
            variable_count,
            ..CnfFormula::default()
        }
    }

    /// Builds a formula from clauses given as literal lists, growing the
    /// variable count as needed.
    pub fn from_clauses<C, I>(variable_count: u32, clauses: C) -> Result<CnfFormula, ModelError>
    where
        C: IntoIterator<Item = I>,
        I: IntoIterator<Item = Lit>,
    {
        let mut f = CnfFormula::new(variable_count);
        for c in clauses {
            let clause = Clause::new(c)?;
            if let Some(v) = clause.max_var() {
                f.variable_count = f.variable_count.max(v.index());
            }
            f.push(clause)?;
        }
        Ok(f)
    }

    /// Appends a clause. Returns `false` if an identical clause is present.
    pub fn push(&mut self, clause: Clause) -> Result<bool, ModelError> {
        if let Some(v) = clause.max_var() {
            if v.index() > self.variable_count {
                return Err(ModelError::VariableOutOfRange {
                    var: v,
                    count: self.variable_count,
                });
            }
        }
        if self.seen.contains(&clause) {
            return Ok(false);
        }
        self.seen.insert(clause.clone());
        self.clauses.push(clause);
        Ok(true)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn set_variable_count(&mut self, count: u32) -> Result<(), ModelError> {
        if let Some(v) = self.clauses.iter().filter_map(Clause::max_var).max() {
            if v.index() > count {
                return Err(ModelError::VariableOutOfRange { var: v, count });
            }
        }
        self.variable_count = count;
        Ok(())
    }

    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.clauses
            .iter()
            .any(|c| c.lits().iter().any(|l| l.var() == var))
    }

    pub fn variables(&self) -> impl Iterator<Item = Var> {
        (1..=self.variable_count).map(Var)
    }

    /// Variables occurring in some clause, ascending.
    pub fn mentioned_variables(&self) -> BTreeSet<Var> {
        self.clauses
            .iter()
            .flat_map(|c| c.lits().iter().map(|l| l.var()))
            .collect()
    }
}

/// One of `0`, `1` or `*` (not assigned).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TriValue {
    Zero,
    One,
    #[default]
    Unset,
}

impl TriValue {
    pub const ALL: [TriValue; 3] = [TriValue::Unset, TriValue::Zero, TriValue::One];

    pub fn from_bool(b: bool) -> TriValue {
        if b {
            TriValue::One
        } else {
            TriValue::Zero
        }
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            TriValue::Zero => Some(false),
            TriValue::One => Some(true),
            TriValue::Unset => None,
        }
    }

    pub fn is_set(self) -> bool {
        self != TriValue::Unset
    }

    /// Digit used by mixed-radix enumerations: `*`=0, `0`=1, `1`=2.
    pub fn digit(self) -> usize {
        match self {
            TriValue::Unset => 0,
            TriValue::Zero => 1,
            TriValue::One => 2,
        }
    }

    pub fn from_digit(d: usize) -> TriValue {
        TriValue::ALL[d]
    }

    /// The information order: `*` lies below both `0` and `1`.
    pub fn precedes(self, other: TriValue) -> bool {
        self == TriValue::Unset || self == other
    }
}

impl fmt::Display for TriValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriValue::Zero => "0",
            TriValue::One => "1",
            TriValue::Unset => "*",
        })
    }
}

/// A consistent set of literals, stored as a value per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    values: Vec<TriValue>,
}

impl PartialAssignment {
    /// All of `1..=variable_count` unassigned.
    pub fn new(variable_count: u32) -> PartialAssignment {
        PartialAssignment {
            values: vec![TriValue::Unset; variable_count as usize + 1],
        }
    }

    pub fn from_lits<I: IntoIterator<Item = Lit>>(
        variable_count: u32,
        lits: I,
    ) -> Result<PartialAssignment, ModelError> {
        let mut a = PartialAssignment::new(variable_count);
        for l in lits {
            a.assign_lit(l)?;
        }
        Ok(a)
    }

    pub fn variable_count(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn get(&self, var: Var) -> TriValue {
        self.values
            .get(var.index() as usize)
            .copied()
            .unwrap_or(TriValue::Unset)
    }

    pub fn lit_value(&self, lit: Lit) -> TriValue {
        match self.get(lit.var()) {
            TriValue::Unset => TriValue::Unset,
            v => TriValue::from_bool(v == TriValue::from_bool(lit.is_positive())),
        }
    }

    /// Sets a variable, overwriting any previous value.
    pub fn set(&mut self, var: Var, value: TriValue) {
        let i = var.index() as usize;
        if i >= self.values.len() {
            self.values.resize(i + 1, TriValue::Unset);
        }
        self.values[i] = value;
    }

    /// Adds a literal; adding the complement of an assigned literal fails.
    pub fn assign_lit(&mut self, lit: Lit) -> Result<(), ModelError> {
        match self.lit_value(lit) {
            TriValue::Zero => Err(ModelError::Inconsistent(lit.var())),
            _ => {
                self.set(lit.var(), TriValue::from_bool(lit.is_positive()));
                Ok(())
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.values[1..].iter().all(|v| v.is_set())
    }

    /// Assigned literals in variable order.
    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(i, v)| v.to_bool().map(|b| Lit::new(Var(i as u32), b)))
    }

    pub fn assigned_count(&self) -> usize {
        self.values[1..].iter().filter(|v| v.is_set()).count()
    }

    /// `self ⊆ other` as literal sets.
    pub fn is_subset_of(&self, other: &PartialAssignment) -> bool {
        self.lits().all(|l| other.lit_value(l) == TriValue::One)
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in self.lits() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}={}", l.var(), l.is_positive() as u8)?;
        }
        if first {
            write!(f, "{{}}")?;
        }
        Ok(())
    }
}

/// `≤k(ℓ1,…,ℓn)`: at most `k` of the input literals are true.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CardinalityConstraint {
    k: usize,
    inputs: Vec<Lit>,
}

/// Three-way verdict of a constraint under a partial assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintStatus {
    Satisfied,
    Falsified,
    Undetermined,
}

impl CardinalityConstraint {
    pub fn new(k: usize, inputs: Vec<Lit>) -> Result<CardinalityConstraint, ModelError> {
        let mut vars: Vec<Var> = inputs.iter().map(|l| l.var()).collect();
        vars.sort_unstable();
        if let Some(w) = vars.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::RepeatedInput(w[0]));
        }
        Ok(CardinalityConstraint { k, inputs })
    }

    /// `≤k(x1,…,xn)` over the positive literals of variables `1..=n`.
    pub fn at_most(k: usize, n: usize) -> CardinalityConstraint {
        CardinalityConstraint {
            k,
            inputs: (1..=n as u32).map(|i| Var(i).positive()).collect(),
        }
    }

    /// `≥k(ℓ1,…,ℓn)`, normalized to `≤(n−k)` over the complemented literals.
    pub fn at_least(k: usize, inputs: Vec<Lit>) -> Result<CardinalityConstraint, ModelError> {
        let n = inputs.len();
        if k > n {
            return Err(ModelError::BoundExceedsArity { k, n });
        }
        CardinalityConstraint::new(n - k, inputs.into_iter().map(|l| !l).collect())
    }

    /// `=k(ℓ1,…,ℓn)` as the pair `(≤k, ≥k)`, both in at-most form.
    pub fn exactly(
        k: usize,
        inputs: Vec<Lit>,
    ) -> Result<(CardinalityConstraint, CardinalityConstraint), ModelError> {
        let upper = CardinalityConstraint::new(k, inputs.clone())?;
        let lower = CardinalityConstraint::at_least(k, inputs)?;
        Ok((upper, lower))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[Lit] {
        &self.inputs
    }

    pub fn max_var(&self) -> u32 {
        self.inputs.iter().map(|l| l.var().index()).max().unwrap_or(0)
    }

    /// Same bound, every input literal complemented.
    pub fn flipped(&self) -> CardinalityConstraint {
        CardinalityConstraint {
            k: self.k,
            inputs: self.inputs.iter().map(|&l| !l).collect(),
        }
    }

    fn counts(&self, a: &PartialAssignment) -> (usize, usize) {
        let mut ones = 0;
        let mut unset = 0;
        for &l in &self.inputs {
            match a.lit_value(l) {
                TriValue::One => ones += 1,
                TriValue::Unset => unset += 1,
                TriValue::Zero => {}
            }
        }
        (ones, unset)
    }

    pub fn eval(&self, a: &PartialAssignment) -> ConstraintStatus {
        let (ones, unset) = self.counts(a);
        if ones > self.k {
            ConstraintStatus::Falsified
        } else if ones + unset <= self.k {
            ConstraintStatus::Satisfied
        } else {
            ConstraintStatus::Undetermined
        }
    }

    /// Restores arc consistency: once `k` inputs are true every other input
    /// literal is forced false.
    pub fn arc_consistency(&self, a: &PartialAssignment) -> FilterOutcome {
        let (ones, _) = self.counts(a);
        if ones > self.k {
            return FilterOutcome::Inconsistent;
        }
        let mut fixes = Vec::new();
        if ones == self.k {
            for &l in &self.inputs {
                if a.lit_value(l) == TriValue::Unset {
                    fixes.push((l.var(), !l.is_positive()));
                }
            }
            fixes.sort_unstable();
        }
        FilterOutcome::Fixes(fixes)
    }
}

impl fmt::Display for CardinalityConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "≤{}(", self.k)?;
        for (i, l) in self.inputs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Result of filtering a constraint under a partial assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterOutcome {
    Inconsistent,
    /// Newly forced `(variable, value)` pairs, sorted by variable.
    Fixes(Vec<(Var, bool)>),
}

/// Convenience: [`CardinalityConstraint::eval`].
pub fn eval_constraint(q: &CardinalityConstraint, a: &PartialAssignment) -> ConstraintStatus {
    q.eval(a)
}

/// Convenience: [`CardinalityConstraint::arc_consistency`].
pub fn arc_consistency(q: &CardinalityConstraint, a: &PartialAssignment) -> FilterOutcome {
    q.arc_consistency(a)
}

/// Convenience: [`CardinalityConstraint::at_least`].
pub fn at_least_to_at_most(
    k: usize,
    inputs: Vec<Lit>,
) -> Result<CardinalityConstraint, ModelError> {
    CardinalityConstraint::at_least(k, inputs)
}
