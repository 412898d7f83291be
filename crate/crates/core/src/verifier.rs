//! Exhaustive checks of encoding properties, and size measurements.
//!
//! Partial input assignments are enumerated by mixed-radix counting over
//! the inputs in constraint order, the first input least significant, with
//! digits `* < 0 < 1`. Complete assignments count in binary the same way.
//! A failing check reports the first witness in that order, whichever
//! [`SweepMode`] ran it.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{dual_rail, extract_circuit, MonotoneCircuit};
use crate::dpll;
use crate::encoders::{EncoderKind, EncodingResult, DEFAULT_MAX_CLAUSES};
use crate::error::{EncodeError, VerifyError};
use crate::model::{
    CardinalityConstraint, ConstraintStatus, FilterOutcome, PartialAssignment, TriValue, Var,
};
use crate::par::{self, SweepMode};
use crate::propagation::{DefaultValues, Outcome, Propagator};

pub const CORRECT_MAX_N: usize = 10;
pub const PAC_MAX_N: usize = 8;
pub const PIC_MAX_N: usize = 8;
pub const INFORMED_PIC_MAX_N: usize = 6;
pub const CIRCUIT_MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Correct,
    Pac,
    Pic,
    CircuitEquivalence,
    InformedPic,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Correct,
        Property::Pac,
        Property::Pic,
        Property::CircuitEquivalence,
        Property::InformedPic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Correct => "correct",
            Property::Pac => "pac",
            Property::Pic => "pic",
            Property::CircuitEquivalence => "circuit-equivalence",
            Property::InformedPic => "informed-pic",
        }
    }

    /// Largest `n` the exhaustive check accepts.
    pub fn max_n(self) -> usize {
        match self {
            Property::Correct => CORRECT_MAX_N,
            Property::Pac => PAC_MAX_N,
            Property::Pic => PIC_MAX_N,
            Property::CircuitEquivalence => CIRCUIT_MAX_N,
            Property::InformedPic => INFORMED_PIC_MAX_N,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
                format!("unknown property `{s}`; expected one of: {}", names.join(", "))
            })
    }
}

/// An input assignment on which a property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub assignment: PartialAssignment,
    /// What the property demands, e.g. `oracle fixes x3=0,x4=0`.
    pub expected: String,
    /// What the engine did, e.g. `UP fixes none`.
    pub observed: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}; {}", self.assignment, self.expected, self.observed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Instances examined, up to and including the witness if any.
    pub instances_checked: u64,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.holds { "holds" } else { "fails" };
        write!(f, "{} {status} ({} instances)", self.property, self.instances_checked)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// The `index`-th partial assignment of the inputs, over `variable_count`
/// variables.
pub fn partial_input_assignment(inputs: &[Var], variable_count: u32, index: u64) -> PartialAssignment {
    let mut a = PartialAssignment::new(variable_count);
    let mut rest = index;
    for &v in inputs {
        a.set(v, TriValue::from_digit((rest % 3) as usize));
        rest /= 3;
    }
    a
}

/// The `index`-th complete assignment of the inputs.
pub fn complete_input_assignment(inputs: &[Var], variable_count: u32, index: u64) -> PartialAssignment {
    let mut a = PartialAssignment::new(variable_count);
    for (j, &v) in inputs.iter().enumerate() {
        a.set(v, TriValue::from_bool(index >> j & 1 == 1));
    }
    a
}

fn cap(e: &EncodingResult, property: Property) -> Result<(), VerifyError> {
    let n = e.constraint.n();
    let limit = property.max_n();
    if n > limit {
        return Err(VerifyError::ScaleCap { n, limit });
    }
    Ok(())
}

fn fixes_text(prefix: &str, fixes: &[(Var, bool)]) -> String {
    if fixes.is_empty() {
        return format!("{prefix} none");
    }
    let parts: Vec<String> = fixes.iter().map(|(v, b)| format!("{v}={}", *b as u8)).collect();
    format!("{prefix} {}", parts.join(","))
}

fn status_text(s: ConstraintStatus) -> &'static str {
    match s {
        ConstraintStatus::Satisfied => "constraint satisfied",
        ConstraintStatus::Falsified => "constraint falsified",
        ConstraintStatus::Undetermined => "constraint undetermined",
    }
}

/// One instance of a check. `None` means the instance is out of scope for
/// the property (a falsified partial under pac).
struct Probe {
    expected: String,
    observed: String,
    agrees: bool,
}

/// Re-runs the engine on one assignment for `property`, returning
/// `(expected, observed)` or `None` if the instance is out of scope.
///
/// This is what the sweeps use, so a reported witness replays to the same
/// strings.
pub fn observe(
    e: &EncodingResult,
    property: Property,
    assignment: &PartialAssignment,
) -> Result<Option<(String, String)>, VerifyError> {
    let propagator = Propagator::new(&e.formula);
    let circuit = match property {
        Property::CircuitEquivalence => Some(extract_circuit(&e.formula, &e.input_vars)?.circuit),
        _ => None,
    };
    Ok(probe(e, property, &propagator, circuit.as_ref(), None, assignment)
        .map(|p| (p.expected, p.observed)))
}

fn probe(
    e: &EncodingResult,
    property: Property,
    propagator: &Propagator<'_>,
    circuit: Option<&MonotoneCircuit>,
    target: Option<Var>,
    a: &PartialAssignment,
) -> Option<Probe> {
    let q = &e.constraint;
    let status = q.eval(a);
    match property {
        Property::Correct => {
            let expected = status == ConstraintStatus::Satisfied;
            let sat = dpll::satisfiable(propagator, a);
            Some(Probe {
                expected: status_text(status).into(),
                observed: if sat { "formula satisfiable" } else { "formula unsatisfiable" }.into(),
                agrees: sat == expected,
            })
        }
        Property::Pac => {
            let FilterOutcome::Fixes(oracle) = q.arc_consistency(a) else {
                return None;
            };
            let expected = fixes_text("oracle fixes", &oracle);
            let r = propagator.propagate(a);
            if r.is_conflict() {
                return Some(Probe {
                    expected,
                    observed: "UP conflicts".into(),
                    agrees: false,
                });
            }
            let up = input_fixes(&e.input_vars, a, &r.assignment);
            Some(Probe {
                expected,
                observed: fixes_text("UP fixes", &up),
                agrees: up == oracle,
            })
        }
        Property::Pic | Property::InformedPic => {
            let r = if property == Property::Pic {
                propagator.propagate(a)
            } else {
                propagator.propagate_informed(a, &DefaultValues::literals_false(q, a))
            };
            let falsified = status == ConstraintStatus::Falsified;
            let engine = if property == Property::Pic { "UP" } else { "informed UP" };
            Some(Probe {
                expected: if falsified {
                    "constraint falsified"
                } else {
                    "constraint not falsified"
                }
                .into(),
                observed: if r.is_conflict() {
                    format!("{engine} conflicts")
                } else {
                    format!("{engine} reaches a fixpoint")
                },
                agrees: r.is_conflict() == falsified,
            })
        }
        Property::CircuitEquivalence => {
            let circuit = circuit.expect("circuit extracted");
            let r = propagator.propagate(a);
            let values = circuit.eval_assignment(a);
            let vars: Vec<Var> = circuit.outputs().keys().map(|l| l.var()).collect();
            match (r.outcome, target) {
                (Outcome::Conflict(_), _) => {
                    let contradiction = vars
                        .iter()
                        .any(|&v| values.pair(v).is_ok_and(|p| p.is_contradiction()));
                    Some(Probe {
                        expected: "UP conflicts".into(),
                        observed: if contradiction {
                            "circuit derives both values of a variable"
                        } else {
                            "circuit derives no contradiction"
                        }
                        .into(),
                        agrees: contradiction,
                    })
                }
                (Outcome::Fixpoint, Some(t)) => {
                    let up = dual_rail(r.assignment.get(t));
                    let got = values.pair(t).expect("input outputs present");
                    let show = |p: crate::circuit::DualRail| {
                        format!("({},{})", p.plus as u8, p.minus as u8)
                    };
                    Some(Probe {
                        expected: format!("UP gives {t} = {}", show(up)),
                        observed: format!("circuit gives {t} = {}", show(got)),
                        agrees: up == got,
                    })
                }
                (Outcome::Fixpoint, None) => {
                    let mismatch = vars.iter().find(|&&v| {
                        values.pair(v).ok() != Some(dual_rail(r.assignment.get(v)))
                    });
                    Some(Probe {
                        expected: "circuit matches UP on every variable".into(),
                        observed: match mismatch {
                            Some(v) => format!("circuit differs on {v}"),
                            None => "circuit matches UP on every variable".into(),
                        },
                        agrees: mismatch.is_none(),
                    })
                }
            }
        }
    }
}

fn input_fixes(inputs: &[Var], before: &PartialAssignment, after: &PartialAssignment) -> Vec<(Var, bool)> {
    let mut fixes: Vec<(Var, bool)> = inputs
        .iter()
        .filter(|&&v| before.get(v) == TriValue::Unset)
        .filter_map(|&v| after.get(v).to_bool().map(|b| (v, b)))
        .collect();
    fixes.sort_unstable();
    fixes
}

fn sweep(
    e: &EncodingResult,
    property: Property,
    mode: SweepMode,
    circuit: Option<&MonotoneCircuit>,
    target: Option<Var>,
    inputs: &[Var],
    complete: bool,
) -> Verdict {
    let propagator = Propagator::new(&e.formula);
    let vars = e.formula.variable_count();
    let radix: u64 = if complete { 2 } else { 3 };
    let total = radix.pow(inputs.len() as u32);
    let assignment = |i: u64| {
        if complete {
            complete_input_assignment(inputs, vars, i)
        } else {
            partial_input_assignment(inputs, vars, i)
        }
    };
    let in_scope = |a: &PartialAssignment| {
        property != Property::Pac || e.constraint.eval(a) != ConstraintStatus::Falsified
    };
    let hit = par::find_first(mode, 0..total, |i| {
        let a = assignment(i);
        let p = probe(e, property, &propagator, circuit, target, &a)?;
        (!p.agrees).then(|| Witness {
            assignment: a,
            expected: p.expected,
            observed: p.observed,
        })
    });
    let upto = hit.as_ref().map_or(total, |(i, _)| i + 1);
    let instances_checked = if property == Property::Pac {
        (0..upto).filter(|&i| in_scope(&assignment(i))).count() as u64
    } else {
        upto
    };
    Verdict {
        property,
        holds: hit.is_none(),
        witness: hit.map(|(_, w)| w),
        instances_checked,
    }
}

/// For every complete input assignment, the formula is satisfiable under it
/// iff it satisfies the constraint.
pub fn check_correct(e: &EncodingResult) -> Result<Verdict, VerifyError> {
    check_correct_with(e, SweepMode::default())
}

pub fn check_correct_with(e: &EncodingResult, mode: SweepMode) -> Result<Verdict, VerifyError> {
    cap(e, Property::Correct)?;
    Ok(sweep(e, Property::Correct, mode, None, None, &e.input_vars, true))
}

/// On every partial input assignment not falsifying the constraint, UP fixes
/// exactly the inputs arc consistency fixes.
pub fn check_pac(e: &EncodingResult) -> Result<Verdict, VerifyError> {
    check_pac_with(e, SweepMode::default())
}

pub fn check_pac_with(e: &EncodingResult, mode: SweepMode) -> Result<Verdict, VerifyError> {
    cap(e, Property::Pac)?;
    Ok(sweep(e, Property::Pac, mode, None, None, &e.input_vars, false))
}

/// UP conflicts exactly on the partial input assignments falsifying the
/// constraint.
pub fn check_pic(e: &EncodingResult) -> Result<Verdict, VerifyError> {
    check_pic_with(e, SweepMode::default())
}

pub fn check_pic_with(e: &EncodingResult, mode: SweepMode) -> Result<Verdict, VerifyError> {
    cap(e, Property::Pic)?;
    Ok(sweep(e, Property::Pic, mode, None, None, &e.input_vars, false))
}

/// As [`check_pic`], with informed propagation in which every unassigned
/// input defaults to making its literal false.
pub fn check_informed_pic(e: &EncodingResult) -> Result<Verdict, VerifyError> {
    check_informed_pic_with(e, SweepMode::default())
}

pub fn check_informed_pic_with(e: &EncodingResult, mode: SweepMode) -> Result<Verdict, VerifyError> {
    cap(e, Property::InformedPic)?;
    Ok(sweep(e, Property::InformedPic, mode, None, None, &e.input_vars, false))
}

/// The extracted circuit's pair `(δ(t), δ(¬t))` equals what UP assigns to
/// `t`, over every partial assignment of the other inputs with `t` unset.
/// Where UP conflicts, the circuit must derive both values of some variable.
pub fn check_circuit_equivalence(e: &EncodingResult, target: Var) -> Result<Verdict, VerifyError> {
    check_circuit_equivalence_with(e, target, SweepMode::default())
}

pub fn check_circuit_equivalence_with(
    e: &EncodingResult,
    target: Var,
    mode: SweepMode,
) -> Result<Verdict, VerifyError> {
    cap(e, Property::CircuitEquivalence)?;
    if !e.input_vars.contains(&target) {
        return Err(VerifyError::NotAnInput(target));
    }
    let extraction = extract_circuit(&e.formula, &e.input_vars)?;
    let others: Vec<Var> = e.input_vars.iter().copied().filter(|&v| v != target).collect();
    Ok(sweep(
        e,
        Property::CircuitEquivalence,
        mode,
        Some(&extraction.circuit),
        Some(target),
        &others,
        false,
    ))
}

/// Runs `property` on `e`. Circuit equivalence is checked for every input in
/// turn; the first failing target is reported.
pub fn check(e: &EncodingResult, property: Property, mode: SweepMode) -> Result<Verdict, VerifyError> {
    match property {
        Property::Correct => check_correct_with(e, mode),
        Property::Pac => check_pac_with(e, mode),
        Property::Pic => check_pic_with(e, mode),
        Property::InformedPic => check_informed_pic_with(e, mode),
        Property::CircuitEquivalence => {
            let mut instances = 0;
            for &t in &e.input_vars {
                let v = check_circuit_equivalence_with(e, t, mode)?;
                instances += v.instances_checked;
                if !v.holds {
                    return Ok(Verdict {
                        instances_checked: instances,
                        ..v
                    });
                }
            }
            Ok(Verdict {
                property,
                holds: true,
                witness: None,
                instances_checked: instances,
            })
        }
    }
}

/// Size of one encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeRecord {
    pub encoder: EncoderKind,
    pub n: usize,
    pub k: usize,
    pub clauses: usize,
    pub aux_vars: u32,
    pub literals: usize,
}

pub fn measure_size(encoder: EncoderKind, n: usize, k: usize) -> Result<SizeRecord, EncodeError> {
    measure_size_with(encoder, n, k, DEFAULT_MAX_CLAUSES)
}

pub fn measure_size_with(
    encoder: EncoderKind,
    n: usize,
    k: usize,
    max_clauses: u128,
) -> Result<SizeRecord, EncodeError> {
    let e = encoder.encode_with(&CardinalityConstraint::at_most(k, n), max_clauses)?;
    Ok(SizeRecord {
        encoder,
        n,
        k,
        clauses: e.formula.len(),
        aux_vars: e.aux_count(),
        literals: e.formula.literal_count(),
    })
}

/// How the bound follows `n` in a growth sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    /// `k = ⌈n/2⌉`.
    Half,
    Fixed(usize),
}

impl KRule {
    pub fn bound(self, n: usize) -> usize {
        match self {
            KRule::Half => n.div_ceil(2),
            KRule::Fixed(k) => k,
        }
    }
}

impl FromStr for KRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "half" {
            return Ok(KRule::Half);
        }
        s.parse()
            .map(KRule::Fixed)
            .map_err(|_| format!("expected `half` or a non-negative integer, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub record: SizeRecord,
    /// `log2(clauses(n) / clauses(n/2))`, present when the previous row has
    /// half this `n` and a non-zero clause count.
    pub slope: Option<f64>,
}

/// Sizes over `n_list` with clause-count slopes between consecutive
/// doublings.
pub fn growth_report(
    encoder: EncoderKind,
    n_list: &[usize],
    k_rule: KRule,
) -> Result<Vec<GrowthRow>, EncodeError> {
    growth_report_with(encoder, n_list, k_rule, DEFAULT_MAX_CLAUSES)
}

pub fn growth_report_with(
    encoder: EncoderKind,
    n_list: &[usize],
    k_rule: KRule,
    max_clauses: u128,
) -> Result<Vec<GrowthRow>, EncodeError> {
    let mut rows: Vec<GrowthRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let record = measure_size_with(encoder, n, k_rule.bound(n), max_clauses)?;
        let slope = rows.last().and_then(|prev| {
            (prev.record.n * 2 == n && prev.record.clauses > 0)
                .then(|| (record.clauses as f64 / prev.record.clauses as f64).log2())
        });
        rows.push(GrowthRow { record, slope });
    }
    Ok(rows)
}

pub const VERDICT_CSV_HEADER: [&str; 7] = ["encoder", "n", "k", "property", "holds", "instances", "witness"];
pub const SIZE_CSV_HEADER: [&str; 7] = ["encoder", "n", "k", "clauses", "auxvars", "literals", "slope"];

/// A verdict as a CSV record under [`VERDICT_CSV_HEADER`].
pub fn verdict_record(e: &EncodingResult, v: &Verdict) -> [String; 7] {
    [
        e.encoder.name().to_string(),
        e.constraint.n().to_string(),
        e.constraint.k().to_string(),
        v.property.name().to_string(),
        v.holds.to_string(),
        v.instances_checked.to_string(),
        v.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
    ]
}

/// A growth row as a CSV record under [`SIZE_CSV_HEADER`]; the slope has
/// four decimals or is empty.
pub fn size_record(row: &GrowthRow) -> [String; 7] {
    let r = &row.record;
    [
        r.encoder.name().to_string(),
        r.n.to_string(),
        r.k.to_string(),
        r.clauses.to_string(),
        r.aux_vars.to_string(),
        r.literals.to_string(),
        row.slope.map(|s| format!("{s:.4}")).unwrap_or_default(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CnfFormula, Lit};

    fn enc(kind: EncoderKind, n: usize, k: usize) -> EncodingResult {
        kind.encode(&CardinalityConstraint::at_most(k, n)).unwrap()
    }

    #[test]
    fn enumeration_order() {
        let vars: Vec<Var> = (1..=2).map(|i| Var::new(i).unwrap()).collect();
        let shown: Vec<String> = (0..9)
            .map(|i| partial_input_assignment(&vars, 2, i).to_string())
            .collect();
        assert_eq!(
            shown,
            ["{}", "x1=0", "x1=1", "x2=0", "x1=0 x2=0", "x1=1 x2=0", "x2=1", "x1=0 x2=1", "x1=1 x2=1"]
        );
        assert_eq!(complete_input_assignment(&vars, 2, 2).to_string(), "x1=0 x2=1");
    }

    #[test]
    fn binomial_correct_on_eight_instances() {
        let v = check_correct(&enc(EncoderKind::Binomial, 3, 2)).unwrap();
        assert!(v.holds);
        assert_eq!(v.instances_checked, 8);
    }

    #[test]
    fn corrupted_binomial_is_caught() {
        let mut e = enc(EncoderKind::Binomial, 3, 1);
        let kept: Vec<Vec<Lit>> = e.formula.clauses()[1..].iter().map(|c| c.lits().to_vec()).collect();
        e.formula = CnfFormula::from_clauses(3, kept).unwrap();
        let v = check_correct(&e).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.assignment.to_string(), "x1=1 x2=1 x3=0");
        assert_eq!(w.expected, "constraint falsified");
        assert_eq!(w.observed, "formula satisfiable");
    }

    #[test]
    fn empty_formula_correct() {
        for kind in EncoderKind::ALL {
            assert!(check_correct(&enc(kind, 4, 4)).unwrap().holds);
        }
    }

    #[test]
    fn binary_witnesses() {
        for kind in EncoderKind::BINARY {
            let e = enc(kind, 4, 2);
            let pac = check_pac(&e).unwrap();
            assert!(!pac.holds);
            assert_eq!(
                pac.witness.as_ref().unwrap().to_string(),
                "x1=1 x2=1 -> oracle fixes x3=0,x4=0; UP fixes none"
            );
            let pic = check_pic(&e).unwrap();
            assert_eq!(pic.witness.unwrap().assignment.to_string(), "x1=1 x2=1 x3=1");
        }
    }

    #[test]
    fn unit_examples() {
        assert!(check_pac(&enc(EncoderKind::Totalizer, 4, 2)).unwrap().holds);
        assert!(check_pic(&enc(EncoderKind::SequentialCounter, 4, 2)).unwrap().holds);
        assert!(check_pic(&enc(EncoderKind::Binomial, 3, 0)).unwrap().holds);
        for kind in EncoderKind::ALL {
            assert!(check_pac(&enc(kind, 1, 1)).unwrap().holds);
        }
        assert!(check_informed_pic(&enc(EncoderKind::Totalizer, 4, 2)).unwrap().holds);
        assert!(check_informed_pic(&enc(EncoderKind::Binomial, 1, 0)).unwrap().holds);
    }

    #[test]
    fn circuit_examples() {
        let x = |i| Var::new(i).unwrap();
        assert!(check_circuit_equivalence(&enc(EncoderKind::Binomial, 3, 2), x(1)).unwrap().holds);
        let v = check_circuit_equivalence(&enc(EncoderKind::Totalizer, 4, 2), x(4)).unwrap();
        assert!(v.holds);
        assert_eq!(v.instances_checked, 27);
        assert!(check_circuit_equivalence(&enc(EncoderKind::Totalizer, 3, 3), x(2)).unwrap().holds);
        assert!(matches!(
            check_circuit_equivalence(&enc(EncoderKind::Totalizer, 3, 2), x(7)),
            Err(VerifyError::NotAnInput(_))
        ));
    }

    #[test]
    fn caps_are_enforced() {
        let e = enc(EncoderKind::Totalizer, 9, 2);
        assert!(matches!(check_pac(&e), Err(VerifyError::ScaleCap { n: 9, limit: 8 })));
        assert!(check_informed_pic(&enc(EncoderKind::Totalizer, 7, 2)).is_err());
        assert!(check_correct(&enc(EncoderKind::Totalizer, 11, 2)).is_err());
    }

    #[test]
    fn witnesses_replay() {
        let e = enc(EncoderKind::BinaryAdder, 4, 2);
        for property in [Property::Pac, Property::Pic] {
            let v = check(&e, property, SweepMode::Sequential).unwrap();
            let w = v.witness.unwrap();
            let (expected, observed) = observe(&e, property, &w.assignment).unwrap().unwrap();
            assert_eq!((expected, observed), (w.expected, w.observed));
        }
    }

    #[test]
    fn sweep_modes_agree() {
        for kind in EncoderKind::ALL {
            let e = enc(kind, 5, 2);
            for property in Property::ALL {
                assert_eq!(
                    check(&e, property, SweepMode::Sequential).unwrap(),
                    check(&e, property, SweepMode::Parallel).unwrap()
                );
            }
        }
    }

    #[test]
    fn sizes_and_slopes() {
        let r = measure_size(EncoderKind::Binomial, 3, 2).unwrap();
        assert_eq!((r.clauses, r.aux_vars), (1, 0));
        for kind in EncoderKind::ALL {
            assert_eq!(measure_size(kind, 6, 6).unwrap().clauses, 0);
        }
        let rows = growth_report(EncoderKind::Binomial, &[4, 8, 12], KRule::Fixed(1)).unwrap();
        assert_eq!(rows[0].slope, None);
        assert!((rows[1].slope.unwrap() - (28f64 / 6.0).log2()).abs() < 1e-12);
        assert_eq!(rows[2].slope, None);
        assert_eq!(size_record(&rows[1])[6], format!("{:.4}", (28f64 / 6.0).log2()));
    }
}
