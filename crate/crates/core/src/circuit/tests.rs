use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::dpll::dpll_satisfiable;
use crate::encoders::EncoderKind;
use crate::model::{CardinalityConstraint, CnfFormula, PartialAssignment};
use crate::propagation::{unit_propagate, Propagator};
use crate::verifier::partial_input_assignment;

fn v(i: u32) -> Var {
    Var::new(i).unwrap()
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

fn vars(n: u32) -> Vec<Var> {
    (1..=n).map(v).collect()
}

fn bind(pairs: &[(u32, TriValue)]) -> BTreeMap<Var, DualRail> {
    pairs.iter().map(|&(i, t)| (v(i), dual_rail(t))).collect()
}

/// Every variable's pair matches UP on fixpoint runs; a conflict shows up
/// as some `(1,1)` pair.
fn agrees_with_up(f: &CnfFormula, c: &MonotoneCircuit, a: &PartialAssignment) -> bool {
    let r = unit_propagate(f, a);
    let values = c.eval_assignment(a);
    let pairs: Vec<DualRail> = (1..=f.variable_count()).map(|i| values.pair(v(i)).unwrap()).collect();
    if r.is_conflict() {
        pairs.iter().any(|p| p.is_contradiction())
    } else {
        pairs
            .iter()
            .enumerate()
            .all(|(i, &p)| p == dual_rail(r.assignment.get(v(i as u32 + 1))))
    }
}

#[test]
fn dual_rail_table() {
    assert_eq!(dual_rail(TriValue::Unset), DualRail { plus: false, minus: false });
    assert_eq!(dual_rail(TriValue::Zero), DualRail { plus: false, minus: true });
    assert_eq!(dual_rail(TriValue::One), DualRail { plus: true, minus: false });
    for t in TriValue::ALL {
        assert_eq!(dual_rail(t).to_tri(), Some(t));
    }
    assert!(DualRail { plus: true, minus: true }.is_contradiction());
}

fn two_clause_formula() -> CnfFormula {
    // a = 1, b = 2, x = 3: (a ∨ ¬b ∨ x) ∧ (b ∨ x)
    formula(3, &[&[1, -2, 3], &[2, 3]])
}

#[test]
fn two_clause_local_structure() {
    let raw = RawGraph::new(&two_clause_formula(), &vars(3));
    let c = raw.local_circuit(v(3).positive());
    assert_eq!(
        c.to_gate_list(),
        "0 INPUT x3+\n1 INPUT x1-\n2 INPUT x2+\n3 INPUT x2-\n4 AND 1 2\n5 OR 0 4 3\nOUTPUT x3+ 5\n"
    );
}

#[test]
fn two_clause_evaluations() {
    let raw = RawGraph::new(&two_clause_formula(), &vars(3));
    let c = raw.local_circuit(v(3).positive());
    let x_plus = v(3).positive();
    let a_star_b_one = bind(&[(1, TriValue::Unset), (2, TriValue::One), (3, TriValue::Unset)]);
    assert!(!c.eval(&a_star_b_one).unwrap().delta(x_plus).unwrap());
    let b_zero = bind(&[(1, TriValue::Unset), (2, TriValue::Zero), (3, TriValue::Unset)]);
    assert!(c.eval(&b_zero).unwrap().delta(x_plus).unwrap());
    let bottom = bind(&[(1, TriValue::Unset), (2, TriValue::Unset), (3, TriValue::Unset)]);
    assert!(!c.eval(&bottom).unwrap().delta(x_plus).unwrap());
}

#[test]
fn two_clause_formula_has_no_loops() {
    let x = extract_circuit_with(&two_clause_formula(), &vars(3), LoopRemoval::DepthFirstCut).unwrap();
    assert_eq!(x.cuts, 0);
    let layered = extract_circuit(&two_clause_formula(), &vars(3)).unwrap();
    assert_eq!(layered.circuit.gate_count(), x.circuit.gate_count());
}

#[test]
fn unbound_terminal_is_refused() {
    let raw = RawGraph::new(&two_clause_formula(), &vars(3));
    let c = raw.local_circuit(v(3).positive());
    let missing = bind(&[(1, TriValue::Unset), (3, TriValue::Unset)]);
    assert_eq!(
        c.eval(&missing).unwrap_err(),
        CircuitError::UnboundTerminal("x2+".into())
    );
}

#[test]
fn empty_formula_gives_pins() {
    let x = extract_circuit(&CnfFormula::new(2), &vars(2)).unwrap();
    assert_eq!(x.circuit.gate_count(), 0);
    for (&lit, &id) in x.circuit.outputs() {
        assert_eq!(x.circuit.nodes()[id], Node::Input(lit.var(), Rail::of(lit)));
    }
    let values = x.circuit.eval(&bind(&[(1, TriValue::Unset), (2, TriValue::Unset)])).unwrap();
    assert!(x.circuit.outputs().values().all(|&id| !values.node(id)));
}

#[test]
fn binomial_negative_output() {
    let e = EncoderKind::Binomial
        .encode(&CardinalityConstraint::at_most(2, 3))
        .unwrap();
    let raw = RawGraph::new(&e.formula, &e.input_vars);
    let c = raw.local_circuit(v(3).negative());
    assert_eq!(
        c.to_gate_list(),
        "0 INPUT x3-\n1 INPUT x1+\n2 INPUT x2+\n3 AND 1 2\n4 OR 0 3\nOUTPUT x3- 4\n"
    );
    let x = extract_circuit(&e.formula, &e.input_vars).unwrap();
    let id = x.gates.get(v(3).negative()).unwrap();
    let Node::Or(ops) = &x.circuit.nodes()[id] else {
        panic!("expected an or gate");
    };
    assert_eq!(ops.len(), 2);
    assert!(ops.iter().any(|&o| matches!(&x.circuit.nodes()[o], Node::And(a) if a.len() == 2)));
}

#[test]
fn mutual_support_loop() {
    let f = formula(2, &[&[-1, 2], &[-2, 1]]);
    let x = extract_circuit(&f, &vars(2)).unwrap();
    for i in 0..9 {
        let a = partial_input_assignment(&vars(2), 2, i);
        assert!(agrees_with_up(&f, &x.circuit, &a), "{a}");
    }
}

/// A single global cut breaks the loop at `δ(¬x2) ← δ(¬x1)` while
/// exploring from `¬x1`, so `x1 = 0` no longer reaches `x2`.
#[test]
fn mutual_support_loop_defeats_a_single_cut() {
    let f = formula(2, &[&[-1, 2], &[-2, 1]]);
    let x = extract_circuit_with(&f, &vars(2), LoopRemoval::DepthFirstCut).unwrap();
    assert!(x.cuts > 0);
    let a = PartialAssignment::from_lits(2, [v(1).negative()]).unwrap();
    assert!(!agrees_with_up(&f, &x.circuit, &a));
}

#[test]
fn unit_clause_feeds_constant() {
    let f = formula(2, &[&[2], &[-2, 1]]);
    let x = extract_circuit(&f, &[v(1)]).unwrap();
    let values = x.circuit.eval(&bind(&[(1, TriValue::Unset)])).unwrap();
    assert!(values.delta(v(2).positive()).unwrap());
    assert!(values.delta(v(1).positive()).unwrap());
    assert!(!values.delta(v(1).negative()).unwrap());
}

#[test]
fn unsatisfiable_formula_is_refused() {
    let f = formula(1, &[&[1], &[-1]]);
    assert_eq!(extract_circuit(&f, &vars(1)).unwrap_err(), CircuitError::Unsatisfiable);
}

/// Loops cut once and for all lose derivations that need the cut edge on
/// another path: here `x2` is derivable from `x3` alone, but the cut made
/// while exploring from `x1` erases that route for `x1`.
#[test]
fn depth_first_cut_is_not_exact() {
    // x1 ← x2 ∧ x4, x2 ← x5, x5 ← (x4 ∧ x6) ∨ x3, x4 ← x5
    let f = formula(
        6,
        &[&[-2, -4, 1], &[-5, 2], &[-4, -6, 5], &[-3, 5], &[-5, 4]],
    );
    let inputs = [v(3), v(6)];
    let a = PartialAssignment::from_lits(6, [v(3).positive()]).unwrap();
    assert_eq!(unit_propagate(&f, &a).assignment.get(v(1)), TriValue::One);
    let cut = extract_circuit_with(&f, &inputs, LoopRemoval::DepthFirstCut).unwrap();
    assert!(!agrees_with_up(&f, &cut.circuit, &a));
    let exact = extract_circuit(&f, &inputs).unwrap();
    assert!(agrees_with_up(&f, &exact.circuit, &a));
}

#[test]
fn encodings_agree_with_propagation() {
    for kind in EncoderKind::ALL {
        for n in 1..=4 {
            for k in 0..=n {
                let e = kind.encode(&CardinalityConstraint::at_most(k, n)).unwrap();
                let x = extract_circuit(&e.formula, &e.input_vars).unwrap();
                for i in 0..3u64.pow(n as u32) {
                    let a = partial_input_assignment(&e.input_vars, e.formula.variable_count(), i);
                    assert!(agrees_with_up(&e.formula, &x.circuit, &a), "{kind} n={n} k={k} {a}");
                }
            }
        }
    }
}

#[test]
fn gate_list_and_dot_render() {
    let x = extract_circuit(&two_clause_formula(), &vars(3)).unwrap();
    let text = x.circuit.to_gate_list();
    assert!(text.contains(" INPUT x1+\n"));
    assert!(text.contains("OUTPUT x3+ "));
    let dot = x.circuit.to_dot();
    assert!(dot.starts_with("digraph circuit {"));
    assert!(dot.contains("label=\"x3+\""));
    assert_eq!(x.circuit.prune(), x.circuit.prune().prune());
    let lits = [v(3).positive(), v(3).negative()];
    let small = x.circuit.restrict(&lits).unwrap();
    assert_eq!(small.outputs().len(), 2);
    assert!(small.nodes().len() <= x.circuit.nodes().len());
    for i in 0..27 {
        let a = partial_input_assignment(&vars(3), 3, i);
        let (full, part) = (x.circuit.eval_assignment(&a), small.eval_assignment(&a));
        for l in lits {
            assert_eq!(full.delta(l).unwrap(), part.delta(l).unwrap());
        }
    }
    assert!(x.circuit.restrict(&[v(4).positive()]).is_err());
}

#[test]
fn negation_fixes_the_copy() {
    let f = formula(3, &[&[-1, -2, 3]]);
    let g = negate_filtering_output(&f, v(3), v(4)).unwrap();
    assert_eq!(g.variable_count(), 4);
    let a = PartialAssignment::from_lits(4, [v(1).positive(), v(2).positive()]).unwrap();
    let r = unit_propagate(&g, &a);
    assert_eq!(r.assignment.get(v(3)), TriValue::One);
    assert_eq!(r.assignment.get(v(4)), TriValue::One);
}

#[test]
fn negation_of_unconstrained_output_stays_open() {
    let f = formula(3, &[&[-1, 2]]);
    let g = negate_filtering_output(&f, v(3), v(4)).unwrap();
    for i in 0..9 {
        let a = partial_input_assignment(&vars(2), 4, i);
        assert_eq!(unit_propagate(&g, &a).assignment.get(v(4)), TriValue::Unset);
    }
}

#[test]
fn double_negation_is_extensionally_the_output() {
    let f = formula(3, &[&[-1, -2, 3], &[1, -3], &[2, -3]]);
    let g = negate_filtering_output(&f, v(3), v(4)).unwrap();
    let h = negate_filtering_output(&g, v(4), v(5)).unwrap();
    for i in 0..9 {
        let a = partial_input_assignment(&vars(2), 5, i);
        let r = unit_propagate(&h, &a);
        assert_eq!(r.assignment.get(v(5)), r.assignment.get(v(3)), "{a}");
    }
}

#[test]
fn negation_rejects_bad_variables() {
    let f = formula(3, &[&[-1, -2, 3]]);
    assert_eq!(negate_filtering_output(&f, v(3), v(2)), Err(CircuitError::NotFresh(v(2))));
    assert_eq!(negate_filtering_output(&f, v(3), v(3)), Err(CircuitError::NotFresh(v(3))));
    assert_eq!(negate_filtering_output(&f, v(7), v(8)), Err(CircuitError::MissingOutput(v(7))));
}

fn up_value(f: &CnfFormula, a: &PartialAssignment, var: Var) -> TriValue {
    unit_propagate(f, a).assignment.get(var)
}

#[test]
fn one_sided_combination() {
    // inputs x1; s0 = 2 (never 0), s1 = 3 with (¬x1 ∨ s1), s = 4
    let phi0 = CnfFormula::new(2);
    let phi1 = formula(3, &[&[-1, 3]]);
    let g = combine_filtering(&phi0, v(2), &phi1, v(3), v(4), &[v(1)]).unwrap();
    for (x1, expected) in [
        (TriValue::Unset, TriValue::Unset),
        (TriValue::Zero, TriValue::Unset),
        (TriValue::One, TriValue::One),
    ] {
        let mut a = PartialAssignment::new(4);
        a.set(v(1), x1);
        assert_eq!(up_value(&g, &a, v(4)), expected);
    }
}

#[test]
fn equality_from_two_halves() {
    // s0 (= 3) is forced 0 when x1 ≠ x2; s1 (= 4) is forced 1 when x1 = x2.
    let phi0 = formula(3, &[&[-1, 2, -3], &[1, -2, -3]]);
    let phi1 = formula(4, &[&[-1, -2, 4], &[1, 2, 4]]);
    let g = combine_filtering(&phi0, v(3), &phi1, v(4), v(5), &vars(2)).unwrap();
    for i in 0..9 {
        let a = partial_input_assignment(&vars(2), 5, i);
        let expected = match (a.get(v(1)).to_bool(), a.get(v(2)).to_bool()) {
            (Some(p), Some(q)) => TriValue::from_bool(p == q),
            _ => TriValue::Unset,
        };
        assert_eq!(up_value(&g, &a, v(5)), expected, "{a}");
    }
}

#[test]
fn bridges_alone_fix_nothing() {
    let g = combine_filtering(&CnfFormula::new(1), v(1), &CnfFormula::new(2), v(2), v(3), &[])
        .unwrap();
    assert_eq!(g.len(), 2);
    let r = unit_propagate(&g, &PartialAssignment::new(3));
    assert_eq!(r.assignment, PartialAssignment::new(3));
}

#[test]
fn combination_rejects_collisions() {
    let phi0 = formula(3, &[&[1, 3]]);
    let phi1 = formula(4, &[&[3, 4]]);
    assert_eq!(
        combine_filtering(&phi0, v(2), &phi1, v(4), v(5), &[v(1)]),
        Err(CircuitError::SharedVariable(v(3)))
    );
    assert!(combine_filtering(&phi0, v(2), &phi1, v(4), v(5), &[v(1), v(3)]).is_ok());
    assert_eq!(
        combine_filtering(&phi0, v(2), &phi1, v(4), v(3), &[v(1), v(3)]),
        Err(CircuitError::NotFresh(v(3)))
    );
}

fn clause_strategy(vars: u32) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_map(1..=vars as i64, any::<bool>(), 1..=3)
        .prop_map(|m| m.into_iter().map(|(v, pos)| if pos { v } else { -v }).collect())
}

prop_compose! {
    fn satisfiable_formula(max_vars: u32)(vars in 2..=max_vars)
        (clauses in prop::collection::vec(clause_strategy(vars), 1..=(2 * vars as usize)), vars in Just(vars))
        -> CnfFormula {
        let refs: Vec<&[i64]> = clauses.iter().map(|c| c.as_slice()).collect();
        formula(vars, &refs)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn circuit_matches_propagation(
        f in satisfiable_formula(12),
        input_mask in 1u32..64,
    ) {
        prop_assume!(dpll_satisfiable(&f, &PartialAssignment::new(f.variable_count())).unwrap());
        let inputs: Vec<Var> = (1..=f.variable_count().min(6))
            .filter(|i| input_mask >> (i - 1) & 1 == 1)
            .map(v)
            .collect();
        prop_assume!(!inputs.is_empty());
        let x = extract_circuit(&f, &inputs).unwrap();
        for i in 0..3u64.pow(inputs.len() as u32) {
            let a = partial_input_assignment(&inputs, f.variable_count(), i);
            prop_assert!(agrees_with_up(&f, &x.circuit, &a), "{}", a);
            let r = unit_propagate(&f, &a);
            if !r.is_conflict() {
                let values = x.circuit.eval_assignment(&a);
                for var in 1..=f.variable_count() {
                    prop_assert!(!values.pair(v(var)).unwrap().is_contradiction());
                }
            }
        }
    }

    #[test]
    fn circuits_are_monotone(
        f in satisfiable_formula(10),
        low in prop::collection::vec(0usize..4, 10),
        raise in 0usize..20,
    ) {
        prop_assume!(dpll_satisfiable(&f, &PartialAssignment::new(f.variable_count())).unwrap());
        let n = f.variable_count();
        let inputs = vars(n.min(5));
        let x = extract_circuit(&f, &inputs).unwrap();
        let pair = |d: usize| DualRail { plus: d & 1 == 1, minus: d & 2 == 2 };
        let lower: BTreeMap<Var, DualRail> =
            inputs.iter().map(|&var| (var, pair(low[var.index() as usize - 1]))).collect();
        let mut upper = lower.clone();
        let target = inputs[raise % inputs.len()];
        let p = upper.get_mut(&target).unwrap();
        if raise % 2 == 0 { p.plus = true } else { p.minus = true }
        let before = x.circuit.eval(&lower).unwrap();
        let after = x.circuit.eval(&upper).unwrap();
        for id in 0..x.circuit.nodes().len() {
            prop_assert!(!before.node(id) || after.node(id));
        }
    }

    #[test]
    fn circuit_sizes(f in satisfiable_formula(12)) {
        prop_assume!(dpll_satisfiable(&f, &PartialAssignment::new(f.variable_count())).unwrap());
        let inputs = vars(f.variable_count().min(4));
        let occurrences = f.literal_count();
        let literals = 2 * f.variable_count() as usize;
        let cut = extract_circuit_with(&f, &inputs, LoopRemoval::DepthFirstCut).unwrap();
        prop_assert!(cut.circuit.gate_count() <= 2 * occurrences + literals);
        let layered = extract_circuit(&f, &inputs).unwrap();
        let rounds = f.variable_count() as usize + 1;
        prop_assert!(layered.circuit.gate_count() <= rounds * (2 * occurrences + literals));
    }

    #[test]
    fn negation_preserves_propagation(
        f in satisfiable_formula(8),
        pick in 0u32..8,
    ) {
        let n = f.variable_count();
        let s = v(pick % n + 1);
        let t = v(n + 1);
        let g = negate_filtering_output(&f, s, t).unwrap();
        let sat = |h: &CnfFormula| dpll_satisfiable(h, &PartialAssignment::new(h.variable_count())).unwrap();
        prop_assert_eq!(sat(&f), sat(&g));
        let inputs = vars(n.min(5));
        let pf = Propagator::new(&f);
        let pg = Propagator::new(&g);
        for i in 0..3u64.pow(inputs.len() as u32) {
            let a = partial_input_assignment(&inputs, n, i);
            let b = partial_input_assignment(&inputs, n + 1, i);
            let (rf, rg) = (pf.propagate(&a), pg.propagate(&b));
            prop_assert_eq!(rf.is_conflict(), rg.is_conflict());
            if !rf.is_conflict() {
                for var in 1..=n {
                    prop_assert_eq!(rf.assignment.get(v(var)), rg.assignment.get(v(var)));
                }
                prop_assert_eq!(rg.assignment.get(t), rg.assignment.get(s));
            }
        }
    }

    #[test]
    fn combination_adds_only_bridge_propagation(
        left in satisfiable_formula(4),
        right in satisfiable_formula(4),
    ) {
        // Halves share inputs 1..=2; the right half's other variables are
        // shifted past the left half's.
        let nl = left.variable_count();
        let shift = |l: Lit| {
            if l.var().index() <= 2 { l } else { Lit::new(v(l.var().index() + nl), l.is_positive()) }
        };
        let phi1 = CnfFormula::from_clauses(
            nl + right.variable_count(),
            right.clauses().iter().map(|c| c.lits().iter().map(|&l| shift(l)).collect::<Vec<_>>()),
        ).unwrap();
        let (s0, s1) = (v(nl), v(nl + right.variable_count()));
        prop_assume!(s0.index() > 2 && s1.index() > nl);
        let total = phi1.variable_count();
        let s = v(total + 1);
        let g = combine_filtering(&left, s0, &phi1, s1, s, &vars(2)).unwrap();
        let mut halves = CnfFormula::new(total);
        for c in left.clauses().iter().chain(phi1.clauses()) {
            halves.push(c.clone()).unwrap();
        }
        for i in 0..9 {
            let a = partial_input_assignment(&vars(2), total, i);
            // the halves, closed under the two bridges through s
            let mut extra = a.clone();
            let expected = loop {
                let r = unit_propagate(&halves, &extra);
                if r.is_conflict() { break None; }
                let lo = r.assignment.get(s0) == TriValue::Zero;
                let hi = r.assignment.get(s1) == TriValue::One;
                if lo && hi { break None; }
                let mut next = r.assignment.clone();
                if hi { next.set(s0, TriValue::One); }
                if lo { next.set(s1, TriValue::Zero); }
                if next == r.assignment { break Some(r.assignment); }
                extra = next;
            };
            let got = unit_propagate(&g, &partial_input_assignment(&vars(2), total + 1, i));
            match expected {
                None => prop_assert!(got.is_conflict()),
                Some(exp) => {
                    prop_assert!(!got.is_conflict());
                    for var in 1..=total {
                        prop_assert_eq!(exp.get(v(var)), got.assignment.get(v(var)));
                    }
                }
            }
        }
    }
}
