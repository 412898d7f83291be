//! From a CNF formula to a monotone circuit computing, for every literal
//! `w`, the wire `δ(w)` that unit propagation would set.
//!
//! The raw network gives each literal the definition
//!
//! ```text
//! δ(w) = or( input(δ(w)), and(δ(¬l) : l ∈ c, l ≠ w) for each clause c ∋ w )
//! ```
//!
//! where `input(δ(w))` is present only for literals of input variables. This
//! network has loops; [`LoopRemoval`] selects how they are broken.
//!
//! Layered removal is exact. Rounds inside a component start from all-`0`
//! and only add literals, so a component over `v` variables either settles
//! within `v + 1` rounds or has derived both values of one of them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{MonotoneCircuit, Node, NodeId, Rail};
use crate::dpll;
use crate::error::CircuitError;
use crate::model::{CnfFormula, Lit, Var};
use crate::propagation::Propagator;

/// The cyclic per-literal network, before loop removal.
#[derive(Debug, Clone)]
pub struct RawGraph {
    variable_count: u32,
    inputs: BTreeSet<Var>,
    /// AND terms per literal code; each term lists the literals `u` whose
    /// wires `δ(u)` feed the gate.
    terms: Vec<Vec<Vec<Lit>>>,
    occurrences: usize,
}

impl RawGraph {
    pub fn new(formula: &CnfFormula, inputs: &[Var]) -> RawGraph {
        let variable_count = inputs
            .iter()
            .map(|v| v.index())
            .max()
            .unwrap_or(0)
            .max(formula.variable_count());
        let mut terms = vec![Vec::new(); 2 * (variable_count as usize + 1)];
        for clause in formula.clauses() {
            for &w in clause.lits() {
                let term: Vec<Lit> = clause
                    .lits()
                    .iter()
                    .filter(|&&l| l != w)
                    .map(|&l| !l)
                    .collect();
                terms[w.code()].push(term);
            }
        }
        RawGraph {
            variable_count,
            inputs: inputs.iter().copied().collect(),
            terms,
            occurrences: formula.literal_count(),
        }
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn is_input(&self, var: Var) -> bool {
        self.inputs.contains(&var)
    }

    /// Literal occurrences in the source formula.
    pub fn occurrences(&self) -> usize {
        self.occurrences
    }

    /// Every literal over the graph's variables.
    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        (1..=self.variable_count).flat_map(|i| {
            let v = Var::from_index(i);
            [v.positive(), v.negative()]
        })
    }

    /// The AND terms feeding `δ(w)`.
    pub fn terms(&self, w: Lit) -> &[Vec<Lit>] {
        self.terms.get(w.code()).map_or(&[], |t| t.as_slice())
    }

    /// The circuit part `C_w` alone, with every operand wire `δ(u)` (and
    /// `input(δ(w))`) as a terminal. Single-operand AND terms are wires.
    pub fn local_circuit(&self, w: Lit) -> MonotoneCircuit {
        let mut nodes = Vec::new();
        let mut pins: BTreeMap<Lit, NodeId> = BTreeMap::new();
        let mut pin = |nodes: &mut Vec<Node>, u: Lit| {
            *pins.entry(u).or_insert_with(|| {
                nodes.push(Node::Input(u.var(), Rail::of(u)));
                nodes.len() - 1
            })
        };
        let own = self.is_input(w.var()).then(|| pin(&mut nodes, w));
        let term_pins: Vec<Vec<NodeId>> = self
            .terms(w)
            .iter()
            .map(|t| t.iter().map(|&u| pin(&mut nodes, u)).collect())
            .collect();
        let mut or_ops: Vec<NodeId> = own.into_iter().collect();
        let mut constant_true = None;
        for ops in term_pins {
            match ops.len() {
                0 => {
                    let id = *constant_true.get_or_insert_with(|| {
                        nodes.push(Node::Const(true));
                        nodes.len() - 1
                    });
                    or_ops.push(id);
                }
                1 => or_ops.push(ops[0]),
                _ => {
                    nodes.push(Node::And(ops));
                    or_ops.push(nodes.len() - 1);
                }
            }
        }
        // constants are terminals: move them ahead of the gates
        nodes.sort_by_key(|n| matches!(n, Node::And(_) | Node::Or(_)));
        let out = match or_ops.len() {
            1 => or_ops[0],
            _ => {
                nodes.push(Node::Or(or_ops));
                nodes.len() - 1
            }
        };
        MonotoneCircuit::from_parts(nodes, BTreeMap::from([(w, out)]))
    }
}

/// Literal to the circuit node computing its wire `δ(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LiteralGateMap(pub BTreeMap<Lit, NodeId>);

impl LiteralGateMap {
    pub fn get(&self, lit: Lit) -> Option<NodeId> {
        self.0.get(&lit).copied()
    }
}

/// How the loops of the raw network are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoopRemoval {
    /// One depth-first pass in literal order; every edge closing a cycle is
    /// dropped. One gate per literal at most, so the circuit stays linear in
    /// the formula, but a dropped edge is lost for every path through it.
    DepthFirstCut,
    /// Inside each strongly connected component of `s` literals the
    /// definitions are unrolled for up to `s` rounds, starting from all-`0`.
    /// Computes the propagation fixpoint exactly.
    #[default]
    Layered,
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub raw: RawGraph,
    pub circuit: MonotoneCircuit,
    pub gates: LiteralGateMap,
    /// Edges dropped by [`LoopRemoval::DepthFirstCut`]; layering drops none.
    pub cuts: usize,
}

/// Builds the loop-free dual-rail circuit of `formula`, with one output per
/// literal over its variables. Refuses unsatisfiable formulas.
pub fn extract_circuit(formula: &CnfFormula, inputs: &[Var]) -> Result<Extraction, CircuitError> {
    extract_circuit_with(formula, inputs, LoopRemoval::default())
}

pub fn extract_circuit_with(
    formula: &CnfFormula,
    inputs: &[Var],
    removal: LoopRemoval,
) -> Result<Extraction, CircuitError> {
    let propagator = Propagator::new(formula);
    let empty = crate::model::PartialAssignment::new(formula.variable_count());
    if !dpll::satisfiable(&propagator, &empty) {
        return Err(CircuitError::Unsatisfiable);
    }
    let raw = RawGraph::new(formula, inputs);
    let (circuit, cuts) = remove_loops_counted(&raw, removal);
    let gates = LiteralGateMap(circuit.outputs().clone());
    Ok(Extraction {
        raw,
        circuit,
        gates,
        cuts,
    })
}

/// Acyclic circuit for every literal of `raw`.
pub fn remove_loops(raw: &RawGraph, removal: LoopRemoval) -> MonotoneCircuit {
    remove_loops_counted(raw, removal).0
}

fn remove_loops_counted(raw: &RawGraph, removal: LoopRemoval) -> (MonotoneCircuit, usize) {
    let mut b = Builder::default();
    let (values, cuts) = match removal {
        LoopRemoval::DepthFirstCut => depth_first(raw, &mut b),
        LoopRemoval::Layered => (layered(raw, &mut b), 0),
    };
    let outputs = raw
        .literals()
        .map(|w| (w, values[w.code()].expect("every literal built")))
        .collect();
    (b.finish(outputs), cuts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    False,
    True,
    Node(NodeId),
}

/// Hash-consing circuit builder with constant folding. Gate ids live above
/// [`GATE_BASE`] until the terminals are known.
#[derive(Default)]
struct Builder {
    terminals: Vec<Node>,
    terminal_ids: HashMap<Node, NodeId>,
    gates: Vec<Node>,
    gate_ids: HashMap<Node, NodeId>,
}

const GATE_BASE: usize = usize::MAX / 2;

impl Builder {
    fn terminal(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.terminal_ids.get(&node) {
            return id;
        }
        let id = self.terminals.len();
        self.terminals.push(node.clone());
        self.terminal_ids.insert(node, id);
        id
    }

    fn pin(&mut self, w: Lit) -> Value {
        Value::Node(self.terminal(Node::Input(w.var(), Rail::of(w))))
    }

    fn gate(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.gate_ids.get(&node) {
            return id;
        }
        let id = GATE_BASE + self.gates.len();
        self.gates.push(node.clone());
        self.gate_ids.insert(node, id);
        id
    }

    fn and(&mut self, ops: impl IntoIterator<Item = Value>) -> Value {
        let mut ids = Vec::new();
        for v in ops {
            match v {
                Value::False => return Value::False,
                Value::True => {}
                Value::Node(id) => ids.push(id),
            }
        }
        ids.sort_unstable();
        ids.dedup();
        match ids.len() {
            0 => Value::True,
            1 => Value::Node(ids[0]),
            _ => Value::Node(self.gate(Node::And(ids))),
        }
    }

    fn or(&mut self, ops: impl IntoIterator<Item = Value>) -> Value {
        let mut ids = Vec::new();
        for v in ops {
            match v {
                Value::True => return Value::True,
                Value::False => {}
                Value::Node(id) => ids.push(id),
            }
        }
        ids.sort_unstable();
        ids.dedup();
        match ids.len() {
            0 => Value::False,
            1 => Value::Node(ids[0]),
            _ => Value::Node(self.gate(Node::Or(ids))),
        }
    }

    /// `δ(w)` from the current operand values.
    fn define(&mut self, raw: &RawGraph, w: Lit, operand: impl Fn(Lit) -> Value) -> Value {
        let own = if raw.is_input(w.var()) {
            self.pin(w)
        } else {
            Value::False
        };
        let mut ops = vec![own];
        for term in raw.terms(w) {
            let t = self.and(term.iter().map(|&u| operand(u)));
            ops.push(t);
        }
        self.or(ops)
    }

    fn finish(mut self, outputs: BTreeMap<Lit, Value>) -> MonotoneCircuit {
        let outputs: BTreeMap<Lit, NodeId> = outputs
            .into_iter()
            .map(|(w, v)| {
                let id = match v {
                    Value::Node(id) => id,
                    Value::True => self.terminal(Node::Const(true)),
                    Value::False => self.terminal(Node::Const(false)),
                };
                (w, id)
            })
            .collect();
        let offset = self.terminals.len();
        let rebase = |id: NodeId| if id >= GATE_BASE { id - GATE_BASE + offset } else { id };
        let mut nodes = self.terminals;
        nodes.extend(self.gates.into_iter().map(|g| match g {
            Node::And(ops) => Node::And(ops.into_iter().map(rebase).collect()),
            Node::Or(ops) => Node::Or(ops.into_iter().map(rebase).collect()),
            other => other,
        }));
        let outputs = outputs.into_iter().map(|(w, id)| (w, rebase(id))).collect();
        MonotoneCircuit::from_parts(nodes, outputs)
    }
}

fn depth_first(raw: &RawGraph, b: &mut Builder) -> (Vec<Option<Value>>, usize) {
    let slots = 2 * (raw.variable_count as usize + 1);
    let mut values: Vec<Option<Value>> = vec![None; slots];
    let mut on_path = vec![false; slots];
    let mut cuts = 0;

    // Explicit stack: (literal, next term, next operand, finished terms,
    // operands of the current term).
    struct Frame {
        w: Lit,
        term: usize,
        operand: usize,
        terms: Vec<Value>,
        current: Vec<Value>,
    }
    for root in raw.literals() {
        if values[root.code()].is_some() {
            continue;
        }
        on_path[root.code()] = true;
        let mut stack = vec![Frame {
            w: root,
            term: 0,
            operand: 0,
            terms: Vec::new(),
            current: Vec::new(),
        }];
        while let Some(top) = stack.last_mut() {
            let terms = raw.terms(top.w);
            if top.term == terms.len() {
                let frame = stack.pop().expect("non-empty");
                let own = if raw.is_input(frame.w.var()) {
                    b.pin(frame.w)
                } else {
                    Value::False
                };
                let v = b.or(std::iter::once(own).chain(frame.terms));
                on_path[frame.w.code()] = false;
                values[frame.w.code()] = Some(v);
                if let Some(parent) = stack.last_mut() {
                    parent.current.push(v);
                    parent.operand += 1;
                }
                continue;
            }
            let term = &terms[top.term];
            if top.operand == term.len() {
                let ops = std::mem::take(&mut top.current);
                let t = b.and(ops);
                top.terms.push(t);
                top.term += 1;
                top.operand = 0;
                continue;
            }
            let u = term[top.operand];
            if let Some(v) = values[u.code()] {
                top.current.push(v);
                top.operand += 1;
            } else if on_path[u.code()] {
                cuts += 1;
                top.current.push(Value::False);
                top.operand += 1;
            } else {
                on_path[u.code()] = true;
                stack.push(Frame {
                    w: u,
                    term: 0,
                    operand: 0,
                    terms: Vec::new(),
                    current: Vec::new(),
                });
            }
        }
    }
    (values, cuts)
}

fn layered(raw: &RawGraph, b: &mut Builder) -> Vec<Option<Value>> {
    use petgraph::algo::tarjan_scc;
    use petgraph::graph::DiGraph;

    let slots = 2 * (raw.variable_count as usize + 1);
    let mut g: DiGraph<Lit, ()> = DiGraph::new();
    let mut index = vec![None; slots];
    for w in raw.literals() {
        index[w.code()] = Some(g.add_node(w));
    }
    for w in raw.literals() {
        let to = index[w.code()].expect("node");
        for term in raw.terms(w) {
            for &u in term {
                g.update_edge(index[u.code()].expect("node"), to, ());
            }
        }
    }

    let mut values: Vec<Option<Value>> = vec![None; slots];
    // tarjan_scc lists components sinks first; operands must come first.
    let mut components = tarjan_scc(&g);
    components.reverse();
    for component in &components {
        let members: Vec<Lit> = component.iter().map(|&i| g[i]).collect();
        let mut current: Vec<(Lit, Value)> = members.iter().map(|&w| (w, Value::False)).collect();
        let mut vars: Vec<Var> = members.iter().map(|w| w.var()).collect();
        vars.sort_unstable();
        vars.dedup();
        let rounds = if members.len() == 1 { 1 } else { vars.len() + 1 };
        for _ in 0..rounds {
            let inside: HashMap<usize, Value> =
                current.iter().map(|&(w, v)| (w.code(), v)).collect();
            let next: Vec<(Lit, Value)> = members
                .iter()
                .map(|&w| {
                    let v = b.define(raw, w, |u| match inside.get(&u.code()) {
                        Some(&v) => v,
                        None => values[u.code()].expect("operand component built earlier"),
                    });
                    (w, v)
                })
                .collect();
            let stable = next == current;
            current = next;
            if stable {
                break;
            }
        }
        for (w, v) in current {
            values[w.code()] = Some(v);
        }
    }
    values
}
