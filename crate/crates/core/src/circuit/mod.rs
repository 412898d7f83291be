//! Dual-rail monotone circuits simulating unit propagation.
//!
//! A three-valued signal `u` travels on two wires `u+`, `u-`: `*` is
//! `(0,0)`, `0` is `(0,1)` and `1` is `(1,0)`. Circuits contain only AND and
//! OR gates, so raising an input wire never lowers an output.

mod extract;
mod filtering;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

pub use extract::{
    extract_circuit, extract_circuit_with, remove_loops, Extraction, LiteralGateMap, LoopRemoval,
    RawGraph,
};
pub use filtering::{combine_filtering, negate_filtering_output};

use crate::error::CircuitError;
use crate::model::{Lit, PartialAssignment, TriValue, Var};

/// A three-valued signal on two Boolean wires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DualRail {
    pub plus: bool,
    pub minus: bool,
}

impl DualRail {
    /// `(1,1)`: both values derived at once.
    pub fn is_contradiction(self) -> bool {
        self.plus && self.minus
    }

    pub fn to_tri(self) -> Option<TriValue> {
        match (self.plus, self.minus) {
            (false, false) => Some(TriValue::Unset),
            (false, true) => Some(TriValue::Zero),
            (true, false) => Some(TriValue::One),
            (true, true) => None,
        }
    }
}

pub fn dual_rail(v: TriValue) -> DualRail {
    match v {
        TriValue::Unset => DualRail {
            plus: false,
            minus: false,
        },
        TriValue::Zero => DualRail {
            plus: false,
            minus: true,
        },
        TriValue::One => DualRail {
            plus: true,
            minus: false,
        },
    }
}

/// Which wire of a dual-rail pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rail {
    Plus,
    Minus,
}

impl Rail {
    /// The wire carrying "this literal is true": `δ(x) = x+`, `δ(¬x) = x-`.
    pub fn of(lit: Lit) -> Rail {
        if lit.is_positive() {
            Rail::Plus
        } else {
            Rail::Minus
        }
    }
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Input(Var, Rail),
    Const(bool),
    And(Vec<NodeId>),
    Or(Vec<NodeId>),
}

/// Name of the wire `δ(lit)`, e.g. `x3+` or `x3-`.
pub fn delta_name(lit: Lit) -> String {
    let sign = if lit.is_positive() { '+' } else { '-' };
    format!("x{}{}", lit.var().index(), sign)
}

/// An acyclic AND/OR circuit. Terminals come first, and every gate refers
/// only to earlier nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonotoneCircuit {
    nodes: Vec<Node>,
    outputs: BTreeMap<Lit, NodeId>,
}

impl MonotoneCircuit {
    pub(crate) fn from_parts(nodes: Vec<Node>, outputs: BTreeMap<Lit, NodeId>) -> MonotoneCircuit {
        let c = MonotoneCircuit { nodes, outputs };
        debug_assert!(c.is_topological());
        c
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn outputs(&self) -> &BTreeMap<Lit, NodeId> {
        &self.outputs
    }

    pub fn output(&self, lit: Lit) -> Result<NodeId, CircuitError> {
        self.outputs
            .get(&lit)
            .copied()
            .ok_or(CircuitError::NoSuchOutput(lit))
    }

    pub fn gate_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::And(_) | Node::Or(_)))
            .count()
    }

    pub fn inputs(&self) -> impl Iterator<Item = (Var, Rail)> + '_ {
        self.nodes.iter().filter_map(|n| match n {
            Node::Input(v, r) => Some((*v, *r)),
            _ => None,
        })
    }

    fn is_topological(&self) -> bool {
        let mut seen_gate = false;
        self.nodes.iter().enumerate().all(|(i, n)| match n {
            Node::Input(..) | Node::Const(_) => !seen_gate,
            Node::And(ops) | Node::Or(ops) => {
                seen_gate = true;
                ops.iter().all(|&o| o < i)
            }
        })
    }

    /// Evaluates every node. Each input variable's pair of pins is bound
    /// by `inputs`.
    pub fn eval(&self, inputs: &BTreeMap<Var, DualRail>) -> Result<CircuitValues<'_>, CircuitError> {
        let mut values = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(var, rail) => {
                    let pair = inputs.get(var).ok_or_else(|| {
                        CircuitError::UnboundTerminal(delta_name(Lit::new(*var, *rail == Rail::Plus)))
                    })?;
                    match rail {
                        Rail::Plus => pair.plus,
                        Rail::Minus => pair.minus,
                    }
                }
                Node::Const(b) => *b,
                Node::And(ops) => ops.iter().all(|&o| values[o]),
                Node::Or(ops) => ops.iter().any(|&o| values[o]),
            };
            values.push(v);
        }
        Ok(CircuitValues {
            values,
            outputs: &self.outputs,
        })
    }

    /// Binds every input pin from a three-valued assignment.
    pub fn eval_assignment(&self, a: &PartialAssignment) -> CircuitValues<'_> {
        let inputs: BTreeMap<Var, DualRail> =
            self.inputs().map(|(v, _)| (v, dual_rail(a.get(v)))).collect();
        self.eval(&inputs).expect("all pins bound")
    }

    /// Keeps only the outputs for `lits`, pruned.
    pub fn restrict(&self, lits: &[Lit]) -> Result<MonotoneCircuit, CircuitError> {
        let mut outputs = BTreeMap::new();
        for &l in lits {
            outputs.insert(l, self.output(l)?);
        }
        let full = MonotoneCircuit {
            nodes: self.nodes.clone(),
            outputs,
        };
        Ok(full.prune())
    }

    /// Drops nodes no output depends on.
    pub fn prune(&self) -> MonotoneCircuit {
        let mut live = vec![false; self.nodes.len()];
        for &o in self.outputs.values() {
            live[o] = true;
        }
        for i in (0..self.nodes.len()).rev() {
            if live[i] {
                if let Node::And(ops) | Node::Or(ops) = &self.nodes[i] {
                    for &o in ops {
                        live[o] = true;
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if !live[i] {
                continue;
            }
            remap[i] = nodes.len();
            nodes.push(match n {
                Node::And(ops) => Node::And(ops.iter().map(|&o| remap[o]).collect()),
                Node::Or(ops) => Node::Or(ops.iter().map(|&o| remap[o]).collect()),
                other => other.clone(),
            });
        }
        let outputs = self.outputs.iter().map(|(&l, &o)| (l, remap[o])).collect();
        MonotoneCircuit::from_parts(nodes, outputs)
    }

    fn node_name(&self, id: NodeId) -> String {
        match &self.nodes[id] {
            Node::Input(v, r) => delta_name(Lit::new(*v, *r == Rail::Plus)),
            Node::Const(b) => format!("c{}", *b as u8),
            _ => format!("g{id}"),
        }
    }

    /// Gate-list text: terminals first (`<id> INPUT x3+`, `<id> CONST 1`),
    /// then `<id> AND|OR <operand-ids...>`, then `OUTPUT <δ-name> <id>`.
    pub fn to_gate_list(&self) -> String {
        let mut s = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = match n {
                Node::Input(..) => writeln!(s, "{i} INPUT {}", self.node_name(i)),
                Node::Const(b) => writeln!(s, "{i} CONST {}", *b as u8),
                Node::And(ops) | Node::Or(ops) => {
                    let kind = if matches!(n, Node::And(_)) { "AND" } else { "OR" };
                    let ops: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                    writeln!(s, "{i} {kind} {}", ops.join(" "))
                }
            };
        }
        for (&lit, &id) in &self.outputs {
            let _ = writeln!(s, "OUTPUT {} {id}", delta_name(lit));
        }
        s
    }

    /// Graphviz rendering, inputs on the left flowing right.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph circuit {\n  rankdir=LR;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let (label, shape) = match n {
                Node::Input(..) => (self.node_name(i), "plaintext"),
                Node::Const(b) => ((*b as u8).to_string(), "plaintext"),
                Node::And(_) => ("and".to_string(), "box"),
                Node::Or(_) => ("or".to_string(), "box"),
            };
            let _ = writeln!(s, "  n{i} [label=\"{label}\", shape={shape}];");
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Node::And(ops) | Node::Or(ops) = n {
                for o in ops {
                    let _ = writeln!(s, "  n{o} -> n{i};");
                }
            }
        }
        for (&lit, &id) in &self.outputs {
            let name = delta_name(lit);
            let _ = writeln!(s, "  \"out_{name}\" [label=\"{name}\", shape=plaintext];");
            let _ = writeln!(s, "  n{id} -> \"out_{name}\";");
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for MonotoneCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_gate_list())
    }
}

/// Node values from one evaluation.
#[derive(Debug, Clone)]
pub struct CircuitValues<'c> {
    values: Vec<bool>,
    outputs: &'c BTreeMap<Lit, NodeId>,
}

impl CircuitValues<'_> {
    pub fn node(&self, id: NodeId) -> bool {
        self.values[id]
    }

    /// Value of `δ(lit)`.
    pub fn delta(&self, lit: Lit) -> Result<bool, CircuitError> {
        let id = self.outputs.get(&lit).ok_or(CircuitError::NoSuchOutput(lit))?;
        Ok(self.values[*id])
    }

    /// The pair `(δ(x), δ(¬x))`.
    pub fn pair(&self, var: Var) -> Result<DualRail, CircuitError> {
        Ok(DualRail {
            plus: self.delta(var.positive())?,
            minus: self.delta(var.negative())?,
        })
    }
}

/// Evaluates `c` and returns the values of the requested nodes.
pub fn eval_circuit(
    c: &MonotoneCircuit,
    inputs: &BTreeMap<Var, DualRail>,
    queried: &[NodeId],
) -> Result<Vec<bool>, CircuitError> {
    let values = c.eval(inputs)?;
    Ok(queried.iter().map(|&q| values.node(q)).collect())
}

#[cfg(test)]
mod tests;
