//! Compilers from `≤k(ℓ1,…,ℓn)` to CNF.
//!
//! Every encoder shares the same contract: for each complete assignment of
//! the inputs, the formula restricted to it is satisfiable iff at most `k`
//! input literals are true. Auxiliary variables are allocated contiguously
//! after the largest input variable. Degenerate bounds are handled once,
//! here: `k ≥ n` gives the empty formula and `k = 0` gives one negative unit
//! clause per input.

mod bdd;
mod binary;
mod gates;
mod sequential;
mod sorting;
mod totalizer;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::EncodeError;
use crate::model::{CardinalityConstraint, Clause, CnfFormula, Lit, Var};

/// Default ceiling on emitted clauses.
pub const DEFAULT_MAX_CLAUSES: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EncoderKind {
    Binomial,
    BinaryAdder,
    ParallelCounterTree,
    Totalizer,
    SequentialCounter,
    SortingNetwork,
    Bdd,
}

impl EncoderKind {
    pub const ALL: [EncoderKind; 7] = [
        EncoderKind::Binomial,
        EncoderKind::BinaryAdder,
        EncoderKind::ParallelCounterTree,
        EncoderKind::Totalizer,
        EncoderKind::SequentialCounter,
        EncoderKind::SortingNetwork,
        EncoderKind::Bdd,
    ];

    /// Encoders counting in unary; these propagate arc consistency.
    pub const UNARY: [EncoderKind; 4] = [
        EncoderKind::Totalizer,
        EncoderKind::SequentialCounter,
        EncoderKind::SortingNetwork,
        EncoderKind::Bdd,
    ];

    /// Encoders counting in binary.
    pub const BINARY: [EncoderKind; 2] =
        [EncoderKind::BinaryAdder, EncoderKind::ParallelCounterTree];

    pub fn name(self) -> &'static str {
        match self {
            EncoderKind::Binomial => "binomial",
            EncoderKind::BinaryAdder => "binary-adder",
            EncoderKind::ParallelCounterTree => "parallel-counter-tree",
            EncoderKind::Totalizer => "totalizer",
            EncoderKind::SequentialCounter => "sequential-counter",
            EncoderKind::SortingNetwork => "sorting-network",
            EncoderKind::Bdd => "bdd",
        }
    }

    pub fn valid_names() -> String {
        EncoderKind::ALL.map(EncoderKind::name).join(", ")
    }

    pub fn encode(self, q: &CardinalityConstraint) -> Result<EncodingResult, EncodeError> {
        self.encode_with(q, DEFAULT_MAX_CLAUSES)
    }

    pub fn encode_with(
        self,
        q: &CardinalityConstraint,
        max_clauses: u128,
    ) -> Result<EncodingResult, EncodeError> {
        let n = q.n();
        if n == 0 {
            return Err(EncodeError::NoInputs);
        }
        let k = q.k();
        let mut out = Emitter::new(q.max_var());
        if k == 0 {
            for &l in q.inputs() {
                out.clause([!l]);
            }
        } else if k < n {
            if self == EncoderKind::Binomial {
                let estimated = binomial_coefficient(n as u128, k as u128 + 1);
                if estimated > max_clauses {
                    return Err(EncodeError::SizeGuard {
                        estimated,
                        limit: max_clauses,
                    });
                }
            }
            let inputs = q.inputs();
            match self {
                EncoderKind::Binomial => encode_binomial(&mut out, inputs, k),
                EncoderKind::BinaryAdder => binary::encode_adder_network(&mut out, inputs, k),
                EncoderKind::ParallelCounterTree => binary::encode_counter_tree(&mut out, inputs, k),
                EncoderKind::Totalizer => totalizer::encode(&mut out, inputs, k),
                EncoderKind::SequentialCounter => sequential::encode(&mut out, inputs, k),
                EncoderKind::SortingNetwork => sorting::encode(&mut out, inputs, k),
                EncoderKind::Bdd => bdd::encode(&mut out, inputs, k),
            }
        }
        if out.clauses.len() as u128 > max_clauses {
            return Err(EncodeError::SizeGuard {
                estimated: out.clauses.len() as u128,
                limit: max_clauses,
            });
        }
        out.finish(q, self)
    }
}

impl fmt::Display for EncoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncoderKind {
    type Err = EncodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EncoderKind::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| EncodeError::UnknownEncoder {
                name: s.to_string(),
                valid: EncoderKind::valid_names(),
            })
    }
}

/// A compiled constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingResult {
    pub formula: CnfFormula,
    pub constraint: CardinalityConstraint,
    /// Input variables in constraint order.
    pub input_vars: Vec<Var>,
    /// Auxiliary variable indices, half-open.
    pub aux_range: Range<u32>,
    pub encoder: EncoderKind,
}

impl EncodingResult {
    pub fn aux_count(&self) -> u32 {
        self.aux_range.end - self.aux_range.start
    }
}

/// Issues fresh variable indices; never repeats one.
#[derive(Debug, Clone)]
pub struct VarAllocator {
    next: u32,
}

impl VarAllocator {
    /// Fresh indices start right after `last_used`.
    pub fn after(last_used: u32) -> VarAllocator {
        VarAllocator {
            next: last_used + 1,
        }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var::from_index(self.next);
        self.next += 1;
        v
    }

    pub fn peek(&self) -> u32 {
        self.next
    }
}

/// Clause sink shared by the encoders.
pub(crate) struct Emitter {
    first_aux: u32,
    vars: VarAllocator,
    clauses: Vec<Vec<Lit>>,
}

impl Emitter {
    fn new(max_input: u32) -> Emitter {
        Emitter {
            first_aux: max_input + 1,
            vars: VarAllocator::after(max_input),
            clauses: Vec::new(),
        }
    }

    pub(crate) fn fresh(&mut self) -> Lit {
        self.vars.fresh().positive()
    }

    pub(crate) fn clause<I: IntoIterator<Item = Lit>>(&mut self, lits: I) {
        self.clauses.push(lits.into_iter().collect());
    }

    fn finish(
        self,
        q: &CardinalityConstraint,
        encoder: EncoderKind,
    ) -> Result<EncodingResult, EncodeError> {
        let end = self.vars.peek();
        let mut formula = CnfFormula::new(end - 1);
        for lits in self.clauses {
            formula.push(Clause::new(lits)?)?;
        }
        Ok(EncodingResult {
            formula,
            constraint: q.clone(),
            input_vars: q.inputs().iter().map(|l| l.var()).collect(),
            aux_range: self.first_aux..end,
            encoder,
        })
    }
}

/// One negative clause per `(k+1)`-subset of the inputs, in lexicographic
/// subset order.
fn encode_binomial(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let size = k + 1;
    let mut pick: Vec<usize> = (0..size).collect();
    loop {
        out.clause(pick.iter().map(|&i| !inputs[i]));
        let Some(pos) = (0..size).rev().find(|&p| pick[p] < inputs.len() - size + p) else {
            return;
        };
        pick[pos] += 1;
        for p in pos + 1..size {
            pick[p] = pick[p - 1] + 1;
        }
    }
}

fn binomial_coefficient(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Encodes `q` with `kind` under the default size guard.
pub fn encode(kind: EncoderKind, q: &CardinalityConstraint) -> Result<EncodingResult, EncodeError> {
    kind.encode(q)
}
