//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use crate::encoders::EncodingResult;
use crate::error::DimacsError;
use crate::model::{Clause, CnfFormula, Lit};

/// Renders `formula` with the given comment lines (without the `c `).
pub fn write(formula: &CnfFormula, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "c {c}");
    }
    let _ = writeln!(s, "p cnf {} {}", formula.variable_count(), formula.len());
    for clause in formula.clauses() {
        for l in clause.lits() {
            let _ = write!(s, "{} ", l.to_dimacs());
        }
        s.push_str("0\n");
    }
    s
}

/// The comment line describing an encoding:
/// `encoder=<name> n=<n> k=<k> aux=<first>..<last>` (inclusive, or `none`).
pub fn provenance(e: &EncodingResult) -> String {
    let aux = if e.aux_range.is_empty() {
        "none".to_string()
    } else {
        format!("{}..{}", e.aux_range.start, e.aux_range.end - 1)
    };
    format!(
        "encoder={} n={} k={} aux={}",
        e.encoder,
        e.constraint.n(),
        e.constraint.k(),
        aux
    )
}

pub fn write_encoding(e: &EncodingResult) -> String {
    write(&e.formula, &[provenance(e)])
}

/// Parses a DIMACS CNF document. Clauses may span lines; `%` ends the input.
pub fn parse(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut formula = CnfFormula::new(0);
    let mut pending: Vec<Lit> = Vec::new();
    let mut clauses_read = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            let fields: Vec<&str> = t.split_whitespace().collect();
            let syntax = |reason: &str| DimacsError::Syntax {
                line: line_no,
                reason: reason.to_string(),
            };
            if header.is_some() {
                return Err(syntax("second problem line"));
            }
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(syntax("expected `p cnf <vars> <clauses>`"));
            }
            let vars = fields[2].parse().map_err(|_| syntax("bad variable count"))?;
            let count = fields[3].parse().map_err(|_| syntax("bad clause count"))?;
            header = Some((vars, count));
            formula = CnfFormula::new(vars);
            continue;
        }
        if header.is_none() {
            return Err(DimacsError::Syntax {
                line: line_no,
                reason: "clause before problem line".into(),
            });
        }
        for token in t.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::Syntax {
                line: line_no,
                reason: format!("`{token}` is not an integer"),
            })?;
            if value == 0 {
                formula.push(Clause::new(pending.drain(..))?)?;
                clauses_read += 1;
            } else {
                pending.push(Lit::from_dimacs(value)?);
            }
        }
    }
    let Some((_, expected)) = header else {
        return Err(DimacsError::Syntax {
            line: 0,
            reason: "missing problem line".into(),
        });
    };
    if !pending.is_empty() {
        return Err(DimacsError::Syntax {
            line: text.lines().count(),
            reason: "last clause is not terminated by 0".into(),
        });
    }
    if clauses_read != expected {
        return Err(DimacsError::Syntax {
            line: 0,
            reason: format!("header announces {expected} clauses, found {clauses_read}"),
        });
    }
    Ok(formula)
}
