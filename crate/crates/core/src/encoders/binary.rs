//! Binary bit counters followed by a comparator against `k`.

use std::collections::VecDeque;

use super::gates::{and_opt, full_adder, half_adder, xor2, xor3};
use super::Emitter;
use crate::model::Lit;

/// Column-wise chain of adders: while a weight column holds three bits a
/// full adder compresses them, two bits go through a half adder, and every
/// carry moves to the next column. The lone bit left per column is the sum.
pub(super) fn encode_adder_network(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let mut columns: Vec<VecDeque<Lit>> = vec![inputs.iter().copied().collect()];
    let mut sum = Vec::new();
    let mut weight = 0;
    while weight < columns.len() {
        loop {
            let column = &mut columns[weight];
            let (bit, carry) = match column.len() {
                0 | 1 => break,
                2 => {
                    let (a, b) = (column[0], column[1]);
                    column.drain(..2);
                    half_adder(out, a, b)
                }
                _ => {
                    let (a, b, c) = (column[0], column[1], column[2]);
                    column.drain(..3);
                    full_adder(out, a, b, c)
                }
            };
            columns[weight].push_back(bit);
            if columns.len() == weight + 1 {
                columns.push(VecDeque::new());
            }
            columns[weight + 1].push_back(carry);
        }
        sum.push(columns[weight][0]);
        weight += 1;
    }
    at_most(out, &sum, k);
}

/// Balanced tree: count each half recursively, then add the two binary
/// numbers with a ripple-carry adder.
pub(super) fn encode_counter_tree(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let sum = count(out, inputs);
    at_most(out, &sum, k);
}

fn count(out: &mut Emitter, inputs: &[Lit]) -> Vec<Lit> {
    if inputs.len() == 1 {
        return vec![inputs[0]];
    }
    let mid = inputs.len() / 2;
    let left = count(out, &inputs[..mid]);
    let right = count(out, &inputs[mid..]);
    ripple_add(out, &left, &right, bit_length(inputs.len()))
}

/// Sum of two little-endian numbers in exactly `width` bits; no carry is
/// produced out of the top position.
fn ripple_add(out: &mut Emitter, a: &[Lit], b: &[Lit], width: usize) -> Vec<Lit> {
    let mut bits = Vec::with_capacity(width);
    let mut carry = None;
    for i in 0..width {
        let ops: Vec<Lit> = [a.get(i).copied(), b.get(i).copied(), carry]
            .into_iter()
            .flatten()
            .collect();
        let top = i + 1 == width;
        let (bit, next) = match (ops.as_slice(), top) {
            ([x], _) => (*x, None),
            ([x, y], true) => (xor2(out, *x, *y), None),
            ([x, y], false) => {
                let (s, c) = half_adder(out, *x, *y);
                (s, Some(c))
            }
            ([x, y, z], true) => (xor3(out, *x, *y, *z), None),
            ([x, y, z], false) => {
                let (s, c) = full_adder(out, *x, *y, *z);
                (s, Some(c))
            }
            _ => unreachable!("width covers every operand"),
        };
        bits.push(bit);
        carry = next;
    }
    bits
}

fn bit_length(value: usize) -> usize {
    (usize::BITS - value.leading_zeros()) as usize
}

/// Asserts `Σ 2^i·sum[i] ≤ k`, scanning from the most significant bit.
///
/// The number is at most `k` iff it equals `k`, or at some position where
/// `k` has a one the number has a zero and all higher bits agree. Equal
/// prefixes and each such term are Tseitin AND gates; one clause takes
/// their disjunction.
fn at_most(out: &mut Emitter, sum: &[Lit], k: usize) {
    debug_assert!(k < 1 << sum.len());
    let mut prefix_equal: Option<Lit> = None;
    let mut disjuncts = Vec::new();
    for i in (0..sum.len()).rev() {
        let k_bit = k >> i & 1 == 1;
        if k_bit {
            disjuncts.push(and_opt(out, prefix_equal, !sum[i]));
        }
        let agree = if k_bit { sum[i] } else { !sum[i] };
        prefix_equal = Some(and_opt(out, prefix_equal, agree));
    }
    disjuncts.push(prefix_equal.expect("at least one sum bit"));
    out.clause(disjuncts);
}
