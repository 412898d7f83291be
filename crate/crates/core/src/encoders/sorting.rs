//! Odd-even merge sorting network. Inputs are padded to a power of two with
//! auxiliaries held false by unit clauses; outputs come out in decreasing
//! order, so output `k` (0-based) is "more than `k` inputs are true".

use super::gates::{and2, or2};
use super::Emitter;
use crate::model::Lit;

pub(super) fn encode(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let width = inputs.len().next_power_of_two();
    let mut wires: Vec<Lit> = inputs.to_vec();
    while wires.len() < width {
        let pad = out.fresh();
        out.clause([!pad]);
        wires.push(pad);
    }
    let mut comparators = Vec::new();
    sort(0, width, &mut comparators);
    for (hi, lo) in comparators {
        let (a, b) = (wires[hi], wires[lo]);
        wires[hi] = or2(out, a, b);
        wires[lo] = and2(out, a, b);
    }
    out.clause([!wires[k]]);
}

/// Comparator positions `(i, j)`, `i < j`, of Batcher's network sorting
/// `len` wires starting at `start`. Each comparator sends the larger value
/// to `i`.
pub(crate) fn sort(start: usize, len: usize, out: &mut Vec<(usize, usize)>) {
    if len > 1 {
        let half = len / 2;
        sort(start, half, out);
        sort(start + half, half, out);
        merge(start, len, 1, out);
    }
}

fn merge(start: usize, len: usize, stride: usize, out: &mut Vec<(usize, usize)>) {
    let step = stride * 2;
    if step < len {
        merge(start, len, step, out);
        merge(start + stride, len, step, out);
        let mut i = start + stride;
        while i + stride < start + len {
            out.push((i, i + stride));
            i += step;
        }
    } else {
        out.push((start, start + stride));
    }
}
