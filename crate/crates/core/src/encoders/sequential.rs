//! Sequential counter: register `s[i][j]` holds "at least `j+1` of the first
//! `i+1` inputs are true", for `j < k`, threaded left to right.

use super::Emitter;
use crate::model::Lit;

pub(super) fn encode(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let n = inputs.len();
    let registers: Vec<Vec<Lit>> = (0..n - 1)
        .map(|_| (0..k).map(|_| out.fresh()).collect())
        .collect();

    let x = inputs;
    let s = &registers;
    out.clause([!x[0], s[0][0]]);
    for j in 1..k {
        out.clause([!s[0][j]]);
    }
    for i in 1..n - 1 {
        out.clause([!x[i], s[i][0]]);
        out.clause([!s[i - 1][0], s[i][0]]);
        for j in 1..k {
            out.clause([!x[i], !s[i - 1][j - 1], s[i][j]]);
            out.clause([!s[i - 1][j], s[i][j]]);
        }
        // overflow
        out.clause([!x[i], !s[i - 1][k - 1]]);
    }
    out.clause([!x[n - 1], !s[n - 2][k - 1]]);
}
