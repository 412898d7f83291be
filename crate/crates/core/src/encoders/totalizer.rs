//! Balanced tree of unary adders. A node over `m` leaves outputs `m` sorted
//! bits, bit `j` meaning "at least `j` of my leaves are true".

use super::Emitter;
use crate::model::Lit;

pub(super) fn encode(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let root = node(out, inputs);
    out.clause([!root[k]]);
}

fn node(out: &mut Emitter, leaves: &[Lit]) -> Vec<Lit> {
    if leaves.len() == 1 {
        return vec![leaves[0]];
    }
    let mid = leaves.len() / 2;
    let a = node(out, &leaves[..mid]);
    let b = node(out, &leaves[mid..]);
    let r: Vec<Lit> = (0..leaves.len()).map(|_| out.fresh()).collect();
    // 1-based unary access; index 0 is the constant true, past-the-end false
    for i in 0..=a.len() {
        for j in 0..=b.len() {
            if i + j > 0 {
                let mut c = vec![r[i + j - 1]];
                if i > 0 {
                    c.push(!a[i - 1]);
                }
                if j > 0 {
                    c.push(!b[j - 1]);
                }
                out.clause(c);
            }
            if i + j < leaves.len() {
                let mut c = vec![!r[i + j]];
                if i < a.len() {
                    c.push(a[i]);
                }
                if j < b.len() {
                    c.push(b[j]);
                }
                out.clause(c);
            }
        }
    }
    r
}
