//! Tseitin definitions of the gates the counting circuits are built from.
//! Each gate is defined in both directions, so fixed inputs always fix the
//! output.

use super::Emitter;
use crate::model::Lit;

pub(super) fn and2(out: &mut Emitter, a: Lit, b: Lit) -> Lit {
    let g = out.fresh();
    out.clause([!g, a]);
    out.clause([!g, b]);
    out.clause([g, !a, !b]);
    g
}

pub(super) fn or2(out: &mut Emitter, a: Lit, b: Lit) -> Lit {
    let g = out.fresh();
    out.clause([g, !a]);
    out.clause([g, !b]);
    out.clause([!g, a, b]);
    g
}

pub(super) fn xor2(out: &mut Emitter, a: Lit, b: Lit) -> Lit {
    let g = out.fresh();
    out.clause([!g, a, b]);
    out.clause([!g, !a, !b]);
    out.clause([g, !a, b]);
    out.clause([g, a, !b]);
    g
}

pub(super) fn xor3(out: &mut Emitter, a: Lit, b: Lit, c: Lit) -> Lit {
    let g = out.fresh();
    // one clause per input pattern, forcing g to the pattern's parity
    for pattern in 0..8u32 {
        let falsified_by = |l: Lit, bit: u32| if pattern >> bit & 1 == 1 { !l } else { l };
        let g_lit = if pattern.count_ones() % 2 == 1 { g } else { !g };
        out.clause([falsified_by(a, 0), falsified_by(b, 1), falsified_by(c, 2), g_lit]);
    }
    g
}

/// Majority of three: the carry of a full adder.
pub(super) fn maj3(out: &mut Emitter, a: Lit, b: Lit, c: Lit) -> Lit {
    let g = out.fresh();
    out.clause([!a, !b, g]);
    out.clause([!a, !c, g]);
    out.clause([!b, !c, g]);
    out.clause([a, b, !g]);
    out.clause([a, c, !g]);
    out.clause([b, c, !g]);
    g
}

/// `(sum, carry)`
pub(super) fn half_adder(out: &mut Emitter, a: Lit, b: Lit) -> (Lit, Lit) {
    (xor2(out, a, b), and2(out, a, b))
}

/// `(sum, carry)`
pub(super) fn full_adder(out: &mut Emitter, a: Lit, b: Lit, c: Lit) -> (Lit, Lit) {
    (xor3(out, a, b, c), maj3(out, a, b, c))
}

/// `a ∧ b` where `None` stands for the constant true.
pub(super) fn and_opt(out: &mut Emitter, a: Option<Lit>, b: Lit) -> Lit {
    match a {
        None => b,
        Some(a) => and2(out, a, b),
    }
}
