//! Layered decision diagram over `(inputs read, ones counted)` with the
//! count saturating at `k+1`. Node `(i, c)` stands for "the remaining inputs
//! `i..n` contribute at most `k − c` ones"; its high child is `(i+1, c+1)`,
//! its low child `(i+1, c)`.
//!
//! Each node variable gets the four monotone clauses
//! `hi → v`, `lo ∧ ¬x → v`, `v → lo`, `v ∧ x → hi`,
//! with terminal children substituted away.

use super::Emitter;
use crate::model::Lit;

#[derive(Clone, Copy)]
enum Node {
    True,
    False,
    Var(Lit),
}

pub(super) fn encode(out: &mut Emitter, inputs: &[Lit], k: usize) {
    let n = inputs.len();
    let layers = build_layers(out, n, k);
    let node = |i: usize, c: usize| -> Node {
        if c > k {
            Node::False
        } else if k - c >= n - i {
            Node::True
        } else {
            Node::Var(layers[i][c].expect("reachable node"))
        }
    };

    let Node::Var(root) = node(0, 0) else {
        unreachable!("degenerate bounds are handled by the caller")
    };
    out.clause([root]);

    for i in 0..n {
        for c in 0..=k.min(i) {
            let Node::Var(v) = node(i, c) else { continue };
            let x = inputs[i];
            let hi = node(i + 1, c + 1);
            let lo = node(i + 1, c);
            emit(out, [negate(hi), Node::Var(v)]);
            emit(out, [negate(lo), Node::Var(x), Node::Var(v)]);
            emit(out, [lo, Node::Var(!v)]);
            emit(out, [hi, Node::Var(!x), Node::Var(!v)]);
        }
    }
}

/// Allocates one auxiliary per non-terminal node, layer by layer.
fn build_layers(out: &mut Emitter, n: usize, k: usize) -> Vec<Vec<Option<Lit>>> {
    (0..=n)
        .map(|i| {
            (0..=k.min(i))
                .map(|c| (k - c < n - i).then(|| out.fresh()))
                .collect()
        })
        .collect()
}

/// Number of non-terminal nodes of the diagram for `≤k` over `n` inputs.
#[cfg(test)]
pub(crate) fn node_count(n: usize, k: usize) -> usize {
    (0..=n)
        .map(|i| (0..=k.min(i)).filter(|&c| k >= c && k - c < n - i).count())
        .sum()
}

fn negate(node: Node) -> Node {
    match node {
        Node::True => Node::False,
        Node::False => Node::True,
        Node::Var(l) => Node::Var(!l),
    }
}

fn emit<const N: usize>(out: &mut Emitter, items: [Node; N]) {
    let mut lits = Vec::with_capacity(N);
    for item in items {
        match item {
            Node::True => return,
            Node::False => {}
            Node::Var(l) => lits.push(l),
        }
    }
    out.clause(lits);
}
