#![allow(dead_code)]

use std::collections::BTreeSet;

use mixgraph::graph::MixedGraph;
use proptest::prelude::*;

/// Random mixed graph on `1..=max_n` vertices. Arc digons are broken up so
/// the result is always representable in digraph6 next to its edges.
pub fn arb_mixed(max_n: usize) -> impl Strategy<Value = MixedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * n;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(any::<bool>(), pairs))
    })
    .prop_map(|(n, e, a)| {
        let mut edges = BTreeSet::new();
        let mut arcs = BTreeSet::new();
        for u in 0..n {
            for v in 0..n {
                if u < v && e[u * n + v] {
                    edges.insert((u, v));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                let parallel = edges.contains(&(u.min(v), u.max(v)));
                if a[u * n + v] && !parallel && !arcs.contains(&(v, u)) {
                    arcs.insert((u, v));
                }
            }
        }
        MixedGraph::build(n, edges, arcs).unwrap()
    })
}

/// Random permutation of `0..n`.
pub fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Graph together with a relabeling of it.
pub fn arb_relabeled(max_n: usize) -> impl Strategy<Value = (MixedGraph, Vec<usize>)> {
    arb_mixed(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), arb_perm(n))
    })
}
