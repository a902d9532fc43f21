#![allow(dead_code)]

use proptest::prelude::*;
use vminor_core::{Graph, VertexId, VertexSet};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::edgeless(VertexSet::range(n));
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits[k] {
                g.add_edge(VertexId::of(a), VertexId::of(b)).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Graphs on `0..n` for `n` in `lo..=hi`.
pub fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn p4() -> Graph {
    Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
}

pub fn p3() -> Graph {
    Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
}

pub fn v(i: usize) -> VertexId {
    VertexId::of(i)
}
