mod common;

use common::{graphs, v};
use proptest::prelude::*;
use vminor_core::circle::{circle_diagram, interlacement_graph, is_circle_graph, is_planar, verify_de_fraysseix, ChordDiagram};
use vminor_core::families::{build_g_t, classify_family_membership, closure_audit, complete_multipartite};
use vminor_core::matroid::Multigraph;
use vminor_core::{Graph, VertexId};

fn diagrams(lo: usize, hi: usize) -> impl Strategy<Value = ChordDiagram> {
    (lo..=hi).prop_flat_map(|n| {
        Just((0..2 * n).map(|i| VertexId::of(i / 2)).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|w| ChordDiagram::new(w).unwrap())
    })
}

/// Interlacement straight from the definition: exactly one endpoint of `b`
/// lies strictly between the endpoints of `a`.
fn naive_interlacement(d: &ChordDiagram) -> Graph {
    let w = d.word();
    let mut g = Graph::edgeless(d.chords());
    for a in d.chords() {
        let pa: Vec<usize> = (0..w.len()).filter(|&i| w[i] == a).collect();
        for b in d.chords() {
            if a < b {
                let inside = (pa[0] + 1..pa[1]).filter(|&i| w[i] == b).count();
                if inside == 1 {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
    }
    g
}

/// Non-planarity on at most six vertices: a `K₃,₃` or `K₅` subgraph, or an
/// edge whose contraction leaves a `K₅`.
fn naive_nonplanar(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
    let subsets = |k: usize| (0u32..1 << n).filter(move |m| m.count_ones() as usize == k);
    let members = |m: u32| (0..n).filter(move |i| m >> i & 1 == 1);
    let k5 = subsets(5).any(|m| members(m).all(|a| members(m).all(|b| a == b || adj(a, b))));
    let k33 = subsets(6).any(|m| {
        subsets(3).filter(|s| s & !m == 0).any(|s| members(s).all(|a| members(m & !s).all(|b| adj(a, b))))
    });
    let contracted = n == 6
        && edges.iter().any(|&(u, w)| {
            u != w && {
                let near = |a: usize, b: usize| {
                    let (a2, b2) = (if a == w { u } else { a }, b);
                    adj(a, b) || (a2 == u && adj(w, b2)) || (b == u && adj(a, w))
                };
                let rest: Vec<usize> = (0..n).filter(|&i| i != w).collect();
                rest.iter().all(|&a| rest.iter().all(|&b| a == b || near(a, b)))
            }
        });
    k5 || k33 || contracted
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interlacement_ignores_rotation_and_reflection(d in diagrams(1, 9), by in 0usize..18) {
        let g = interlacement_graph(&d);
        prop_assert_eq!(&g, &naive_interlacement(&d));
        prop_assert_eq!(&interlacement_graph(&d.rotated(by)), &g);
        prop_assert_eq!(&interlacement_graph(&d.reflected()), &g);
    }

    #[test]
    fn circle_graphs_are_recognized_and_closed(d in diagrams(1, 8), pick in any::<prop::sample::Index>()) {
        let g = interlacement_graph(&d);
        let found = circle_diagram(&g).unwrap().expect("a circle graph");
        prop_assert_eq!(interlacement_graph(&found), g.clone());
        let a = v(pick.index(g.order()));
        prop_assert!(is_circle_graph(&g.local_complement(a).unwrap()).unwrap());
        prop_assert!(is_circle_graph(&g.delete_vertex(a).unwrap()).unwrap());
    }

    #[test]
    fn planarity_matches_small_obstructions(
        n in 1usize..=6,
        raw in proptest::collection::vec((0usize..6, 0usize..6), 0..11),
    ) {
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (a % n, b % n)).collect();
        let m = Multigraph::from_pairs(n, &pairs).unwrap();
        let planar = is_planar(&m).unwrap();
        prop_assert_eq!(planar, !naive_nonplanar(n, &pairs));
        if planar {
            prop_assert!(verify_de_fraysseix(&m).unwrap());
        }
    }

    #[test]
    fn family_witnesses_describe_the_graph(g in graphs(1, 7)) {
        if let Some(w) = classify_family_membership(&g).unwrap() {
            prop_assert!(w.check(&g));
            prop_assert_eq!(w.realize().unwrap(), g.clone());
            let report = closure_audit(&g).unwrap();
            prop_assert!(report.passed());
            for e in &report.entries {
                prop_assert_eq!(e.witness.realize().unwrap(), g.local_complement(e.vertex).unwrap());
            }
        }
    }
}

#[test]
fn complete_multipartite_graphs_pass_the_audit() {
    for sizes in [vec![1, 1], vec![2, 2, 2], vec![1, 2, 3], vec![3, 3]] {
        let g = complete_multipartite(&sizes).unwrap();
        let report = closure_audit(&g).unwrap();
        assert!(report.passed(), "{sizes:?}");
        assert_eq!(report.entries.len(), g.order());
    }
    let g = build_g_t(1).unwrap();
    assert!(classify_family_membership(&g).unwrap().is_some());
}

#[test]
fn kuratowski_graphs_are_not_planar() {
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let k33: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    let mut split = k5[1..].to_vec();
    split.extend([(0, 5), (5, 1)]);
    for (n, e) in [(5, &k5), (6, &k33), (6, &split)] {
        assert!(naive_nonplanar(n, e));
        assert!(!is_planar(&Multigraph::from_pairs(n, e).unwrap()).unwrap());
    }
    let almost = &k5[1..];
    assert!(!naive_nonplanar(5, almost));
    assert!(is_planar(&Multigraph::from_pairs(5, almost).unwrap()).unwrap());
}
