mod common;

use common::{graphs, p3, v};
use proptest::prelude::*;
use vminor_core::cutrank::cut_rank;
use vminor_core::perturb::{
    apply_rank_perturbation, certify_robustness, compose, cut_perturbation_witness, enumerate_symmetric_low_rank,
    rank_perturbation_to_witness, symmetric_rank_decomposition, vertex_minor_perturbation_witness,
    witness_to_rank_perturbation, LowRankDelta, Piece, PerturbationWitness, RobustnessVerdict,
};
use vminor_core::vmsearch::contains_vertex_minor;
use vminor_core::{Graph, VertexSet};

/// Replays both scripts by hand instead of trusting the library verifier.
fn replays(w: &PerturbationWitness) -> bool {
    w.script1.replay(&w.supergraph).ok().as_ref() == Some(&w.base)
        && w.script2.replay(&w.supergraph).ok().as_ref() == Some(&w.target)
        && w.supergraph.order() == w.base.order() + w.order
}

fn symmetric_rows(n: usize, bits: &[bool]) -> Vec<u64> {
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            if bits[k] {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    rows
}

fn deltas(n: usize) -> impl Strategy<Value = LowRankDelta> {
    proptest::collection::vec(any::<bool>(), n * (n + 1) / 2)
        .prop_map(move |bits| symmetric_rank_decomposition(VertexSet::range(n), &symmetric_rows(n, &bits)).unwrap())
}

fn graph_and_delta(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, LowRankDelta)> {
    (lo..=hi).prop_flat_map(|n| (graphs(n, n), deltas(n)))
}

fn rank_one(g: &Graph, mask: u64) -> LowRankDelta {
    let x = VertexSet(mask).intersection(g.vertices());
    LowRankDelta::from_pieces(g.vertices(), &[Piece::Rank1(x)]).unwrap()
}

fn random_lcs(g: &Graph, picks: &[prop::sample::Index]) -> Graph {
    let vs = g.vertices().to_vec();
    picks.iter().fold(g.clone(), |h, p| h.local_complement(vs[p.index(vs.len())]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_witness_round_trip((g, d) in graph_and_delta(1, 6)) {
        let w = rank_perturbation_to_witness(&g, &d).unwrap();
        prop_assert!(replays(&w));
        prop_assert_eq!(w.order, d.rank());
        prop_assert_eq!(&w.target, &apply_rank_perturbation(&g, &d).unwrap());
        let (script, back) = witness_to_rank_perturbation(&w).unwrap();
        prop_assert!(back.rank() <= 2 * w.order);
        prop_assert_eq!(apply_rank_perturbation(&g, &back).unwrap(), script.replay(&w.target).unwrap());
        let rev = w.reversed();
        prop_assert!(replays(&rev));
        prop_assert!(rev.verify().is_valid());
        let json = PerturbationWitness::from_json(&w.to_json()).unwrap();
        prop_assert_eq!(json, w);
    }

    #[test]
    fn cut_witness_removes_the_cut((g, mask) in graphs(2, 8).prop_flat_map(|g| (Just(g), any::<u64>()))) {
        let x = VertexSet(mask).intersection(g.vertices());
        let w = cut_perturbation_witness(&g, x).unwrap();
        prop_assert!(replays(&w));
        prop_assert_eq!(w.order, 2 * cut_rank(&g, x));
        for (a, b) in w.target.edges() {
            prop_assert!(x.contains(a) == x.contains(b));
            prop_assert!(g.has_edge(a, b));
        }
        prop_assert_eq!(w.target.induced(x), g.induced(x));
    }

    #[test]
    fn composition_adds_orders((g, d1) in graph_and_delta(2, 5), bits in proptest::collection::vec(any::<bool>(), 15)) {
        let n = g.order();
        let d2 = symmetric_rank_decomposition(VertexSet::range(n), &symmetric_rows(n, &bits[..n * (n + 1) / 2])).unwrap();
        let w1 = rank_perturbation_to_witness(&g, &d1).unwrap();
        let w2 = rank_perturbation_to_witness(&w1.target, &d2).unwrap();
        let w = compose(&w1, &w2).unwrap();
        prop_assert!(replays(&w));
        prop_assert_eq!(w.order, w1.order + w2.order);
        prop_assert_eq!(&w.base, &g);
        prop_assert_eq!(&w.target, &w2.target);
    }

    #[test]
    fn low_rank_enumeration_is_complete((g, d) in graph_and_delta(1, 4)) {
        let _ = g;
        let all = enumerate_symmetric_low_rank(d.domain(), d.rank(), 1_000_000).unwrap();
        prop_assert!(all.iter().all(|e| e.rank() <= d.rank()));
        prop_assert!(all.iter().any(|e| e.matrix_rank() == d.matrix_rank() && (0..d.domain().len()).all(|i| e.row(v(i)) == d.row(v(i)))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A robust graph stays at least undecided after a perturbation of
    /// smaller order, with the robustness budget reduced accordingly.
    #[test]
    fn robustness_survives_small_perturbations(g in graphs(3, 6), mask in any::<u64>()) {
        let d = rank_one(&g, mask);
        if certify_robustness(&g, &p3(), 1).unwrap() == RobustnessVerdict::Robust {
            let g2 = apply_rank_perturbation(&g, &d).unwrap();
            let r = certify_robustness(&g2, &p3(), 1 - d.rank()).unwrap();
            let refuted = matches!(r, RobustnessVerdict::NotRobust { .. });
            prop_assert!(!refuted);
        }
    }

    /// If a `t`-perturbation of `G` has no `H`, then `G` has no `(t+1)·H`.
    #[test]
    fn losing_h_bounds_disjoint_copies(g in graphs(3, 7), mask in any::<u64>()) {
        let d = rank_one(&g, mask);
        let g2 = apply_rank_perturbation(&g, &d).unwrap();
        if !contains_vertex_minor(&g2, &p3()).unwrap() {
            let two = Graph::disjoint_copies(&p3(), 2).unwrap();
            prop_assert!(!contains_vertex_minor(&g, &two).unwrap());
        }
    }

    #[test]
    fn vertex_minors_on_a_set_are_close(
        g in graphs(5, 7),
        mask in any::<u64>(),
        s1 in proptest::collection::vec(any::<prop::sample::Index>(), 0..4),
        s2 in proptest::collection::vec(any::<prop::sample::Index>(), 0..4),
    ) {
        let x = VertexSet(mask).intersection(g.vertices());
        prop_assume!(x.len() >= 2 && x.len() < g.order());
        let g1 = random_lcs(&g, &s1).induced(x);
        let g2 = random_lcs(&g, &s2).induced(x);
        let w = vertex_minor_perturbation_witness(&g, &g1, &g2).unwrap();
        prop_assert!(replays(&w));
        prop_assert_eq!(&w.base, &g1);
        prop_assert_eq!(&w.target, &g2);
        prop_assert!(w.order <= 1 << (cut_rank(&g, x) + 1));
    }
}
