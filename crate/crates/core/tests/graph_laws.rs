mod common;

use common::{graphs, v};
use proptest::prelude::*;
use vminor_core::cutrank::cut_rank;
use vminor_core::{Graph, OperationScript, Step, VertexSet};

/// Cut-rank from scratch: the rank of the X × (V − X) adjacency block,
/// computed by counting vectors in the row space.
fn naive_cut_rank(g: &Graph, x: VertexSet) -> usize {
    let xs = x.to_vec();
    let ys = g.vertices().difference(x).to_vec();
    let rows: Vec<u64> = xs
        .iter()
        .map(|&a| ys.iter().enumerate().filter(|(_, &b)| g.has_edge(a, b)).fold(0u64, |r, (j, _)| r | 1 << j))
        .collect();
    let span: std::collections::HashSet<u64> = (0u64..1 << rows.len())
        .map(|m| (0..rows.len()).filter(|i| m >> i & 1 == 1).fold(0, |acc, i| acc ^ rows[i]))
        .collect();
    span.len().trailing_zeros() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn local_complement_is_an_involution(g in graphs(1, 9), pick in any::<prop::sample::Index>()) {
        let a = v(pick.index(g.order()));
        prop_assert_eq!(g.local_complement(a).unwrap().local_complement(a).unwrap(), g);
    }

    #[test]
    fn pivot_is_three_local_complements(g in graphs(2, 9), pick in any::<prop::sample::Index>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (a, b) = edges[pick.index(edges.len())];
        let p = g.pivot(a, b).unwrap();
        let lc = |h: &Graph, x| h.local_complement(x).unwrap();
        prop_assert_eq!(&p, &lc(&lc(&lc(&g, a), b), a));
        prop_assert_eq!(&p, &lc(&lc(&lc(&g, b), a), b));
        prop_assert_eq!(&p, &g.pivot(b, a).unwrap());
    }

    #[test]
    fn cut_rank_laws(g in graphs(1, 9), mask in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let x = VertexSet(mask).intersection(g.vertices());
        let r = cut_rank(&g, x);
        prop_assert_eq!(r, naive_cut_rank(&g, x));
        prop_assert_eq!(r, cut_rank(&g, g.vertices().difference(x)));
        prop_assert!(r <= x.len().min(g.order() - x.len()));
        let a = v(pick.index(g.order()));
        prop_assert_eq!(r, cut_rank(&g.local_complement(a).unwrap(), x));
    }

    #[test]
    fn cut_rank_is_submodular(g in graphs(2, 8), m1 in any::<u64>(), m2 in any::<u64>()) {
        let x = VertexSet(m1).intersection(g.vertices());
        let y = VertexSet(m2).intersection(g.vertices());
        prop_assert!(
            cut_rank(&g, x.union(y)) + cut_rank(&g, x.intersection(y)) <= cut_rank(&g, x) + cut_rank(&g, y)
        );
    }

    #[test]
    fn scripts_replay_step_by_step(g in graphs(3, 9), ops in proptest::collection::vec((0u8..3, any::<prop::sample::Index>()), 0..8)) {
        let mut cur = g.clone();
        let mut script = OperationScript::new();
        for (kind, pick) in ops {
            if cur.order() == 0 {
                break;
            }
            let a = cur.vertices().to_vec()[pick.index(cur.order())];
            let step = match kind {
                0 => Step::lc(a),
                1 => Step::delete(a),
                _ => match cur.neighbors(a).first() {
                    Some(b) => Step::pivot(a, b),
                    None => Step::lc(a),
                },
            };
            cur = step.apply(&cur).unwrap();
            script.push(step);
        }
        prop_assert_eq!(script.replay(&g).unwrap(), cur.clone());
        let back = OperationScript::from_json(&script.to_json()).unwrap();
        prop_assert_eq!(back.replay(&g).unwrap(), cur);
    }
}
