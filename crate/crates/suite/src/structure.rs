use std::collections::{HashMap, HashSet};

use rand::Rng;
use vminor_core::chains::{fix_next_pair, lex_pairs, pair_status, Chain, ChainMode, PairStatus};
use vminor_core::circle::{circle_diagram, interlacement_graph, is_planar, verify_de_fraysseix, ChordDiagram};
use vminor_core::families::{classify_family_membership, closure_audit, complete_multipartite};
use vminor_core::matroid::{cycle_matroid, fundamental_graph, spanning_forest, Multigraph};
use vminor_core::vmsearch::{contains_vertex_minor, VertexMinorSearch};
use vminor_core::{Graph, Step, VertexId, VertexSet};

use crate::oracle::{self, graph_of, interlacement, lc_orbit, local_complement, rows_of, Rows, VertexMinorOracle};
use crate::{ensure, Check, Failure, SuiteConfig};

pub(crate) fn multipartite_orbit(_cfg: &SuiteConfig) -> Check {
    let k222 = complete_multipartite(&[2, 2, 2])?;
    let (_, rows) = rows_of(&k222);
    let orbit = lc_orbit(&rows);
    let p4_rows: Rows = vec![0b0010, 0b0101, 0b1010, 0b0100];
    let mut brute = VertexMinorOracle::new(&p4_rows);
    let mut search = VertexMinorSearch::new(&graph_of(&p4_rows))?;
    let mut kinds: HashMap<String, usize> = HashMap::new();
    for member in &orbit {
        let g = graph_of(member);
        let w = classify_family_membership(&g)?.ok_or_else(|| Failure(format!("orbit member {member:?} has no family witness")))?;
        ensure!(w.realize()? == g, "family witness for {member:?} describes another graph");
        *kinds.entry(format!("{:?}", w.kind)).or_default() += 1;
        ensure!(brute.contains(member), "orbit member {member:?} has no P4 by the orbit oracle");
        ensure!(search.contains(&g)?, "orbit member {member:?} has no P4 by the search");
        let report = closure_audit(&g)?;
        ensure!(report.passed(), "closure audit fails on {member:?} at {:?}", report.counterexample);
        for e in &report.entries {
            let lc = graph_of(&local_complement(member, e.vertex.index()));
            ensure!(e.witness.realize()? == lc, "predicted witness for G*{} on {member:?} is wrong", e.vertex);
        }
    }
    let k333 = complete_multipartite(&[3, 3, 3])?;
    let two_p4 = Graph::disjoint_copies(&graph_of(&p4_rows), 2)?;
    ensure!(!contains_vertex_minor(&k333, &two_p4)?, "K_{{3,3,3}} contains 2P4");
    let mut kinds: Vec<_> = kinds.into_iter().collect();
    kinds.sort();
    Ok(format!(
        "orbit of {} graphs, witnesses by kind {kinds:?}, all contain P4 and pass the closure audit; K_{{3,3,3}} has no 2P4",
        orbit.len()
    ))
}

fn status_colours(s: PairStatus) -> (bool, bool) {
    match s {
        PairStatus::Fixed | PairStatus::Mixed => (false, false),
        PairStatus::CompleteCouple => (true, true),
        PairStatus::UpHalf => (false, true),
        PairStatus::DownHalf => (true, false),
    }
}

/// A chain of `len` parts of width `c` on vertices `i·c + j`. Pairs before
/// `target` are fixed, `target` has status `s` on every pair of parts
/// (for `Fixed`, part 0 is a complete couple with the rest so the chain is
/// mixed), and later pairs and edges inside parts are random. In pivot mode
/// every edge joins columns of different parity.
fn build_chain(
    rng: &mut impl Rng,
    c: usize,
    len: usize,
    target: (usize, usize),
    s: PairStatus,
    mode: ChainMode,
) -> Result<(Graph, Chain), Failure> {
    let id = |i: usize, j: usize| VertexId::of(i * c + j);
    let order: Vec<(usize, usize)> = lex_pairs(c);
    let rank = |p: usize, q: usize| order.iter().position(|&x| x == (p.min(q), p.max(q))).expect("pair");
    let allowed = |p: usize, q: usize| mode == ChainMode::VertexMinor || p % 2 != q % 2;
    let mut g = Graph::edgeless(VertexSet::range(len * c));
    for a in 0..len {
        for p in 0..c {
            for q in p + 1..c {
                if allowed(p, q) && rng.gen_bool(0.5) {
                    g.add_edge(id(a, p), id(a, q))?;
                }
            }
        }
        for b in a + 1..len {
            for p in 0..c {
                for q in 0..c {
                    let r = rank(p, q);
                    let t = rank(target.0, target.1);
                    let on = if r < t {
                        false
                    } else if r == t {
                        let (up, down) = if s == PairStatus::Fixed && a == 0 {
                            (true, true)
                        } else {
                            status_colours(s)
                        };
                        if (p, q) == (target.0, target.1) {
                            up
                        } else {
                            down
                        }
                    } else {
                        allowed(p, q) && rng.gen_bool(0.5)
                    };
                    if on {
                        g.add_edge(id(a, p), id(b, q))?;
                    }
                }
            }
        }
    }
    let parts = (0..len).map(|i| (0..c).map(|j| id(i, j)).collect()).collect();
    Ok((g, Chain::new(parts)?))
}

/// No edge joins column `p` of one part to column `q` of another.
fn fixed_by_hand(g: &Graph, x: &Chain, p: usize, q: usize) -> bool {
    let parts = x.parts();
    (0..parts.len()).all(|a| (0..parts.len()).all(|b| a == b || !g.has_edge(parts[a][p], parts[b][q])))
}

pub(crate) fn chain_fixing(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(9);
    let mut runs = 0;
    let mut seen: HashSet<(String, bool)> = HashSet::new();
    let statuses = [PairStatus::Fixed, PairStatus::UpHalf, PairStatus::DownHalf, PairStatus::CompleteCouple];
    for c in 1..=3usize {
        for (j1, j2) in lex_pairs(c) {
            for s in statuses {
                let diagonal = j1 == j2;
                if diagonal && matches!(s, PairStatus::UpHalf | PairStatus::DownHalf) {
                    continue;
                }
                for mode in [ChainMode::VertexMinor, ChainMode::Pivot] {
                    if mode == ChainMode::Pivot && (diagonal || j1 % 2 == j2 % 2) {
                        continue;
                    }
                    for k in 1..=3usize {
                        for _ in 0..3 {
                            let need = match s {
                                PairStatus::UpHalf | PairStatus::DownHalf => 3 * k,
                                PairStatus::CompleteCouple if diagonal => k + 1,
                                _ => k + 2,
                            };
                            let len = (need + rng.gen_range(0..=2)).min(12);
                            let (g, x) = build_chain(&mut rng, c, len, (j1, j2), s, mode)?;
                            let before = pair_status(&g, &x, j1, j2)?;
                            let expect_before = if s == PairStatus::Fixed { PairStatus::Mixed } else { s };
                            ensure!(before == expect_before, "constructed chain has status {before:?}, wanted {expect_before:?}");
                            check_fix(&g, &x, (j1, j2), s, k, mode)?;
                            seen.insert((format!("{s:?}"), mode == ChainMode::Pivot));
                            runs += 1;
                        }
                    }
                }
            }
        }
    }
    let mut seen: Vec<_> = seen.into_iter().collect();
    seen.sort();
    Ok(format!("{runs} constructed chains (c ≤ 3, k ≤ 3, length ≤ 12); status/pivot-mode combinations {seen:?}"))
}

fn check_fix(g: &Graph, x: &Chain, pair: (usize, usize), s: PairStatus, k: usize, mode: ChainMode) -> Result<(), Failure> {
    let out = fix_next_pair(g, x, k, mode)?;
    ensure!(out.pair == Some(pair), "fixed {:?} instead of {pair:?}", out.pair);
    ensure!(out.status == s, "used status {:?} for a {s:?} chain", out.status);
    ensure!(out.chain.len() == k, "result has {} parts instead of {k}", out.chain.len());
    ensure!(out.script.replay(g)? == out.graph, "script does not replay to the returned graph");
    let kept: Vec<&Vec<VertexId>> = out.chain.parts().iter().collect();
    let mut cursor = x.parts().iter();
    for part in &kept {
        ensure!(cursor.any(|p| p == *part), "result is not a subchain of the input");
    }
    let removed = x.vertices().difference(out.chain.vertices());
    ensure!(out.script.touched().is_subset(removed), "script touches kept parts");
    for (p, q) in lex_pairs(x.width()).into_iter().take_while(|&p| p != pair).chain([pair]) {
        ensure!(fixed_by_hand(&out.graph, &out.chain, p, q), "pair ({p}, {q}) is not fixed afterwards");
    }
    if mode == ChainMode::Pivot {
        ensure!(oracle::is_bipartite(&rows_of(&out.graph).1), "pivot mode broke bipartiteness");
        ensure!(
            out.script.steps().iter().all(|st| matches!(st, Step::Pivot { .. } | Step::DeleteVertex { .. })),
            "pivot mode used a step other than a pivot"
        );
    }
    Ok(())
}

/// All multigraphs with `m` edges and no isolated vertices, up to the order
/// of first appearance of vertices. Every isomorphism class occurs.
fn multigraphs(max_edges: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut level: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::from([(0, vec![])]);
    let mut all: Vec<(usize, Vec<(usize, usize)>)> = level.iter().cloned().collect();
    for _ in 0..max_edges {
        let mut next = HashSet::new();
        for (k, edges) in &level {
            // New vertices are numbered in order of first appearance.
            for a in 0..=*k {
                for b in a..=k + 1 {
                    if (a < *k && b > *k) || (a == *k && b > k + 1) {
                        continue;
                    }
                    let nk = (*k).max(b + 1);
                    let mut e = edges.clone();
                    e.push((a, b));
                    e.sort_unstable();
                    next.insert((nk, e));
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort();
    all
}

/// The smallest-label-first spanning forest and, for every other edge, the
/// forest edges on its fundamental cycle.
fn fundamental_neighbours(n: usize, edges: &[(usize, usize)]) -> (u64, Vec<u64>) {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    let mut forest = 0u64;
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        if ra != rb {
            comp[ra] = rb;
            forest |= 1 << i;
        }
    }
    let mut nbrs = vec![0u64; edges.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if forest >> i & 1 == 1 || a == b {
            continue;
        }
        // Depth-first search from a to b through forest edges.
        let mut stack = vec![(a, 0u64)];
        let mut visited = vec![false; n];
        visited[a] = true;
        while let Some((x, path)) = stack.pop() {
            if x == b {
                nbrs[i] = path;
                break;
            }
            for (j, &(p, q)) in edges.iter().enumerate() {
                if forest >> j & 1 == 0 {
                    continue;
                }
                let y = if p == x { q } else if q == x { p } else { continue };
                if !visited[y] {
                    visited[y] = true;
                    stack.push((y, path | 1 << j));
                }
            }
        }
    }
    for i in 0..edges.len() {
        for j in 0..edges.len() {
            if nbrs[i] >> j & 1 == 1 {
                nbrs[j] |= 1 << i;
            }
        }
    }
    (forest, nbrs)
}

pub(crate) fn planar_circle(_cfg: &SuiteConfig) -> Check {
    let all = multigraphs(6);
    let mut memo: HashMap<Rows, bool> = HashMap::new();
    for (n, edges) in &all {
        let m = Multigraph::from_pairs(*n, edges)?;
        // Fewer than nine edges leave no room for a K5 or K3,3 subdivision.
        ensure!(is_planar(&m)?, "multigraph {edges:?} with at most six edges judged non-planar");
        let (forest, expect) = fundamental_neighbours(*n, edges);
        ensure!(spanning_forest(&m).0 == forest, "spanning forest of {edges:?} differs from the greedy one");
        let f = fundamental_graph(&cycle_matroid(&m)?, spanning_forest(&m))?;
        let (ids, got) = rows_of(&f.graph);
        ensure!(
            ids.iter().enumerate().all(|(i, v)| v.index() == i) && got == expect,
            "fundamental graph of {edges:?} differs from the fundamental cycles"
        );
        if let Some(&ok) = memo.get(&got) {
            ensure!(ok, "fundamental graph of {edges:?} is not a circle graph");
            continue;
        }
        let d = circle_diagram(&f.graph)?;
        let ok = d.as_ref().is_some_and(|d| {
            let word: Vec<usize> = d.word().iter().map(|v| v.index()).collect();
            interlacement(&word, got.len()) == got
        });
        ensure!(ok, "fundamental graph of {edges:?} has no checked chord diagram");
        ensure!(verify_de_fraysseix(&m)?, "de Fraysseix check fails on {edges:?}");
        memo.insert(got, ok);
    }
    let figure = ChordDiagram::parse("1 3 6 4 3 1 5 4 2 5 6 2")?;
    let edges: HashSet<(usize, usize)> = interlacement_graph(&figure)
        .edges()
        .iter()
        .map(|&(a, b)| (a.index().min(b.index()), a.index().max(b.index())))
        .collect();
    let want: HashSet<(usize, usize)> = [(1, 4), (4, 5), (2, 5), (2, 6), (1, 6), (3, 4), (3, 6)].into();
    ensure!(edges == want, "figure word gives edges {edges:?}");
    Ok(format!(
        "{} multigraphs with at most 6 edges ({} distinct fundamental graphs), all circle graphs by a checked chord diagram; figure edges reproduced",
        all.len(),
        memo.len()
    ))
}
