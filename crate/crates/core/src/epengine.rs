//! Packing and covering subtrees of a tree, degree pruning around
//! marked vertices, and the step producing either many disjoint robust
//! parts of a rank-decomposition or a small perturbation losing `H`.
//!
//! Tree nodes are `0..n` and node sets reuse [`VertexSet`].

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cutrank::{decomposition_width, RankDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::perturb::{
    certify_robustness_with, compose, cut_perturbation_witness, rank_perturbation_to_witness, LowRankDelta,
    PerturbationWitness, Piece, RobustnessConfig, RobustnessVerdict,
};
use crate::vmsearch::VertexMinorSearch;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    adj: Vec<VertexSet>,
}

impl Tree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::Invalid(format!("a tree needs 1 to 64 nodes, got {n}")));
        }
        if edges.len() != n - 1 {
            return Err(Error::Invalid("a tree on n nodes has n - 1 edges".into()));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b || adj[a].contains(VertexId::of(b)) {
                return Err(Error::Invalid(format!("bad tree edge ({a}, {b})")));
            }
            adj[a].insert(VertexId::of(b));
            adj[b].insert(VertexId::of(a));
        }
        let t = Tree { adj };
        if !t.is_subtree(t.nodes()) {
            return Err(Error::Invalid("tree edges do not connect all nodes".into()));
        }
        Ok(t)
    }

    pub fn from_decomposition(d: &RankDecomposition) -> Result<Self> {
        Tree::new(d.node_count(), &d.tree_edges())
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn nodes(&self) -> VertexSet {
        VertexSet::range(self.adj.len())
    }

    pub fn neighbors(&self, x: usize) -> VertexSet {
        self.adj[x]
    }

    pub fn degree_in(&self, x: usize, within: VertexSet) -> usize {
        self.adj[x].intersection(within).len()
    }

    /// Components of the forest induced on `within`.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next: VertexSet = frontier
                    .iter()
                    .fold(VertexSet::EMPTY, |acc, x| acc.union(self.adj[x.index()]))
                    .intersection(within)
                    .difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Nonempty and connected.
    pub fn is_subtree(&self, s: VertexSet) -> bool {
        !s.is_empty() && s.is_subset(self.nodes()) && self.components(s).len() == 1
    }

    /// Parent pointers and depths from a BFS at `root`.
    fn rooted(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let n = self.node_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = VertexSet::singleton(VertexId::of(root));
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in self.adj[x].difference(seen) {
                seen.insert(y);
                parent[y.index()] = Some(x);
                depth[y.index()] = depth[x] + 1;
                queue.push_back(y.index());
            }
        }
        (parent, depth)
    }

    fn path_to_root(parent: &[Option<usize>], mut x: usize) -> VertexSet {
        let mut p = VertexSet::singleton(VertexId::of(x));
        while let Some(y) = parent[x] {
            p.insert(VertexId::of(y));
            x = y;
        }
        p
    }

    /// All subtrees, up to `limit` of them.
    pub fn subtrees(&self, limit: usize) -> Result<Vec<VertexSet>> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        let mut queue: VecDeque<VertexSet> = VecDeque::new();
        for x in self.nodes() {
            let s = VertexSet::singleton(x);
            seen.insert(s);
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            let border = s
                .iter()
                .fold(VertexSet::EMPTY, |acc, x| acc.union(self.adj[x.index()]))
                .difference(s);
            for y in border {
                let t = s.with(y);
                if seen.insert(t) {
                    if seen.len() > limit {
                        return Err(Error::CapExceeded {
                            what: "subtree count",
                            limit,
                            actual: seen.len(),
                        });
                    }
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.0));
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeOutcome {
    /// `k` members of every family, all pairwise disjoint.
    Packing(Vec<Vec<VertexSet>>),
    /// Fewer than `m·k` nodes meeting every member of one family.
    Hitting { family: usize, set: VertexSet },
}

fn minimal_members(family: &[VertexSet]) -> Vec<VertexSet> {
    let mut sorted: Vec<VertexSet> = family.to_vec();
    sorted.sort_by_key(|s| (s.len(), s.0));
    sorted.dedup();
    let mut out: Vec<VertexSet> = Vec::new();
    for s in sorted {
        if !out.iter().any(|&t| t.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Minimum set of nodes meeting every member: take members by decreasing
/// depth of their top node and add the top of each one not yet met.
pub fn min_subtree_hitting_set(t: &Tree, family: &[VertexSet]) -> VertexSet {
    let (_, depth) = t.rooted(0);
    let top = |s: VertexSet| s.iter().min_by_key(|x| (depth[x.index()], x.index())).expect("nonempty");
    let mut members: Vec<VertexSet> = family.to_vec();
    members.sort_by_key(|&s| std::cmp::Reverse(depth[top(s).index()]));
    let mut hit = VertexSet::EMPTY;
    for s in members {
        if s.is_disjoint(hit) {
            hit.insert(top(s));
        }
    }
    hit
}

const PACKING_STEPS: usize = 20_000_000;

/// Either disjoint subfamilies of size `k` or a small hitting set for one
/// family. The packing is searched exactly over inclusion-minimal members;
/// hitting sets are minimum per family.
pub fn subtree_packing_or_hitting(t: &Tree, families: &[Vec<VertexSet>], k: usize) -> Result<TreeOutcome> {
    for (i, fam) in families.iter().enumerate() {
        for &s in fam {
            if !t.is_subtree(s) {
                return Err(Error::Invalid(format!("member {s} of family {i} is not a subtree")));
            }
        }
    }
    let m = families.len();
    let minimal: Vec<Vec<VertexSet>> = families.iter().map(|f| minimal_members(f)).collect();
    let mut chosen: Vec<Vec<VertexSet>> = vec![Vec::new(); m];
    let mut steps = 0usize;
    if pack(&minimal, k, 0, 0, VertexSet::EMPTY, &mut chosen, &mut steps)? {
        return Ok(TreeOutcome::Packing(chosen));
    }
    for (i, fam) in families.iter().enumerate() {
        let x = min_subtree_hitting_set(t, fam);
        if x.len() < m * k {
            debug_assert!(fam.iter().all(|s| !s.is_disjoint(x)));
            return Ok(TreeOutcome::Hitting { family: i, set: x });
        }
    }
    Err(Error::Invalid("neither a packing nor a small hitting set exists".into()))
}

fn pack(
    fams: &[Vec<VertexSet>],
    k: usize,
    i: usize,
    from: usize,
    used: VertexSet,
    chosen: &mut Vec<Vec<VertexSet>>,
    steps: &mut usize,
) -> Result<bool> {
    *steps += 1;
    if *steps > PACKING_STEPS {
        return Err(Error::CapExceeded {
            what: "packing search steps",
            limit: PACKING_STEPS,
            actual: *steps,
        });
    }
    if i == fams.len() {
        return Ok(true);
    }
    if chosen[i].len() == k {
        return pack(fams, k, i + 1, 0, used, chosen, steps);
    }
    let need = k - chosen[i].len();
    for (j, &s) in fams[i].iter().enumerate().skip(from) {
        if fams[i].len() - j < need {
            break;
        }
        if s.is_disjoint(used) {
            chosen[i].push(s);
            if pack(fams, k, i, j + 1, used.union(s), chosen, steps)? {
                return Ok(true);
            }
            chosen[i].pop();
        }
    }
    Ok(false)
}

/// Outcome of pruning: the subtree and the `k` kept marks per set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pruned {
    pub subtree: VertexSet,
    pub kept: Vec<VertexSet>,
}

/// From disjoint mark sets `R_i` with `|R_i| > (mk − 1)²`, a subtree and `k`
/// marks of each set, each of degree at most `m² + 1` in the subtree. Paths
/// from node 0 to the marks are used: `mk` maximal ones when there are that
/// many, otherwise one path carrying `mk` marks; high-degree nodes of the
/// other paths' unions are then avoided.
pub fn prune_tree_ramsey(t: &Tree, rs: &[VertexSet], k: usize) -> Result<Pruned> {
    let m = rs.len();
    let mk = m * k;
    let need = (mk.saturating_sub(1)).pow(2);
    for (i, r) in rs.iter().enumerate() {
        if !r.is_subset(t.nodes()) {
            return Err(Error::Invalid(format!("mark set {i} leaves the tree")));
        }
        if r.len() <= need {
            return Err(Error::Invalid(format!(
                "mark set {i} has {} nodes; more than {need} are needed",
                r.len()
            )));
        }
        for s in &rs[i + 1..] {
            if !r.is_disjoint(*s) {
                return Err(Error::Invalid("mark sets overlap".into()));
            }
        }
    }
    let (parent, _) = t.rooted(0);
    let mut parts = Vec::with_capacity(m);
    let mut qs = Vec::with_capacity(m);
    for &r in rs {
        let paths: Vec<(VertexId, VertexSet)> = r.iter().map(|x| (x, Tree::path_to_root(&parent, x.index()))).collect();
        // An end is maximal when no other mark lies below it.
        let ends: Vec<&(VertexId, VertexSet)> = paths
            .iter()
            .filter(|(x, _)| !paths.iter().any(|(y, p)| y != x && p.contains(*x)))
            .collect();
        if ends.len() >= mk {
            let chosen = &ends[..mk];
            parts.push(chosen.iter().fold(VertexSet::EMPTY, |acc, (_, p)| acc.union(*p)));
            qs.push(chosen.iter().map(|(x, _)| *x).collect::<VertexSet>());
        } else {
            let (_, p) = ends
                .iter()
                .find(|(_, p)| p.intersection(r).len() >= mk)
                .ok_or_else(|| Error::Invalid("no path carries enough marks".into()))?;
            parts.push(*p);
            qs.push(p.intersection(r).iter().take(mk).collect());
        }
    }
    let heavy: Vec<VertexSet> = parts
        .iter()
        .map(|&p| p.iter().filter(|x| t.degree_in(x.index(), p) >= m + 2).collect())
        .collect();
    let subtree = parts.iter().fold(VertexSet::EMPTY, |acc, p| acc.union(*p));
    let mut kept = Vec::with_capacity(m);
    for i in 0..m {
        let others = (0..m)
            .filter(|&j| j != i)
            .fold(VertexSet::EMPTY, |acc, j| acc.union(heavy[j]));
        let r: VertexSet = qs[i].difference(others).iter().take(k).collect();
        if r.len() < k {
            return Err(Error::Invalid(format!("only {} marks of set {i} survive", r.len())));
        }
        kept.push(r);
    }
    let out = Pruned { subtree, kept };
    if !t.is_subtree(out.subtree)
        || out
            .kept
            .iter()
            .flat_map(|s| s.iter())
            .any(|x| t.degree_in(x.index(), out.subtree) > m * m + 1)
    {
        return Err(Error::Invalid("pruned tree fails its degree bound".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PartsConfig {
    pub robustness: RobustnessConfig,
    pub subtree_cap: usize,
}

impl Default for PartsConfig {
    fn default() -> Self {
        PartsConfig {
            robustness: RobustnessConfig::default(),
            subtree_cap: 200_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum PartsOutcome {
    /// A verified witness from `G` to a graph without a vertex-minor
    /// isomorphic to component `component`.
    Perturbation {
        component: usize,
        witness: PerturbationWitness,
        bound: usize,
        width: usize,
        /// Some part was only shown non-robust up to the rank gap, so its
        /// share of the order may reach `2t` instead of `t`.
        unknown: bool,
    },
    /// Disjoint subtrees, `k` per component, whose graphs are certified
    /// `t`-robust for that component.
    Parts {
        subtrees: Vec<Vec<VertexSet>>,
        vertex_sets: Vec<Vec<VertexSet>>,
        /// Some subtree got an inconclusive verdict and was left out.
        unknown: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Robust {
    Yes,
    No,
    Unknown,
}

/// Either `k` disjoint robust subtrees per component, or a perturbation of
/// `G` of order at most `4rmk + 2tmk` losing one component.
pub fn many_robust_parts(
    g: &Graph,
    d: &RankDecomposition,
    components: &[Graph],
    k: usize,
    t: usize,
    cfg: &PartsConfig,
) -> Result<PartsOutcome> {
    if components.iter().any(|h| h.order() < 2 || !h.is_connected()) {
        return Err(Error::Invalid("components must be connected with at least two vertices".into()));
    }
    let width = decomposition_width(g, d)?;
    let tree = Tree::from_decomposition(d)?;
    let leaves = |s: VertexSet| -> VertexSet { s.iter().filter_map(|x| d.leaves[x.index()]).collect() };
    let all = tree.subtrees(cfg.subtree_cap)?;
    let m = components.len();

    let mut unknown = false;
    let mut families: Vec<Vec<VertexSet>> = vec![Vec::new(); m];
    for (i, h) in components.iter().enumerate() {
        let mut verdicts: HashMap<VertexSet, Robust> = HashMap::new();
        let mut robust_sets: Vec<VertexSet> = Vec::new();
        let mut sets: Vec<VertexSet> = all.iter().map(|&s| leaves(s)).collect();
        sets.sort_by_key(|s| (s.len(), s.0));
        sets.dedup();
        for s in sets {
            // Robustness passes to supersets, so only new minimal sets are certified.
            let v = if s.len() < h.order() {
                Robust::No
            } else if robust_sets.iter().any(|r| r.is_subset(s)) {
                Robust::Yes
            } else {
                match certify_robustness_with(&g.induced(s), h, t, &cfg.robustness)? {
                    RobustnessVerdict::Robust => {
                        robust_sets.push(s);
                        Robust::Yes
                    }
                    RobustnessVerdict::NotRobust { .. } => Robust::No,
                    RobustnessVerdict::Unknown { .. } => Robust::Unknown,
                }
            };
            unknown |= v == Robust::Unknown;
            verdicts.insert(s, v);
        }
        families[i] = all
            .iter()
            .copied()
            .filter(|&s| verdicts[&leaves(s)] == Robust::Yes)
            .collect();
    }

    match subtree_packing_or_hitting(&tree, &families, k)? {
        TreeOutcome::Packing(subtrees) => {
            let vertex_sets = subtrees
                .iter()
                .map(|row| row.iter().map(|&s| leaves(s)).collect())
                .collect();
            Ok(PartsOutcome::Parts {
                subtrees,
                vertex_sets,
                unknown,
            })
        }
        TreeOutcome::Hitting { family, set } => {
            let (witness, unknown) = separate_and_destroy(g, d, &tree, set, &components[family], t, cfg)?;
            let bound = 4 * width * m * k + 2 * t * m * k;
            Ok(PartsOutcome::Perturbation {
                component: family,
                witness,
                bound,
                width,
                unknown,
            })
        }
    }
}

/// Cuts `G` along the components of `T − X`, then perturbs each part so it
/// loses `H`, composing all the witnesses.
fn separate_and_destroy(
    g: &Graph,
    d: &RankDecomposition,
    tree: &Tree,
    x: VertexSet,
    h: &Graph,
    t: usize,
    cfg: &PartsConfig,
) -> Result<(PerturbationWitness, bool)> {
    let leaves = |s: VertexSet| -> VertexSet { s.iter().filter_map(|n| d.leaves[n.index()]).collect() };
    let mut w = PerturbationWitness::identity(g);
    let mut comps: Vec<VertexSet> = vec![tree.nodes()];
    let mut parts: Vec<VertexSet> = Vec::new();
    for node in x {
        let at = comps.iter().position(|c| c.contains(node)).expect("components cover the tree");
        let c = comps.swap_remove(at);
        let pieces = tree.components(c.without(node));
        let mut cuts: Vec<VertexSet> = Vec::new();
        if let Some(u) = d.leaves[node.index()] {
            parts.push(VertexSet::singleton(u));
            cuts.push(VertexSet::singleton(u));
        } else {
            cuts.extend(pieces.iter().take(pieces.len().saturating_sub(1)).map(|&p| leaves(p)));
        }
        for s in cuts.into_iter().filter(|s| !s.is_empty()) {
            let cut = cut_perturbation_witness(&w.target, s)?;
            w = compose(&w, &cut)?;
        }
        comps.extend(pieces);
    }
    parts.extend(comps.iter().map(|&c| leaves(c)).filter(|s| !s.is_empty()));

    let separated = w.target.clone();
    for &p in &parts {
        if separated.induced(p) != g.induced(p) {
            return Err(Error::Invalid("separation changed a part".into()));
        }
        for u in p {
            if !separated.neighbors(u).is_subset(p) {
                return Err(Error::Invalid("separation left an edge between parts".into()));
            }
        }
    }

    let mut pieces: Vec<Piece> = Vec::new();
    let mut unknown = false;
    for &p in &parts {
        let delta: LowRankDelta = match certify_robustness_with(&separated.induced(p), h, t, &cfg.robustness)? {
            RobustnessVerdict::NotRobust { delta, .. } => delta,
            RobustnessVerdict::Unknown { delta, .. } => {
                unknown = true;
                delta
            }
            RobustnessVerdict::Robust => {
                return Err(Error::Invalid(format!("part {p} avoids the hitting set yet is robust")));
            }
        };
        pieces.extend(delta.pieces().iter().cloned());
    }
    let total = LowRankDelta::from_pieces(g.vertices(), &pieces)?;
    let rank_w = rank_perturbation_to_witness(&separated, &total)?;
    let w = compose(&w, &rank_w)?;
    let mut search = VertexMinorSearch::with_cap(h, g.order().max(h.order()))?;
    if search.contains(&w.target)? {
        return Err(Error::Invalid("assembled perturbation still contains the component".into()));
    }
    Ok((w, unknown))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;
    use crate::perturb::verify_witness;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Tree {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::new(n, &edges).unwrap()
    }

    fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        Tree::new(n, &edges).unwrap()
    }

    #[test]
    fn tree_validation() {
        assert!(Tree::new(3, &[(0, 1), (0, 1)]).is_err());
        assert!(Tree::new(4, &[(0, 1), (2, 3), (1, 0)]).is_err());
        assert!(path(5).is_subtree(vset(&[1, 2, 3])));
        assert!(!path(5).is_subtree(vset(&[1, 3])));
    }

    #[test]
    fn packing_and_hitting_examples() {
        let t = path(6);
        let singles: Vec<VertexSet> = (0..3).map(|i| vset(&[i])).collect();
        assert!(matches!(
            subtree_packing_or_hitting(&t, &[singles], 3).unwrap(),
            TreeOutcome::Packing(_)
        ));
        let star = vec![vset(&[2]), vset(&[1, 2]), vset(&[2, 3, 4])];
        assert_eq!(
            subtree_packing_or_hitting(&t, &[star], 2).unwrap(),
            TreeOutcome::Hitting {
                family: 0,
                set: vset(&[2])
            }
        );
        assert!(subtree_packing_or_hitting(&t, &[vec![vset(&[0, 2])]], 1).is_err());
    }

    /// Largest number of pairwise disjoint members, by brute force.
    fn brute_packing(fam: &[VertexSet]) -> usize {
        (0u32..1 << fam.len())
            .filter(|mask| {
                let chosen: Vec<VertexSet> = (0..fam.len()).filter(|i| mask >> i & 1 == 1).map(|i| fam[i]).collect();
                chosen.iter().enumerate().all(|(a, s)| chosen[a + 1..].iter().all(|t| s.is_disjoint(*t)))
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn intervals_on_a_path_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = path(10);
        for _ in 0..200 {
            let fam: Vec<VertexSet> = (0..rng.gen_range(1..9))
                .map(|_| {
                    let a = rng.gen_range(0..10);
                    let b = rng.gen_range(a..10.min(a + 4));
                    (a..=b).map(VertexId::of).collect()
                })
                .collect();
            let nu = brute_packing(&fam);
            let x = min_subtree_hitting_set(&t, &fam);
            assert_eq!(x.len(), nu);
            assert!(fam.iter().all(|s| !s.is_disjoint(x)));
            let k = rng.gen_range(1..4);
            match subtree_packing_or_hitting(&t, std::slice::from_ref(&fam), k).unwrap() {
                TreeOutcome::Packing(p) => {
                    assert!(nu >= k);
                    assert_eq!(p[0].len(), k);
                }
                TreeOutcome::Hitting { set, .. } => {
                    assert!(nu < k);
                    assert!(set.len() < k);
                }
            }
        }
    }

    #[test]
    fn pruning_examples() {
        let t = path(12);
        let out = prune_tree_ramsey(&t, &[vset(&[2, 5, 7, 9, 11])], 3).unwrap();
        assert_eq!(out.kept[0].len(), 3);
        assert!(out.kept[0].is_subset(vset(&[2, 5, 7, 9, 11])));

        let edges: Vec<(usize, usize)> = (1..=9).map(|i| (0, i)).collect();
        let star = Tree::new(10, &edges).unwrap();
        let out = prune_tree_ramsey(&star, &[VertexSet::range(10).without(VertexId::of(0))], 3).unwrap();
        for x in out.kept[0] {
            assert_eq!(star.degree_in(x.index(), out.subtree), 1);
        }
        assert!(prune_tree_ramsey(&t, &[vset(&[1, 2])], 3).is_err());
    }

    #[test]
    fn pruning_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let t = random_tree(&mut rng, 40);
            let mut nodes: Vec<usize> = (0..40).collect();
            for i in (1..40).rev() {
                nodes.swap(i, rng.gen_range(0..=i));
            }
            let r1: VertexSet = nodes[..10].iter().map(|&i| VertexId::of(i)).collect();
            let r2: VertexSet = nodes[10..20].iter().map(|&i| VertexId::of(i)).collect();
            let out = prune_tree_ramsey(&t, &[r1, r2], 2).unwrap();
            assert!(t.is_subtree(out.subtree));
            for (r, kept) in [r1, r2].iter().zip(&out.kept) {
                assert_eq!(kept.len(), 2);
                assert!(kept.is_subset(r.intersection(out.subtree)));
                for x in *kept {
                    assert!(t.degree_in(x.index(), out.subtree) <= 5);
                }
            }
        }
    }

    fn p4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn edgeless_graph_loses_h_at_order_zero() {
        let g = Graph::edgeless(VertexSet::range(4));
        let (_, d) = crate::cutrank::exact_rankwidth(&g).unwrap();
        match many_robust_parts(&g, &d, &[p4()], 1, 0, &PartsConfig::default()).unwrap() {
            PartsOutcome::Perturbation { witness, .. } => {
                assert_eq!(witness.order, 0);
                assert!(verify_witness(&witness).is_valid());
            }
            other => panic!("expected a perturbation, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_blocks_give_parts() {
        let g = Graph::disjoint_copies(&p4(), 2).unwrap();
        let (_, d) = crate::cutrank::exact_rankwidth(&g).unwrap();
        match many_robust_parts(&g, &d, &[p4()], 2, 0, &PartsConfig::default()).unwrap() {
            PartsOutcome::Parts { vertex_sets, .. } => {
                assert_eq!(vertex_sets[0].len(), 2);
                assert!(vertex_sets[0][0].is_disjoint(vertex_sets[0][1]));
            }
            other => panic!("expected parts, got {other:?}"),
        }
    }

    #[test]
    fn one_block_with_two_requested_gives_perturbation() {
        let g = p4().disjoint_union(&Graph::edgeless(VertexSet::range(1))).unwrap();
        let (_, d) = crate::cutrank::exact_rankwidth(&g).unwrap();
        match many_robust_parts(&g, &d, &[p4()], 2, 0, &PartsConfig::default()).unwrap() {
            PartsOutcome::Perturbation {
                witness, bound, ..
            } => {
                assert!(verify_witness(&witness).is_valid());
                assert!(witness.order <= bound);
                assert!(!crate::vmsearch::contains_vertex_minor(&witness.target, &p4()).unwrap());
            }
            other => panic!("expected a perturbation, got {other:?}"),
        }
    }
}
