//! Vertex-minor and pivot-minor containment, and local-equivalence orbits.
//!
//! Containment of `H` in `G` with `|G| > |H|` holds iff some vertex `v` has
//! one of `G − v`, `G * v − v`, `G / v` containing `H`: every such reduction
//! is a vertex-minor of `G`, and a vertex outside an embedding of `H` always
//! has one that works. Branching over every `v` (not a fixed one) is what
//! makes the isomorphism-based test complete. Results are memoized on
//! canonical forms, which is sound because local complementation commutes
//! with isomorphism.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with, CanonKey, DEFAULT_ISO_CAP};
use crate::error::{cap, Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::script::{OperationScript, Step};
use crate::sided::SidedBipartiteGraph;

pub const DEFAULT_ORBIT_BOUND: usize = 500_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Equivalence {
    Local,
    Pivot,
}

/// All graphs reachable from `g` by local complementations, in BFS order.
pub fn local_equivalence_orbit(g: &Graph) -> Result<Vec<Graph>> {
    local_equivalence_orbit_bounded(g, DEFAULT_ORBIT_BOUND)
}

pub fn local_equivalence_orbit_bounded(g: &Graph, bound: usize) -> Result<Vec<Graph>> {
    labeled_orbit(g, Equivalence::Local, bound)
}

/// All graphs reachable by pivots on edges, in BFS order.
pub fn pivot_equivalence_orbit(g: &Graph, bound: usize) -> Result<Vec<Graph>> {
    labeled_orbit(g, Equivalence::Pivot, bound)
}

fn moves(g: &Graph, eq: Equivalence) -> Vec<(Step, Graph)> {
    match eq {
        Equivalence::Local => g
            .vertices()
            .iter()
            .map(|v| (Step::lc(v), g.local_complement(v).expect("vertex of g")))
            .collect(),
        Equivalence::Pivot => g
            .edges()
            .into_iter()
            .map(|(u, v)| (Step::pivot(u, v), g.pivot(u, v).expect("edge of g")))
            .collect(),
    }
}

fn labeled_orbit(g: &Graph, eq: Equivalence, bound: usize) -> Result<Vec<Graph>> {
    let mut seen: HashSet<Graph> = HashSet::from([g.clone()]);
    let mut order = vec![g.clone()];
    let mut i = 0;
    while i < order.len() {
        for (_, h) in moves(&order[i], eq) {
            if seen.insert(h.clone()) {
                if order.len() == bound {
                    return Err(Error::CapExceeded {
                        what: "orbit size",
                        limit: bound,
                        actual: order.len() + 1,
                    });
                }
                order.push(h);
            }
        }
        i += 1;
    }
    Ok(order)
}

/// Shortest script of moves turning `g` into a graph whose canonical key is
/// `goal`, if one exists in the orbit.
fn orbit_path(g: &Graph, eq: Equivalence, goal: &CanonKey, limit: usize) -> Result<Option<(Vec<Step>, Graph)>> {
    let mut parent: HashMap<Graph, Option<(Graph, Step)>> = HashMap::from([(g.clone(), None)]);
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(cur) = queue.pop_front() {
        if canonical_form_with(&cur, &[], limit)?.key == *goal {
            let mut steps = Vec::new();
            let mut at = cur.clone();
            while let Some(Some((prev, step))) = parent.get(&at) {
                steps.push(*step);
                at = prev.clone();
            }
            steps.reverse();
            return Ok(Some((steps, cur)));
        }
        for (step, next) in moves(&cur, eq) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), step)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// `(G − v, G * v − v, G / v)`.
pub fn three_way_reductions(g: &Graph, v: VertexId) -> Result<(Graph, Graph, Graph)> {
    Ok((
        g.delete_vertex(v)?,
        g.local_complement(v)?.delete_vertex(v)?,
        g.contract_vertex(v)?,
    ))
}

/// The three reductions with the scripts producing them.
fn reductions_with_steps(g: &Graph, v: VertexId) -> [(Graph, Vec<Step>); 3] {
    let (a, b, c) = three_way_reductions(g, v).expect("vertex of g");
    let contract = match g.contraction_partner(v) {
        Some(u) => vec![Step::pivot(v, u), Step::delete(v)],
        None => vec![Step::delete(v)],
    };
    [
        (a, vec![Step::delete(v)]),
        (b, vec![Step::lc(v), Step::delete(v)]),
        (c, contract),
    ]
}

fn branch_order(g: &Graph) -> Vec<VertexId> {
    let mut vs = g.vertices().to_vec();
    vs.sort_by_key(|&v| (g.degree(v), v));
    vs
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Subsets of `verts` of size `k`, as bitmasks, in lexicographic order.
fn k_subsets(verts: VertexSet, k: usize) -> Vec<VertexSet> {
    let vs = verts.to_vec();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > vs.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| vs[i]).collect());
        let Some(p) = (0..k).rev().find(|&p| idx[p] < vs.len() - k + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Memoized vertex-minor containment against one fixed target `H`.
pub struct VertexMinorSearch {
    target: Graph,
    target_key: CanonKey,
    target_connected: bool,
    orbit_keys: HashSet<CanonKey>,
    memo: HashMap<CanonKey, bool>,
    limit: usize,
}

impl VertexMinorSearch {
    pub fn new(h: &Graph) -> Result<Self> {
        Self::with_cap(h, DEFAULT_ISO_CAP)
    }

    pub fn with_cap(h: &Graph, limit: usize) -> Result<Self> {
        let target_key = canonical_form_with(h, &[], limit)?.key;
        let orbit_keys = iso_orbit_keys(h, limit, |g| {
            moves(g, Equivalence::Local).into_iter().map(|(_, x)| x).collect()
        })?;
        Ok(VertexMinorSearch {
            target: h.clone(),
            target_key,
            target_connected: h.order() > 0 && h.is_connected(),
            orbit_keys,
            memo: HashMap::new(),
            limit,
        })
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    pub fn contains(&mut self, g: &Graph) -> Result<bool> {
        let n = g.order();
        let k = self.target.order();
        cap("vertices for containment search", self.limit, n)?;
        if n < k {
            return Ok(false);
        }
        if k == 0 {
            return Ok(true);
        }
        if self.target_connected && !g.is_connected() {
            // Local complementation never joins components, so a connected
            // target must come from a single component.
            for comp in g.components() {
                if comp.len() >= k && self.contains(&g.induced(comp))? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let key = canonical_form_with(g, &[], self.limit)?.key;
        if n == k {
            return Ok(self.orbit_keys.contains(&key));
        }
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let hit = self.induced_hit(g)? || self.branch(g)?;
        self.memo.insert(key, hit);
        Ok(hit)
    }

    /// Cheap positive test: some induced subgraph already lies in the orbit.
    fn induced_hit(&self, g: &Graph) -> Result<bool> {
        let k = self.target.order();
        if binomial(g.order(), k) > 256 {
            return Ok(false);
        }
        for s in k_subsets(g.vertices(), k) {
            let key = canonical_form_with(&g.induced(s), &[], self.limit)?.key;
            if self.orbit_keys.contains(&key) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn branch(&mut self, g: &Graph) -> Result<bool> {
        for v in branch_order(g) {
            for (red, _) in reductions_with_steps(g, v) {
                if self.contains(&red)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// A script turning `g` into a graph isomorphic to `H`, if one exists.
    pub fn witness(&mut self, g: &Graph) -> Result<Option<OperationScript>> {
        if !self.contains(g)? {
            return Ok(None);
        }
        let mut script = OperationScript::new();
        let mut cur = g.clone();
        while cur.order() > self.target.order() {
            let mut next = None;
            'search: for v in branch_order(&cur) {
                for (red, steps) in reductions_with_steps(&cur, v) {
                    if self.contains(&red)? {
                        next = Some((red, steps));
                        break 'search;
                    }
                }
            }
            let (red, steps) =
                next.ok_or_else(|| Error::NotFound("no reduction keeps the target".into()))?;
            steps.into_iter().for_each(|s| script.push(s));
            cur = red;
        }
        let (steps, _) = orbit_path(&cur, Equivalence::Local, &self.target_key, self.limit)?
            .ok_or_else(|| Error::NotFound("target not in the final orbit".into()))?;
        steps.into_iter().for_each(|s| script.push(s));
        Ok(Some(script))
    }
}

pub fn contains_vertex_minor(g: &Graph, h: &Graph) -> Result<bool> {
    VertexMinorSearch::new(h)?.contains(g)
}

/// A script turning `g` into exactly `target`, labels included, if `target`
/// is a vertex-minor of `g`. Only one vertex outside `target` needs to be
/// branched on at each level.
pub fn labeled_vertex_minor_script(g: &Graph, target: &Graph) -> Result<Option<OperationScript>> {
    let mut dead = HashSet::new();
    Ok(labeled_search(g, target, &mut dead)?.map(OperationScript))
}

fn labeled_search(g: &Graph, target: &Graph, dead: &mut HashSet<Graph>) -> Result<Option<Vec<Step>>> {
    if !target.vertices().is_subset(g.vertices()) || dead.contains(g) {
        return Ok(None);
    }
    let Some(v) = g.vertices().difference(target.vertices()).first() else {
        let mut parent: HashMap<Graph, Option<(Graph, Step)>> = HashMap::from([(g.clone(), None)]);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(cur) = queue.pop_front() {
            if cur == *target {
                let mut steps = Vec::new();
                let mut at = cur;
                while let Some(Some((prev, step))) = parent.get(&at) {
                    steps.push(*step);
                    at = prev.clone();
                }
                steps.reverse();
                return Ok(Some(steps));
            }
            if parent.len() > DEFAULT_ORBIT_BOUND {
                return Err(Error::CapExceeded {
                    what: "orbit size",
                    limit: DEFAULT_ORBIT_BOUND,
                    actual: parent.len(),
                });
            }
            for (step, next) in moves(&cur, Equivalence::Local) {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cur.clone(), step)));
                    queue.push_back(next);
                }
            }
        }
        dead.insert(g.clone());
        return Ok(None);
    };
    for (red, mut steps) in reductions_with_steps(g, v) {
        if let Some(rest) = labeled_search(&red, target, dead)? {
            steps.extend(rest);
            return Ok(Some(steps));
        }
    }
    dead.insert(g.clone());
    Ok(None)
}

/// Canonical keys of every graph in the orbit of `h`, up to isomorphism,
/// under the given move generator.
fn iso_orbit_keys(h: &Graph, limit: usize, next: impl Fn(&Graph) -> Vec<Graph>) -> Result<HashSet<CanonKey>> {
    let start = canonical_form_with(h, &[], limit)?;
    let mut keys = HashSet::from([start.key]);
    let mut queue = VecDeque::from([start.graph]);
    while let Some(g) = queue.pop_front() {
        for g2 in next(&g) {
            let cf = canonical_form_with(&g2, &[], limit)?;
            if keys.insert(cf.key) {
                queue.push_back(cf.graph);
            }
        }
    }
    Ok(keys)
}

/// Canonical representative of the local- or pivot-equivalence class: the
/// least canonical key over the orbit.
#[derive(Clone, Debug)]
pub struct CanonicalClass {
    pub representative: Graph,
    pub equivalence: Equivalence,
    pub key: CanonKey,
}

pub fn canonical_class(g: &Graph, eq: Equivalence, limit: usize) -> Result<CanonicalClass> {
    let keys = iso_orbit_keys(g, limit, |x| moves(x, eq).into_iter().map(|(_, y)| y).collect())?;
    let key = keys.into_iter().min().expect("orbit contains g");
    let representative = graph_from_key(&key);
    Ok(CanonicalClass {
        representative,
        equivalence: eq,
        key,
    })
}

/// Decodes an uncolored canonical key back into its graph.
fn graph_from_key(key: &CanonKey) -> Graph {
    let words = key_words(key);
    let n = words[0] as usize;
    let rows = &words[1 + n..];
    let mut g = Graph::edgeless(VertexSet::range(n));
    for (a, &row) in rows.iter().enumerate() {
        for b in VertexSet(row) {
            if a < b.index() {
                g.add_edge(VertexId::of(a), b).expect("valid key");
            }
        }
    }
    g
}

fn key_words(key: &CanonKey) -> &[u64] {
    crate::canon::key_words(key)
}

/// Memoized pivot-minor containment for sided bipartite graphs, up to strong
/// isomorphism. Two-way branching: `𝒢 − v` or `𝒢 / v`.
pub struct PivotMinorSearch {
    target: SidedBipartiteGraph,
    target_key: CanonKey,
    orbit_keys: HashSet<CanonKey>,
    memo: HashMap<CanonKey, bool>,
    limit: usize,
}

impl PivotMinorSearch {
    pub fn new(h: &SidedBipartiteGraph) -> Result<Self> {
        Self::with_cap(h, DEFAULT_ISO_CAP)
    }

    pub fn with_cap(h: &SidedBipartiteGraph, limit: usize) -> Result<Self> {
        if !h.is_valid() {
            return Err(Error::Invalid("target is not sided-bipartite".into()));
        }
        let target_key = h.canonical_key(limit)?;
        let orbit_keys = sided_orbit_keys(h, limit)?;
        Ok(PivotMinorSearch {
            target: h.clone(),
            target_key,
            orbit_keys,
            memo: HashMap::new(),
            limit,
        })
    }

    pub fn contains(&mut self, g: &SidedBipartiteGraph) -> Result<bool> {
        let n = g.order();
        let k = self.target.order();
        cap("vertices for containment search", self.limit, n)?;
        if !g.is_valid() {
            return Err(Error::Invalid("host is not sided-bipartite".into()));
        }
        if n < k {
            return Ok(false);
        }
        let key = g.canonical_key(self.limit)?;
        if n == k {
            return Ok(self.orbit_keys.contains(&key));
        }
        if let Some(&hit) = self.memo.get(&key) {
            return Ok(hit);
        }
        let mut hit = false;
        'outer: for v in branch_order(&g.graph) {
            for (red, _) in sided_reductions(g, v)? {
                if self.contains(&red)? {
                    hit = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert(key, hit);
        Ok(hit)
    }

    /// A pivot/deletion script reducing `g` to a graph strongly isomorphic
    /// to the target.
    pub fn witness(&mut self, g: &SidedBipartiteGraph) -> Result<Option<OperationScript>> {
        if !self.contains(g)? {
            return Ok(None);
        }
        let mut script = OperationScript::new();
        let mut cur = g.clone();
        while cur.order() > self.target.order() {
            let mut next = None;
            'search: for v in branch_order(&cur.graph) {
                for (red, steps) in sided_reductions(&cur, v)? {
                    if self.contains(&red)? {
                        next = Some((red, steps));
                        break 'search;
                    }
                }
            }
            let (red, steps) =
                next.ok_or_else(|| Error::NotFound("no reduction keeps the target".into()))?;
            steps.into_iter().for_each(|s| script.push(s));
            cur = red;
        }
        // Labeled pivot orbit BFS with sides.
        let mut parent: HashMap<SidedBipartiteGraph, Option<(SidedBipartiteGraph, Step)>> =
            HashMap::from([(cur.clone(), None)]);
        let mut queue = VecDeque::from([cur]);
        while let Some(x) = queue.pop_front() {
            if x.canonical_key(self.limit)? == self.target_key {
                let mut steps = Vec::new();
                let mut at = x;
                while let Some(Some((prev, step))) = parent.get(&at) {
                    steps.push(*step);
                    at = prev.clone();
                }
                steps.reverse();
                steps.into_iter().for_each(|s| script.push(s));
                return Ok(Some(script));
            }
            for (u, v) in x.graph.edges() {
                let y = x.pivot(u, v)?;
                if !parent.contains_key(&y) {
                    parent.insert(y.clone(), Some((x.clone(), Step::pivot(u, v))));
                    queue.push_back(y);
                }
            }
        }
        Err(Error::NotFound("target not in the final pivot orbit".into()))
    }
}

fn sided_reductions(g: &SidedBipartiteGraph, v: VertexId) -> Result<Vec<(SidedBipartiteGraph, Vec<Step>)>> {
    let contract = match g.graph.contraction_partner(v) {
        Some(u) => vec![Step::pivot(v, u), Step::delete(v)],
        None => vec![Step::delete(v)],
    };
    Ok(vec![
        (g.delete_vertex(v)?, vec![Step::delete(v)]),
        (g.contract_vertex(v)?, contract),
    ])
}

fn sided_orbit_keys(h: &SidedBipartiteGraph, limit: usize) -> Result<HashSet<CanonKey>> {
    let start = h.canonical_form(limit)?;
    let start_graph = SidedBipartiteGraph::from_canonical(&start, &canon_colors(h, &start));
    let mut keys = HashSet::from([start.key]);
    let mut queue = VecDeque::from([start_graph]);
    while let Some(g) = queue.pop_front() {
        for (u, v) in g.graph.edges() {
            let p = g.pivot(u, v)?;
            let cf = p.canonical_form(limit)?;
            if keys.insert(cf.key.clone()) {
                queue.push_back(SidedBipartiteGraph::from_canonical(&cf, &canon_colors(&p, &cf)));
            }
        }
    }
    Ok(keys)
}

fn canon_colors(g: &SidedBipartiteGraph, cf: &crate::canon::CanonicalForm) -> Vec<u32> {
    cf.labeling
        .iter()
        .map(|&v| u32::from(g.side_b.contains(v)))
        .collect()
}

pub fn contains_pivot_minor_bipartite(g: &SidedBipartiteGraph, h: &SidedBipartiteGraph) -> Result<bool> {
    PivotMinorSearch::new(h)?.contains(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn p4() -> Graph {
        g(4, &[(0, 1), (1, 2), (2, 3)])
    }

    fn c5() -> Graph {
        g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    #[test]
    fn orbit_examples() {
        let e = Graph::edgeless(VertexSet::range(4));
        assert_eq!(local_equivalence_orbit(&e).unwrap(), vec![e]);
        let k2 = g(2, &[(0, 1)]);
        assert_eq!(local_equivalence_orbit(&k2).unwrap().len(), 1);
        let orbit = local_equivalence_orbit(&c5()).unwrap();
        assert!(orbit.len() > 1);
        for x in &orbit {
            for v in x.vertices() {
                assert!(orbit.contains(&x.local_complement(v).unwrap()));
            }
        }
        match local_equivalence_orbit_bounded(&c5(), 3) {
            Err(Error::CapExceeded { limit: 3, .. }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn three_way_examples() {
        let iso = Graph::edgeless(VertexSet::range(3));
        let (a, b, c) = three_way_reductions(&iso, VertexId::of(1)).unwrap();
        assert!(a == b && b == c);
        let k2 = g(2, &[(0, 1)]);
        let (a, b, c) = three_way_reductions(&k2, VertexId::of(0)).unwrap();
        for x in [a, b, c] {
            assert_eq!((x.order(), x.size()), (1, 0));
        }
    }

    #[test]
    fn containment_examples() {
        assert!(contains_vertex_minor(&c5(), &p4()).unwrap());
        assert!(contains_vertex_minor(&c5(), &c5()).unwrap());
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!contains_vertex_minor(&star, &p4()).unwrap());
        let mut s = VertexMinorSearch::new(&p4()).unwrap();
        let w = s.witness(&c5()).unwrap().unwrap();
        let out = w.replay(&c5()).unwrap();
        assert!(crate::canon::are_isomorphic(&out, &p4()).unwrap());
    }

    #[test]
    fn complete_tripartite_has_no_two_p4() {
        let mut e = Vec::new();
        for a in 0..9 {
            for b in a + 1..9 {
                if a / 3 != b / 3 {
                    e.push((a, b));
                }
            }
        }
        let k333 = g(9, &e);
        let two_p4 = Graph::disjoint_copies(&p4(), 2).unwrap();
        assert!(!contains_vertex_minor(&k333, &two_p4).unwrap());
    }

    #[test]
    fn pivot_minor_examples() {
        let p = SidedBipartiteGraph::new(p4(), vset(&[0, 2]), vset(&[1, 3])).unwrap();
        let k2 = SidedBipartiteGraph::new(g(2, &[(0, 1)]), vset(&[0]), vset(&[1])).unwrap();
        assert!(contains_pivot_minor_bipartite(&p, &k2).unwrap());
        assert!(contains_pivot_minor_bipartite(&p, &p).unwrap());
        let mut s = PivotMinorSearch::new(&k2).unwrap();
        let w = s.witness(&p).unwrap().unwrap();
        assert!(w.steps().iter().all(|s| !matches!(s, Step::LocalComplement { .. })));
    }

    #[test]
    fn canonical_class_is_orbit_invariant() {
        let a = canonical_class(&c5(), Equivalence::Local, 12).unwrap();
        let other = c5().local_complement(VertexId::of(2)).unwrap();
        let b = canonical_class(&other, Equivalence::Local, 12).unwrap();
        assert_eq!(a.key, b.key);
        assert_eq!(a.representative.order(), 5);
    }
}
