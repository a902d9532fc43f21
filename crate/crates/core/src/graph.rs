//! Labeled simple graphs as bit-packed symmetric matrices over GF(2).
//!
//! Vertex ids are stable labels in `0..64`. Deleting a vertex never renumbers
//! the others, so operation scripts stay replayable.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct VertexId(u8);

impl VertexId {
    pub fn new(id: usize) -> Result<Self> {
        if id < MAX_VERTICES {
            Ok(VertexId(id as u8))
        } else {
            Err(Error::CapExceeded {
                what: "vertex id",
                limit: MAX_VERTICES - 1,
                actual: id,
            })
        }
    }

    /// Panics if `id >= 64`.
    pub fn of(id: usize) -> Self {
        Self::new(id).expect("vertex id out of range")
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn bit(self) -> u64 {
        1 << self.0
    }
}

impl TryFrom<u8> for VertexId {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        VertexId::new(v as usize)
    }
}

impl From<VertexId> for u8 {
    fn from(v: VertexId) -> u8 {
        v.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of vertex ids packed into one word.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(v.bit())
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= v.bit();
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !v.bit();
    }

    pub fn with(self, v: VertexId) -> Self {
        VertexSet(self.0 | v.bit())
    }

    pub fn without(self, v: VertexId) -> Self {
        VertexSet(self.0 & !v.bit())
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: VertexSet) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: VertexSet) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: VertexSet) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: VertexSet) -> Self {
        VertexSet(self.0 ^ o.0)
    }

    pub fn is_subset(self, o: VertexSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: VertexSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn first(self) -> Option<VertexId> {
        (self.0 != 0).then(|| VertexId(self.0.trailing_zeros() as u8))
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a VertexId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<VertexId> = Vec::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = VertexId;
    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as u8;
        self.0 &= self.0 - 1;
        Some(VertexId(v))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Shorthand used throughout the tests and the CLI.
pub fn vset(ids: &[usize]) -> VertexSet {
    ids.iter().map(|&i| VertexId::of(i)).collect()
}

/// A simple labeled graph. Row `v` of `adj` is the neighborhood of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    verts: VertexSet,
    adj: [u64; MAX_VERTICES],
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            verts: VertexSet::EMPTY,
            adj: [0; MAX_VERTICES],
        }
    }

    /// Edgeless graph on the given vertex set.
    pub fn edgeless(verts: VertexSet) -> Self {
        Graph {
            verts,
            adj: [0; MAX_VERTICES],
        }
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        crate::error::cap("vertex count", MAX_VERTICES, n)?;
        let mut g = Graph::edgeless(VertexSet::range(n));
        for &(u, v) in edges {
            g.add_edge(VertexId::new(u)?, VertexId::new(v)?)?;
        }
        Ok(g)
    }

    pub fn vertices(&self) -> VertexSet {
        self.verts
    }

    pub fn order(&self) -> usize {
        self.verts.len()
    }

    pub fn size(&self) -> usize {
        self.verts.iter().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.contains(v)
    }

    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        VertexSet(self.adj[v.index()])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.index()].count_ones() as usize
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.index()] & v.bit() != 0
    }

    pub fn row(&self, v: VertexId) -> u64 {
        self.adj[v.index()]
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in self.verts {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_subset(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.verts).first() {
            Some(v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            return Err(Error::DuplicateVertex(v));
        }
        self.verts.insert(v);
        Ok(())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Invalid(format!("loop at {u}")));
        }
        self.adj[u.index()] |= v.bit();
        self.adj[v.index()] |= u.bit();
        Ok(())
    }

    pub fn set_edge(&mut self, u: VertexId, v: VertexId, on: bool) -> Result<()> {
        if on {
            self.add_edge(u, v)
        } else {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            self.adj[u.index()] &= !v.bit();
            self.adj[v.index()] &= !u.bit();
            Ok(())
        }
    }

    pub fn toggle_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        let on = !self.has_edge(u, v);
        self.set_edge(u, v, on)
    }

    /// Replaces the neighborhood of `v` by `nbrs` (which must avoid `v`).
    pub fn set_neighbors(&mut self, v: VertexId, nbrs: VertexSet) -> Result<()> {
        self.check_vertex(v)?;
        self.check_subset(nbrs)?;
        if nbrs.contains(v) {
            return Err(Error::Invalid(format!("loop at {v}")));
        }
        for u in self.neighbors(v) {
            self.adj[u.index()] &= !v.bit();
        }
        self.adj[v.index()] = nbrs.0;
        for u in nbrs {
            self.adj[u.index()] |= v.bit();
        }
        Ok(())
    }

    /// `G * v`: toggles every pair of neighbors of `v`.
    pub fn local_complement(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.local_complement_in_place(v);
        Ok(g)
    }

    pub(crate) fn local_complement_in_place(&mut self, v: VertexId) {
        let n = self.adj[v.index()];
        let mut rest = n;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.adj[u] ^= n & !(1 << u);
        }
    }

    /// `G × uv`: toggles pairs between the three classes of outside vertices
    /// with distinct nonempty traces on `{u, v}`, then swaps `u` and `v`.
    pub fn pivot(&self, u: VertexId, v: VertexId) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.pivot_in_place(u, v);
        Ok(g)
    }

    pub(crate) fn pivot_in_place(&mut self, u: VertexId, v: VertexId) {
        let uv = u.bit() | v.bit();
        let nu = self.adj[u.index()] & !uv;
        let nv = self.adj[v.index()] & !uv;
        let only_u = nu & !nv;
        let only_v = nv & !nu;
        let both = nu & nv;
        for (class, other) in [
            (only_u, only_v | both),
            (only_v, only_u | both),
            (both, only_u | only_v),
        ] {
            let mut rest = class;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.adj[x] ^= other;
            }
        }
        self.swap_labels(u, v);
    }

    /// Exchanges the names of two vertices.
    fn swap_labels(&mut self, u: VertexId, v: VertexId) {
        let (a, b) = (u.index(), v.index());
        self.adj.swap(a, b);
        for row in self.adj.iter_mut() {
            let ba = (*row >> a) & 1;
            let bb = (*row >> b) & 1;
            if ba != bb {
                *row ^= (1 << a) | (1 << b);
            }
        }
    }

    /// `G / v`: pivot `v` with its smallest neighbor and delete `v`, or just
    /// delete `v` when it is isolated.
    pub fn contract_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        if let Some(u) = self.neighbors(v).first() {
            g.pivot_in_place(v, u);
        }
        g.remove_vertex_in_place(v);
        Ok(g)
    }

    /// The neighbor used by [`Graph::contract_vertex`], if any.
    pub fn contraction_partner(&self, v: VertexId) -> Option<VertexId> {
        self.neighbors(v).first()
    }

    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.remove_vertex_in_place(v);
        Ok(g)
    }

    pub fn delete_vertices(&self, s: VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        Ok(self.induced(self.verts.difference(s)))
    }

    pub(crate) fn remove_vertex_in_place(&mut self, v: VertexId) {
        for u in self.neighbors(v) {
            self.adj[u.index()] &= !v.bit();
        }
        self.adj[v.index()] = 0;
        self.verts.remove(v);
    }

    /// Induced subgraph on `s ∩ V(G)`.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let keep = s.intersection(self.verts);
        let mut g = Graph::edgeless(keep);
        for v in keep {
            g.adj[v.index()] = self.adj[v.index()] & keep.0;
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::edgeless(self.verts);
        for v in self.verts {
            g.adj[v.index()] = self.verts.0 & !self.adj[v.index()] & !v.bit();
        }
        g
    }

    /// Renames vertices through `map` (which must be injective on `V(G)`).
    pub fn relabel(&self, map: impl Fn(VertexId) -> VertexId) -> Result<Graph> {
        let mut g = Graph::new();
        for v in self.verts {
            g.add_vertex(map(v))?;
        }
        for (u, v) in self.edges() {
            g.add_edge(map(u), map(v))?;
        }
        Ok(g)
    }

    /// Renames the vertices to `0..n` in increasing order.
    pub fn compact(&self) -> Graph {
        let order = self.verts.to_vec();
        let mut pos = [0u8; MAX_VERTICES];
        for (i, v) in order.iter().enumerate() {
            pos[v.index()] = i as u8;
        }
        self.relabel(|v| VertexId(pos[v.index()]))
            .expect("compaction is injective")
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = self.verts;
        while let Some(s) = left.first() {
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier {
                    next |= self.adj[v.index()];
                }
                frontier = VertexSet(next).difference(comp);
                comp = comp.union(frontier);
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union, renaming `other` onto the lowest ids not used by `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let fresh = fresh_ids(self.verts, other.order())?;
        let olds = other.verts.to_vec();
        let mut g = self.clone();
        for &v in &fresh {
            g.add_vertex(v)?;
        }
        for (u, v) in other.edges() {
            let iu = olds.binary_search(&u).expect("vertex of other");
            let iv = olds.binary_search(&v).expect("vertex of other");
            g.add_edge(fresh[iu], fresh[iv])?;
        }
        Ok(g)
    }

    /// `kH`: copy `c` of position `p` of `H` gets id `c * |H| + p`.
    pub fn disjoint_copies(h: &Graph, k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        let n = h.order();
        crate::error::cap("vertex count", MAX_VERTICES, n * k)?;
        let base = h.compact();
        let mut g = Graph::edgeless(VertexSet::range(n * k));
        for c in 0..k {
            for (u, v) in base.edges() {
                g.add_edge(VertexId::of(c * n + u.index()), VertexId::of(c * n + v.index()))?;
            }
        }
        Ok(g)
    }

    pub fn is_bipartite_between(&self, a: VertexSet, b: VertexSet) -> bool {
        a.is_disjoint(b)
            && a.union(b) == self.verts
            && a.iter().all(|v| self.neighbors(v).is_subset(b))
            && b.iter().all(|v| self.neighbors(v).is_subset(a))
    }

    /// A proper 2-coloring, putting the smallest vertex of each component on
    /// the first side, or `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut a = VertexSet::EMPTY;
        let mut b = VertexSet::EMPTY;
        for comp in self.components() {
            let s = comp.first().expect("nonempty component");
            let mut side = VertexSet::singleton(s);
            let mut other = VertexSet::EMPTY;
            let mut frontier = side;
            let mut at_a = true;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier {
                    next |= self.adj[v.index()];
                }
                let next = VertexSet(next);
                let (mine, theirs) = if at_a {
                    (&mut side, &mut other)
                } else {
                    (&mut other, &mut side)
                };
                if !next.is_disjoint(*mine) {
                    return None;
                }
                frontier = next.difference(*theirs);
                *theirs = theirs.union(next);
                at_a = !at_a;
            }
            a = a.union(side);
            b = b.union(other);
        }
        Some((a, b))
    }
}

/// The `count` lowest ids outside `used`.
pub fn fresh_ids(used: VertexSet, count: usize) -> Result<Vec<VertexId>> {
    let free = VertexSet(!used.0);
    if free.len() < count {
        return Err(Error::CapExceeded {
            what: "vertex count",
            limit: MAX_VERTICES,
            actual: used.len() + count,
        });
    }
    Ok(free.iter().take(count).collect())
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.verts)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Graphs in JSON as an explicit vertex list and edge list, keeping labels.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.verts.to_vec(),
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        let mut g = Graph::new();
        for v in r.vertices {
            g.add_vertex(v).map_err(serde::de::Error::custom)?;
        }
        for (u, v) in r.edges {
            g.add_edge(u, v).map_err(serde::de::Error::custom)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId::of(i)
    }

    fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().iter().map(|&(a, b)| (a.index(), b.index())).collect()
    }

    #[test]
    fn triangle_local_complement_gives_path() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(edge_set(&g.local_complement(v(0)).unwrap()), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn star_center_local_complement_gives_clique() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.local_complement(v(0)).unwrap().size(), 6);
    }

    #[test]
    fn pivot_on_path_end_swaps_labels_only() {
        // a-b-c, pivot ab: c is adjacent to b only, so after the swap it hangs on a.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(edge_set(&g.pivot(v(0), v(1)).unwrap()), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn pivot_requires_edge() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.pivot(v(0), v(2)), Err(Error::NotAnEdge(v(0), v(2))));
        assert_eq!(g.local_complement(v(5)), Err(Error::UnknownVertex(v(5))));
    }

    #[test]
    fn contract_cases() {
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(iso.contract_vertex(v(2)).unwrap(), iso.delete_vertex(v(2)).unwrap());
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let r = k2.contract_vertex(v(0)).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.size(), 0);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let by_def = p3.pivot(v(1), v(0)).unwrap().delete_vertex(v(1)).unwrap();
        assert_eq!(p3.contract_vertex(v(1)).unwrap(), by_def);
    }

    #[test]
    fn delete_and_copies() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.delete_vertices(VertexSet::EMPTY).unwrap(), p4);
        assert_eq!(p4.delete_vertices(p4.vertices()).unwrap().order(), 0);
        assert_eq!(Graph::disjoint_copies(&p4, 1).unwrap(), p4);
        let three = Graph::disjoint_copies(&p4, 3).unwrap();
        assert_eq!((three.order(), three.size()), (12, 9));
        assert_eq!(three.components().len(), 3);
        assert!(Graph::disjoint_copies(&p4, 0).is_err());
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let m = Graph::disjoint_copies(&k2, 2).unwrap();
        assert!(m.vertices().iter().all(|x| m.degree(x) == 1));
    }

    #[test]
    fn bipartition_detects_odd_cycles() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.bipartition().is_none());
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (a, b) = p4.bipartition().unwrap();
        assert_eq!((a, b), (vset(&[0, 2]), vset(&[1, 3])));
        assert!(p4.is_bipartite_between(a, b));
    }

    #[test]
    fn json_keeps_labels() {
        let mut g = Graph::edgeless(vset(&[3, 7, 9]));
        g.add_edge(v(3), v(9)).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"vertices":[3,7,9],"edges":[[3,9]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&s).unwrap(), g);
    }
}
