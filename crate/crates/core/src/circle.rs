//! Chord diagrams, their interlacement graphs, brute-force circle-graph
//! recognition, and the planar-multigraph check that fundamental graphs of
//! planar cycle matroids are circle graphs.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{are_isomorphic, canonical_key, CanonKey};
use crate::error::{cap, Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::matroid::{cycle_matroid, fundamental_graph, spanning_forest, Multigraph};

/// Vertices accepted by [`is_circle_graph`].
pub const MAX_CIRCLE_VERTICES: usize = 10;
/// Edges accepted by the planarity and de Fraysseix checks.
pub const MAX_PLANARITY_EDGES: usize = 16;

/// A cyclic double-occurrence word; every chord name appears twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ChordDiagram {
    word: Vec<VertexId>,
}

impl TryFrom<Vec<usize>> for ChordDiagram {
    type Error = Error;
    fn try_from(w: Vec<usize>) -> Result<Self> {
        let word = w.into_iter().map(VertexId::new).collect::<Result<Vec<_>>>()?;
        ChordDiagram::new(word)
    }
}

impl From<ChordDiagram> for Vec<usize> {
    fn from(d: ChordDiagram) -> Self {
        d.word.iter().map(|v| v.index()).collect()
    }
}

impl ChordDiagram {
    pub fn new(word: Vec<VertexId>) -> Result<Self> {
        let mut count: HashMap<VertexId, usize> = HashMap::new();
        for &v in &word {
            *count.entry(v).or_default() += 1;
        }
        if let Some((v, c)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(Error::Invalid(format!("chord {v} occurs {c} times")));
        }
        Ok(ChordDiagram { word })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let word = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad chord name {t:?}")))
                    .and_then(VertexId::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(word)
    }

    pub fn word(&self) -> &[VertexId] {
        &self.word
    }

    pub fn chords(&self) -> VertexSet {
        self.word.iter().copied().collect()
    }

    pub fn rotated(&self, by: usize) -> Self {
        let mut word = self.word.clone();
        if !word.is_empty() {
            let k = by % word.len();
            word.rotate_left(k);
        }
        ChordDiagram { word }
    }

    pub fn reflected(&self) -> Self {
        let mut word = self.word.clone();
        word.reverse();
        ChordDiagram { word }
    }

    /// Chords of `self` followed by those of `other`; names must differ.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self::new(word)
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.index().to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Chords are adjacent when exactly one end of one lies between the ends of
/// the other.
pub fn interlacement_graph(d: &ChordDiagram) -> Graph {
    let mut g = Graph::edgeless(d.chords());
    let mut first: HashMap<VertexId, usize> = HashMap::new();
    let mut span: Vec<(VertexId, usize, usize)> = Vec::new();
    for (i, &v) in d.word.iter().enumerate() {
        match first.get(&v) {
            Some(&a) => span.push((v, a, i)),
            None => {
                first.insert(v, i);
            }
        }
    }
    for (x, &(u, a1, a2)) in span.iter().enumerate() {
        for &(v, b1, b2) in &span[x + 1..] {
            if (a1 < b1 && b1 < a2) != (a1 < b2 && b2 < a2) {
                g.add_edge(u, v).expect("chords are vertices");
            }
        }
    }
    g
}

/// A chord diagram for `g`, found by building words left to right. The word
/// starts at the smallest vertex, which covers all rotations; a chord's
/// neighborhood is checked the moment it closes.
pub fn circle_diagram(g: &Graph) -> Result<Option<ChordDiagram>> {
    cap("vertices for circle recognition", MAX_CIRCLE_VERTICES, g.order())?;
    let Some(start) = g.vertices().first() else {
        return Ok(Some(ChordDiagram { word: Vec::new() }));
    };
    let mut s = Search {
        g,
        word: vec![start],
        opened_at: HashMap::from([(start, 0)]),
        closed: VertexSet::EMPTY,
    };
    Ok(s.go().then_some(ChordDiagram { word: s.word }))
}

pub fn is_circle_graph(g: &Graph) -> Result<bool> {
    Ok(circle_diagram(g)?.is_some())
}

struct Search<'a> {
    g: &'a Graph,
    word: Vec<VertexId>,
    opened_at: HashMap<VertexId, usize>,
    closed: VertexSet,
}

impl Search<'_> {
    /// Chords with exactly one end after position `from`.
    fn crossing(&self, from: usize, x: VertexId) -> VertexSet {
        let mut once = VertexSet::EMPTY;
        for &y in &self.word[from + 1..] {
            if y != x {
                once = once.symmetric_difference(VertexSet::singleton(y));
            }
        }
        once
    }

    fn go(&mut self) -> bool {
        if self.closed == self.g.vertices() {
            return true;
        }
        let mut open: Vec<VertexId> = self
            .opened_at
            .keys()
            .copied()
            .filter(|v| !self.closed.contains(*v))
            .collect();
        open.sort();
        for x in open {
            let from = self.opened_at[&x];
            if self.crossing(from, x) != self.g.neighbors(x) {
                continue;
            }
            self.word.push(x);
            self.closed.insert(x);
            if self.go() {
                return true;
            }
            self.closed.remove(x);
            self.word.pop();
        }
        let unopened: Vec<VertexId> = self
            .g
            .vertices()
            .iter()
            .filter(|v| !self.opened_at.contains_key(v))
            .collect();
        for y in unopened {
            // A chord opened now crosses exactly the chords still open when it
            // closes; those must all be neighbors or already be gone.
            self.opened_at.insert(y, self.word.len());
            self.word.push(y);
            if self.go() {
                return true;
            }
            self.word.pop();
            self.opened_at.remove(&y);
        }
        false
    }
}

fn simple_graph(m: &Multigraph) -> Result<Graph> {
    let mut g = Graph::edgeless(VertexSet::range(m.vertex_count));
    for e in &m.edges {
        if e.u != e.v {
            g.set_edge(VertexId::of(e.u), VertexId::of(e.v), true)?;
        }
    }
    Ok(g)
}

fn k5() -> Graph {
    let mut e = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            e.push((a, b));
        }
    }
    Graph::from_edges(5, &e).expect("valid")
}

fn k33() -> Graph {
    let mut e = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            e.push((a, b));
        }
    }
    Graph::from_edges(6, &e).expect("valid")
}

/// Drops vertices of degree below two and suppresses degree-two vertices;
/// neither changes whether a `K₅` or `K₃,₃` minor exists.
fn reduce(mut g: Graph) -> Result<Graph> {
    loop {
        let Some(v) = g.vertices().iter().find(|&v| g.degree(v) <= 2) else {
            return Ok(g);
        };
        let nb = g.neighbors(v).to_vec();
        g = g.delete_vertex(v)?;
        if nb.len() == 2 {
            g.set_edge(nb[0], nb[1], true)?;
        }
    }
}

fn kuratowski_minor(g: Graph, memo: &mut HashMap<CanonKey, bool>) -> Result<bool> {
    let g = reduce(g)?.compact();
    if g.size() < 9 {
        return Ok(false);
    }
    if (g.order() == 5 && g.size() == 10) || (g.order() == 6 && g.size() == 9 && are_isomorphic(&g, &k33())?) {
        return Ok(true);
    }
    let key = canonical_key(&g)?;
    if let Some(&hit) = memo.get(&key) {
        return Ok(hit);
    }
    let mut hit = false;
    for (u, v) in g.edges() {
        let mut del = g.clone();
        del.toggle_edge(u, v)?;
        if kuratowski_minor(del, memo)? {
            hit = true;
            break;
        }
        let mut con = g.delete_vertex(v)?;
        for w in g.neighbors(v).without(u) {
            con.set_edge(u, w, true)?;
        }
        if kuratowski_minor(con, memo)? {
            hit = true;
            break;
        }
    }
    memo.insert(key, hit);
    Ok(hit)
}

/// Planarity by searching for a `K₅` or `K₃,₃` minor.
pub fn is_planar(m: &Multigraph) -> Result<bool> {
    cap("multigraph edges for planarity", MAX_PLANARITY_EDGES, m.edges.len())?;
    let g = simple_graph(m)?;
    debug_assert!(k5().size() == 10);
    Ok(!kuratowski_minor(g, &mut HashMap::new())?)
}

/// For a planar multigraph, whether its fundamental graph with respect to the
/// greedy spanning forest is a circle graph. Errors on non-planar input.
pub fn verify_de_fraysseix(m: &Multigraph) -> Result<bool> {
    Ok(de_fraysseix_diagram(m)?.is_some())
}

/// The chord diagram witnessing [`verify_de_fraysseix`], if any.
pub fn de_fraysseix_diagram(m: &Multigraph) -> Result<Option<ChordDiagram>> {
    if !is_planar(m)? {
        return Err(Error::Invalid("multigraph is not planar".into()));
    }
    let mat = cycle_matroid(m)?;
    let f = fundamental_graph(&mat, spanning_forest(m))?;
    circle_diagram(&f.graph)
}
