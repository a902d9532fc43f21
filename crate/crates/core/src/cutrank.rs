//! Cut-rank, rank-decompositions and exact rank-width for small graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::gf2::rank_of_rows;
use crate::graph::{Graph, VertexId, VertexSet};

pub const DEFAULT_RANKWIDTH_CAP: usize = 10;

/// Rank over GF(2) of the `X × (V∖X)` adjacency submatrix.
pub fn cut_rank(g: &Graph, x: VertexSet) -> usize {
    let x = x.intersection(g.vertices());
    let y = g.vertices().difference(x).0;
    let rows: Vec<u64> = x.iter().map(|v| g.row(v) & y).collect();
    rank_of_rows(&rows)
}

/// Rank of the `S × T` adjacency submatrix for disjoint `S`, `T`.
pub fn cross_rank(g: &Graph, s: VertexSet, t: VertexSet) -> usize {
    let rows: Vec<u64> = s.iter().map(|v| g.row(v) & t.0).collect();
    rank_of_rows(&rows)
}

/// Edges with exactly one end in `X`.
pub fn crossing_edges(g: &Graph, x: VertexSet) -> Vec<(VertexId, VertexId)> {
    g.edges()
        .into_iter()
        .filter(|&(a, b)| x.contains(a) != x.contains(b))
        .collect()
}

/// `G − δ(X)`: all edges between `X` and its complement removed.
pub fn remove_crossing(g: &Graph, x: VertexSet) -> Graph {
    let mut out = g.clone();
    for (a, b) in crossing_edges(g, x) {
        out.set_edge(a, b, false).expect("edge of g");
    }
    out
}

/// An unrooted tree with maximum degree three whose leaves are labeled by the
/// vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDecomposition {
    pub adjacency: Vec<Vec<usize>>,
    pub leaves: Vec<Option<VertexId>>,
}

impl RankDecomposition {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ns) in self.adjacency.iter().enumerate() {
            for &b in ns {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn labeled_vertices(&self) -> VertexSet {
        self.leaves.iter().flatten().collect()
    }

    /// Checks the tree shape and that the leaves are exactly `V(G)`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = self.node_count();
        let bad = |m: &str| Err(Error::Invalid(format!("rank decomposition: {m}")));
        if self.leaves.len() != n {
            return bad("label table has the wrong length");
        }
        if n == 0 {
            return if g.order() == 0 { Ok(()) } else { bad("empty tree") };
        }
        let mut seen = VertexSet::EMPTY;
        let mut degree_sum = 0;
        for (i, ns) in self.adjacency.iter().enumerate() {
            if ns.len() > 3 {
                return bad("a node has degree above three");
            }
            if ns.iter().any(|&j| j >= n || j == i || !self.adjacency[j].contains(&i)) {
                return bad("adjacency is not symmetric");
            }
            degree_sum += ns.len();
            match self.leaves[i] {
                Some(v) => {
                    if ns.len() > 1 {
                        return bad("a labeled node is not a leaf");
                    }
                    if seen.contains(v) {
                        return bad("a vertex labels two leaves");
                    }
                    seen.insert(v);
                }
                None if ns.len() <= 1 => return bad("an unlabeled leaf"),
                None => {}
            }
        }
        if degree_sum != 2 * (n - 1) || !self.is_connected() {
            return bad("not a tree");
        }
        if seen != g.vertices() {
            return bad("leaf labels differ from the vertex set");
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for &b in &self.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Labels of the leaves on `b`'s side of the tree edge `ab`.
    pub fn side(&self, a: usize, b: usize) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        let mut stack = vec![(b, a)];
        while let Some((x, parent)) = stack.pop() {
            if let Some(v) = self.leaves[x] {
                out.insert(v);
            }
            for &y in &self.adjacency[x] {
                if y != parent {
                    stack.push((y, x));
                }
            }
        }
        out
    }

    /// Parses nested parentheses such as `((0,1),(2,3),4)`.
    pub fn parse(text: &str) -> Result<Self> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut d = RankDecomposition {
            adjacency: Vec::new(),
            leaves: Vec::new(),
        };
        if s == ['(', ')'] {
            return Ok(d);
        }
        let mut i = 0;
        d.parse_node(&s, &mut i)?;
        if i != s.len() {
            return Err(Error::Parse("trailing characters".into()));
        }
        Ok(d)
    }

    fn parse_node(&mut self, s: &[char], i: &mut usize) -> Result<usize> {
        let id = self.adjacency.len();
        self.adjacency.push(Vec::new());
        self.leaves.push(None);
        if s.get(*i) == Some(&'(') {
            *i += 1;
            loop {
                let c = self.parse_node(s, i)?;
                self.adjacency[id].push(c);
                self.adjacency[c].push(id);
                match s.get(*i) {
                    Some(',') => *i += 1,
                    Some(')') => {
                        *i += 1;
                        break;
                    }
                    _ => return Err(Error::Parse("expected ',' or ')'".into())),
                }
            }
        } else {
            let start = *i;
            while s.get(*i).is_some_and(|c| c.is_ascii_digit()) {
                *i += 1;
            }
            let word: String = s[start..*i].iter().collect();
            let v = word
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad leaf {word:?}")))?;
            self.leaves[id] = Some(VertexId::new(v)?);
        }
        Ok(id)
    }
}

impl fmt::Display for RankDecomposition {
    /// Nested parentheses rooted at the first internal node.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn node(d: &RankDecomposition, x: usize, parent: Option<usize>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if let Some(v) = d.leaves[x] {
                return write!(f, "{v}");
            }
            f.write_str("(")?;
            let mut first = true;
            for &c in &d.adjacency[x] {
                if Some(c) == parent {
                    continue;
                }
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                node(d, c, Some(x), f)?;
            }
            f.write_str(")")
        }
        if self.node_count() == 0 {
            return f.write_str("()");
        }
        let root = self.leaves.iter().position(Option::is_none).unwrap_or(0);
        node(self, root, None, f)
    }
}

/// Maximum cut-rank over the tree edges.
pub fn decomposition_width(g: &Graph, d: &RankDecomposition) -> Result<usize> {
    d.validate(g)?;
    Ok(d
        .tree_edges()
        .into_iter()
        .map(|(a, b)| cut_rank(g, d.side(a, b)))
        .max()
        .unwrap_or(0))
}

pub fn exact_rankwidth(g: &Graph) -> Result<(usize, RankDecomposition)> {
    exact_rankwidth_with_cap(g, DEFAULT_RANKWIDTH_CAP)
}

/// Dynamic program over vertex subsets: `f(S)` is the least width of a
/// rooted binary tree on `S`, counting the edge above `S`. Ties go to the
/// first bipartition in increasing mask order.
pub fn exact_rankwidth_with_cap(g: &Graph, limit: usize) -> Result<(usize, RankDecomposition)> {
    let verts = g.vertices().to_vec();
    let n = verts.len();
    cap("vertices for exact rank-width", limit.min(20), n)?;
    let empty = RankDecomposition {
        adjacency: Vec::new(),
        leaves: Vec::new(),
    };
    match n {
        0 => return Ok((0, empty)),
        1 => {
            return Ok((
                0,
                RankDecomposition {
                    adjacency: vec![Vec::new()],
                    leaves: vec![Some(verts[0])],
                },
            ))
        }
        _ => {}
    }
    let full = (1usize << n) - 1;
    let to_set = |mask: usize| -> VertexSet {
        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| verts[i]).collect()
    };
    let rho: Vec<u8> = (0..=full).map(|m| cut_rank(g, to_set(m)) as u8).collect();
    let mut f = vec![0u8; full + 1];
    let mut split = vec![0usize; full + 1];
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for &s in &masks {
        if s.count_ones() == 1 {
            f[s] = rho[s];
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = u8::MAX;
        let mut best_a = 0;
        // Every proper subset containing the lowest element, in increasing order.
        let mut sub = 0usize;
        loop {
            let a = sub | low;
            if a != s {
                let w = f[a].max(f[s ^ a]);
                if w < best || (w == best && a < best_a) {
                    best = w;
                    best_a = a;
                }
            }
            if sub == rest {
                break;
            }
            sub = (sub.wrapping_sub(rest)) & rest;
        }
        f[s] = if s == full { best } else { best.max(rho[s]) };
        split[s] = best_a;
    }

    let mut d = empty;
    fn build(
        d: &mut RankDecomposition,
        split: &[usize],
        verts: &[VertexId],
        s: usize,
    ) -> usize {
        let id = d.adjacency.len();
        d.adjacency.push(Vec::new());
        if s.count_ones() == 1 {
            d.leaves.push(Some(verts[s.trailing_zeros() as usize]));
            return id;
        }
        d.leaves.push(None);
        let a = split[s];
        for part in [a, s ^ a] {
            let c = build(d, split, verts, part);
            d.adjacency[id].push(c);
            d.adjacency[c].push(id);
        }
        id
    }
    build(&mut d, &split, &verts, full);
    // A root with two leaf children on two vertices is fine; otherwise the
    // degree-two root stays, which is allowed.
    Ok((f[full] as usize, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn cycle(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn cut_rank_examples() {
        let c5 = cycle(5);
        assert_eq!(cut_rank(&c5, VertexSet::EMPTY), 0);
        assert_eq!(cut_rank(&c5, c5.vertices()), 0);
        assert_eq!(cut_rank(&c5, vset(&[0, 1])), 2);
        let k23 = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(cut_rank(&k23, vset(&[0, 1])), 1);
    }

    #[test]
    fn crossing_examples() {
        let k2 = complete(2);
        assert!(crossing_edges(&k2, VertexSet::EMPTY).is_empty());
        assert_eq!(crossing_edges(&k2, vset(&[0])).len(), 1);
    }

    #[test]
    fn parse_and_print_round_trip() {
        let d = RankDecomposition::parse("((0,1),(2,3),4)").unwrap();
        let g = Graph::edgeless(VertexSet::range(5));
        d.validate(&g).unwrap();
        assert_eq!(d.to_string(), "((0,1),(2,3),4)");
        assert_eq!(decomposition_width(&g, &d).unwrap(), 0);
        assert!(RankDecomposition::parse("((0,1),(2,3),4,5)")
            .unwrap()
            .validate(&Graph::edgeless(VertexSet::range(6)))
            .is_err());
        assert!(RankDecomposition::parse("((0,1),").is_err());
    }

    #[test]
    fn widths() {
        let k4 = complete(4);
        let d = RankDecomposition::parse("((0,1),(2,3))").unwrap();
        assert_eq!(decomposition_width(&k4, &d).unwrap(), 1);
        let c5 = cycle(5);
        let cat = RankDecomposition::parse("(((0,1),2),3,4)").unwrap();
        assert_eq!(decomposition_width(&c5, &cat).unwrap(), 2);
    }

    #[test]
    fn exact_small_values() {
        assert_eq!(exact_rankwidth(&Graph::edgeless(VertexSet::range(6))).unwrap().0, 0);
        for n in 2..=8 {
            let (w, d) = exact_rankwidth(&complete(n)).unwrap();
            assert_eq!(w, 1);
            assert_eq!(decomposition_width(&complete(n), &d).unwrap(), 1);
        }
        let (w, d) = exact_rankwidth(&cycle(5)).unwrap();
        assert_eq!(w, 2);
        assert_eq!(decomposition_width(&cycle(5), &d).unwrap(), 2);
        assert!(exact_rankwidth(&Graph::edgeless(VertexSet::range(11))).is_err());
    }
}
