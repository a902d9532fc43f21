//! Canonical forms by individualization and refinement.
//!
//! Cells of the partition are split by neighbor counts until equitable; the
//! search then individualizes each vertex of the first non-singleton cell.
//! Two vertices of that cell with the same neighbors outside the pair are
//! swapped by an automorphism that fixes the partition, so only one of them
//! is tried. The canonical code is the lexicographically least permuted
//! adjacency over all leaves.

use crate::error::{cap, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Default vertex cap for isomorphism work.
pub const DEFAULT_ISO_CAP: usize = 12;

/// Hashable canonical code: vertex count, color sequence, then rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Vec<u64>);

pub(crate) fn key_words(key: &CanonKey) -> &[u64] {
    &key.0
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonKey,
    /// Graph on `0..n`, position `i` holding `labeling[i]` of the input.
    pub graph: Graph,
    pub labeling: Vec<VertexId>,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with(g, &[], DEFAULT_ISO_CAP)
}

pub fn canonical_key(g: &Graph) -> Result<CanonKey> {
    Ok(canonical_form(g)?.key)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    are_isomorphic_with_cap(a, b, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic_with_cap(a: &Graph, b: &Graph, limit: usize) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_form_with(a, &[], limit)?.key == canonical_form_with(b, &[], limit)?.key)
}

/// Canonical form respecting a vertex coloring. `colors[i]` is the color of
/// the `i`-th smallest vertex; an empty slice means a single color.
pub fn canonical_form_with(g: &Graph, colors: &[u32], limit: usize) -> Result<CanonicalForm> {
    let verts = g.vertices().to_vec();
    let n = verts.len();
    cap("vertices for canonical labeling", limit.min(64), n)?;
    let color = |i: usize| colors.get(i).copied().unwrap_or(0);
    let pos_of = |v: VertexId| verts.binary_search(&v).expect("vertex of g");
    let adj: Vec<u64> = verts
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .fold(0u64, |acc, u| acc | 1 << pos_of(u))
        })
        .collect();

    let mut palette: Vec<u32> = (0..n).map(color).collect();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<Vec<usize>> = palette
        .iter()
        .map(|&c| (0..n).filter(|&i| color(i) == c).collect())
        .collect();

    let mut search = Search {
        adj: &adj,
        best: None,
    };
    search.run(refine(&adj, cells));
    let (code, order) = search.best.unwrap_or_default();

    let mut key = Vec::with_capacity(2 * n + 1);
    key.push(n as u64);
    key.extend(order.iter().map(|&i| color(i) as u64));
    key.extend(code);
    let labeling: Vec<VertexId> = order.iter().map(|&i| verts[i]).collect();
    let mut graph = Graph::edgeless(VertexSet::range(n));
    for a in 0..n {
        for b in a + 1..n {
            if adj[order[a]] >> order[b] & 1 == 1 {
                graph.add_edge(VertexId::of(a), VertexId::of(b))?;
            }
        }
    }
    Ok(CanonicalForm {
        key: CanonKey(key),
        graph,
        labeling,
    })
}

struct Search<'a> {
    adj: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, cells: Vec<Vec<usize>>) {
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            let code = permuted_rows(self.adj, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let target = cells[t].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &x in &target {
            let twin = tried.iter().any(|&y| {
                let outside = !((1u64 << x) | (1u64 << y));
                (self.adj[x] ^ self.adj[y]) & outside == 0
            });
            if twin {
                continue;
            }
            tried.push(x);
            let mut next = cells.clone();
            let rest: Vec<usize> = target.iter().copied().filter(|&y| y != x).collect();
            next.splice(t..=t, [vec![x], rest]);
            self.run(refine(self.adj, next));
        }
    }
}

fn permuted_rows(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut inv = vec![0usize; n];
    for (p, &i) in order.iter().enumerate() {
        inv[i] = p;
    }
    order
        .iter()
        .map(|&i| {
            let mut row = 0u64;
            let mut rest = adj[i];
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                row |= 1 << inv[j];
            }
            row
        })
        .collect()
}

/// Splits cells by neighbor counts into each cell until nothing changes.
/// Subcells are ordered by increasing count, which is label-invariant.
fn refine(adj: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s].iter().fold(0u64, |acc, &i| acc | 1 << i);
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&i| ((adj[i] & splitter).count_ones(), i))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        next.push(keyed[start..k].iter().map(|&(_, i)| i).collect());
                        start = k;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
                cells = next;
            }
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn examples() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(are_isomorphic(&p4, &p4).unwrap());
        assert!(!are_isomorphic(&p4, &star).unwrap());
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_k3 = g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!are_isomorphic(&c6, &two_k3).unwrap());
    }

    #[test]
    fn relabeling_gives_same_key() {
        let a = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 4)]);
        let b = a.relabel(|v| VertexId::of([7, 3, 9, 0, 12][v.index()])).unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        let cf = canonical_form(&b).unwrap();
        assert_eq!(
            canonical_form(&cf.graph).unwrap().key,
            cf.key,
            "canonical graph is a fixed point"
        );
    }

    #[test]
    fn colors_matter() {
        let k2 = g(2, &[(0, 1)]);
        let a = canonical_form_with(&k2, &[0, 1], 4).unwrap().key;
        let b = canonical_form_with(&k2, &[1, 0], 4).unwrap().key;
        assert_eq!(a, b);
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let mid = canonical_form_with(&p3, &[0, 1, 0], 4).unwrap().key;
        let end = canonical_form_with(&p3, &[1, 0, 0], 4).unwrap().key;
        assert_ne!(mid, end);
    }

    #[test]
    fn cap_is_enforced() {
        let big = Graph::edgeless(VertexSet::range(13));
        assert!(canonical_form(&big).is_err());
        assert!(canonical_form_with(&big, &[], 13).is_ok());
    }
}
