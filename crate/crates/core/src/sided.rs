//! Bipartite graphs with a fixed ordered bipartition `(A, B)`.

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_with, CanonKey, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SidedBipartiteGraph {
    pub graph: Graph,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl SidedBipartiteGraph {
    pub fn new(graph: Graph, side_a: VertexSet, side_b: VertexSet) -> Result<Self> {
        if !graph.is_bipartite_between(side_a, side_b) {
            return Err(Error::Invalid("sides do not form a bipartition".into()));
        }
        Ok(SidedBipartiteGraph {
            graph,
            side_a,
            side_b,
        })
    }

    /// Sides from a 2-coloring, the smallest vertex of each component on `A`.
    pub fn from_coloring(graph: Graph) -> Result<Self> {
        let (a, b) = graph
            .bipartition()
            .ok_or_else(|| Error::Invalid("graph is not bipartite".into()))?;
        Self::new(graph, a, b)
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_valid(&self) -> bool {
        self.graph.is_bipartite_between(self.side_a, self.side_b)
    }

    /// `𝒢 × uv`: the graph pivot with `u` and `v` changing sides.
    pub fn pivot(&self, u: VertexId, v: VertexId) -> Result<Self> {
        let graph = self.graph.pivot(u, v)?;
        let swap = VertexSet::singleton(u).with(v);
        Ok(SidedBipartiteGraph {
            graph,
            side_a: self.side_a.symmetric_difference(swap),
            side_b: self.side_b.symmetric_difference(swap),
        })
    }

    pub fn delete_vertex(&self, v: VertexId) -> Result<Self> {
        Ok(SidedBipartiteGraph {
            graph: self.graph.delete_vertex(v)?,
            side_a: self.side_a.without(v),
            side_b: self.side_b.without(v),
        })
    }

    pub fn induced(&self, s: VertexSet) -> Self {
        SidedBipartiteGraph {
            graph: self.graph.induced(s),
            side_a: self.side_a.intersection(s),
            side_b: self.side_b.intersection(s),
        }
    }

    /// `𝒢 / v`: sided pivot with the smallest neighbor, then delete `v`.
    pub fn contract_vertex(&self, v: VertexId) -> Result<Self> {
        self.graph.check_vertex(v)?;
        match self.graph.contraction_partner(v) {
            Some(u) => self.pivot(v, u)?.delete_vertex(v),
            None => self.delete_vertex(v),
        }
    }

    /// Colors `0` for side `A` and `1` for side `B`, in vertex order.
    pub fn colors(&self) -> Vec<u32> {
        self.graph
            .vertices()
            .iter()
            .map(|v| u32::from(self.side_b.contains(v)))
            .collect()
    }

    /// Canonical form up to isomorphisms sending `A` to `A` and `B` to `B`.
    pub fn canonical_form(&self, limit: usize) -> Result<CanonicalForm> {
        canonical_form_with(&self.graph, &self.colors(), limit)
    }

    pub fn canonical_key(&self, limit: usize) -> Result<CanonKey> {
        Ok(self.canonical_form(limit)?.key)
    }

    /// Rebuilds a sided graph from a canonical form (side `B` = color 1).
    pub(crate) fn from_canonical(cf: &CanonicalForm, colors_in_order: &[u32]) -> Self {
        let b: VertexSet = colors_in_order
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| VertexId::of(i))
            .collect();
        let all = cf.graph.vertices();
        SidedBipartiteGraph {
            graph: cf.graph.clone(),
            side_a: all.difference(b),
            side_b: b,
        }
    }
}

pub fn strongly_isomorphic(a: &SidedBipartiteGraph, b: &SidedBipartiteGraph, limit: usize) -> Result<bool> {
    if a.order() != b.order()
        || a.side_a.len() != b.side_a.len()
        || a.graph.size() != b.graph.size()
    {
        return Ok(false);
    }
    Ok(a.canonical_key(limit)? == b.canonical_key(limit)?)
}
