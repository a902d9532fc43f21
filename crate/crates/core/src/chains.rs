//! Chains of ordered vertex sets and the procedure fixing column pairs one at
//! a time in lexicographic order.
//!
//! Columns and parts are indexed from 0. A pair `(j1, j2)` is fixed when no
//! edge joins `X_a(j1)` to `X_b(j2)` for distinct parts `a`, `b`. Fixing uses
//! only operations at vertices of discarded parts, so pairs fixed earlier
//! stay fixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::script::{OperationScript, Step};
use crate::vmsearch::VertexMinorSearch;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<VertexId>>", into = "Vec<Vec<VertexId>>")]
pub struct Chain {
    parts: Vec<Vec<VertexId>>,
}

impl TryFrom<Vec<Vec<VertexId>>> for Chain {
    type Error = Error;
    fn try_from(parts: Vec<Vec<VertexId>>) -> Result<Self> {
        Chain::new(parts)
    }
}

impl From<Chain> for Vec<Vec<VertexId>> {
    fn from(c: Chain) -> Self {
        c.parts
    }
}

impl Chain {
    /// Rejects repeated vertices within or across parts.
    pub fn new(parts: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for part in &parts {
            for &v in part {
                if seen.contains(v) {
                    return Err(Error::Invalid(format!("vertex {v} appears twice in the chain")));
                }
                seen.insert(v);
            }
        }
        Ok(Chain { parts })
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn width(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common part size, if every part has it.
    pub fn uniform_width(&self) -> Option<usize> {
        let c = self.parts.first().map_or(0, Vec::len);
        self.parts.iter().all(|p| p.len() == c).then_some(c)
    }

    /// `X_i(j)`.
    pub fn at(&self, i: usize, j: usize) -> VertexId {
        self.parts[i][j]
    }

    pub fn part_set(&self, i: usize) -> VertexSet {
        self.parts[i].iter().collect()
    }

    /// `𝒳(j)`.
    pub fn column(&self, j: usize) -> VertexSet {
        self.parts.iter().map(|p| p[j]).collect()
    }

    pub fn vertices(&self) -> VertexSet {
        self.parts.iter().flatten().collect()
    }

    pub fn check_in(&self, g: &Graph) -> Result<()> {
        g.check_subset(self.vertices())
    }

    pub fn subchain(&self, indices: &[usize]) -> Chain {
        Chain {
            parts: indices.iter().map(|&i| self.parts[i].clone()).collect(),
        }
    }

    pub fn prefix(&self, k: usize) -> Chain {
        Chain {
            parts: self.parts[..k.min(self.len())].to_vec(),
        }
    }

    fn require_uniform(&self) -> Result<usize> {
        self.uniform_width()
            .ok_or_else(|| Error::Invalid("chain is not uniform".into()))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairStatus {
    Fixed,
    UpHalf,
    DownHalf,
    CompleteCouple,
    Mixed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainMode {
    VertexMinor,
    /// Pivots on edges only; the host must be bipartite.
    Pivot,
}

/// The colour of parts `a < b` for the pair `(j1, j2)`: whether
/// `X_a(j1) ~ X_b(j2)` and whether `X_a(j2) ~ X_b(j1)`.
fn colour(g: &Graph, x: &Chain, a: usize, b: usize, j1: usize, j2: usize) -> (bool, bool) {
    (
        g.has_edge(x.at(a, j1), x.at(b, j2)),
        g.has_edge(x.at(a, j2), x.at(b, j1)),
    )
}

fn status_of(c: (bool, bool), diagonal: bool) -> PairStatus {
    match c {
        (false, false) => PairStatus::Fixed,
        (true, true) => PairStatus::CompleteCouple,
        _ if diagonal => PairStatus::Mixed,
        (false, true) => PairStatus::UpHalf,
        (true, false) => PairStatus::DownHalf,
    }
}

/// For `j1 = j2` the column is fixed when independent and a complete couple
/// when it is a clique.
pub fn pair_status(g: &Graph, x: &Chain, j1: usize, j2: usize) -> Result<PairStatus> {
    let c = x.require_uniform()?;
    if j1 > j2 || j2 >= c {
        return Err(Error::Invalid(format!("pair ({j1}, {j2}) outside width {c}")));
    }
    x.check_in(g)?;
    let mut seen: Option<PairStatus> = None;
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            let s = status_of(colour(g, x, a, b, j1, j2), j1 == j2);
            match seen {
                None => seen = Some(s),
                Some(t) if t == s => {}
                Some(_) => return Ok(PairStatus::Mixed),
            }
        }
    }
    Ok(seen.unwrap_or(PairStatus::Fixed))
}

pub fn is_fixed(g: &Graph, x: &Chain, j1: usize, j2: usize) -> bool {
    (0..x.len()).all(|a| {
        (0..x.len()).all(|b| a == b || !g.has_edge(x.at(a, j1), x.at(b, j2)))
    })
}

/// The pairs `(j1, j2)` with `j1 ≤ j2 < c`, in lexicographic order.
pub fn lex_pairs(c: usize) -> Vec<(usize, usize)> {
    (0..c).flat_map(|a| (a..c).map(move |b| (a, b))).collect()
}

fn first_unfixed(g: &Graph, x: &Chain, c: usize) -> Option<(usize, usize)> {
    lex_pairs(c).into_iter().find(|&(a, b)| !is_fixed(g, x, a, b))
}

/// Index graph of parts whose pair colour has the given status.
fn colour_graph(g: &Graph, x: &Chain, j1: usize, j2: usize, want: PairStatus) -> Vec<u64> {
    let n = x.len();
    let mut adj = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            if status_of(colour(g, x, a, b, j1, j2), j1 == j2) == want {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    adj
}

/// Lexicographically first clique of size `size`, by increasing indices.
fn first_clique(adj: &[u64], size: usize) -> Option<Vec<usize>> {
    fn go(adj: &[u64], cand: u64, cur: &mut Vec<usize>, size: usize) -> bool {
        if cur.len() == size {
            return true;
        }
        if (cand.count_ones() as usize) + cur.len() < size {
            return false;
        }
        let mut rest = cand;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cur.push(i);
            if go(adj, rest & adj[i], cur, size) {
                return true;
            }
            cur.pop();
            if (rest.count_ones() as usize) + cur.len() < size {
                return false;
            }
        }
        false
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut cur = Vec::new();
    go(adj, all, &mut cur, size).then_some(cur)
}

/// Largest clique; among those of maximum size, the lexicographically first.
fn max_clique(adj: &[u64]) -> Vec<usize> {
    fn go(adj: &[u64], cand: u64, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        let mut rest = cand;
        while rest != 0 {
            if cur.len() + rest.count_ones() as usize <= best.len() {
                return;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cur.push(i);
            go(adj, rest & adj[i], cur, best);
            cur.pop();
        }
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = Vec::new();
    go(adj, all, &mut Vec::new(), &mut best);
    best
}

const SEARCH_ORDER: [PairStatus; 4] = [
    PairStatus::Fixed,
    PairStatus::CompleteCouple,
    PairStatus::UpHalf,
    PairStatus::DownHalf,
];

/// A subchain of length `len` on which `(j1, j2)` is coupled, trying the
/// statuses in the order fixed, complete couple, up, down.
pub fn find_coupled_subchain(g: &Graph, x: &Chain, j1: usize, j2: usize, len: usize) -> Result<Chain> {
    let c = x.require_uniform()?;
    if j1 > j2 || j2 >= c {
        return Err(Error::Invalid(format!("pair ({j1}, {j2}) outside width {c}")));
    }
    x.check_in(g)?;
    for want in SEARCH_ORDER {
        if j1 == j2 && matches!(want, PairStatus::UpHalf | PairStatus::DownHalf) {
            continue;
        }
        if let Some(idx) = first_clique(&colour_graph(g, x, j1, j2, want), len) {
            return Ok(x.subchain(&idx));
        }
    }
    Err(Error::NotFound(format!(
        "no coupled subchain of length {len} for pair ({j1}, {j2})"
    )))
}

/// Outcome of fixing the next pair.
#[derive(Clone, Debug)]
pub struct FixOutcome {
    pub graph: Graph,
    pub chain: Chain,
    pub script: OperationScript,
    /// The pair that was fixed, or `None` when every pair already was.
    pub pair: Option<(usize, usize)>,
    pub status: PairStatus,
}

fn pivot_on(g: &mut Graph, script: &mut OperationScript, u: VertexId, v: VertexId) -> Result<()> {
    if !g.has_edge(u, v) {
        return Err(Error::Invalid(format!("expected an edge {u}{v} to pivot on")));
    }
    *g = g.pivot(u, v)?;
    script.push(Step::pivot(u, v));
    Ok(())
}

/// Applies the fixing schedule for `status` on the coupled subchain `z`.
fn run_schedule(g: &Graph, z: &Chain, j1: usize, j2: usize, status: PairStatus) -> Result<(Graph, Chain, OperationScript)> {
    let mut h = g.clone();
    let mut script = OperationScript::new();
    let keep: Vec<usize> = match status {
        PairStatus::Fixed => (0..z.len()).collect(),
        PairStatus::CompleteCouple if j1 == j2 => {
            let v = z.at(0, j1);
            h = h.local_complement(v)?;
            script.push(Step::lc(v));
            (1..z.len()).collect()
        }
        PairStatus::CompleteCouple => {
            pivot_on(&mut h, &mut script, z.at(0, j1), z.at(1, j2))?;
            (2..z.len()).collect()
        }
        PairStatus::UpHalf | PairStatus::DownHalf => {
            let (a, b) = if status == PairStatus::UpHalf { (j2, j1) } else { (j1, j2) };
            let rounds = z.len() / 3;
            for i in 0..rounds {
                pivot_on(&mut h, &mut script, z.at(3 * i, a), z.at(3 * i + 2, b))?;
            }
            (0..rounds).map(|i| 3 * i + 1).collect()
        }
        PairStatus::Mixed => return Err(Error::Invalid("cannot fix a mixed pair".into())),
    };
    Ok((h, z.subchain(&keep), script))
}

fn output_len(status: PairStatus, diagonal: bool, s: usize) -> usize {
    match status {
        PairStatus::Fixed => s,
        PairStatus::CompleteCouple if diagonal => s.saturating_sub(1),
        PairStatus::CompleteCouple => s.saturating_sub(2),
        PairStatus::UpHalf | PairStatus::DownHalf => s / 3,
        PairStatus::Mixed => 0,
    }
}

/// Fixes the first unfixed pair, keeping the result as long as possible:
/// over the four statuses, the largest coupled subchain is found exactly and
/// the status giving the longest output wins (ties go to the larger coupled
/// subchain, then to the search order).
pub fn fix_next_pair_longest(g: &Graph, x: &Chain, mode: ChainMode) -> Result<FixOutcome> {
    let c = x.require_uniform()?;
    x.check_in(g)?;
    if x.len() > 64 {
        return Err(Error::CapExceeded {
            what: "chain length",
            limit: 64,
            actual: x.len(),
        });
    }
    if mode == ChainMode::Pivot && g.bipartition().is_none() {
        return Err(Error::Invalid("pivot mode needs a bipartite host".into()));
    }
    let Some((j1, j2)) = first_unfixed(g, x, c) else {
        return Ok(FixOutcome {
            graph: g.clone(),
            chain: x.clone(),
            script: OperationScript::new(),
            pair: None,
            status: PairStatus::Fixed,
        });
    };
    let diagonal = j1 == j2;
    let mut best: Option<(usize, usize, PairStatus, Vec<usize>)> = None;
    for want in SEARCH_ORDER {
        let skip = (diagonal && matches!(want, PairStatus::UpHalf | PairStatus::DownHalf))
            || (diagonal && mode == ChainMode::Pivot && want == PairStatus::CompleteCouple);
        if skip {
            continue;
        }
        let idx = max_clique(&colour_graph(g, x, j1, j2, want));
        let out = output_len(want, diagonal, idx.len());
        let better = match &best {
            None => true,
            Some((o, s, _, _)) => (out, idx.len()) > (*o, *s),
        };
        if better {
            best = Some((out, idx.len(), want, idx));
        }
    }
    let (_, _, status, idx) = best.expect("fixed status is always searched");
    let z = x.subchain(&idx);
    let (graph, chain, script) = run_schedule(g, &z, j1, j2, status)?;

    let previous: Vec<(usize, usize)> = lex_pairs(c).into_iter().take_while(|&p| p != (j1, j2)).collect();
    if !is_fixed(&graph, &chain, j1, j2) || previous.iter().any(|&(a, b)| !is_fixed(&graph, &chain, a, b)) {
        return Err(Error::Invalid(format!("fixing pair ({j1}, {j2}) failed")));
    }
    Ok(FixOutcome {
        graph,
        chain,
        script,
        pair: Some((j1, j2)),
        status,
    })
}

/// Fixes the first unfixed pair and returns a subchain of length exactly `k`.
pub fn fix_next_pair(g: &Graph, x: &Chain, k: usize, mode: ChainMode) -> Result<FixOutcome> {
    let mut out = fix_next_pair_longest(g, x, mode)?;
    if out.chain.len() < k {
        let pair = out.pair.map_or("none".to_string(), |(a, b)| format!("({a}, {b})"));
        return Err(Error::NotFound(format!(
            "fixing pair {pair} leaves {} parts, fewer than {k}",
            out.chain.len()
        )));
    }
    out.chain = out.chain.prefix(k);
    Ok(out)
}

/// Fixes every pair in lexicographic order, ending with `k` parts and no
/// edges between distinct parts.
pub fn clean_chain(g: &Graph, x: &Chain, k: usize, mode: ChainMode) -> Result<(Graph, Chain, OperationScript)> {
    let c = x.require_uniform()?;
    let mut graph = g.clone();
    let mut chain = x.clone();
    let mut script = OperationScript::new();
    for _ in 0..=lex_pairs(c).len() {
        if chain.len() < k {
            return Err(Error::NotFound(format!(
                "chain shrank to {} parts, fewer than {k}",
                chain.len()
            )));
        }
        let out = fix_next_pair_longest(&graph, &chain, mode)?;
        if out.pair.is_none() {
            return Ok((graph, chain.prefix(k), script));
        }
        graph = out.graph;
        chain = out.chain;
        script.extend(&out.script);
    }
    Err(Error::Invalid("pairs did not stabilize".into()))
}

/// A script exhibiting `k` disjoint copies of `H` (given by its components)
/// as a vertex-minor: clean the chain to `k·m` parts, delete everything
/// outside them, then reduce part `c·m + i` to the component `H_i`.
pub fn extract_kh(g: &Graph, x: &Chain, components: &[Graph], k: usize) -> Result<OperationScript> {
    x.check_in(g)?;
    let m = components.len();
    if m == 0 {
        return Err(Error::Invalid("H has no components".into()));
    }
    let (clean, y, mut script) = clean_chain(g, x, k * m, ChainMode::VertexMinor)?;
    let outside = clean.vertices().difference(y.vertices());
    outside.iter().for_each(|v| script.push(Step::delete(v)));
    let mut searches: Vec<VertexMinorSearch> = components
        .iter()
        .map(|h| VertexMinorSearch::with_cap(h, g.order().max(h.order()).min(16)))
        .collect::<Result<_>>()?;
    for p in 0..k * m {
        let i = p % m;
        let part = clean.induced(y.part_set(p));
        let w = searches[i].witness(&part)?.ok_or_else(|| {
            Error::NotFound(format!("part {p} has no vertex-minor isomorphic to component {i}"))
        })?;
        script.extend(&w);
    }
    let result = script.replay(g)?;
    for p in 0..k * m {
        let rest = result.vertices().intersection(y.part_set(p));
        let piece = result.induced(rest);
        if !crate::canon::are_isomorphic_with_cap(&piece, &components[p % m], 16)? {
            return Err(Error::Invalid(format!("part {p} did not reduce to its component")));
        }
        for q in result.vertices().difference(rest) {
            if rest.iter().any(|v| result.has_edge(v, q)) {
                return Err(Error::Invalid(format!("part {p} is joined to another part")));
            }
        }
    }
    Ok(script)
}
