//! Perturbation witnesses, low-rank symmetric deltas, and robustness.
//!
//! A `t`-perturbation witness is a supergraph with `t` extra vertices and two
//! scripts reducing it to the two graphs. Rank-`t` deltas convert into
//! witnesses of order `t`, and witnesses of order `t` convert back into
//! deltas of rank at most `2t` after a local-complementation script on the
//! target. Robustness is certified by enumerating deltas between those bounds.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::gf2::{rank_of_rows, rref_rows};
use crate::graph::{fresh_ids, Graph, VertexId, VertexSet, MAX_VERTICES};
use crate::script::{OperationScript, Step};
use crate::sided::SidedBipartiteGraph;
use crate::vmsearch::{labeled_vertex_minor_script, three_way_reductions, VertexMinorSearch};

pub const MAX_DELTA_VERTICES: usize = 11;
pub const MAX_DELTA_RANK: usize = 4;
pub const DEFAULT_DELTA_BUDGET: usize = 50_000_000;

/// A symmetric summand: `Rank1(X)` is the all-ones block on `X × X`;
/// `Rank2(Y, Z)` is `1_Y 1_Zᵀ + 1_Z 1_Yᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Piece {
    Rank1(VertexSet),
    Rank2(VertexSet, VertexSet),
}

impl Piece {
    pub fn units(&self) -> usize {
        match self {
            Piece::Rank1(_) => 1,
            Piece::Rank2(..) => 2,
        }
    }

    pub fn support(&self) -> VertexSet {
        match *self {
            Piece::Rank1(x) => x,
            Piece::Rank2(y, z) => y.union(z),
        }
    }

    fn add_to(&self, rows: &mut [u64]) {
        match *self {
            Piece::Rank1(x) => x.iter().for_each(|a| rows[a.index()] ^= x.0),
            Piece::Rank2(y, z) => {
                y.iter().for_each(|a| rows[a.index()] ^= z.0);
                z.iter().for_each(|a| rows[a.index()] ^= y.0);
            }
        }
    }

    fn sort_key(&self) -> (u8, u64, u64) {
        match *self {
            Piece::Rank1(x) => (1, x.0, 0),
            Piece::Rank2(y, z) => (2, y.0, z.0),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Rank1(x) => write!(f, "Rank1({x})"),
            Piece::Rank2(y, z) => write!(f, "Rank2({y}, {z})"),
        }
    }
}

/// A symmetric matrix over GF(2) indexed by a vertex set, together with a
/// decomposition whose unit count equals its rank.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "DeltaRepr", try_from = "DeltaRepr")]
pub struct LowRankDelta {
    domain: VertexSet,
    rows: Vec<u64>,
    pieces: Vec<Piece>,
}

impl PartialEq for LowRankDelta {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.rows == other.rows
    }
}

impl Eq for LowRankDelta {}

impl LowRankDelta {
    pub fn zero(domain: VertexSet) -> Self {
        LowRankDelta {
            domain,
            rows: vec![0; MAX_VERTICES],
            pieces: Vec::new(),
        }
    }

    /// Sum of the pieces, re-decomposed so that units equal rank.
    pub fn from_pieces(domain: VertexSet, pieces: &[Piece]) -> Result<Self> {
        let mut rows = vec![0u64; MAX_VERTICES];
        for p in pieces {
            if !p.support().is_subset(domain) {
                return Err(Error::Invalid(format!("piece {p} leaves the domain {domain}")));
            }
            p.add_to(&mut rows);
        }
        symmetric_rank_decomposition(domain, &rows)
    }

    pub fn domain(&self) -> VertexSet {
        self.domain
    }

    /// Row `v` as a bitmask over vertex ids.
    pub fn row(&self, v: VertexId) -> u64 {
        self.rows[v.index()]
    }

    pub fn entry(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u.index()] >> v.index() & 1 == 1
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Rank of the matrix, read off the decomposition.
    pub fn rank(&self) -> usize {
        self.pieces.iter().map(Piece::units).sum()
    }

    /// Rank of the matrix by elimination.
    pub fn matrix_rank(&self) -> usize {
        let rows: Vec<u64> = self.domain.iter().map(|v| self.row(v)).collect();
        rank_of_rows(&rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &LowRankDelta) -> Result<LowRankDelta> {
        if self.domain != other.domain {
            return Err(Error::Invalid("deltas have different domains".into()));
        }
        let rows: Vec<u64> = self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect();
        symmetric_rank_decomposition(self.domain, &rows)
    }

    fn sort_key(&self) -> (usize, Vec<(u8, u64, u64)>) {
        (self.rank(), self.pieces.iter().map(Piece::sort_key).collect())
    }
}

impl fmt::Display for LowRankDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct DeltaRepr {
    vertices: VertexSet,
    /// Row of each vertex in increasing order, as a hex bitmask over ids.
    rows: Vec<String>,
    pieces: Vec<Piece>,
}

impl From<LowRankDelta> for DeltaRepr {
    fn from(d: LowRankDelta) -> Self {
        DeltaRepr {
            vertices: d.domain,
            rows: d.domain.iter().map(|v| format!("{:x}", d.row(v))).collect(),
            pieces: d.pieces,
        }
    }
}

impl TryFrom<DeltaRepr> for LowRankDelta {
    type Error = Error;

    fn try_from(r: DeltaRepr) -> Result<Self> {
        if r.rows.len() != r.vertices.len() {
            return Err(Error::Parse("one row per vertex expected".into()));
        }
        let mut rows = vec![0u64; MAX_VERTICES];
        for (v, text) in r.vertices.iter().zip(&r.rows) {
            rows[v.index()] = u64::from_str_radix(text.trim_start_matches("0x"), 16)
                .map_err(|e| Error::Parse(format!("row {text}: {e}")))?;
        }
        let d = symmetric_rank_decomposition(r.vertices, &rows)?;
        if LowRankDelta::from_pieces(r.vertices, &r.pieces)? != d {
            return Err(Error::Parse("pieces do not sum to the rows".into()));
        }
        Ok(d)
    }
}

/// Splits a symmetric matrix into `Rank1` and `Rank2` pieces. A nonzero
/// diagonal entry `(i, i)` peels off the outer product of column `i`;
/// otherwise an entry `(i, j)` peels off `a bᵀ + b aᵀ` for columns `a`, `b`.
/// Each step lowers the rank by exactly the units it records.
pub fn symmetric_rank_decomposition(domain: VertexSet, rows: &[u64]) -> Result<LowRankDelta> {
    let mut m = vec![0u64; MAX_VERTICES];
    for v in domain {
        m[v.index()] = rows.get(v.index()).copied().unwrap_or(0);
        if m[v.index()] & !domain.0 != 0 {
            return Err(Error::Invalid(format!("row {v} leaves the domain")));
        }
    }
    for u in domain {
        for v in VertexSet(m[u.index()]) {
            if m[v.index()] >> u.index() & 1 == 0 {
                return Err(Error::Invalid("matrix is not symmetric".into()));
            }
        }
    }
    let full = m.clone();
    let mut pieces = Vec::new();
    loop {
        if let Some(i) = domain.iter().find(|&v| m[v.index()] >> v.index() & 1 == 1) {
            let x = VertexSet(m[i.index()]);
            let p = Piece::Rank1(x);
            p.add_to(&mut m);
            pieces.push(p);
            continue;
        }
        let Some(i) = domain.iter().find(|&v| m[v.index()] != 0) else {
            break;
        };
        let j = VertexSet(m[i.index()]).first().expect("nonzero row");
        let p = Piece::Rank2(VertexSet(m[i.index()]), VertexSet(m[j.index()]));
        p.add_to(&mut m);
        pieces.push(p);
    }
    Ok(LowRankDelta {
        domain,
        rows: full,
        pieces,
    })
}

/// Adds `Δ` to the adjacency matrix and clears the diagonal.
pub fn apply_rank_perturbation(g: &Graph, d: &LowRankDelta) -> Result<Graph> {
    if g.vertices() != d.domain {
        return Err(Error::Invalid(format!(
            "delta is indexed by {} but the graph has vertices {}",
            d.domain,
            g.vertices()
        )));
    }
    let mut out = Graph::edgeless(g.vertices());
    for (u, v) in pairs(g.vertices()) {
        if g.has_edge(u, v) != d.entry(u, v) {
            out.add_edge(u, v)?;
        }
    }
    Ok(out)
}

fn pairs(s: VertexSet) -> impl Iterator<Item = (VertexId, VertexId)> {
    s.iter()
        .flat_map(move |u| s.iter().filter(move |&v| u < v).map(move |v| (u, v)))
}

/// Every symmetric matrix on `domain` of rank at most `r`, each once, ordered
/// by rank and then by piece supports. Matrices are built as sums of rank-1
/// and alternating rank-2 pieces, level by level.
pub fn enumerate_symmetric_low_rank(domain: VertexSet, r: usize, budget: usize) -> Result<Vec<LowRankDelta>> {
    let n = domain.len();
    cap("vertices for delta enumeration", MAX_DELTA_VERTICES, n)?;
    cap("rank for delta enumeration", MAX_DELTA_RANK, r)?;
    let full: u32 = (1u32 << n) - 1;
    let outer = |y: u32, z: u32| -> u128 {
        (0..n)
            .filter(|p| y >> p & 1 == 1)
            .fold(0u128, |acc, p| acc | (z as u128) << (p * n))
    };
    let rank1: Vec<u128> = (1..=full).map(|x| outer(x, x)).collect();
    let alt: Vec<u128> = if r >= 2 {
        let mut set = HashSet::new();
        for y in 1..=full {
            for z in y + 1..=full {
                set.insert(outer(y, z) ^ outer(z, y));
            }
        }
        let mut v: Vec<u128> = set.into_iter().collect();
        v.sort_unstable();
        v
    } else {
        Vec::new()
    };

    let mut seen: HashSet<u128> = HashSet::from([0]);
    let mut levels: Vec<Vec<u128>> = vec![vec![0]];
    let mut work = 0usize;
    for u in 1..=r {
        work = work.saturating_add(levels[u - 1].len().saturating_mul(rank1.len()));
        if u >= 2 {
            work = work.saturating_add(levels[u - 2].len().saturating_mul(alt.len()));
        }
        cap("delta enumeration work", budget, work)?;
        let mut fresh = Vec::new();
        for &m in &levels[u - 1] {
            for &p in &rank1 {
                if seen.insert(m ^ p) {
                    fresh.push(m ^ p);
                }
            }
        }
        if u >= 2 {
            for &m in &levels[u - 2] {
                for &p in &alt {
                    if seen.insert(m ^ p) {
                        fresh.push(m ^ p);
                    }
                }
            }
        }
        levels.push(fresh);
    }

    let ids = domain.to_vec();
    let mask = full as u128;
    let mut out = Vec::with_capacity(seen.len());
    for level in levels {
        for m in level {
            let mut rows = vec![0u64; MAX_VERTICES];
            for (p, &v) in ids.iter().enumerate() {
                let bits = (m >> (p * n)) & mask;
                rows[v.index()] = (0..n)
                    .filter(|q| bits >> q & 1 == 1)
                    .fold(0u64, |acc, q| acc | 1 << ids[q].index());
            }
            out.push(symmetric_rank_decomposition(domain, &rows)?);
        }
    }
    out.sort_by_cached_key(LowRankDelta::sort_key);
    Ok(out)
}

/// Two graphs on one vertex set, both reduced from a common supergraph with
/// `order` extra vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationWitness {
    pub base: Graph,
    pub target: Graph,
    #[serde(rename = "super")]
    pub supergraph: Graph,
    pub script1: OperationScript,
    pub script2: OperationScript,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCheck {
    Valid,
    Invalid(String),
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessCheck::Valid)
    }
}

impl fmt::Display for WitnessCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCheck::Valid => write!(f, "valid"),
            WitnessCheck::Invalid(why) => write!(f, "invalid: {why}"),
        }
    }
}

impl PerturbationWitness {
    pub fn identity(g: &Graph) -> Self {
        PerturbationWitness {
            base: g.clone(),
            target: g.clone(),
            supergraph: g.clone(),
            script1: OperationScript::new(),
            script2: OperationScript::new(),
            order: 0,
        }
    }

    /// The same witness read from target to base.
    pub fn reversed(&self) -> Self {
        PerturbationWitness {
            base: self.target.clone(),
            target: self.base.clone(),
            supergraph: self.supergraph.clone(),
            script1: self.script2.clone(),
            script2: self.script1.clone(),
            order: self.order,
        }
    }

    pub fn verify(&self) -> WitnessCheck {
        verify_witness(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witnesses serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn verify_witness(w: &PerturbationWitness) -> WitnessCheck {
    let bad = |s: String| WitnessCheck::Invalid(s);
    let v = w.base.vertices();
    if w.target.vertices() != v {
        return bad(format!("base has vertices {v} but target has {}", w.target.vertices()));
    }
    if !v.is_subset(w.supergraph.vertices()) {
        return bad("supergraph does not contain the base vertices".into());
    }
    if w.supergraph.order() != v.len() + w.order {
        return bad(format!(
            "supergraph has {} vertices, expected {} + {}",
            w.supergraph.order(),
            v.len(),
            w.order
        ));
    }
    for (name, script, want) in [("script1", &w.script1, &w.base), ("script2", &w.script2, &w.target)] {
        match script.replay(&w.supergraph) {
            Ok(got) if got == *want => {}
            Ok(_) => return bad(format!("{name} does not replay to the expected graph")),
            Err(e) => return bad(format!("{name} fails: {e}")),
        }
    }
    WitnessCheck::Valid
}

fn apply_lcs(g: &Graph, word: &[VertexId]) -> Result<Graph> {
    let mut k = g.clone();
    for &w in word {
        k.check_vertex(w)?;
        k.local_complement_in_place(w);
    }
    Ok(k)
}

/// Drops adjacent repeated letters, since `G * w * w = G`.
fn cancel_pairs(word: impl IntoIterator<Item = VertexId>) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::new();
    for w in word {
        if out.last() == Some(&w) {
            out.pop();
        } else {
            out.push(w);
        }
    }
    out
}

fn require_valid(w: &PerturbationWitness) -> Result<()> {
    match verify_witness(w) {
        WitnessCheck::Valid => Ok(()),
        WitnessCheck::Invalid(why) => Err(Error::Invalid(format!("witness is {why}"))),
    }
}

/// Chains a witness `G₁ → G₂` of order `s` with one `G₂ → G₃` of order `t`.
///
/// Both supergraphs are first locally complemented so that `G₂` is an
/// induced subgraph of each; they are then glued along `G₂`.
pub fn compose(w12: &PerturbationWitness, w23: &PerturbationWitness) -> Result<PerturbationWitness> {
    let v = w12.base.vertices();
    if w12.target.vertices() != v || w23.base.vertices() != v || w23.target.vertices() != v {
        return Err(Error::Invalid("witnesses are on different vertex sets".into()));
    }
    if w12.target != w23.base {
        return Err(Error::Invalid("the first target is not the second base".into()));
    }
    require_valid(w12)?;
    require_valid(w23)?;
    let (l1, _) = w12.script1.normalized();
    let (l2, _) = w12.script2.normalized();
    let k = apply_lcs(&w12.supergraph, &l2)?;
    let (m1, _) = w23.script1.normalized();
    let (m2, _) = w23.script2.normalized();
    let k2 = apply_lcs(&w23.supergraph, &m1)?;

    let extras2 = k2.vertices().difference(v);
    let fresh = fresh_ids(k.vertices(), extras2.len())?;
    let map: HashMap<VertexId, VertexId> = extras2.iter().zip(fresh.iter().copied()).collect();
    let mv = |x: VertexId| map.get(&x).copied().unwrap_or(x);
    let mut merged = k.clone();
    for &f in &fresh {
        merged.add_vertex(f)?;
    }
    for (a, b) in k2.edges() {
        if extras2.contains(a) || extras2.contains(b) {
            merged.add_edge(mv(a), mv(b))?;
        }
    }
    let extras = merged.vertices().difference(v);
    let word1: Vec<VertexId> = l2.iter().rev().chain(&l1).copied().collect();
    let word2: Vec<VertexId> = m1.iter().rev().chain(&m2).map(|&x| mv(x)).collect();
    let out = PerturbationWitness {
        base: w12.base.clone(),
        target: w23.target.clone(),
        supergraph: merged,
        script1: OperationScript::from_lcs(&word1, extras),
        script2: OperationScript::from_lcs(&word2, extras),
        order: w12.order + w23.order,
    };
    require_valid(&out)?;
    Ok(out)
}

/// Rank-one pieces `(Xᵢ, Yᵢ)` whose sum is the `xs × ys` adjacency block,
/// read off the reduced row echelon form: `Yᵢ` is basis row `i` and `Xᵢ`
/// holds the rows using it.
fn rank_one_factors(g: &Graph, xs: VertexSet, ys: VertexSet) -> Vec<(VertexSet, VertexSet)> {
    let rows: Vec<u64> = xs.iter().map(|a| g.row(a) & ys.0).collect();
    let (basis, pivots) = rref_rows(&rows, MAX_VERTICES);
    basis
        .iter()
        .zip(&pivots)
        .map(|(&b, &p)| {
            let xi: VertexSet = xs.iter().filter(|&a| g.row(a) >> p & 1 == 1).collect();
            (xi, VertexSet(b))
        })
        .collect()
}

/// The witness that `G − δ(X)` is a `2ρ(X)`-perturbation of `G`: for each
/// rank-one piece `Xᵢ × Yᵢ` of the cut, add `xᵢ ~ Xᵢ` and `yᵢ ~ Yᵢ ∪ {xᵢ}`;
/// pivoting every `xᵢyᵢ` then deleting them removes the crossing edges.
pub fn cut_perturbation_witness(g: &Graph, x: VertexSet) -> Result<PerturbationWitness> {
    g.check_subset(x)?;
    let y = g.vertices().difference(x);
    let factors = rank_one_factors(g, x, y);
    build_cut_witness(g, &factors).map(|(w, _)| w)
}

fn build_cut_witness(
    g: &Graph,
    factors: &[(VertexSet, VertexSet)],
) -> Result<(PerturbationWitness, Vec<(VertexId, VertexId)>)> {
    let r = factors.len();
    let fresh = fresh_ids(g.vertices(), 2 * r)?;
    let mut sup = g.clone();
    let mut pairs = Vec::with_capacity(r);
    for (i, &(xi, yi)) in factors.iter().enumerate() {
        let (a, b) = (fresh[i], fresh[r + i]);
        sup.add_vertex(a)?;
        sup.add_vertex(b)?;
        sup.add_edge(a, b)?;
        for u in xi {
            sup.add_edge(a, u)?;
        }
        for u in yi {
            sup.add_edge(b, u)?;
        }
        pairs.push((a, b));
    }
    let added: VertexSet = fresh.iter().copied().collect();
    let mut script2 = OperationScript::new();
    for &(a, b) in &pairs {
        script2.push(Step::pivot(a, b));
    }
    let deletions = OperationScript(added.iter().map(Step::delete).collect());
    script2.extend(&deletions);
    let target = script2.replay(&sup)?;
    let w = PerturbationWitness {
        base: g.clone(),
        target,
        supergraph: sup,
        script1: deletions,
        script2,
        order: 2 * r,
    };
    Ok((w, pairs))
}

/// The bipartite form of the cut witness: each added pair sits on opposite
/// sides, so the supergraph is again sided-bipartite and every step of
/// `script2` is a pivot on an edge or a deletion.
pub fn cut_pivot_perturbation_witness(
    g: &SidedBipartiteGraph,
    x: VertexSet,
) -> Result<(PerturbationWitness, SidedBipartiteGraph)> {
    g.graph.check_subset(x)?;
    let y = g.graph.vertices().difference(x);
    let forward = rank_one_factors(&g.graph, x.intersection(g.side_a), y.intersection(g.side_b));
    let backward = rank_one_factors(&g.graph, x.intersection(g.side_b), y.intersection(g.side_a));
    let factors: Vec<_> = forward.iter().chain(&backward).copied().collect();
    let (w, pairs) = build_cut_witness(&g.graph, &factors)?;
    let (mut a, mut b) = (g.side_a, g.side_b);
    for (i, &(xi, yi)) in pairs.iter().enumerate() {
        if i < forward.len() {
            b.insert(xi);
            a.insert(yi);
        } else {
            a.insert(xi);
            b.insert(yi);
        }
    }
    let sided = SidedBipartiteGraph::new(w.supergraph.clone(), a, b)?;
    Ok((w, sided))
}

/// A rank-`t` delta as an order-`t` witness: a new vertex adjacent to `X`
/// per `Rank1(X)`, locally complemented; a new adjacent pair `y ~ Y`,
/// `z ~ Z` per `Rank2(Y, Z)`, pivoted.
pub fn rank_perturbation_to_witness(g: &Graph, d: &LowRankDelta) -> Result<PerturbationWitness> {
    let target = apply_rank_perturbation(g, d)?;
    let fresh = fresh_ids(g.vertices(), d.rank())?;
    let mut sup = g.clone();
    let mut script2 = OperationScript::new();
    let mut next = fresh.iter().copied();
    for p in &d.pieces {
        match *p {
            Piece::Rank1(x) => {
                let a = next.next().expect("one id per unit");
                sup.add_vertex(a)?;
                sup.set_neighbors(a, x)?;
                script2.push(Step::lc(a));
            }
            Piece::Rank2(y, z) => {
                let a = next.next().expect("one id per unit");
                let b = next.next().expect("one id per unit");
                sup.add_vertex(a)?;
                sup.add_vertex(b)?;
                sup.set_neighbors(a, y.with(b))?;
                sup.set_neighbors(b, z.with(a))?;
                script2.push(Step::pivot(a, b));
            }
        }
    }
    let deletions = OperationScript(fresh.iter().map(|&a| Step::delete(a)).collect());
    script2.extend(&deletions);
    let w = PerturbationWitness {
        base: g.clone(),
        target,
        supergraph: sup,
        script1: deletions,
        script2,
        order: d.rank(),
    };
    require_valid(&w)?;
    Ok(w)
}

/// How an extra vertex `v` leaves: `K − v`, `K * v − v`, or `K × vu − v`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Reduction {
    Minus,
    Star,
    Slash(VertexId),
}

impl Reduction {
    fn apply(self, k: &Graph, v: VertexId) -> Result<Graph> {
        match self {
            Reduction::Minus => k.delete_vertex(v),
            Reduction::Star => k.local_complement(v)?.delete_vertex(v),
            Reduction::Slash(u) => k.pivot(v, u)?.delete_vertex(v),
        }
    }
}

/// Moves `red(K * w)` back to `red'(K) * X`, where `red` removes `v` and the
/// word `X` avoids `v`. Adjacency is read in `K`.
fn transfer(red: Reduction, w: VertexId, v: VertexId, k: &Graph) -> (Reduction, Vec<VertexId>) {
    match red {
        Reduction::Minus if w == v => (Reduction::Star, vec![]),
        Reduction::Minus => (Reduction::Minus, vec![w]),
        Reduction::Star if w == v => (Reduction::Minus, vec![]),
        Reduction::Star if k.has_edge(w, v) => (Reduction::Slash(w), vec![w]),
        Reduction::Star => (Reduction::Star, vec![w]),
        Reduction::Slash(u) if w == v => (Reduction::Slash(u), vec![u]),
        Reduction::Slash(u) if w == u => (Reduction::Star, vec![u]),
        Reduction::Slash(u) if k.has_edge(w, v) => (Reduction::Star, vec![w, u, w, u]),
        Reduction::Slash(u) if k.has_edge(w, u) => (Reduction::Slash(u), vec![u, w]),
        Reduction::Slash(u) => (Reduction::Slash(u), vec![w]),
    }
}

/// The change `red(K)[V] − K[V]` as a piece, diagonal included.
fn reduction_delta(red: Reduction, k: &Graph, v: VertexId, keep: VertexSet) -> Option<Piece> {
    let nv = k.neighbors(v).intersection(keep);
    match red {
        Reduction::Minus => None,
        Reduction::Star => Some(Piece::Rank1(nv)),
        Reduction::Slash(u) => {
            let mut nu = k.neighbors(u).intersection(keep);
            if keep.contains(u) {
                nu.insert(u);
            }
            Some(Piece::Rank2(nv, nu))
        }
    }
}

/// Converts an order-`t` witness into a delta of rank at most `2t` and a
/// local-complementation script `s` with `apply(base, Δ) = replay(target, s)`.
///
/// The supergraph is first locally complemented so that the base is an
/// induced subgraph `K[V]` and the target is `(K * L)[V]` for a word `L`.
/// Each extra vertex `v` is then pushed out: `(K * L) − v = red(K) * L'`
/// for one of three reductions, and `red(K)[V]` differs from `K[V]` by a
/// piece of rank at most two.
pub fn witness_to_rank_perturbation(w: &PerturbationWitness) -> Result<(OperationScript, LowRankDelta)> {
    require_valid(w)?;
    let keep = w.base.vertices();
    let (l1, _) = w.script1.normalized();
    let (l2, _) = w.script2.normalized();
    let mut k = apply_lcs(&w.supergraph, &l1)?;
    let mut word = cancel_pairs(l1.iter().rev().chain(&l2).copied());
    let mut total = vec![0u64; MAX_VERTICES];

    for v in w.supergraph.vertices().difference(keep) {
        let mut prefix = Vec::with_capacity(word.len() + 1);
        prefix.push(k.clone());
        for &x in &word {
            let next = prefix.last().expect("nonempty").local_complement(x)?;
            prefix.push(next);
        }
        let mut red = Reduction::Minus;
        let mut parts: Vec<Vec<VertexId>> = Vec::with_capacity(word.len());
        for j in (0..word.len()).rev() {
            let (r, x) = transfer(red, word[j], v, &prefix[j]);
            red = r;
            parts.push(x);
        }
        let reduced = red.apply(&k, v)?;
        if let Some(p) = reduction_delta(red, &k, v, keep) {
            let mut step = vec![0u64; MAX_VERTICES];
            p.add_to(&mut step);
            for a in keep {
                let actual = (reduced.row(a) ^ k.row(a)) & keep.0;
                let expected = step[a.index()] & keep.0 & !(1u64 << a.index());
                if actual != expected {
                    return Err(Error::Invalid(format!("reduction at {v} changed rows unexpectedly")));
                }
            }
            p.add_to(&mut total);
        }
        k = reduced;
        word = cancel_pairs(parts.into_iter().rev().flatten());
    }

    let back: Vec<VertexId> = word.iter().rev().copied().collect();
    let script = OperationScript::from_lcs(&back, VertexSet::EMPTY);
    let delta = symmetric_rank_decomposition(keep, &total)?;
    if apply_rank_perturbation(&w.base, &delta)? != script.replay(&w.target)? {
        return Err(Error::Invalid("recovered delta does not match the target".into()));
    }
    Ok((script, delta))
}

/// For two vertex-minors `g1`, `g2` of `g` on the same vertex set, shrinks
/// `g` one reduction at a time while both stay vertex-minors, and returns the
/// result as a witness. At the end no vertex outside `V(g1)` can be removed,
/// which bounds the order by `2^(ρ+1)`.
pub fn vertex_minor_perturbation_witness(g: &Graph, g1: &Graph, g2: &Graph) -> Result<PerturbationWitness> {
    let x = g1.vertices();
    if g2.vertices() != x {
        return Err(Error::Invalid("the two vertex-minors have different vertex sets".into()));
    }
    g.check_subset(x)?;
    let holds = |k: &Graph| -> Result<bool> {
        Ok(labeled_vertex_minor_script(k, g1)?.is_some() && labeled_vertex_minor_script(k, g2)?.is_some())
    };
    if !holds(g)? {
        return Err(Error::Invalid("not both graphs are vertex-minors of the host".into()));
    }
    let mut cur = g.clone();
    'shrink: loop {
        for v in cur.vertices().difference(x) {
            let (a, b, c) = three_way_reductions(&cur, v)?;
            for red in [a, b, c] {
                if holds(&red)? {
                    cur = red;
                    continue 'shrink;
                }
            }
        }
        break;
    }
    let script1 = labeled_vertex_minor_script(&cur, g1)?.expect("checked above");
    let script2 = labeled_vertex_minor_script(&cur, g2)?.expect("checked above");
    let w = PerturbationWitness {
        base: g1.clone(),
        target: g2.clone(),
        order: cur.order() - x.len(),
        supergraph: cur,
        script1,
        script2,
    };
    require_valid(&w)?;
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum RobustnessVerdict {
    Robust,
    /// A delta of rank at most `t` whose perturbation has no `H`, with the
    /// witness that it is a `t`-perturbation.
    NotRobust {
        delta: LowRankDelta,
        witness: PerturbationWitness,
    },
    /// Every delta of rank at most `t` keeps `H`, but this one, of rank in
    /// `low..=high`, does not; the rank bounds leave the answer open.
    Unknown {
        delta: LowRankDelta,
        perturbed: Graph,
        low: usize,
        high: usize,
    },
}

#[derive(Clone, Debug)]
pub struct RobustnessConfig {
    pub vertex_cap: usize,
    pub max_t: usize,
    pub budget: usize,
}

impl Default for RobustnessConfig {
    fn default() -> Self {
        RobustnessConfig {
            vertex_cap: 10,
            max_t: 2,
            budget: DEFAULT_DELTA_BUDGET,
        }
    }
}

pub fn certify_robustness(g: &Graph, h: &Graph, t: usize) -> Result<RobustnessVerdict> {
    certify_robustness_with(g, h, t, &RobustnessConfig::default())
}

/// Scans all deltas of rank at most `2t` in enumeration order. The first
/// one losing `H` decides: rank at most `t` refutes robustness, a larger
/// rank leaves it open. If none loses `H`, every `t`-perturbation, being
/// locally equivalent to one of them, keeps `H`.
pub fn certify_robustness_with(g: &Graph, h: &Graph, t: usize, cfg: &RobustnessConfig) -> Result<RobustnessVerdict> {
    cap("vertices for robustness", cfg.vertex_cap, g.order())?;
    cap("perturbation order", cfg.max_t, t)?;
    let mut search = VertexMinorSearch::with_cap(h, cfg.vertex_cap.max(h.order()))?;
    let mut seen: HashMap<Graph, bool> = HashMap::new();
    for d in enumerate_symmetric_low_rank(g.vertices(), 2 * t, cfg.budget)? {
        let pg = apply_rank_perturbation(g, &d)?;
        let keeps = match seen.get(&pg) {
            Some(&b) => b,
            None => {
                let b = search.contains(&pg)?;
                seen.insert(pg.clone(), b);
                b
            }
        };
        if keeps {
            continue;
        }
        if d.rank() <= t {
            let witness = rank_perturbation_to_witness(g, &d)?;
            return Ok(RobustnessVerdict::NotRobust { delta: d, witness });
        }
        return Ok(RobustnessVerdict::Unknown {
            delta: d,
            perturbed: pg,
            low: t + 1,
            high: 2 * t,
        });
    }
    Ok(RobustnessVerdict::Robust)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn p4() -> Graph {
        g(4, &[(0, 1), (1, 2), (2, 3)])
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut out = Graph::edgeless(VertexSet::range(n));
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    out.add_edge(VertexId::of(a), VertexId::of(b)).unwrap();
                }
            }
        }
        out
    }

    /// Rank by counting the kernel: `2^(n − rank)` vectors `x` have `Mx = 0`.
    fn brute_rank(n: usize, rows: &[u64]) -> usize {
        let kernel = (0u64..1 << n)
            .filter(|&x| (0..n).all(|i| (rows[i] & x).count_ones().is_multiple_of(2)))
            .count();
        n - kernel.trailing_zeros() as usize
    }

    fn sum_of_pieces(pieces: &[Piece], n: usize) -> Vec<u64> {
        let mut rows = vec![0u64; n];
        for p in pieces {
            let (sets, rank1) = match *p {
                Piece::Rank1(x) => ((x, x), true),
                Piece::Rank2(y, z) => ((y, z), false),
            };
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = (VertexId::of(i), VertexId::of(j));
                    let hit = if rank1 {
                        sets.0.contains(a) && sets.0.contains(b)
                    } else {
                        (sets.0.contains(a) && sets.1.contains(b)) != (sets.1.contains(a) && sets.0.contains(b))
                    };
                    if hit {
                        rows[i] ^= 1 << j;
                    }
                }
            }
        }
        rows
    }

    #[test]
    fn decomposition_examples() {
        let all = vec![0b111u64; 3];
        let d = symmetric_rank_decomposition(VertexSet::range(3), &all).unwrap();
        assert_eq!(d.pieces(), &[Piece::Rank1(vset(&[0, 1, 2]))]);
        let z = symmetric_rank_decomposition(VertexSet::range(3), &[0, 0, 0]).unwrap();
        assert!(z.pieces().is_empty());
        let p3 = [0b010u64, 0b101, 0b010];
        let d = symmetric_rank_decomposition(VertexSet::range(3), &p3).unwrap();
        assert_eq!(d.pieces(), &[Piece::Rank2(vset(&[1]), vset(&[0, 2]))]);
        assert!(symmetric_rank_decomposition(VertexSet::range(2), &[0b10, 0]).is_err());
    }

    #[test]
    fn decomposition_matches_rank_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let mut rows = vec![0u64; n];
            for i in 0..n {
                for j in i..n {
                    if rng.gen_bool(0.5) {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                }
            }
            let d = symmetric_rank_decomposition(VertexSet::range(n), &rows).unwrap();
            assert_eq!(sum_of_pieces(d.pieces(), n), rows);
            assert_eq!(d.rank(), brute_rank(n, &rows));
        }
    }

    #[test]
    fn apply_examples() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let all = LowRankDelta::from_pieces(k4.vertices(), &[Piece::Rank1(k4.vertices())]).unwrap();
        assert_eq!(apply_rank_perturbation(&k4, &all).unwrap().size(), 0);
        let zero = LowRankDelta::zero(k4.vertices());
        assert_eq!(apply_rank_perturbation(&k4, &zero).unwrap(), k4);
        let bc = LowRankDelta::from_pieces(VertexSet::range(4), &[Piece::Rank1(vset(&[1, 2]))]).unwrap();
        assert_eq!(apply_rank_perturbation(&p4(), &bc).unwrap(), g(4, &[(0, 1), (2, 3)]));
        assert!(apply_rank_perturbation(&g(3, &[]), &bc).is_err());
    }

    fn brute_low_rank(n: usize, r: usize) -> HashSet<Vec<u64>> {
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let mut out = HashSet::new();
        for mask in 0u64..1 << cells.len() {
            let mut rows = vec![0u64; n];
            for (k, &(i, j)) in cells.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            if brute_rank(n, &rows) <= r {
                out.insert(rows);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_rank_filter() {
        let zero = enumerate_symmetric_low_rank(VertexSet::range(4), 0, 1000).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_zero());
        let two = enumerate_symmetric_low_rank(VertexSet::range(2), 1, 1000).unwrap();
        assert_eq!(two.iter().filter(|d| !d.is_zero()).count(), 3);
        for (n, r) in [(2, 1), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)] {
            let got: Vec<Vec<u64>> = enumerate_symmetric_low_rank(VertexSet::range(n), r, 1 << 30)
                .unwrap()
                .iter()
                .map(|d| (0..n).map(|i| d.row(VertexId::of(i))).collect())
                .collect();
            let set: HashSet<Vec<u64>> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicates for n={n} r={r}");
            assert_eq!(set, brute_low_rank(n, r), "n={n} r={r}");
        }
    }

    #[test]
    fn enumeration_order_is_by_rank() {
        let ds = enumerate_symmetric_low_rank(vset(&[2, 5, 9]), 2, 1 << 20).unwrap();
        assert!(ds.windows(2).all(|w| w[0].rank() <= w[1].rank()));
        assert!(ds.iter().all(|d| d.domain() == vset(&[2, 5, 9])));
        assert!(enumerate_symmetric_low_rank(VertexSet::range(12), 1, 1 << 20).is_err());
        assert!(enumerate_symmetric_low_rank(VertexSet::range(8), 4, 1000).is_err());
    }

    #[test]
    fn identity_and_corruption() {
        let w = PerturbationWitness::identity(&p4());
        assert!(verify_witness(&w).is_valid());
        let mut bad = cut_perturbation_witness(&p4(), vset(&[0, 1])).unwrap();
        bad.script2.0.remove(0);
        assert!(!verify_witness(&bad).is_valid());
        let mut short = w.clone();
        short.order = 1;
        assert!(!verify_witness(&short).is_valid());
    }

    #[test]
    fn cut_witness_examples() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let w = cut_perturbation_witness(&c5, vset(&[0, 1])).unwrap();
        assert!(verify_witness(&w).is_valid());
        assert_eq!(w.order, 4);
        assert_eq!(w.target, g(5, &[(0, 1), (2, 3), (3, 4)]));

        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        let w = cut_perturbation_witness(&k23, vset(&[0, 1])).unwrap();
        assert!(verify_witness(&w).is_valid());
        assert_eq!(w.order, 2);
        assert_eq!(w.target.size(), 0);

        let w = cut_perturbation_witness(&c5, c5.vertices()).unwrap();
        assert_eq!((w.order, &w.supergraph), (0, &c5));
    }

    #[test]
    fn cut_witness_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(2..=9);
            let h = random_graph(&mut rng, n, 0.5);
            let x: VertexSet = h.vertices().iter().filter(|_| rng.gen_bool(0.5)).collect();
            let w = cut_perturbation_witness(&h, x).unwrap();
            assert!(verify_witness(&w).is_valid());
            assert_eq!(w.order, 2 * crate::cutrank::cut_rank(&h, x));
            for a in x {
                for b in h.vertices().difference(x) {
                    assert!(!w.target.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn pivot_cut_witness_stays_bipartite() {
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let s = SidedBipartiteGraph::from_coloring(c6).unwrap();
        let (w, sup) = cut_pivot_perturbation_witness(&s, vset(&[0, 1, 2])).unwrap();
        assert!(verify_witness(&w).is_valid());
        assert!(sup.is_valid());
        assert_eq!(w.order, 4);
        let mut cur = sup;
        for step in w.script2.steps() {
            cur = match *step {
                Step::Pivot { u, v } => cur.pivot(u, v).unwrap(),
                Step::DeleteVertex { v } => cur.delete_vertex(v).unwrap(),
                Step::LocalComplement { .. } => panic!("local complementation in a pivot script"),
            };
            assert!(cur.is_valid());
        }
    }

    #[test]
    fn rank_witness_examples() {
        let h = p4();
        let zero = LowRankDelta::zero(h.vertices());
        let w = rank_perturbation_to_witness(&h, &zero).unwrap();
        assert_eq!(w.order, 0);
        let d1 = LowRankDelta::from_pieces(h.vertices(), &[Piece::Rank1(vset(&[1, 2]))]).unwrap();
        let w = rank_perturbation_to_witness(&h, &d1).unwrap();
        assert_eq!(w.order, 1);
        assert_eq!(w.script2.len(), 2);
        let d2 = LowRankDelta::from_pieces(h.vertices(), &[Piece::Rank2(vset(&[0]), vset(&[2, 3]))]).unwrap();
        let w = rank_perturbation_to_witness(&h, &d2).unwrap();
        assert_eq!(w.order, 2);
        assert!(matches!(w.script2.steps()[0], Step::Pivot { .. }));
    }

    #[test]
    fn transfer_rules_hold_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        for _ in 0..3000 {
            let n = rng.gen_range(3..=7);
            let k = random_graph(&mut rng, n, 0.5);
            let v = VertexId::of(rng.gen_range(0..n));
            let w = VertexId::of(rng.gen_range(0..n));
            let mut choices = vec![Reduction::Minus, Reduction::Star];
            // Slash needs an edge at v both before and after the move at w.
            let kw = k.local_complement(w).unwrap();
            choices.extend(
                k.neighbors(v)
                    .iter()
                    .filter(|&u| kw.has_edge(u, v))
                    .map(Reduction::Slash),
            );
            for red in choices {
                let lhs = red.apply(&kw, v).unwrap();
                let (r2, x) = transfer(red, w, v, &k);
                let rhs = apply_lcs(&r2.apply(&k, v).unwrap(), &x).unwrap();
                assert_eq!(lhs, rhs, "{red:?} at v={v} after w={w}");
                checked += 1;
            }
        }
        assert!(checked > 5000);
    }

    #[test]
    fn round_trip_recovers_low_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(2..=6);
            let h = random_graph(&mut rng, n, 0.5);
            let all = enumerate_symmetric_low_rank(h.vertices(), 3, 1 << 24).unwrap();
            let d = &all[rng.gen_range(0..all.len())];
            let w = rank_perturbation_to_witness(&h, d).unwrap();
            let (s, back) = witness_to_rank_perturbation(&w).unwrap();
            assert!(back.rank() <= 2 * w.order);
            assert_eq!(apply_rank_perturbation(&h, &back).unwrap(), s.replay(&w.target).unwrap());
        }
    }

    #[test]
    fn random_witness_converts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..80 {
            let n = rng.gen_range(2..=5);
            let sup = random_graph(&mut rng, n + 2, 0.5);
            let keep = VertexSet::range(n);
            let extra = sup.vertices().difference(keep);
            let mut scripts = Vec::new();
            for _ in 0..2 {
                let mut s = OperationScript::new();
                for _ in 0..rng.gen_range(0..6) {
                    s.push(Step::lc(VertexId::of(rng.gen_range(0..n + 2))));
                }
                for e in extra {
                    s.push(Step::delete(e));
                }
                scripts.push(s);
            }
            let w = PerturbationWitness {
                base: scripts[0].replay(&sup).unwrap(),
                target: scripts[1].replay(&sup).unwrap(),
                supergraph: sup,
                script1: scripts[0].clone(),
                script2: scripts[1].clone(),
                order: 2,
            };
            let (s, d) = witness_to_rank_perturbation(&w).unwrap();
            assert!(d.rank() <= 4);
            assert_eq!(apply_rank_perturbation(&w.base, &d).unwrap(), s.replay(&w.target).unwrap());
        }
    }

    #[test]
    fn compose_examples() {
        let h = p4();
        let d1 = LowRankDelta::from_pieces(h.vertices(), &[Piece::Rank1(vset(&[1, 2]))]).unwrap();
        let w1 = rank_perturbation_to_witness(&h, &d1).unwrap();
        let id = PerturbationWitness::identity(&w1.target);
        let c = compose(&w1, &id).unwrap();
        assert_eq!((c.order, &c.base, &c.target), (1, &w1.base, &w1.target));

        let d2 = LowRankDelta::from_pieces(h.vertices(), &[Piece::Rank1(vset(&[0, 3]))]).unwrap();
        let w2 = rank_perturbation_to_witness(&w1.target, &d2).unwrap();
        let c = compose(&w1, &w2).unwrap();
        assert!(verify_witness(&c).is_valid());
        assert_eq!(c.order, 2);

        let cut = cut_perturbation_witness(&h, vset(&[0, 1])).unwrap();
        let back = cut.reversed();
        assert!(verify_witness(&back).is_valid());
        let round = compose(&cut, &back).unwrap();
        assert_eq!((round.order, &round.target), (2 * cut.order, &h));
        assert!(compose(&cut, &cut).is_err());
    }

    #[test]
    fn certify_examples() {
        let h = p4();
        assert_eq!(certify_robustness(&h, &h, 0).unwrap(), RobustnessVerdict::Robust);
        let RobustnessVerdict::NotRobust { delta, witness } = certify_robustness(&h, &h, 1).unwrap() else {
            panic!("P4 is not 1-robust for itself");
        };
        assert_eq!(delta.rank(), 1);
        assert!(verify_witness(&witness).is_valid());
        assert!(!crate::vmsearch::contains_vertex_minor(&witness.target, &h).unwrap());
        let small = g(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            certify_robustness(&small, &h, 0).unwrap(),
            RobustnessVerdict::NotRobust { .. }
        ));
    }

    #[test]
    fn json_round_trip() {
        let d = LowRankDelta::from_pieces(VertexSet::range(3), &[Piece::Rank2(vset(&[0]), vset(&[1, 2]))]).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"6\""), "{text}");
        let back: LowRankDelta = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        let w = cut_perturbation_witness(&p4(), vset(&[0, 1])).unwrap();
        assert_eq!(PerturbationWitness::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn small_host_gives_small_witness() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let x = vset(&[0, 1, 2]);
        let g1 = c5.induced(x);
        let g2 = c5.local_complement(VertexId::of(3)).unwrap().delete_vertices(vset(&[3, 4])).unwrap();
        let w = vertex_minor_perturbation_witness(&c5, &g1, &g2).unwrap();
        assert!(verify_witness(&w).is_valid());
        assert!(w.order <= 1 << (crate::cutrank::cut_rank(&c5, x) + 1));
    }
}
