//! Binary matroids with labeled elements, their minors and duals,
//! fundamental graphs, cycle matroids of multigraphs, and the distance
//! given by elementary lifts and projections.
//!
//! Elements are the column indices `0..n`; element sets reuse [`VertexSet`].
//! The representation is kept in reduced row echelon form without zero
//! rows. Binary matroids have a unique representation up to row operations,
//! so equal matroids have equal stored rows.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::gf2::{rank_of_rows, rref_rows, BitMatrix};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::sided::SidedBipartiteGraph;

pub type ElementSet = VertexSet;

/// Elements allowed in exhaustive routines (circuits, lifts, isomorphism).
pub const MAX_EXHAUSTIVE_ELEMENTS: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryMatroid {
    labels: Vec<String>,
    rows: Vec<u64>,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Keeps the bits of `x` selected by `keep`, packed to the low end.
fn compress(x: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    let mut k = 0;
    let mut m = keep;
    while m != 0 {
        let b = m.trailing_zeros();
        if x >> b & 1 == 1 {
            out |= 1 << k;
        }
        k += 1;
        m &= m - 1;
    }
    out
}

fn subsets_of_size(universe: u64, size: usize, f: &mut impl FnMut(u64) -> bool) -> bool {
    fn go(bits: &[u32], start: usize, left: usize, acc: u64, f: &mut impl FnMut(u64) -> bool) -> bool {
        if left == 0 {
            return f(acc);
        }
        for i in start..bits.len() {
            if bits.len() - i < left {
                break;
            }
            if go(bits, i + 1, left - 1, acc | 1 << bits[i], f) {
                return true;
            }
        }
        false
    }
    let bits: Vec<u32> = (0..64).filter(|b| universe >> b & 1 == 1).collect();
    go(&bits, 0, size, 0, f)
}

impl BinaryMatroid {
    pub fn new(labels: Vec<String>, matrix: &BitMatrix) -> Result<Self> {
        if matrix.ncols() != labels.len() {
            return Err(Error::Invalid(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.ncols()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad element label {l:?}")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate element label {l}")));
            }
        }
        Ok(Self::from_raw(labels, matrix.rows()))
    }

    /// Labels `0, 1, …, n − 1`.
    pub fn from_matrix(matrix: &BitMatrix) -> Self {
        let labels = (0..matrix.ncols()).map(|i| i.to_string()).collect();
        Self::from_raw(labels, matrix.rows())
    }

    fn from_raw(labels: Vec<String>, rows: &[u64]) -> Self {
        let (rows, _) = rref_rows(rows, labels.len());
        BinaryMatroid { labels, rows }
    }

    /// `n` loops on labels `0..n`.
    pub fn rank_zero(n: usize) -> Self {
        Self::from_matrix(&BitMatrix::zeros(0, n))
    }

    /// `n` coloops on labels `0..n`.
    pub fn free(n: usize) -> Self {
        Self::from_matrix(&BitMatrix::identity(n))
    }

    /// Parses a header line of labels followed by rows of `0`/`1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing label line".into()))?;
        let labels: Vec<String> = header.split_whitespace().map(str::to_string).collect();
        let body: Vec<&str> = lines.collect();
        let matrix = if body.is_empty() {
            BitMatrix::zeros(0, labels.len())
        } else {
            BitMatrix::parse_rows(&body.join("\n"))?
        };
        Self::new(labels, &matrix)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.labels.join(" ");
        s.push('\n');
        s.push_str(&self.matrix().to_string());
        s
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> ElementSet {
        VertexSet::range(self.len())
    }

    pub fn element(&self, label: &str) -> Result<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(VertexId::of)
            .ok_or_else(|| Error::NotFound(format!("element {label}")))
    }

    pub fn element_set(&self, labels: &[&str]) -> Result<ElementSet> {
        labels.iter().map(|l| self.element(l)).collect()
    }

    /// The reduced representation; its rows are independent.
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.len(), self.rows.clone())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        let rows: Vec<u64> = self.rows.iter().map(|r| r & s.0).collect();
        rank_of_rows(&rows)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_base(&self, s: ElementSet) -> bool {
        s.len() == self.rank() && self.is_independent(s)
    }

    pub fn is_loop(&self, e: VertexId) -> bool {
        self.rank_of(VertexSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: VertexId) -> bool {
        self.rank_of(self.elements().without(e)) < self.rank()
    }

    fn check(&self, s: ElementSet) -> Result<()> {
        if !s.is_subset(self.elements()) {
            return Err(Error::Invalid(format!("{s} is not a set of elements")));
        }
        Ok(())
    }

    pub fn bases(&self) -> Vec<ElementSet> {
        let mut out = Vec::new();
        subsets_of_size(self.elements().0, self.rank(), &mut |s| {
            if self.is_independent(VertexSet(s)) {
                out.push(VertexSet(s));
            }
            false
        });
        out
    }

    /// Basis of the cycle space: the vectors `x` with `A x = 0`.
    fn null_space(&self) -> Vec<u64> {
        let n = self.len();
        let pivots: Vec<usize> = self.rows.iter().map(|r| r.trailing_zeros() as usize).collect();
        let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
        (0..n)
            .filter(|&f| pivot_mask >> f & 1 == 0)
            .map(|f| {
                self.rows
                    .iter()
                    .zip(&pivots)
                    .filter(|(r, _)| *r >> f & 1 == 1)
                    .fold(1u64 << f, |x, (_, &p)| x | 1 << p)
            })
            .collect()
    }

    /// Circuits: the minimal nonzero supports in the cycle space.
    pub fn circuits(&self) -> Result<Vec<ElementSet>> {
        let basis = self.null_space();
        cap("cycle space dimension", MAX_EXHAUSTIVE_ELEMENTS, basis.len())?;
        let mut vecs: Vec<u64> = (1u64..1 << basis.len())
            .map(|c| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| c >> i & 1 == 1)
                    .fold(0, |x, (_, b)| x ^ b)
            })
            .collect();
        vecs.sort_by_key(|v| (v.count_ones(), *v));
        let mut out: Vec<u64> = Vec::new();
        for v in vecs {
            if !out.iter().any(|&c| c & !v == 0) {
                out.push(v);
            }
        }
        out.sort();
        Ok(out.into_iter().map(VertexSet).collect())
    }

    /// Keeps `keep`, relabeling columns in order.
    pub fn restrict(&self, keep: ElementSet) -> Result<Self> {
        self.check(keep)?;
        let labels = keep.iter().map(|e| self.labels[e.index()].clone()).collect();
        let rows: Vec<u64> = self.rows.iter().map(|&r| compress(r, keep.0)).collect();
        Ok(Self::from_raw(labels, &rows))
    }

    pub fn delete(&self, s: ElementSet) -> Result<Self> {
        self.check(s)?;
        self.restrict(self.elements().difference(s))
    }

    pub fn contract(&self, s: ElementSet) -> Result<Self> {
        self.check(s)?;
        let mut rows = self.rows.clone();
        for e in s {
            if let Some(p) = rows.iter().position(|r| r >> e.index() & 1 == 1) {
                let pr = rows.swap_remove(p);
                for r in rows.iter_mut() {
                    if *r >> e.index() & 1 == 1 {
                        *r ^= pr;
                    }
                }
            }
        }
        BinaryMatroid {
            labels: self.labels.clone(),
            rows,
        }
        .delete(s)
    }

    /// `M / contract \ delete`.
    pub fn minor(&self, delete: ElementSet, contract: ElementSet) -> Result<Self> {
        if !delete.is_disjoint(contract) {
            return Err(Error::Invalid("deleted and contracted sets overlap".into()));
        }
        self.check(delete.union(contract))?;
        let c = self.contract(contract)?;
        let kept = self.elements().difference(contract);
        // Positions of `delete` after the contracted columns are removed.
        let d: VertexSet = delete.iter().map(|e| VertexId::of(compress(1 << e.index(), kept.0).trailing_zeros() as usize)).collect();
        c.delete(d)
    }

    pub fn dual(&self) -> Self {
        Self::from_raw(self.labels.clone(), &self.null_space())
    }

    /// Disjoint union; labels must not clash.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let n = self.len();
        cap("matroid elements", 64, n + other.len())?;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << n));
        let width = labels.len();
        Self::new(labels, &BitMatrix::from_rows(width, rows))
    }

    /// `k` disjoint copies, labels suffixed with `.1`, `.2`, ….
    pub fn copies(&self, k: usize) -> Result<Self> {
        let mut out = Self::rank_zero(0);
        for i in 1..=k {
            let mut c = self.clone();
            c.labels = c.labels.iter().map(|l| format!("{l}.{i}")).collect();
            out = out.direct_sum(&c)?;
        }
        Ok(out)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        Self::new(labels, &self.matrix())
    }
}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatroid {:?}\n{}", self.labels, self.matrix())
    }
}

impl fmt::Display for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Per-element counts of circuits containing it, by circuit size.
fn element_profiles(n: usize, circuits: &[ElementSet]) -> Vec<Vec<usize>> {
    let mut prof = vec![vec![0usize; n + 1]; n];
    for c in circuits {
        for e in *c {
            prof[e.index()][c.len()] += 1;
        }
    }
    prof
}

/// Isomorphism by a backtracking search over element maps that must send
/// circuits to circuits.
pub fn matroids_isomorphic(a: &BinaryMatroid, b: &BinaryMatroid) -> Result<bool> {
    Ok(matroid_isomorphism(a, b)?.is_some())
}

/// An element map `a → b` sending circuits onto circuits.
pub fn matroid_isomorphism(a: &BinaryMatroid, b: &BinaryMatroid) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() || a.rank() != b.rank() {
        return Ok(None);
    }
    let n = a.len();
    let ca = a.circuits()?;
    let cb = b.circuits()?;
    if ca.len() != cb.len() {
        return Ok(None);
    }
    let pa = element_profiles(n, &ca);
    let pb = element_profiles(n, &cb);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let target: HashSet<u64> = cb.iter().map(|c| c.0).collect();
    // Circuits of `a` become checkable once their largest element is mapped.
    let mut due: Vec<Vec<u64>> = vec![Vec::new(); n];
    for c in &ca {
        let last = 63 - c.0.leading_zeros() as usize;
        due[last].push(c.0);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    fn go(
        i: usize,
        n: usize,
        pa: &[Vec<usize>],
        pb: &[Vec<usize>],
        due: &[Vec<u64>],
        target: &HashSet<u64>,
        map: &mut Vec<usize>,
        used: &mut u64,
    ) -> bool {
        if i == n {
            return true;
        }
        for j in 0..n {
            if *used >> j & 1 == 1 || pa[i] != pb[j] {
                continue;
            }
            map[i] = j;
            let ok = due[i].iter().all(|&c| {
                let img = (0..n).filter(|&e| c >> e & 1 == 1).fold(0u64, |m, e| m | 1 << map[e]);
                target.contains(&img)
            });
            if ok {
                *used |= 1 << j;
                if go(i + 1, n, pa, pb, due, target, map, used) {
                    return true;
                }
                *used &= !(1 << j);
            }
        }
        map[i] = usize::MAX;
        false
    }
    Ok(go(0, n, &pa, &pb, &due, &target, &mut map, &mut used).then_some(map))
}

/// Whether some minor of `m` is isomorphic to `n`. Kept sets of size `|N|`
/// are paired with independent contraction sets of size `r(M) − r(N)`.
pub fn matroid_minor_contains(m: &BinaryMatroid, n: &BinaryMatroid) -> Result<bool> {
    Ok(matroid_minor_witness(m, n)?.is_some())
}

/// `(delete, contract)` with `M / contract \ delete ≅ N`.
pub fn matroid_minor_witness(m: &BinaryMatroid, n: &BinaryMatroid) -> Result<Option<(ElementSet, ElementSet)>> {
    cap("matroid elements", MAX_EXHAUSTIVE_ELEMENTS, m.len())?;
    if n.len() > m.len() || n.rank() > m.rank() || n.len() - n.rank() > m.len() - m.rank() {
        return Ok(None);
    }
    let nc = n.circuits()?;
    let mut n_sizes: Vec<usize> = nc.iter().map(|c| c.len()).collect();
    n_sizes.sort();
    let need = m.rank() - n.rank();
    let all = m.elements().0;
    let mut found = None;
    let mut err = None;
    subsets_of_size(all, n.len(), &mut |keep| {
        subsets_of_size(all & !keep, need, &mut |contract| {
            let c = VertexSet(contract);
            if !m.is_independent(c) {
                return false;
            }
            let d = VertexSet(all & !keep & !contract);
            let step = (|| -> Result<bool> {
                let minor = m.minor(d, c)?;
                if minor.rank() != n.rank() {
                    return Ok(false);
                }
                let mc = minor.circuits()?;
                let mut sizes: Vec<usize> = mc.iter().map(|c| c.len()).collect();
                sizes.sort();
                Ok(sizes == n_sizes && matroids_isomorphic(&minor, n)?)
            })();
            match step {
                Ok(true) => {
                    found = Some((d, c));
                    true
                }
                Ok(false) => false,
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// `𝓕(M, B)`: vertex `e` is element `e`, side `A` is `B`, and each element
/// outside `B` is adjacent to the rest of its fundamental circuit.
pub fn fundamental_graph(m: &BinaryMatroid, base: ElementSet) -> Result<SidedBipartiteGraph> {
    m.check(base)?;
    if !m.is_base(base) {
        return Err(Error::Invalid(format!("{base} is not a base")));
    }
    // Row-reduce so each base element owns a unit column.
    let mut rows = m.rows.clone();
    let mut owner = Vec::new();
    for b in base {
        let p = (owner.len()..rows.len())
            .find(|&i| rows[i] >> b.index() & 1 == 1)
            .expect("a base is independent");
        rows.swap(owner.len(), p);
        let pr = rows[owner.len()];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != owner.len() && *r >> b.index() & 1 == 1 {
                *r ^= pr;
            }
        }
        owner.push(b);
    }
    let mut g = Graph::edgeless(m.elements());
    for (b, r) in owner.iter().zip(&rows) {
        for e in VertexSet(*r).difference(base) {
            g.add_edge(*b, e)?;
        }
    }
    SidedBipartiteGraph::new(g, base, m.elements().difference(base))
}

/// The matroid represented by `[I | A]` where `A` is the bipartite adjacency
/// matrix of `𝒢`; its elements are the vertices, labeled by id.
pub fn matroid_from_fundamental_graph(g: &SidedBipartiteGraph) -> Result<BinaryMatroid> {
    let verts = g.graph.vertices();
    let ids: Vec<VertexId> = verts.to_vec();
    let rows: Vec<u64> = g
        .side_a
        .iter()
        .map(|a| compress(g.graph.row(a) | 1 << a.index(), verts.0))
        .collect();
    let labels = ids.iter().map(|v| v.index().to_string()).collect();
    BinaryMatroid::new(labels, &BitMatrix::from_rows(ids.len(), rows))
}

/// `M * Y` for a square matrix with `M[Y]` nonsingular.
pub fn principal_pivot_transform(m: &BitMatrix, y: &[usize]) -> Result<BitMatrix> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Invalid("principal pivot needs a square matrix".into()));
    }
    let mut ys: Vec<usize> = y.to_vec();
    ys.sort();
    ys.dedup();
    if ys.iter().any(|&i| i >= n) {
        return Err(Error::Invalid("index out of range".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|i| !ys.contains(i)).collect();
    let alpha = m.submatrix(&ys, &ys);
    let inv = alpha
        .inverse()
        .ok_or_else(|| Error::Invalid("the principal submatrix is singular".into()))?;
    let beta = m.submatrix(&ys, &rest);
    let gamma = m.submatrix(&rest, &ys);
    let delta = m.submatrix(&rest, &rest);
    let ib = inv.mul(&beta)?;
    let gi = gamma.mul(&inv)?;
    let d2 = delta.add(&gamma.mul(&ib)?)?;
    let mut out = BitMatrix::zeros(n, n);
    for (a, &i) in ys.iter().enumerate() {
        for (b, &j) in ys.iter().enumerate() {
            out.set(i, j, inv.get(a, b));
        }
        for (b, &j) in rest.iter().enumerate() {
            out.set(i, j, ib.get(a, b));
        }
    }
    for (a, &i) in rest.iter().enumerate() {
        for (b, &j) in ys.iter().enumerate() {
            out.set(i, j, gi.get(a, b));
        }
        for (b, &j) in rest.iter().enumerate() {
            out.set(i, j, d2.get(a, b));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiEdge {
    pub label: String,
    pub u: usize,
    pub v: usize,
}

/// Loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertex_count: usize,
    pub edges: Vec<MultiEdge>,
}

impl Multigraph {
    /// Edges labeled by their index.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| MultiEdge {
                label: i.to_string(),
                u,
                v,
            })
            .collect();
        Self::new(vertex_count, edges)
    }

    pub fn new(vertex_count: usize, edges: Vec<MultiEdge>) -> Result<Self> {
        cap("multigraph vertices", 64, vertex_count)?;
        cap("multigraph edges", 64, edges.len())?;
        let mut seen = HashSet::new();
        for e in &edges {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::Invalid(format!("edge {} leaves the vertex range", e.label)));
            }
            if !seen.insert(e.label.as_str()) {
                return Err(Error::Invalid(format!("duplicate edge label {}", e.label)));
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    /// Lines `u v [label]`; an optional `vertices N` line fixes the count.
    pub fn parse(text: &str) -> Result<Self> {
        let mut count = None;
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts[0] == "vertices" {
                let n = parts
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad line {line:?}")))?;
                count = Some(n);
                continue;
            }
            if parts.len() < 2 || parts.len() > 3 {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            let u: usize = parts[0].parse().map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))?;
            let v: usize = parts[1].parse().map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))?;
            let label = parts.get(2).map_or_else(|| edges.len().to_string(), |s| s.to_string());
            edges.push(MultiEdge { label, u, v });
        }
        let n = count.unwrap_or_else(|| edges.iter().map(|e| e.u.max(e.v) + 1).max().unwrap_or(0));
        Self::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertex_count);
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", e.u, e.v, e.label));
        }
        s
    }
}

/// Vertex-edge incidence representation; loops are zero columns.
pub fn cycle_matroid(g: &Multigraph) -> Result<BinaryMatroid> {
    let n = g.edges.len();
    let mut rows = vec![0u64; g.vertex_count];
    for (j, e) in g.edges.iter().enumerate() {
        if e.u != e.v {
            rows[e.u] |= 1 << j;
            rows[e.v] |= 1 << j;
        }
    }
    BinaryMatroid::new(
        g.edges.iter().map(|e| e.label.clone()).collect(),
        &BitMatrix::from_rows(n, rows),
    )
}

/// A maximal forest taking edges in index order; returns edge indices.
pub fn spanning_forest(g: &Multigraph) -> ElementSet {
    let mut parent: Vec<usize> = (0..g.vertex_count).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut out = VertexSet::EMPTY;
    for (j, e) in g.edges.iter().enumerate() {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a] = b;
            out.insert(VertexId::of(j));
        }
    }
    out
}

fn span(rows: &[u64]) -> Vec<u64> {
    (0u64..1 << rows.len())
        .map(|c| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .fold(0, |x, (_, r)| x ^ r)
        })
        .collect()
}

/// Adds `w` as a new column and contracts it: rows with a one in `w` are
/// combined with a pivot row, which is then dropped.
fn project_rows(rows: &[u64], w: u64) -> Vec<u64> {
    let Some(p) = (0..rows.len()).find(|&i| w >> i & 1 == 1) else {
        return rows.to_vec();
    };
    rows.iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(i, &r)| if w >> i & 1 == 1 { r ^ rows[p] } else { r })
        .collect()
}

/// Every `M / e` where `M \ e` is `m`: a column `w` in `F^r` is appended and
/// contracted. Distinct labeled results only.
pub fn elementary_projections(m: &BinaryMatroid) -> Result<Vec<BinaryMatroid>> {
    cap("matroid rank for projections", MAX_EXHAUSTIVE_ELEMENTS, m.rank())?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in 0u64..1 << m.rank() {
        let p = BinaryMatroid::from_raw(m.labels.clone(), &project_rows(&m.rows, w));
        if seen.insert(p.rows.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Every `M \ e` where `M / e` is `m`: a row `b` is appended together with a
/// unit column for `e`, which is then deleted. Distinct labeled results only.
pub fn elementary_lifts(m: &BinaryMatroid) -> Result<Vec<BinaryMatroid>> {
    cap("matroid elements for lifts", MAX_EXHAUSTIVE_ELEMENTS, m.len())?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for b in 0u64..1 << m.len() {
        let mut rows = m.rows.clone();
        rows.push(b);
        let l = BinaryMatroid::from_raw(m.labels.clone(), &rows);
        if seen.insert(l.rows.clone()) {
            out.push(l);
        }
    }
    Ok(out)
}

fn neighbours(m: &BinaryMatroid) -> Result<Vec<BinaryMatroid>> {
    let mut v = elementary_projections(m)?;
    v.extend(elementary_lifts(m)?);
    Ok(v)
}

/// Shortest sequence of elementary lifts and projections from `a` to `b`,
/// both included, if one has at most `limit` moves.
pub fn perturbation_path(a: &BinaryMatroid, b: &BinaryMatroid, limit: usize) -> Result<Option<Vec<BinaryMatroid>>> {
    if a.labels != b.labels {
        return Err(Error::Invalid("matroids on different element sets".into()));
    }
    let mut parent: HashMap<BinaryMatroid, Option<BinaryMatroid>> = HashMap::new();
    parent.insert(a.clone(), None);
    let mut queue = VecDeque::from([(a.clone(), 0usize)]);
    while let Some((m, d)) = queue.pop_front() {
        if m == *b {
            let mut path = vec![m.clone()];
            let mut cur = m;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        if d == limit {
            continue;
        }
        for x in neighbours(&m)? {
            if !parent.contains_key(&x) {
                parent.insert(x.clone(), Some(m.clone()));
                queue.push_back((x, d + 1));
            }
        }
    }
    Ok(None)
}

/// `dist(a, b)` if it is at most `limit`.
pub fn perturbation_distance(a: &BinaryMatroid, b: &BinaryMatroid, limit: usize) -> Result<Option<usize>> {
    Ok(perturbation_path(a, b, limit)?.map(|p| p.len() - 1))
}

/// Whether `rank(A − Ã) ≤ p`.
pub fn is_rank_p_perturbation(a: &BitMatrix, b: &BitMatrix, p: usize) -> Result<bool> {
    Ok(a.add(b)?.rank() <= p)
}

/// Matrices `(A, Ã)` on the same rows representing the two ends of `path`,
/// with `rank(A − Ã)` at most the number of moves. Every move changes the
/// current matrix by a rank-one matrix; lifts append a row, padded with a
/// zero row in `A`.
pub fn rank_perturbation_from_path(path: &[BinaryMatroid]) -> Result<(BitMatrix, BitMatrix)> {
    let first = path.first().ok_or_else(|| Error::Invalid("empty path".into()))?;
    let n = first.len();
    let start = first.rows.clone();
    let mut cur = start.clone();
    for next in &path[1..] {
        let proj = (0u64..1 << cur.len()).find_map(|w| {
            let rows = project_rows(&cur, w);
            let p = project_rows_keep_shape(&cur, w);
            (BinaryMatroid::from_raw(first.labels.clone(), &rows) == *next).then_some(p)
        });
        if let Some(p) = proj {
            cur = p;
            continue;
        }
        let lift = (0u64..1 << n).find_map(|b| {
            let mut rows = cur.clone();
            rows.push(b);
            (BinaryMatroid::from_raw(first.labels.clone(), &rows) == *next).then_some(rows)
        });
        cur = lift.ok_or_else(|| Error::Invalid("consecutive matroids are not one move apart".into()))?;
    }
    let mut a = start;
    a.resize(cur.len(), 0);
    let (a, b) = (BitMatrix::from_rows(n, a), BitMatrix::from_rows(n, cur));
    if BinaryMatroid::from_raw(first.labels.clone(), b.rows()) != *path.last().expect("nonempty")
        || a.add(&b)?.rank() > path.len() - 1
    {
        return Err(Error::Invalid("constructed matrices fail their check".into()));
    }
    Ok((a, b))
}

/// As [`project_rows`], but the pivot row is zeroed instead of dropped.
fn project_rows_keep_shape(rows: &[u64], w: u64) -> Vec<u64> {
    let Some(p) = (0..rows.len()).find(|&i| w >> i & 1 == 1) else {
        return rows.to_vec();
    };
    rows.iter()
        .enumerate()
        .map(|(i, &r)| if i == p { 0 } else if w >> i & 1 == 1 { r ^ rows[p] } else { r })
        .collect()
}

/// The matroid represented by `A + Δ` for a rank-`p` matrix `Δ` built from
/// `p` outer products `u vᵀ`, with `A` the reduced representation of `m`.
pub fn rank_p_perturb(m: &BinaryMatroid, factors: &[(u64, u64)]) -> Result<(BitMatrix, BitMatrix, BinaryMatroid)> {
    let a = m.matrix();
    let mut rows = m.rows.clone();
    for &(u, v) in factors {
        if u >> rows.len() != 0 || v & !mask(m.len()) != 0 {
            return Err(Error::Invalid("factor out of range".into()));
        }
        for (i, r) in rows.iter_mut().enumerate() {
            if u >> i & 1 == 1 {
                *r ^= v;
            }
        }
    }
    let b = BitMatrix::from_rows(m.len(), rows.clone());
    Ok((a, b, BinaryMatroid::from_raw(m.labels.clone(), &rows)))
}

/// All `2^rank` members of the row space, for oracles.
pub fn row_space(m: &BinaryMatroid) -> Vec<u64> {
    span(&m.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k3() -> BinaryMatroid {
        cycle_matroid(&Multigraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap()
    }

    fn random_matroid(rng: &mut ChaCha8Rng, r: usize, n: usize) -> BinaryMatroid {
        let rows = (0..r).map(|_| rng.gen::<u64>() & mask(n)).collect();
        BinaryMatroid::from_matrix(&BitMatrix::from_rows(n, rows))
    }

    /// Circuits by brute force over subsets and column rank.
    fn brute_circuits(m: &BinaryMatroid) -> Vec<ElementSet> {
        let n = m.len();
        let mut out: Vec<ElementSet> = (1u64..1 << n)
            .map(VertexSet)
            .filter(|&s| !m.is_independent(s) && s.iter().all(|e| m.is_independent(s.without(e))))
            .collect();
        out.sort_by_key(|s| s.0);
        out
    }

    #[test]
    fn circuits_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (r, n) = (rng.gen_range(0..5), rng.gen_range(1..9));
            let m = random_matroid(&mut rng, r, n);
            assert_eq!(m.circuits().unwrap(), brute_circuits(&m));
            assert_eq!(m.dual().dual(), m);
            // Dual circuits are the minimal sets meeting every base.
            let bases = m.bases();
            let cocircuits: Vec<ElementSet> = (1u64..1 << m.len())
                .map(VertexSet)
                .filter(|&s| {
                    bases.iter().all(|b| !b.is_disjoint(s))
                        && s.iter().all(|e| bases.iter().any(|b| b.is_disjoint(s.without(e))))
                })
                .collect();
            assert_eq!(m.dual().circuits().unwrap(), cocircuits);
        }
    }

    #[test]
    fn small_examples() {
        let m = k3();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.circuits().unwrap(), vec![vset(&[0, 1, 2])]);
        let c = m.contract(vset(&[0])).unwrap();
        assert_eq!(c.circuits().unwrap(), vec![vset(&[0, 1])]);
        assert_eq!(m.minor(VertexSet::EMPTY, VertexSet::EMPTY).unwrap(), m);
        assert!(m.minor(vset(&[0]), vset(&[0])).is_err());
        let lp = cycle_matroid(&Multigraph::from_pairs(1, &[(0, 0)]).unwrap()).unwrap();
        assert_eq!(lp.rank(), 0);
        assert_eq!(lp.dual(), BinaryMatroid::free(1));
        let with_loop = BinaryMatroid::rank_zero(1).direct_sum(&k3().with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap()).unwrap();
        assert_eq!(
            with_loop.contract(vset(&[0])).unwrap(),
            with_loop.delete(vset(&[0])).unwrap()
        );
        assert_eq!(BinaryMatroid::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn minor_of_disjoint_sets_matches_sequential_ops() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let m = random_matroid(&mut rng, 3, 7);
            let d = VertexSet(rng.gen::<u64>() & 0x7f);
            let c = VertexSet(rng.gen::<u64>() & 0x7f).difference(d);
            let minor = m.minor(d, c).unwrap();
            // Oracle: independence in M / C \ D is independence of I ∪ B_C.
            let rc = m.rank_of(c);
            let kept: Vec<VertexId> = m.elements().difference(c).difference(d).to_vec();
            for s in 0u64..1 << kept.len() {
                let img: VertexSet = (0..kept.len()).filter(|i| s >> i & 1 == 1).map(|i| kept[i]).collect();
                let expect = m.rank_of(img.union(c)) == rc + img.len();
                assert_eq!(minor.is_independent(VertexSet(s)), expect);
            }
        }
    }

    #[test]
    fn fundamental_graph_examples() {
        let par = BinaryMatroid::from_matrix(&BitMatrix::from_rows(2, vec![0b11]));
        let f = fundamental_graph(&par, vset(&[0])).unwrap();
        assert_eq!(f.graph.size(), 1);
        let f = fundamental_graph(&k3(), vset(&[0, 1])).unwrap();
        assert_eq!(f.graph.neighbors(VertexId::of(2)), vset(&[0, 1]));
        assert_eq!(f.graph.size(), 2);
        let free = BinaryMatroid::free(4);
        assert_eq!(fundamental_graph(&free, free.elements()).unwrap().graph.size(), 0);
        assert!(fundamental_graph(&k3(), vset(&[0])).is_err());
    }

    #[test]
    fn fundamental_circuits_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let m = random_matroid(&mut rng, 3, 6);
            let circuits = m.circuits().unwrap();
            for b in m.bases() {
                let f = fundamental_graph(&m, b).unwrap();
                for e in m.elements().difference(b) {
                    let fc = circuits
                        .iter()
                        .find(|c| c.contains(e) && c.without(e).is_subset(b))
                        .unwrap();
                    assert_eq!(f.graph.neighbors(e), fc.without(e));
                }
                let back = matroid_from_fundamental_graph(&f).unwrap();
                assert_eq!(back.circuits().unwrap(), circuits);
            }
        }
    }

    #[test]
    fn principal_pivot_matches_edge_pivots() {
        let single = BitMatrix::from_rows(2, vec![0b10, 0b01]);
        assert_eq!(principal_pivot_transform(&single, &[0, 1]).unwrap(), single);
        assert_eq!(principal_pivot_transform(&single, &[]).unwrap(), single);
        assert!(principal_pivot_transform(&single, &[0]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let n = rng.gen_range(2..9);
            let mut g = Graph::edgeless(VertexSet::range(n));
            let half = n / 2;
            for a in 0..half {
                for b in half..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(VertexId::of(a), VertexId::of(b)).unwrap();
                    }
                }
            }
            let adj = |g: &Graph| BitMatrix::from_rows(n, (0..n).map(|v| g.row(VertexId::of(v))).collect());
            let start = adj(&g);
            let mut odd = 0u64;
            for _ in 0..rng.gen_range(0..5) {
                let edges = g.edges();
                if edges.is_empty() {
                    break;
                }
                let (u, v) = edges[rng.gen_range(0..edges.len())];
                g = g.pivot(u, v).unwrap();
                odd ^= 1 << u.index() | 1 << v.index();
            }
            let y: Vec<usize> = (0..n).filter(|i| odd >> i & 1 == 1).collect();
            assert_eq!(principal_pivot_transform(&start, &y).unwrap(), adj(&g));
        }
    }

    #[test]
    fn multigraph_text_and_forest() {
        let g = Multigraph::parse("vertices 3\n0 1 a\n1 2 b\n0 2 c\n2 2 d\n0 1 e\n").unwrap();
        assert_eq!(Multigraph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(spanning_forest(&g), vset(&[0, 1]));
        let lp = Multigraph::from_pairs(1, &[(0, 0)]).unwrap();
        assert!(spanning_forest(&lp).is_empty());
        let mut k4 = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                k4.push((a, b));
            }
        }
        let k4 = Multigraph::from_pairs(4, &k4).unwrap();
        let f = spanning_forest(&k4);
        assert_eq!(f.len(), 3);
        assert!(cycle_matroid(&k4).unwrap().is_base(f));
    }

    #[test]
    fn isomorphism_and_minors() {
        let k4 = {
            let mut e = Vec::new();
            for a in 0..4 {
                for b in a + 1..4 {
                    e.push((a, b));
                }
            }
            cycle_matroid(&Multigraph::from_pairs(4, &e).unwrap()).unwrap()
        };
        assert!(matroid_minor_contains(&k4, &k3()).unwrap());
        assert!(matroid_minor_contains(&k3(), &k3()).unwrap());
        let rank_one = BinaryMatroid::from_matrix(&BitMatrix::from_rows(3, vec![0b111]));
        assert!(!matroid_minor_contains(&rank_one, &k3()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matroid(&mut rng, 3, 6);
            let mut perm: Vec<usize> = (0..6).collect();
            for i in (1..6).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let rows: Vec<u64> = m
                .rows
                .iter()
                .map(|&r| (0..6).filter(|&j| r >> j & 1 == 1).fold(0, |x, j| x | 1 << perm[j]))
                .collect();
            let p = BinaryMatroid::from_matrix(&BitMatrix::from_rows(6, rows));
            assert!(matroids_isomorphic(&m, &p).unwrap());
        }
    }

    #[test]
    fn lifts_and_projections() {
        let coloop = BinaryMatroid::free(1);
        let lp = BinaryMatroid::rank_zero(1);
        assert!(elementary_projections(&coloop).unwrap().contains(&lp));
        assert!(elementary_lifts(&lp).unwrap().contains(&coloop));
        assert_eq!(elementary_projections(&lp).unwrap(), vec![lp.clone()]);
        assert_eq!(perturbation_distance(&k3(), &k3(), 2).unwrap(), Some(0));
        assert_eq!(perturbation_distance(&coloop, &lp, 3).unwrap(), Some(1));
    }

    #[test]
    fn rank_perturbations_and_distance_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let m = random_matroid(&mut rng, 3, 5);
            if m.rank() == 0 {
                continue;
            }
            let p = rng.gen_range(1..3);
            let factors: Vec<(u64, u64)> = (0..p)
                .map(|_| (rng.gen::<u64>() & mask(m.rank()), rng.gen::<u64>() & mask(5)))
                .collect();
            let (a, b, mt) = rank_p_perturb(&m, &factors).unwrap();
            assert!(is_rank_p_perturbation(&a, &b, p).unwrap());
            let path = perturbation_path(&m, &mt, 2 * p).unwrap().expect("within 2p moves");
            let (a2, b2) = rank_perturbation_from_path(&path).unwrap();
            assert!(is_rank_p_perturbation(&a2, &b2, path.len() - 1).unwrap());
            assert_eq!(BinaryMatroid::from_matrix(&a2).rows, m.rows);
        }
    }
}
