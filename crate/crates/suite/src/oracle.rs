//! Brute-force oracles written against plain adjacency rows, sharing no code
//! with the library beyond graph construction.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use vminor_core::{Graph, VertexId, VertexSet};

/// Adjacency rows over `0..n`.
pub type Rows = Vec<u64>;

pub fn rows_of(g: &Graph) -> (Vec<VertexId>, Rows) {
    let ids = g.vertices().to_vec();
    let rows = ids
        .iter()
        .map(|&a| ids.iter().enumerate().filter(|(_, &b)| g.has_edge(a, b)).fold(0, |r, (j, _)| r | 1 << j))
        .collect();
    (ids, rows)
}

pub fn graph_of(rows: &[u64]) -> Graph {
    let mut g = Graph::edgeless(VertexSet::range(rows.len()));
    for (i, r) in rows.iter().enumerate() {
        for j in i + 1..rows.len() {
            if r >> j & 1 == 1 {
                g.add_edge(VertexId::of(i), VertexId::of(j)).expect("in range");
            }
        }
    }
    g
}

/// Local complementation straight from the definition: toggle every pair
/// of distinct neighbours of `v`.
pub fn local_complement(rows: &[u64], v: usize) -> Rows {
    let nb = rows[v];
    let mut out = rows.to_vec();
    for a in 0..rows.len() {
        if nb >> a & 1 == 1 {
            out[a] ^= nb & !(1 << a);
        }
    }
    out
}

/// Pivot from the definition: toggle pairs across the three classes of
/// neighbours of `u` only, `v` only and both, then swap `u` and `v`.
pub fn pivot(rows: &[u64], u: usize, v: usize) -> Rows {
    let n = rows.len();
    let (nu, nv) = (rows[u] & !(1 << v), rows[v] & !(1 << u));
    let classes = [nu & !nv, nv & !nu, nu & nv];
    let mut out = rows.to_vec();
    for a in 0..n {
        for b in 0..n {
            if a == b || a == u || a == v || b == u || b == v {
                continue;
            }
            let ca = classes.iter().position(|c| c >> a & 1 == 1);
            let cb = classes.iter().position(|c| c >> b & 1 == 1);
            if let (Some(x), Some(y)) = (ca, cb) {
                if x != y {
                    out[a] ^= 1 << b;
                }
            }
        }
    }
    // Swap the roles of u and v.
    let swap = |r: u64| {
        let (bu, bv) = (r >> u & 1, r >> v & 1);
        (r & !(1 << u) & !(1 << v)) | bu << v | bv << u
    };
    let mut swapped: Rows = out.iter().map(|&r| swap(r)).collect();
    swapped.swap(u, v);
    swapped
}

pub fn rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut x = r;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Rank of the `x × (V − x)` block.
pub fn cut_rank(rows: &[u64], x: u64) -> usize {
    let n = rows.len();
    let y = !x & mask(n);
    let block: Vec<u64> = (0..n).filter(|i| x >> i & 1 == 1).map(|i| rows[i] & y).collect();
    rank(&block)
}

pub fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn induced(rows: &[u64], s: u64) -> Rows {
    let keep: Vec<usize> = (0..rows.len()).filter(|i| s >> i & 1 == 1).collect();
    keep.iter()
        .map(|&a| keep.iter().enumerate().filter(|(_, &b)| rows[a] >> b & 1 == 1).fold(0, |r, (j, _)| r | 1 << j))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Canonical form as the least upper-triangle bit string over all vertex
/// orders, with permutations cached per order.
#[derive(Default)]
pub struct Canon {
    perms: HashMap<usize, Vec<Vec<usize>>>,
    seen: HashMap<Rows, (usize, u64)>,
}

impl Canon {
    pub fn key(&mut self, rows: &[u64]) -> (usize, u64) {
        if let Some(&k) = self.seen.get(rows) {
            return k;
        }
        let k = self.compute(rows);
        self.seen.insert(rows.to_vec(), k);
        k
    }

    fn compute(&mut self, rows: &[u64]) -> (usize, u64) {
        let n = rows.len();
        let perms = self.perms.entry(n).or_insert_with(|| permutations(n));
        let best = perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                let mut bit = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if rows[p[i]] >> p[j] & 1 == 1 {
                            code |= 1 << bit;
                        }
                        bit += 1;
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        (n, best)
    }
}

/// All graphs locally equivalent to `rows`, by breadth-first search.
pub fn lc_orbit(rows: &[u64]) -> Vec<Rows> {
    let mut seen: HashSet<Rows> = HashSet::from([rows.to_vec()]);
    let mut queue = VecDeque::from([rows.to_vec()]);
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        for v in 0..g.len() {
            let h = local_complement(&g, v);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}

fn degree_sequence(rows: &[u64]) -> Vec<u32> {
    let mut d: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    d.sort_unstable();
    d
}

/// Whether `h` is a vertex-minor of `g`: some graph locally equivalent to
/// `g` has an induced subgraph isomorphic to `h`. Answers are shared by
/// every member of an explored orbit.
pub struct VertexMinorOracle {
    canon: Canon,
    target: (usize, u64),
    degrees: Vec<u32>,
    memo: HashMap<Rows, bool>,
}

impl VertexMinorOracle {
    pub fn new(h: &[u64]) -> Self {
        let mut canon = Canon::default();
        let target = canon.key(h);
        VertexMinorOracle {
            canon,
            target,
            degrees: degree_sequence(h),
            memo: HashMap::new(),
        }
    }

    fn has_induced(&mut self, g: &[u64]) -> bool {
        let k = self.target.0;
        let mut s: u64 = mask(k);
        let limit = 1u64 << g.len();
        while s < limit {
            let sub = induced(g, s);
            if degree_sequence(&sub) == self.degrees && self.canon.key(&sub) == self.target {
                return true;
            }
            // Next subset of the same size.
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
        false
    }

    pub fn contains(&mut self, g: &[u64]) -> bool {
        if g.len() < self.target.0 {
            return false;
        }
        if let Some(&b) = self.memo.get(g) {
            return b;
        }
        let orbit = lc_orbit(g);
        let found = if self.target.0 == 0 {
            true
        } else {
            orbit.iter().any(|m| self.has_induced(m))
        };
        for m in orbit {
            self.memo.insert(m, found);
        }
        found
    }
}

/// Whether `g` has no P4 vertex-minor, read off its components: each must
/// be complete or a star, the two shapes whose orbits avoid P4. Checked
/// against [`VertexMinorOracle`] on every graph with at most six vertices.
pub fn p4_free(g: &[u64]) -> bool {
    let mut left = mask(g.len());
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grown = (0..g.len()).filter(|&i| comp >> i & 1 == 1).fold(comp, |c, i| c | g[i]);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left &= !comp;
        let size = comp.count_ones();
        let members = (0..g.len()).filter(|&i| comp >> i & 1 == 1);
        let complete = members.clone().all(|i| g[i] == comp & !(1 << i));
        let star = members.clone().any(|c| {
            g[c] == comp & !(1 << c) && members.clone().all(|i| i == c || g[i] == 1 << c)
        });
        if size > 2 && !complete && !star {
            return false;
        }
    }
    true
}

/// All unrooted trees whose leaves are `0..n` and internal nodes have
/// degree three, each given by the leaf sets cut off by its edges. Built by
/// inserting leaf `i` on every edge of every tree for `0..i`.
pub fn cubic_tree_cuts(n: usize) -> Vec<Vec<u64>> {
    if n <= 1 {
        return vec![vec![]];
    }
    // Edge list of node pairs; nodes 0..n are leaves, later ones internal.
    let mut trees: Vec<(usize, Vec<(usize, usize)>)> = vec![(n, vec![(0, 1)])];
    for leaf in 2..n {
        let mut next = Vec::new();
        for (fresh, edges) in &trees {
            for i in 0..edges.len() {
                let (a, b) = edges[i];
                let mut e = edges.clone();
                e[i] = (a, *fresh);
                e.push((*fresh, b));
                e.push((*fresh, leaf));
                next.push((fresh + 1, e));
            }
        }
        trees = next;
    }
    trees
        .iter()
        .map(|(nodes, edges)| {
            edges
                .iter()
                .map(|&(a, b)| {
                    // Leaves reachable from b without crossing the edge.
                    let mut seen = vec![false; *nodes];
                    seen[a] = true;
                    seen[b] = true;
                    let mut stack = vec![b];
                    let mut side = 0u64;
                    while let Some(x) = stack.pop() {
                        if x < n {
                            side |= 1 << x;
                        }
                        for &(p, q) in edges {
                            for (s, t) in [(p, q), (q, p)] {
                                if s == x && !seen[t] {
                                    seen[t] = true;
                                    stack.push(t);
                                }
                            }
                        }
                    }
                    side
                })
                .collect()
        })
        .collect()
}

/// Rank-width by trying every cubic tree.
pub fn rankwidth(rows: &[u64]) -> usize {
    cubic_tree_cuts(rows.len())
        .iter()
        .map(|cuts| cuts.iter().map(|&x| cut_rank(rows, x)).max().unwrap_or(0))
        .min()
        .unwrap_or(0)
}

/// Interlacement from a double-occurrence word.
pub fn interlacement(word: &[usize], n: usize) -> Rows {
    let mut pos = vec![Vec::new(); n];
    for (i, &c) in word.iter().enumerate() {
        pos[c].push(i);
    }
    let mut rows = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            let inside = pos[b].iter().filter(|&&p| pos[a][0] < p && p < pos[a][1]).count();
            if a != b && inside == 1 {
                rows[a] |= 1 << b;
            }
        }
    }
    rows
}

/// All symmetric matrices of rank at most two over `n` indices, diagonal
/// included: zero, `uuᵀ`, `uuᵀ + vvᵀ` and `uvᵀ + vuᵀ`.
pub fn symmetric_rank_le_two(n: usize) -> Vec<Rows> {
    let outer = |u: u64, v: u64| -> Rows { (0..n).map(|i| if u >> i & 1 == 1 { v } else { 0 }).collect() };
    let add = |a: &Rows, b: &Rows| -> Rows { a.iter().zip(b).map(|(x, y)| x ^ y).collect() };
    let mut out: HashSet<Rows> = HashSet::new();
    for u in 0..1u64 << n {
        out.insert(outer(u, u));
        for v in 0..1u64 << n {
            out.insert(add(&outer(u, u), &outer(v, v)));
            out.insert(add(&outer(u, v), &outer(v, u)));
        }
    }
    let mut v: Vec<Rows> = out.into_iter().filter(|m| rank(m) <= 2).collect();
    v.sort();
    v
}

/// `rows + delta` with the diagonal ignored.
pub fn perturb(rows: &[u64], delta: &[u64]) -> Rows {
    rows.iter().zip(delta).enumerate().map(|(i, (r, d))| (r ^ d) & !(1 << i)).collect()
}

pub fn is_bipartite(rows: &[u64]) -> bool {
    let n = rows.len();
    let mut colour = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let c = colour[x].expect("coloured");
            for y in 0..n {
                if rows[x] >> y & 1 == 1 {
                    match colour[y] {
                        None => {
                            colour[y] = Some(!c);
                            stack.push(y);
                        }
                        Some(d) if d == c => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

/// Column vectors of a matrix given by rows over `n` columns.
pub fn columns(rows: &[u64], n: usize) -> Vec<u64> {
    (0..n)
        .map(|j| rows.iter().enumerate().filter(|(_, r)| *r >> j & 1 == 1).fold(0, |c, (i, _)| c | 1 << i))
        .collect()
}

/// Rank of the columns selected by `s`.
pub fn column_rank(cols: &[u64], s: u64) -> usize {
    let picked: Vec<u64> = cols.iter().enumerate().filter(|(j, _)| s >> j & 1 == 1).map(|(_, &c)| c).collect();
    rank(&picked)
}

/// Element count and bases of `M / contract \ delete`, renumbered to
/// `0..k` in increasing order.
pub fn minor_bases(cols: &[u64], delete: u64, contract: u64) -> (usize, BTreeSet<u64>) {
    let rest: Vec<usize> = (0..cols.len()).filter(|&j| (delete | contract) >> j & 1 == 0).collect();
    let rc = column_rank(cols, contract);
    let full = rest.iter().fold(0u64, |s, &j| s | 1 << j);
    let r = column_rank(cols, full | contract) - rc;
    let mut bases = BTreeSet::new();
    for m in 0u64..1 << rest.len() {
        if m.count_ones() as usize != r {
            continue;
        }
        let s = rest.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0u64, |s, (_, &j)| s | 1 << j);
        if column_rank(cols, s | contract) - rc == r {
            bases.insert(m);
        }
    }
    (rest.len(), bases)
}

fn same_bases_up_to_relabeling(a: &(usize, BTreeSet<u64>), b: &(usize, BTreeSet<u64>), perms: &[Vec<usize>]) -> bool {
    a.0 == b.0
        && a.1.len() == b.1.len()
        && perms.iter().any(|p| {
            a.1.iter().all(|&s| b.1.contains(&(0..a.0).filter(|i| s >> i & 1 == 1).fold(0, |t, i| t | 1 << p[i])))
        })
}

/// Whether the matroid with columns `m` has a minor isomorphic to the one
/// with columns `n`, by trying every deletion and contraction set.
pub fn has_matroid_minor(m: &[u64], n: &[u64]) -> bool {
    let target = minor_bases(n, 0, 0);
    let perms = permutations(target.0);
    let size = m.len();
    (0u64..1 << size).any(|d| {
        let rest = !d & mask(size);
        let mut c = rest;
        loop {
            if size - (d | c).count_ones() as usize == target.0
                && same_bases_up_to_relabeling(&minor_bases(m, d, c), &target, &perms)
            {
                return true;
            }
            if c == 0 {
                return false;
            }
            c = (c - 1) & rest;
        }
    })
}

/// All `2^r` vectors in the span of `rows`.
pub fn span(rows: &[u64]) -> BTreeSet<u64> {
    (0u64..1 << rows.len())
        .map(|m| (0..rows.len()).filter(|i| m >> i & 1 == 1).fold(0, |acc, i| acc ^ rows[i]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_are_double_factorials() {
        let counts: Vec<usize> = (2..=7).map(|n| cubic_tree_cuts(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105, 945]);
    }

    #[test]
    fn small_facts() {
        let p4 = vec![0b0010, 0b0101, 0b1010, 0b0100];
        let k3 = vec![0b110, 0b101, 0b011];
        assert!(VertexMinorOracle::new(&k3).contains(&p4));
        assert!(!VertexMinorOracle::new(&p4).contains(&k3));
        assert!(VertexMinorOracle::new(&p4).contains(&p4));
        assert_eq!(rankwidth(&p4), 1);
        assert_eq!(lc_orbit(&k3).len(), 4);
        assert_eq!(symmetric_rank_le_two(2).len(), 8);
        let lc = local_complement;
        assert_eq!(pivot(&p4, 1, 2), lc(&lc(&lc(&p4, 1), 2), 1));
        assert_eq!(pivot(&pivot(&p4, 1, 2), 1, 2), p4);
    }

    #[test]
    fn p4_free_matches_the_orbit_oracle() {
        let mut brute = VertexMinorOracle::new(&[0b0010, 0b0101, 0b1010, 0b0100]);
        for n in 0..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            for bits in 0u64..1 << pairs.len() {
                let mut g = vec![0u64; n];
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if bits >> i & 1 == 1 {
                        g[a] |= 1 << b;
                        g[b] |= 1 << a;
                    }
                }
                assert_eq!(p4_free(&g), !brute.contains(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn matroid_minor_facts() {
        // Triangle columns e1, e2, e1+e2; a loop; a coloop.
        let triangle = columns(&[0b101, 0b110], 3);
        let parallel = columns(&[0b11], 2);
        assert!(has_matroid_minor(&triangle, &parallel));
        assert!(!has_matroid_minor(&parallel, &triangle));
        assert!(has_matroid_minor(&triangle, &[0]));
        assert!(!has_matroid_minor(&[1, 2], &[0]));
        assert_eq!(span(&[0b01, 0b10]).len(), 4);
    }
}
