//! The graph families closed under local complementation that contain the
//! complete multipartite graphs: `𝒞(𝒜, ℬ)` and `𝒟(S, 𝒜, ℬ)`.
//!
//! In `𝒞` the sets of `𝒜` are independent, each `B ∈ ℬ` is a star whose
//! leaves have degree one in `G`, and vertices of distinct members of
//! `𝒜 ∪ {{c_B}}` are adjacent. In `𝒟` the sets of `𝒜` are cliques, members
//! of `𝒜 ∪ {{c_B}}` are pairwise anticomplete, and `S` is a clique or an
//! independent set complete to all of them. All sets are nonempty.

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Vertices accepted by [`classify_family_membership`].
pub const MAX_FAMILY_VERTICES: usize = 16;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    C,
    D,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: VertexId,
    pub set: VertexSet,
}

impl Star {
    pub fn leaves(&self) -> VertexSet {
        self.set.without(self.center)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyWitness {
    pub kind: FamilyKind,
    /// `S`, for kind `D` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<VertexSet>,
    #[serde(default)]
    pub s_is_clique: bool,
    pub a: Vec<VertexSet>,
    pub b: Vec<Star>,
}

impl FamilyWitness {
    fn all_sets(&self) -> Vec<VertexSet> {
        let mut v: Vec<VertexSet> = self.s.into_iter().collect();
        v.extend(self.a.iter().copied());
        v.extend(self.b.iter().map(|s| s.set));
        v
    }

    pub fn vertices(&self) -> VertexSet {
        self.all_sets().into_iter().fold(VertexSet::EMPTY, VertexSet::union)
    }

    fn validate_shape(&self) -> Result<()> {
        if (self.kind == FamilyKind::D) != self.s.is_some() {
            return Err(Error::Invalid("S is given exactly for kind D".into()));
        }
        let sets = self.all_sets();
        let mut seen = VertexSet::EMPTY;
        for s in &sets {
            if s.is_empty() || !s.is_disjoint(seen) {
                return Err(Error::Invalid("family sets must be nonempty and disjoint".into()));
            }
            seen = seen.union(*s);
        }
        if self.b.iter().any(|s| !s.set.contains(s.center)) {
            return Err(Error::Invalid("star center outside its set".into()));
        }
        Ok(())
    }

    /// The unique graph described by the witness.
    pub fn realize(&self) -> Result<Graph> {
        self.validate_shape()?;
        let mut g = Graph::edgeless(self.vertices());
        for st in &self.b {
            for l in st.leaves() {
                g.add_edge(st.center, l)?;
            }
        }
        // Members of 𝒜 ∪ {{c_B}}.
        let mut members: Vec<VertexSet> = self.a.clone();
        members.extend(self.b.iter().map(|s| VertexSet::singleton(s.center)));
        let clique = |g: &mut Graph, s: VertexSet| -> Result<()> {
            for u in s {
                for v in s {
                    if u < v {
                        g.add_edge(u, v)?;
                    }
                }
            }
            Ok(())
        };
        match self.kind {
            FamilyKind::C => {
                for (i, x) in members.iter().enumerate() {
                    for y in &members[i + 1..] {
                        for u in *x {
                            for v in *y {
                                g.add_edge(u, v)?;
                            }
                        }
                    }
                }
            }
            FamilyKind::D => {
                let s = self.s.expect("checked");
                if self.s_is_clique {
                    clique(&mut g, s)?;
                }
                for a in &self.a {
                    clique(&mut g, *a)?;
                }
                for u in s {
                    for m in &members {
                        for v in *m {
                            g.add_edge(u, v)?;
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn check(&self, g: &Graph) -> bool {
        self.realize().is_ok_and(|h| h == *g)
    }
}

pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    let n: usize = sizes.iter().sum();
    cap("vertices", crate::graph::MAX_VERTICES, n)?;
    let mut g = Graph::edgeless(VertexSet::range(n));
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(VertexId::of(u), VertexId::of(v))?;
            }
        }
    }
    Ok(g)
}

/// `K_{t+2, …, t+2}` with `t + 3` parts.
pub fn build_g_t(t: usize) -> Result<Graph> {
    complete_multipartite(&vec![t + 2; t + 3])
}

fn is_clique(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| s.without(v).is_subset(g.neighbors(v)))
}

fn is_independent(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).is_disjoint(s))
}

fn subsets(of: VertexSet) -> impl Iterator<Item = VertexSet> {
    let bits = of.to_vec();
    (0u64..1 << bits.len()).map(move |m| {
        bits.iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// A witness for `g`, trying `𝒟` first and then `𝒞`. Leaves of stars are
/// chosen among vertices of degree one; the remaining structure is then
/// forced up to the choice of `S`.
pub fn classify_family_membership(g: &Graph) -> Result<Option<FamilyWitness>> {
    cap("vertices for family classification", MAX_FAMILY_VERTICES, g.order())?;
    if g.order() == 0 {
        return Ok(None);
    }
    let deg_one: VertexSet = g.vertices().iter().filter(|&v| g.degree(v) == 1).collect();
    let leaf_choices: Vec<VertexSet> = subsets(deg_one)
        .filter(|l| l.iter().all(|v| !l.contains(g.neighbors(v).first().expect("degree one"))))
        .collect();
    for kind in [FamilyKind::D, FamilyKind::C] {
        for &leaves in &leaf_choices {
            let w = match kind {
                FamilyKind::D => try_d(g, leaves),
                FamilyKind::C => try_c(g, leaves),
            };
            if let Some(w) = w {
                debug_assert!(w.check(g));
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn stars_for(g: &Graph, leaves: VertexSet) -> Vec<Star> {
    let mut stars: Vec<Star> = Vec::new();
    for l in leaves {
        let c = g.neighbors(l).first().expect("degree one");
        match stars.iter_mut().find(|s| s.center == c) {
            Some(s) => s.set.insert(l),
            None => stars.push(Star {
                center: c,
                set: VertexSet::singleton(c).with(l),
            }),
        }
    }
    stars.sort_by_key(|s| s.center);
    stars
}

fn try_c(g: &Graph, leaves: VertexSet) -> Option<FamilyWitness> {
    let stars = stars_for(g, leaves);
    let centers: VertexSet = stars.iter().map(|s| s.center).collect();
    let core = g.vertices().difference(leaves);
    // Parts of the complete multipartite core: classes of non-adjacency.
    let mut a = Vec::new();
    let mut left = core.difference(centers);
    while let Some(v) = left.first() {
        let part = left.difference(g.neighbors(v));
        a.push(part);
        left = left.difference(part);
    }
    let w = FamilyWitness {
        kind: FamilyKind::C,
        s: None,
        s_is_clique: false,
        a,
        b: stars,
    };
    w.check(g).then_some(w)
}

fn try_d(g: &Graph, leaves: VertexSet) -> Option<FamilyWitness> {
    let stars = stars_for(g, leaves);
    let centers: VertexSet = stars.iter().map(|s| s.center).collect();
    let core = g.vertices().difference(leaves);
    // S must be complete to everything else in the core.
    let candidates: VertexSet = core
        .difference(centers)
        .iter()
        .filter(|&v| {
            let miss = core.without(v).difference(g.neighbors(v));
            miss.len() < core.len()
        })
        .collect();
    for s in subsets(candidates) {
        if s.is_empty() {
            continue;
        }
        let clique = is_clique(g, s);
        if !clique && !is_independent(g, s) {
            continue;
        }
        let rest = core.difference(s).difference(centers);
        let a = g.induced(rest).components();
        let w = FamilyWitness {
            kind: FamilyKind::D,
            s: Some(s),
            s_is_clique: clique && s.len() > 1,
            a,
            b: stars.clone(),
        };
        if w.check(g) {
            return Some(w);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub vertex: VertexId,
    pub case: String,
    pub witness: FamilyWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub witness: FamilyWitness,
    pub entries: Vec<AuditEntry>,
    /// First vertex whose local complement leaves the families.
    pub counterexample: Option<VertexId>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// The witness the closure argument predicts for `G * v`, with its case.
pub fn predicted_witness(g: &Graph, w: &FamilyWitness, v: VertexId) -> Result<(String, FamilyWitness)> {
    if !w.check(g) {
        return Err(Error::Invalid("witness does not describe the graph".into()));
    }
    if g.degree(v) <= 1 {
        return Ok(("G*v = G".into(), w.clone()));
    }
    let without_a = |i: usize| -> Vec<VertexSet> { w.a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect() };
    let without_b = |i: usize| -> Vec<Star> { w.b.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect() };
    let in_a = w.a.iter().position(|x| x.contains(v));
    let in_b = w.b.iter().position(|s| s.center == v);
    let out = match (w.kind, in_a, in_b) {
        (FamilyKind::C, Some(i), _) => (
            "G*v ∈ 𝒟(A, 𝒜∖{A}, ℬ)",
            FamilyWitness {
                kind: FamilyKind::D,
                s: Some(w.a[i]),
                s_is_clique: false,
                a: without_a(i),
                b: w.b.clone(),
            },
        ),
        (FamilyKind::C, None, Some(i)) => (
            "G*v ∈ 𝒟(B, 𝒜, ℬ∖{B})",
            FamilyWitness {
                kind: FamilyKind::D,
                s: Some(w.b[i].set),
                s_is_clique: w.b[i].set.len() > 1,
                a: w.a.clone(),
                b: without_b(i),
            },
        ),
        (FamilyKind::D, Some(i), _) => {
            let mut b = w.b.clone();
            b.push(Star {
                center: v,
                set: w.a[i],
            });
            b.sort_by_key(|s| s.center);
            (
                "G*v ∈ 𝒟(S, 𝒜∖{A}, ℬ∪{A})",
                FamilyWitness {
                    kind: FamilyKind::D,
                    s: w.s,
                    s_is_clique: !w.s_is_clique && w.s.is_some_and(|s| s.len() > 1),
                    a: without_a(i),
                    b,
                },
            )
        }
        (FamilyKind::D, None, Some(i)) => {
            let mut a = w.a.clone();
            a.push(w.b[i].set);
            (
                "G*v ∈ 𝒟(S, 𝒜∪{B}, ℬ∖{B})",
                FamilyWitness {
                    kind: FamilyKind::D,
                    s: w.s,
                    s_is_clique: !w.s_is_clique && w.s.is_some_and(|s| s.len() > 1),
                    a,
                    b: without_b(i),
                },
            )
        }
        (FamilyKind::D, None, None) if w.s.is_some_and(|s| s.contains(v)) => {
            let s = w.s.expect("checked");
            if w.s_is_clique {
                let mut b = w.b.clone();
                b.push(Star { center: v, set: s });
                b.sort_by_key(|s| s.center);
                (
                    "G*v ∈ 𝒞(𝒜, ℬ∪{S})",
                    FamilyWitness {
                        kind: FamilyKind::C,
                        s: None,
                        s_is_clique: false,
                        a: w.a.clone(),
                        b,
                    },
                )
            } else {
                let mut a = w.a.clone();
                a.push(s);
                (
                    "G*v ∈ 𝒞(𝒜∪{S}, ℬ)",
                    FamilyWitness {
                        kind: FamilyKind::C,
                        s: None,
                        s_is_clique: false,
                        a,
                        b: w.b.clone(),
                    },
                )
            }
        }
        _ => return Err(Error::Invalid(format!("vertex {v} of degree at least two is not placed by the witness"))),
    };
    Ok((out.0.to_string(), out.1))
}

/// Checks, vertex by vertex, that `G * v` is described by the witness the
/// closure argument predicts.
pub fn closure_audit(g: &Graph) -> Result<AuditReport> {
    let witness = classify_family_membership(g)?
        .ok_or_else(|| Error::Invalid("graph is in neither family".into()))?;
    let mut entries = Vec::new();
    let mut counterexample = None;
    for v in g.vertices() {
        let lc = g.local_complement(v)?;
        let (case, w) = predicted_witness(g, &witness, v)?;
        if w.check(&lc) {
            entries.push(AuditEntry { vertex: v, case, witness: w });
        } else {
            counterexample = Some(v);
            break;
        }
    }
    Ok(AuditReport {
        witness,
        entries,
        counterexample,
    })
}
