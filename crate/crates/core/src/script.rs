//! Replayable sequences of local complementations, pivots and deletions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op")]
pub enum Step {
    #[serde(rename = "LC")]
    LocalComplement { v: VertexId },
    #[serde(rename = "PV")]
    Pivot { u: VertexId, v: VertexId },
    #[serde(rename = "DEL")]
    DeleteVertex { v: VertexId },
}

impl Step {
    pub fn lc(v: VertexId) -> Step {
        Step::LocalComplement { v }
    }

    pub fn pivot(u: VertexId, v: VertexId) -> Step {
        Step::Pivot { u, v }
    }

    pub fn delete(v: VertexId) -> Step {
        Step::DeleteVertex { v }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            Step::LocalComplement { v } => g.local_complement(v),
            Step::Pivot { u, v } => g.pivot(u, v),
            Step::DeleteVertex { v } => g.delete_vertex(v),
        }
    }

    pub fn touched(&self) -> VertexSet {
        match *self {
            Step::LocalComplement { v } | Step::DeleteVertex { v } => VertexSet::singleton(v),
            Step::Pivot { u, v } => VertexSet::singleton(u).with(v),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::LocalComplement { v } => write!(f, "LC {v}"),
            Step::Pivot { u, v } => write!(f, "PV {u} {v}"),
            Step::DeleteVertex { v } => write!(f, "DEL {v}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperationScript(pub Vec<Step>);

impl OperationScript {
    pub fn new() -> Self {
        OperationScript(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Step) {
        self.0.push(s);
    }

    pub fn extend(&mut self, other: &OperationScript) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn touched(&self) -> VertexSet {
        self.0
            .iter()
            .fold(VertexSet::EMPTY, |acc, s| acc.union(s.touched()))
    }

    pub fn deleted(&self) -> VertexSet {
        self.0
            .iter()
            .filter_map(|s| match s {
                Step::DeleteVertex { v } => Some(*v),
                _ => None,
            })
            .collect()
    }

    /// Applies every step in order; errors name the failing step.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let mut cur = g.clone();
        for (index, step) in self.0.iter().enumerate() {
            cur = step.apply(&cur).map_err(|e| Error::Step {
                index,
                source: Box::new(e),
            })?;
        }
        Ok(cur)
    }

    /// Pivots expanded to `u v u` and deletions moved to the end. Valid for
    /// scripts that replay on some graph, since deleting a vertex commutes
    /// with operations at other vertices.
    pub fn normalized(&self) -> (Vec<VertexId>, VertexSet) {
        let mut lcs = Vec::new();
        for s in &self.0 {
            match *s {
                Step::LocalComplement { v } => lcs.push(v),
                Step::Pivot { u, v } => lcs.extend([u, v, u]),
                Step::DeleteVertex { .. } => {}
            }
        }
        (lcs, self.deleted())
    }

    pub fn from_lcs(lcs: &[VertexId], deleted: VertexSet) -> Self {
        let mut out: Vec<Step> = Vec::new();
        for &v in lcs {
            if out.last() == Some(&Step::lc(v)) {
                out.pop();
            } else {
                out.push(Step::lc(v));
            }
        }
        out.extend(deleted.iter().map(Step::delete));
        OperationScript(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scripts serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for OperationScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for OperationScript {
    type Err = Error;

    /// Line format: `LC v`, `PV u v`, `DEL v`; blank lines and `#` comments
    /// are ignored.
    fn from_str(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: {raw:?}", no + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            let id = |w: &str| -> Result<VertexId> {
                VertexId::new(w.parse::<usize>().map_err(|_| bad())?)
            };
            let step = match words.as_slice() {
                ["LC", v] => Step::lc(id(v)?),
                ["PV", u, v] => Step::pivot(id(u)?, id(v)?),
                ["DEL", v] => Step::delete(id(v)?),
                _ => return Err(bad()),
            };
            steps.push(step);
        }
        Ok(OperationScript(steps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId::of(i)
    }

    #[test]
    fn text_and_json_round_trip() {
        let s = OperationScript(vec![Step::lc(v(3)), Step::pivot(v(1), v(2)), Step::delete(v(5))]);
        let text = s.to_string();
        assert_eq!(text, "LC 3\nPV 1 2\nDEL 5\n");
        assert_eq!(text.parse::<OperationScript>().unwrap(), s);
        let json = s.to_json();
        assert_eq!(json, r#"[{"op":"LC","v":3},{"op":"PV","u":1,"v":2},{"op":"DEL","v":5}]"#);
        assert_eq!(OperationScript::from_json(&json).unwrap(), s);
        assert!("LC x".parse::<OperationScript>().is_err());
    }

    #[test]
    fn replay_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(OperationScript::new().replay(&g).unwrap(), g);
        let twice = OperationScript(vec![Step::lc(v(1)), Step::lc(v(1))]);
        assert_eq!(twice.replay(&g).unwrap(), g);
        let bad = OperationScript(vec![Step::delete(v(0)), Step::pivot(v(0), v(1))]);
        match bad.replay(&g) {
            Err(Error::Step { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected step error, got {other:?}"),
        }
    }

    #[test]
    fn normalization_preserves_result() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let s = OperationScript(vec![
            Step::lc(v(0)),
            Step::delete(v(3)),
            Step::pivot(v(1), v(2)),
            Step::lc(v(4)),
        ]);
        let (lcs, del) = s.normalized();
        let n = OperationScript::from_lcs(&lcs, del);
        assert_eq!(n.replay(&g).unwrap(), s.replay(&g).unwrap());
    }
}
