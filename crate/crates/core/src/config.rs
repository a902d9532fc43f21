//! Run-wide caps, budgets and seed, with defaults overridable from the
//! environment.

use std::env;

use serde::{Deserialize, Serialize};

use crate::canon::DEFAULT_ISO_CAP;
use crate::epengine::PartsConfig;
use crate::error::{Error, Result};
use crate::perturb::{RobustnessConfig, DEFAULT_DELTA_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Vertices allowed in canonical-form based searches.
    pub iso_cap: usize,
    /// Vertices allowed in robustness certification.
    pub robust_vertex_cap: usize,
    /// Largest `t` accepted by robustness certification.
    pub robust_max_t: usize,
    /// Work budget for low-rank delta enumeration.
    pub delta_budget: usize,
    /// Subtrees enumerated by the robust-parts step.
    pub subtree_cap: usize,
    /// Move limit for matroid distance searches.
    pub dist_cap: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let r = RobustnessConfig::default();
        RunConfig {
            iso_cap: DEFAULT_ISO_CAP,
            robust_vertex_cap: r.vertex_cap,
            robust_max_t: r.max_t,
            delta_budget: DEFAULT_DELTA_BUDGET,
            subtree_cap: PartsConfig::default().subtree_cap,
            dist_cap: 4,
            seed: 7,
        }
    }
}

/// Environment variables read by [`RunConfig::from_env`], with the field
/// each one sets.
pub const ENV_VARS: [(&str, &str); 7] = [
    ("VMINOR_ISO_CAP", "iso_cap"),
    ("VMINOR_ROBUST_VERTEX_CAP", "robust_vertex_cap"),
    ("VMINOR_ROBUST_MAX_T", "robust_max_t"),
    ("VMINOR_DELTA_BUDGET", "delta_budget"),
    ("VMINOR_SUBTREE_CAP", "subtree_cap"),
    ("VMINOR_DIST_CAP", "dist_cap"),
    ("VMINOR_SEED", "seed"),
];

impl RunConfig {
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| env::var(k).ok())
    }

    /// Like [`RunConfig::from_env`] with an explicit variable source.
    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut c = RunConfig::default();
        for (var, _) in ENV_VARS {
            let Some(raw) = get(var) else { continue };
            let v: u64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{var}={raw:?} is not a non-negative integer")))?;
            let n = v as usize;
            match var {
                "VMINOR_ISO_CAP" => c.iso_cap = n,
                "VMINOR_ROBUST_VERTEX_CAP" => c.robust_vertex_cap = n,
                "VMINOR_ROBUST_MAX_T" => c.robust_max_t = n,
                "VMINOR_DELTA_BUDGET" => c.delta_budget = n,
                "VMINOR_SUBTREE_CAP" => c.subtree_cap = n,
                "VMINOR_DIST_CAP" => c.dist_cap = n,
                _ => c.seed = v,
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("iso_cap", self.iso_cap),
            ("robust_vertex_cap", self.robust_vertex_cap),
            ("delta_budget", self.delta_budget),
            ("subtree_cap", self.subtree_cap),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Invalid(format!("{name} must be positive")));
        }
        if self.iso_cap > crate::graph::MAX_VERTICES {
            return Err(Error::Invalid("iso_cap exceeds the vertex limit".into()));
        }
        Ok(())
    }

    pub fn robustness(&self) -> RobustnessConfig {
        RobustnessConfig {
            vertex_cap: self.robust_vertex_cap,
            max_t: self.robust_max_t,
            budget: self.delta_budget,
        }
    }

    pub fn parts(&self) -> PartsConfig {
        PartsConfig {
            robustness: self.robustness(),
            subtree_cap: self.subtree_cap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn lookup_overrides_and_validates() {
        let vars: HashMap<&str, &str> = [("VMINOR_SEED", "42"), ("VMINOR_ROBUST_MAX_T", "1")].into();
        let c = RunConfig::from_lookup(|k| vars.get(k).map(|s| s.to_string())).unwrap();
        assert_eq!((c.seed, c.robust_max_t), (42, 1));
        assert_eq!(c.iso_cap, RunConfig::default().iso_cap);
        assert!(RunConfig::from_lookup(|k| (k == "VMINOR_ISO_CAP").then(|| "0".to_string())).is_err());
        assert!(RunConfig::from_lookup(|k| (k == "VMINOR_SEED").then(|| "x".to_string())).is_err());
    }
}
