//! The acceptance criteria for `vminor-core`, each run from a seed and
//! checked against the brute-force oracles in [`oracle`].

use std::fmt;

use serde::Serialize;

mod graphs;
mod matroids;
pub mod oracle;
mod perturbations;
mod structure;

/// Why a criterion failed.
#[derive(Debug, Clone)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<vminor_core::Error> for Failure {
    fn from(e: vminor_core::Error) -> Self {
        Failure(format!("library error: {e}"))
    }
}

/// A passing criterion reports what it covered.
pub type Check = Result<String, Failure>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Failure(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7 }
    }
}

impl SuiteConfig {
    /// A generator private to criterion `id`, so criteria can run alone.
    pub(crate) fn rng(&self, id: usize) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(1_000_003).wrapping_add(id as u64))
    }
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    run: fn(&SuiteConfig) -> Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {}: {}", self.id, self.name, self.detail)
    }
}

impl Criterion {
    pub fn run(&self, cfg: &SuiteConfig) -> Report {
        let (passed, detail) = match (self.run)(cfg) {
            Ok(d) => (true, d),
            Err(f) => (false, f.0),
        };
        Report {
            id: self.id,
            name: self.name,
            passed,
            detail,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, run| Criterion { id, name, run };
    vec![
        c(1, "local complementation and pivot identities", graphs::identities),
        c(2, "cut-rank laws", graphs::cut_rank_laws),
        c(3, "vertex-minor containment against full orbits", graphs::containment),
        c(4, "cut perturbation witnesses", graphs::cut_witnesses),
        c(5, "rank perturbation round trip", perturbations::round_trip),
        c(6, "robustness certifier soundness", perturbations::certifier),
        c(7, "perturbations of disjoint copies keep H", perturbations::disjoint_copies),
        c(8, "orbit of K_{2,2,2} and the families", structure::multipartite_orbit),
        c(9, "fixing coupled pairs in chains", structure::chain_fixing),
        c(10, "matroid minors and pivot-minors of fundamental graphs", matroids::fundamental_minors),
        c(11, "planar multigraphs give circle graphs", structure::planar_circle),
        c(12, "lifts, projections and rank perturbations of matroids", matroids::lifts_and_projections),
        c(13, "exact rank-width", graphs::rankwidth),
    ]
}

/// Runs the criteria whose ids are in `only`, or all of them.
pub fn run_all(cfg: &SuiteConfig, only: &[usize]) -> Vec<Report> {
    criteria()
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| c.run(cfg))
        .collect()
}
