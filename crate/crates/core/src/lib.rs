//! An exact calculus for vertex-minors, pivot-minors, perturbations and binary
//! matroid minors over GF(2), with every construction returned as a
//! replayable witness.

pub mod canon;
pub mod chains;
pub mod circle;
pub mod config;
pub mod cutrank;
pub mod epengine;
pub mod error;
pub mod families;
pub mod formats;
pub mod gf2;
pub mod graph;
pub mod matroid;
pub mod perturb;
pub mod script;
pub mod sided;
pub mod vmsearch;

pub use error::{Error, Result};
pub use graph::{vset, Graph, VertexId, VertexSet};
pub use script::{OperationScript, Step};
