//! Vertex-clique incidence matrices, spectral bounds and two-eigenvalue
//! certificates for simple graphs.

pub mod clique;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod q2;
pub mod spectral;
pub mod ssp;
pub mod tolerances;

pub use error::{Error, Result};
pub use graph::Graph;
pub use tolerances::Tolerances;

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
