//! Skew Randić matrices of oriented graphs.
//!
//! The crate covers the full pipeline from a simple graph (or an oriented
//! graph) to its Randić and skew Randić matrices, their spectra and
//! energies, exact characteristic-polynomial coefficients computed from
//! linear subgraphs, energy and `R_{-1}` bounds with their equality cases,
//! switching theory for orientations, and an exhaustive verifier that checks
//! the characterizations over every small graph of a family.
//!
//! Sweeps over families and orientations run on rayon when the `parallel`
//! feature is enabled (the default) and fall back to plain iterators
//! otherwise. See [`sweep::Exec`].

pub mod bounds;
pub mod charpoly;
mod error;
pub mod families;
pub mod graph;
pub mod orientations;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{Cycle, CycleOrientationClass, Graph, LinearSubgraph, OrientedGraph};

/// Exact rational number used for `R_{-1}`, `W(L)` and polynomial coefficients.
pub type Rational = num_rational::BigRational;

/// Default absolute tolerance for comparisons between numeric quantities.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
