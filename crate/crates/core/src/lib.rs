//! Graph algorithms for finding induced subdivisions of complete graphs in
//! sparse, high-girth hosts.
//!
//! The crate is organized around one pipeline: structural primitives
//! ([`graph`]), subdivision certificates and their verifiers ([`certify`]),
//! connectivity and disjoint-path machinery ([`connectivity`]), a plain
//! (non-induced) subdivision finder ([`subdivision`]), seeded randomness and
//! a Moser–Tardos resampler ([`probabilistic`]), the lemma chain itself
//! ([`pipeline`]), and deterministic instance generators ([`generators`]).
//! Every numeric threshold is read from a [`profile::ConstantsProfile`], so
//! the same code runs at literal reference constants or at desk scale.

pub mod certify;
pub mod connectivity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod pipeline;
pub mod probabilistic;
pub mod profile;
pub mod rng;
pub mod subdivision;

pub use error::Error;
pub use graph::{DegeneracyOrdering, Graph, VertexSet};
pub use profile::ConstantsProfile;
pub use rng::RandomSource;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
