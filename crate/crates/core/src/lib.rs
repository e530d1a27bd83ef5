//! Colourings, homomorphisms and matrix partitions of transitive digraphs.
//!
//! The crate provides the structural toolkit (transitivity, condensation into
//! a weighted poset, canonical forms), exhaustive oracles for list
//! homomorphism and matrix partition, the polynomial algorithms that apply to
//! transitive inputs, minimal-obstruction enumeration, and the gadget
//! reductions from bipartite retraction.

pub mod bipartite;
pub mod canon;
pub mod condensation;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod matrix;
pub mod obstructions;
pub mod poly;
pub mod reductions;
mod scc;
pub mod search;
pub mod twosat;

pub use canon::{canonical_form, CanonicalForm};
pub use condensation::{condense, Condensation};
pub use digraph::{Digraph, TargetClass};
pub use error::{Error, Result};
pub use matrix::{Entry, PartitionMatrix};
pub use search::{Certificate, CertificateKind, Constraint, Lists};
