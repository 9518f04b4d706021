//! Digraph chordality toolkit: class recognition with witnesses, greedy
//! perfect-elimination chordality certificates, forbidden-structure
//! characterizations, substitution-tree decomposition of weakly
//! quasi-transitive digraphs, seeded generators, and the verification
//! campaigns tying all of it together.
//!
//! Digraphs are loop-free and may contain digons (pairs of opposite
//! arcs). All algorithms are definition-literal and polynomial on the
//! dense small digraphs this crate targets, except the induced-cycle
//! search, which is exponential in the worst case but heavily pruned.

pub mod campaign;
pub mod chordality;
pub mod classes;
pub mod decomposition;
pub mod digraph;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod io;
pub mod oracle;
pub mod patterns;

pub use digraph::{Digraph, PairRelation, SyncClass, VertexSet};
pub use error::{Error, Result};
