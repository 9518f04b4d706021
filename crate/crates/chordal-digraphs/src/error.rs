use crate::classes::{ClassLabel, ClassWitness};
use thiserror::Error;

/// Errors surfaced by fallible library operations.
///
/// Contract violations that a caller can always avoid statically
/// (out-of-range vertex indices, `u == v` pair queries) panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("arc ({u}, {v}) is invalid for a loop-free digraph on {n} vertices")]
    InvalidArc { u: usize, v: usize, n: usize },

    #[error("digraph is not {class}: witness {witness}")]
    NotInClass {
        class: ClassLabel,
        witness: ClassWitness,
    },

    #[error("substitution expects {expected} parts, got {got}")]
    SubstitutionArity { expected: usize, got: usize },

    #[error("substitution part {index} has no vertices")]
    EmptySubstitutionPart { index: usize },

    #[error("vertex order is not a permutation of the vertex set")]
    NotAPermutation,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("malformed decomposition tree: {0}")]
    MalformedTree(String),

    #[error("generation failed: {0}")]
    GenerationFailure(String),

    #[error("unsupported population: {0}")]
    UnsupportedPopulation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
