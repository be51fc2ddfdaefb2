use std::fmt;

use thiserror::Error;

use crate::matroid::SubsetMask;

/// The independence axiom a candidate family fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// The empty set must be independent.
    I1,
    /// Every subset of an independent set is independent.
    I2,
    /// Augmentation: `|X| = |Y| + 1` lets `Y` grow by an element of `X - Y`.
    I3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::I1 => "I1",
            Axiom::I2 => "I2",
            Axiom::I3 => "I3",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `first` and `second` witness the failure. For I2, `first` is an
    /// independent set and `second` a missing subset of it; for I3 they are
    /// the sets `X` and `Y` with no available augmenting element.
    #[error("axiom {axiom} violated: witness {first} and {second}")]
    AxiomViolation {
        axiom: Axiom,
        first: SubsetMask,
        second: SubsetMask,
    },
    #[error("subset {mask} is not contained in a ground set of size {n}")]
    MaskOutOfRange { mask: SubsetMask, n: usize },
    #[error("invalid rank {rank} for a ground set of size {n}")]
    InvalidRank { rank: i64, n: usize },
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    BadVertexIndex { vertex: usize, vertex_count: usize },
    #[error("ground set of size {n} exceeds the limit of {limit}")]
    GroundSetTooLarge { n: usize, limit: usize },
    #[error("expected a tensor of arity {expected}, found arity {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operation requires a nonempty matroid")]
    EmptyMatroid,
    #[error("functional does not vanish on the unit")]
    NotInfinitesimal,
    #[error("element {element} is not in a ground set of size {n}")]
    BadElement { element: usize, n: usize },
    #[error("catalog enumeration supports n <= {limit}, got {n}")]
    CatalogTooLarge { n: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
