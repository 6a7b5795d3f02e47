use thiserror::Error;

use crate::quiver::QuiverError;
use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Quiver(#[from] QuiverError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("rewriting exceeded {fuel} steps on a single monomial")]
    FuelExhausted { fuel: u64 },

    #[error("expected a tensor of arity {expected}, got arity {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("word `{word}` is not supported at {position}")]
    SupportViolation { word: String, position: String },

    #[error("element has a component glued at the sink `{vertex}`")]
    NonRegularGluing { vertex: String },

    #[error("ghost letter in a path-algebra context: {0}")]
    GhostInPathAlgebra(String),

    #[error("evaluating an uncertified derivation on a Leavitt element")]
    UncertifiedDescent,

    #[error("generator values do not kill the relations: {}", .0.join("; "))]
    RelationsNotKilled(Vec<String>),

    #[error("quiver has an oriented cycle, so the algebra is infinite-dimensional")]
    CyclicQuiver,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("`{0}` is not a regular vertex")]
    NotRegular(String),
}
