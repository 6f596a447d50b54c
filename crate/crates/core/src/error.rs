use thiserror::Error;

use crate::simplex::Simplex;

/// Errors produced by complex construction, homology, data ingestion and the
/// analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),

    #[error("vertex sets are not disjoint: vertex {0:?} occurs on both sides")]
    NamespaceOverlap(crate::simplex::VertexId),

    #[error("simplex budget exceeded: complex has more than {budget} simplices")]
    BudgetExceeded { budget: usize },

    #[error("complex is empty: {0}")]
    EmptyComplex(&'static str),

    #[error("not a subcomplex: {witness:?} is missing from the larger complex")]
    NotSubcomplex { witness: Simplex },

    #[error("invalid filtration: face {face:?} of {simplex:?} {reason}")]
    InvalidFiltration {
        simplex: Simplex,
        face: Simplex,
        reason: &'static str,
    },

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid distribution spec: {0}")]
    InvalidSpec(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
