use thiserror::Error;

use crate::permgroup::PermError;
use crate::surface::ValidationError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    Validation(#[from] ValidationError),
    #[error("surface is not regular: vertex degrees {degrees:?}")]
    NotRegular { degrees: Vec<usize> },
    #[error("invalid Schläfli symbol {{{p},{q}}}: both entries must be at least 3")]
    InvalidSymbol { p: usize, q: usize },
    #[error("malformed surface: {0}")]
    MalformedSurface(String),
    #[error("surface is not rotary (rotation group is not transitive on pairs)")]
    NotRotary,
    #[error("deck transformation propagation is inconsistent at sheet {sheet}")]
    NormalityFailure { sheet: usize },
    #[error(
        "projection of deck transformation {sheet} depends on the rotation class over face {face}"
    )]
    ProjectionInconsistent { sheet: usize, face: usize },
    #[error("induced map of deck transformation {sheet} is not a rotation of the surface")]
    NotInRotationGroup { sheet: usize },
    #[error("unknown catalog surface `{0}`")]
    UnknownName(String),
    #[error("invalid torus size: {0}")]
    InvalidSize(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// An internal consistency check failed. This always indicates a bug, never
    /// a property of the input surface.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
