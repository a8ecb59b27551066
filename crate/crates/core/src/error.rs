use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid root datum factor `{factor}`: {reason}")]
    InvalidFactor { factor: String, reason: String },

    #[error("lattice rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("{0} is not a root of the datum")]
    NotARoot(String),

    #[error("{element} is not a minimal coset representative for {subgroup}")]
    NotMinimalRep { element: String, subgroup: String },

    #[error("subgroup {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("coset intersection property fails for family members {0} and {1}")]
    CosetIntersection(usize, usize),

    #[error("invalid family: {0}")]
    Family(String),

    #[error("invalid W-CW complex: {0}")]
    Complex(String),

    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the library's own consistency checks, as opposed
    /// to rejected input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
