use thiserror::Error;

/// Errors raised by the group engine, the geometry model and the classifiers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator {index}: {reason}")]
    InvalidPermutation { index: usize, reason: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("domain is empty")]
    EmptyDomain,

    #[error("domain is not invariant: {0}")]
    NotInvariant(String),

    #[error("group is not transitive on the domain")]
    NotTransitive,

    #[error("element is not a member of the group: {0}")]
    NotMember(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("{what} of size {size} exceeds the cap of {cap}; supply the relevant data explicitly or raise the limit")]
    Capacity { what: &'static str, size: u128, cap: u128 },

    #[error("invalid pregeometry: {0}")]
    InvalidGeometry(String),

    #[error("unknown type {0:?}")]
    UnknownType(String),

    #[error("generator {generator} maps element {element} to an element of another type")]
    TypeViolation { generator: usize, element: usize },

    #[error("generator {generator} does not preserve incidence between {x} and {y}")]
    IncidenceViolation { generator: usize, x: usize, y: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, size: u128, cap: u128) -> Self {
        Error::Capacity { what, size, cap }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::TheoremViolation(_) | Error::Internal(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
