use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },
    #[error("not a complex: d_out * d_in has {nonzero} nonzero entries")]
    NotAComplex { nonzero: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("invalid scalar ring: {0}")]
    InvalidScalar(String),
    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("universal coefficient sequence is not exact: {0}")]
    ExactnessFailure(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("ideal slice is not stable under {0}")]
    IdealNotStable(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn mismatch(op: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            op,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// Exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ExactnessFailure(_)
            | Error::TheoremViolation(_)
            | Error::OracleDisagreement(_)
            | Error::IdealNotStable(_)
            | Error::NotAComplex { .. } => 2,
            _ => 3,
        }
    }
}
