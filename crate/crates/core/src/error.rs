use thiserror::Error;

/// Errors raised by the library. Verification failures are never errors;
/// they are reported through [`crate::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Coxeter type: {0}")]
    UnsupportedType(String),
    #[error("elements belong to different systems")]
    MixedSystems,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{element} is not an element of {system}")]
    NotInSystem { element: String, system: String },
    #[error("{0} is not a Coxeter element")]
    NotCoxeterElement(String),
    #[error("no {kind} for {a} and {b}")]
    LatticeViolation {
        kind: &'static str,
        a: String,
        b: String,
    },
    #[error("{0} and {1} are not conjugate")]
    NotConjugate(String, String),
    #[error("{0} is not a member of the lattice")]
    NotAMember(String),
    #[error("budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("input words are not positively equal")]
    NotEqualInput,
    #[error("{0} does not divide the word")]
    NotDivisible(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),
    #[error("vertex {0} already exists")]
    DuplicateVertex(String),
    #[error("translated face leaves the truncation: {0}")]
    OutOfTruncation(String),
    #[error("not a chain complex: {0}")]
    NotAChainComplex(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
