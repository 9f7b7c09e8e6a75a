use thiserror::Error;

/// Errors raised by the exact pipeline and the numeric cross-check.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing value for parameter `{0}`")]
    MissingParameter(String),
    #[error("unexpected parameter `{0}`")]
    UnexpectedParameter(String),
    #[error("algebra has free parameters: {0}")]
    FreeParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("singular base change")]
    SingularBaseChange,
    #[error("Jacobi identity fails: {0}")]
    JacobiViolation(String),
    #[error("algebra is not nilpotent (central series stalls at dimension {0})")]
    NotNilpotent(usize),
    #[error("no nonzero diagonal derivations; the basis is not adapted")]
    NoDiagonalDerivations,
    #[error("diagonal pre-Einstein candidate fails the trace identity on {0}")]
    VerificationFailed(String),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("template rank r = {r} out of range for class {class} in dimension {n}")]
    TemplateRange { class: char, r: usize, n: usize },
    #[error("non-finite value encountered after {0} iterations (step too large?)")]
    NonFinite(usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
