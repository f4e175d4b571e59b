use thiserror::Error;

/// Errors raised by constructors, validators and enumeration routines.
///
/// Verification *outcomes* (an axiom failing on well-formed input) are
/// reported through the boolean/witness return values of each check; this
/// type is reserved for inputs the operation refuses to evaluate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table entry at ({row}, {col}) is {value}, outside 0..{size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error("map entry at {index} is {value}, outside 0..{size}")]
    ImageOutOfRange {
        index: usize,
        value: usize,
        size: usize,
    },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{what} is {size}, above the configured guard of {limit}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a rack: {0}")]
    NotARack(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("requirement not met: {0}")]
    Precondition(String),

    #[error("axiom `{axiom}` fails: {witness}")]
    AxiomFailure { axiom: String, witness: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn axiom(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::AxiomFailure {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}
