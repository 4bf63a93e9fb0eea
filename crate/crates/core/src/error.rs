use thiserror::Error;

use crate::semantics::FilterViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown connective `{0}`")]
    UnknownConnective(String),

    #[error("connective `{name}` expects {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("element {element} out of range for a carrier of size {size}")]
    OutOfRange { element: usize, size: usize },

    #[error("variable x{0} is not bound by the valuation")]
    MissingBinding(u32),

    #[error("partition is not a congruence: {0}")]
    IncompatiblePartition(String),

    #[error("logic is not implicative: {0}")]
    NotImplicative(String),

    #[error("bound exhausted: {0}")]
    BoundExhausted(String),

    #[error("not a Heyting algebra: {0}")]
    NotHeyting(String),

    #[error("homomorphism verification failed: {0}")]
    NotHomomorphism(String),

    #[error("filter check failed: {0}")]
    Filter(Box<FilterViolation>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Format(err.to_string())
    }
}
