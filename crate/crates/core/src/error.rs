use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("generating set is not symmetric: inverse of {0} is missing")]
    NonSymmetricGenerators(String),

    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NonAssociativeTable(String, String, String),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("element {element} does not belong to {model}")]
    ElementMismatch { element: String, model: String },

    #[error("chain kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("search window exhausted: {0}")]
    Window(String),

    #[error("{0} is not conjugate to {1}")]
    NotConjugate(String, String),

    #[error("no conjugator from {from} to {to} within radius {max_radius}")]
    NotConjugateWithin {
        from: String,
        to: String,
        max_radius: usize,
    },

    #[error("element {0} is not in the centralizer")]
    OutsideCentralizer(String),

    #[error("chain is not a boundary")]
    NotABoundary,

    #[error("integer oracle cap of {0} exceeded")]
    OracleCap(u64),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("operation not supported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
