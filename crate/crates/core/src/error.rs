use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("element of {found} used where an element of {expected} was required")]
    GroupMismatch { expected: String, found: String },

    #[error("map is not a well-defined homomorphism: {0}")]
    IllDefined(String),

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("quotient is infinite")]
    Infinite,

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("automorphism does not commute with the module action")]
    NotEquivariant,

    #[error("{0}")]
    InvalidInput(String),

    #[error("illegal simple type {0}")]
    IllegalType(String),

    #[error("no catalog entry for {0}")]
    UnknownKey(String),

    #[error("tuple does not generate the group")]
    NotGenerating,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
