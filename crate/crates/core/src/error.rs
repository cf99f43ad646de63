use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported field: {0}")]
    Field(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("algebra failed validation: {0}")]
    Validation(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("relation {index} is not homogeneous: {reason}")]
    InhomogeneousRelation { index: usize, reason: String },

    #[error("quotient is not finite-dimensional within maxdeg: degree {degree} slice has dimension {dim}")]
    NotFiniteDimensional { degree: u32, dim: usize },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),

    #[error("the algebra carries no anti-involution")]
    InvolutionAbsent,

    #[error("the primed map is not an involution on the projective-injective set")]
    PrimedNotInvolution,

    #[error("standing assumptions unmet: {0}")]
    AssumptionsUnmet(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
