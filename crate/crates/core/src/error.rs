use thiserror::Error;

/// Errors produced by the geometric and algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The hull of the given generators is not full-dimensional. `affine_dim` is
    /// the dimension it actually spans.
    #[error("polyhedron is not full-dimensional (spans dimension {affine_dim} of {dim})")]
    NotFullDimensional { affine_dim: usize, dim: usize },

    #[error("inequality system is unbounded")]
    Unbounded,

    #[error("the zero ideal has no Newton polyhedron")]
    ZeroIdeal,

    #[error("negative exponent {value} in generator {index}")]
    NegativeExponent { index: usize, value: i64 },

    #[error("cone is not pointed")]
    ConeNotPointed,

    #[error("cone generators span dimension {rank}, need {dim}")]
    ConeNotFullDimensional { rank: usize, dim: usize },

    #[error("point {0:?} does not lie in the cone")]
    OutsideCone(Vec<i64>),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("value does not fit in a machine integer")]
    Overflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
