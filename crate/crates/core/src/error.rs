use thiserror::Error;

use crate::scalar::Field;

/// Error type shared by the whole kernel.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero in {0}")]
    DivisionByZero(Field),

    #[error("invalid arity: {0}")]
    Arity(String),

    #[error("(r, l) = ({r}, {l}) outside the admissible range 0 <= l <= r < {n}")]
    RangeViolation { r: usize, l: usize, n: usize },

    #[error("bilinear form is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("bilinear form is degenerate (rank {rank} < dim {dim})")]
    DegenerateForm { rank: usize, dim: usize },

    #[error("GF(2) is not supported for exterior-algebra operations")]
    CharacteristicTwo,

    #[error("exterior element is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("structure is not invariant: {witness}")]
    NotInvariant { witness: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    BadArgument(String),

    #[error("resource guard: {0} (pass --override-guards to lift)")]
    ResourceGuard(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
