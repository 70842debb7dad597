//! Exact scalars and the matrix operations the rest of the crate relies on.

mod echelon;
mod matrix;
mod scalar;
mod sparse;

pub use echelon::Echelon;
pub use matrix::{quotient_dim, same_span, span_rank, Matrix, Vector};
pub use scalar::{Field, Scalar};
pub use sparse::SparseMatrix;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("image vector {witness} is not contained in the kernel")]
    Containment { witness: usize },
}
