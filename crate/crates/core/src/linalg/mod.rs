//! Dense exact linear algebra: matrices, polynomials, roots and primitive idempotents.

mod idempotents;
mod matrix;
mod poly;
mod roots;

pub use idempotents::{eigenvalues, primitive_idempotents, IdempotentSet};
pub use matrix::Matrix;
pub use poly::Poly;
pub use roots::{multiplicity, roots_in_field};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("not multiplicity-free: {0}")]
    NotMultiplicityFree(String),
    #[error("{0} is not an eigenvalue")]
    EigenvalueMismatch(String),
    #[error("characteristic polynomial does not split over the working field")]
    FieldExtensionRequired,
    #[error("malformed matrix: {0}")]
    Malformed(String),
}
