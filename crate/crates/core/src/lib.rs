//! Exact construction, verification and classification of Leonard pairs whose
//! two matrices are tridiagonal with zero diagonal.

pub mod awrel;
pub mod classify;
pub mod cli;
pub mod families;
pub mod leonard;
pub mod linalg;
pub mod parray;
pub mod scalars;

pub use linalg::{LinalgError, Matrix, Poly};
pub use scalars::{Field, Scalar, ScalarError};
