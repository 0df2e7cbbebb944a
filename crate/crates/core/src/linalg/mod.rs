//! Exact integer linear algebra.

mod bareiss;
mod cyclotomic;
mod hnf;
mod matrix;
mod poly;

pub use bareiss::{alexander_det, det_int, determinant, rank, ExactRing};
pub use cyclotomic::{pencil_kernel, CyclotomicKernel};
pub use hnf::{column_hermite, gcd_of, is_primitive, kernel, solve_linear, solve_with, ColumnHermite};
pub use matrix::{DecInt, IntMatrix};
pub use poly::{AlexanderPolynomial, IntPoly, Unit};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
}

/// The Alexander polynomial `det(t·A − Aᵀ)` of a Seifert form, up to units.
///
/// The empty form gives the constant polynomial `1`.
pub fn alexander_of_form(a: &IntMatrix) -> Result<AlexanderPolynomial, LinalgError> {
    Ok(AlexanderPolynomial::from_raw(alexander_det(a)?))
}
