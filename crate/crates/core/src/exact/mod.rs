//! Exact linear algebra over arbitrary-precision integers and rationals.

mod block;
mod linalg;
mod matrix;
mod poly;

pub use block::{block_diag, BlockSimilarity};
pub use linalg::{
    charpoly, charpoly_integer, charpoly_small, determinant, determinant_integer, nullspace, rank,
};
pub(crate) use linalg::{nullspace_integer, primitive_integer};
pub use matrix::{frac, rat, serialize_rational, ExactMatrix};
pub use poly::{IntPolynomial, Polynomial, RatPolynomial};

/// `M[rows, cols]`.
pub fn submatrix(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> crate::Result<ExactMatrix> {
    m.submatrix(rows, cols)
}
