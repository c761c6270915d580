//! Dense complex linear algebra: LU with partial pivoting, non-Hermitian
//! eigenvalues, and extremal singular values. Everything is written for the
//! dense scale of this project (n of a few hundred up to ~1200).

mod eig;
mod lu;
pub mod reference;
mod sigma;

pub use eig::{eigenvalues, EigenDecomposition};
pub use lu::{lu_decompose, LuFactors};
pub use sigma::{matrix_two_norm, smallest_singular_value};
