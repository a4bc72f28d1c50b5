//! Exact echelon forms over `Q` and the real symmetric eigen-solver.

mod echelon;
mod jacobi;

pub use echelon::{nullspace, rank, rref, solve_in_basis, SubspaceBasis};
pub use jacobi::{complete_orthonormal, dot, norm, real_nullspace, symmetric_eigen, SymmetricEigen};

use crate::matrix::{Scalar, Q};

/// Backends that can compute a kernel basis of a small dense system.
pub trait Kernel: Scalar {
    fn kernel(rows: &[Vec<Self>], ncols: usize) -> Vec<Vec<Self>>;
}

impl Kernel for Q {
    fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
        nullspace(rows, ncols)
    }
}

impl Kernel for f64 {
    fn kernel(rows: &[Vec<f64>], ncols: usize) -> Vec<Vec<f64>> {
        real_nullspace(rows, ncols)
    }
}
