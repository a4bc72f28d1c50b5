//! Images of multilinear *-polynomials on matrix algebras with involution.
//!
//! The crate evaluates *-polynomials on `M_n` with the transpose or the
//! symplectic involution, decomposes real matrices into commutators of
//! symmetric and skew-symmetric parts, canonicalizes `O(2)`-orbits and
//! invariant cones of `M_2(R)`, classifies images and linear spans of
//! *-polynomials on `M_2`, and computes the Lie skew-ideal lattice of `M_4`.

pub mod cli;
pub mod cones;
pub mod decompose;
pub mod error;
pub mod image;
pub mod lie4;
pub mod linalg;
pub mod matrix;
pub mod star_poly;

pub use error::{Error, Result};
pub use linalg::SubspaceBasis;
pub use matrix::{InvolutionCtx, InvolutionKind, Matrix, Scalar, Q};
pub use star_poly::{StarPolynomial, VarKind, Variable};
