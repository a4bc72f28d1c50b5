use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{check_dims, Matrix, Scalar, Q};
use crate::error::{Error, Result};
use crate::linalg::SubspaceBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionKind {
    Transpose,
    Symplectic,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionKind::Transpose => "transpose",
            InvolutionKind::Symplectic => "symplectic",
        })
    }
}

impl FromStr for InvolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transpose" => Ok(InvolutionKind::Transpose),
            "symplectic" => Ok(InvolutionKind::Symplectic),
            other => Err(Error::Input(format!("unknown involution `{other}`"))),
        }
    }
}

/// An involution of the first kind on `M_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvolutionCtx {
    kind: InvolutionKind,
    n: usize,
}

impl InvolutionCtx {
    pub fn new(kind: InvolutionKind, n: usize) -> Result<Self> {
        if kind == InvolutionKind::Symplectic && !n.is_multiple_of(2) {
            return Err(Error::OddSymplectic(n));
        }
        if n == 0 {
            return Err(Error::Input("matrix dimension must be positive".into()));
        }
        Ok(InvolutionCtx { kind, n })
    }

    pub fn transpose(n: usize) -> Self {
        InvolutionCtx {
            kind: InvolutionKind::Transpose,
            n,
        }
    }

    pub fn symplectic(n: usize) -> Result<Self> {
        Self::new(InvolutionKind::Symplectic, n)
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check<T: Scalar>(&self, a: &Matrix<T>) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        Ok(())
    }

    /// `Aᵗ` for the transpose involution; for the symplectic one the block map
    /// `[[A, B], [C, D]] ↦ [[Dᵗ, -Bᵗ], [-Cᵗ, Aᵗ]]`.
    pub fn involute<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        self.check(a)?;
        Ok(match self.kind {
            InvolutionKind::Transpose => a.transpose(),
            InvolutionKind::Symplectic => {
                let k = self.n / 2;
                Matrix::from_fn(self.n, |i, j| {
                    let (bi, ii) = (i / k, i % k);
                    let (bj, jj) = (j / k, j % k);
                    // output block (bi, bj) is ± the transpose of input block (1-bj, 1-bi)
                    let src = a[((1 - bj) * k + jj, (1 - bi) * k + ii)].clone();
                    if bi == bj {
                        src
                    } else {
                        -src
                    }
                })
            }
        })
    }

    pub fn sym_part<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        let star = self.involute(a)?;
        Ok((a + &star).scale(&T::from_ratio(1, 2)))
    }

    pub fn skew_part<T: Scalar>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        let star = self.involute(a)?;
        Ok((a - &star).scale(&T::from_ratio(1, 2)))
    }

    pub fn is_symmetric<T: Scalar>(&self, a: &Matrix<T>) -> Result<bool> {
        Ok(self.involute(a)?.approx_eq(a))
    }

    pub fn is_skew<T: Scalar>(&self, a: &Matrix<T>) -> Result<bool> {
        Ok(self.involute(a)?.approx_eq(&-a))
    }

    /// Basis of the symmetric elements, in echelon form.
    pub fn sym_basis(&self) -> Vec<Matrix<Q>> {
        self.projected_basis(true)
    }

    /// Basis of the skew-symmetric elements, in echelon form.
    pub fn skew_basis(&self) -> Vec<Matrix<Q>> {
        self.projected_basis(false)
    }

    fn projected_basis(&self, symmetric: bool) -> Vec<Matrix<Q>> {
        let n = self.n;
        let parts = (0..n * n).map(|k| {
            let unit = Matrix::<Q>::unit(n, k / n, k % n);
            if symmetric {
                self.sym_part(&unit)
            } else {
                self.skew_part(&unit)
            }
            .expect("dimension matches by construction")
        });
        SubspaceBasis::span(n, parts).matrices()
    }

    /// Whether conjugation by `u` is a *-automorphism, i.e. `u·u*` is a nonzero scalar.
    pub fn is_star_automorphism_witness<T: Scalar>(&self, u: &Matrix<T>) -> Result<bool> {
        self.check(u)?;
        if u.determinant().is_negligible(u.norm_inf().powi(self.n as i32)) {
            return Err(Error::Singular);
        }
        let uu = u * &self.involute(u)?;
        Ok(uu
            .as_scalar()
            .is_some_and(|c| !c.is_negligible(uu.norm_inf())))
    }

    /// Conjugation `u⁻¹ a u`, requiring `u` to induce a *-automorphism.
    pub fn star_conjugate<T: Scalar>(&self, a: &Matrix<T>, u: &Matrix<T>) -> Result<Matrix<T>> {
        check_dims(a, u)?;
        if !self.is_star_automorphism_witness(u)? {
            return Err(Error::Precondition(
                "u·u* is not a nonzero scalar; conjugation is not a *-automorphism".into(),
            ));
        }
        a.conjugate(u)
    }
}
