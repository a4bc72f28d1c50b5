//! O(2)-orbits and irreducible invariant cones of real 2×2 matrices.
//!
//! Every `A ∈ M_2` is written `A = α₀I + α₁₂E + u` with `u = u₁e₁ + u₂e₂`.
//! Orthogonal conjugation fixes `α₀`, flips the sign of `α₁₂` for reflections,
//! and rotates `u`, so `(α₀, α₁₂², ‖u‖²)` is a complete orbit invariant.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct M2Decomp<T> {
    pub alpha0: T,
    pub alpha12: T,
    pub u1: T,
    pub u2: T,
}

impl<T: Scalar> M2Decomp<T> {
    pub fn norm_u_sq(&self) -> T {
        self.u1.clone() * self.u1.clone() + self.u2.clone() * self.u2.clone()
    }

    /// `α₀I + α₁₂E + u₁e₁ + u₂e₂`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let (a, b, u1, u2) = (&self.alpha0, &self.alpha12, &self.u1, &self.u2);
        Matrix::from_rows(vec![
            vec![a.clone() + u1.clone(), b.clone() + u2.clone()],
            vec![u2.clone() - b.clone(), a.clone() - u1.clone()],
        ])
        .expect("2×2 rows")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitInvariant<T> {
    pub alpha0: T,
    pub alpha12_sq: T,
    pub norm_u_sq: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeTag {
    Zero,
    Scalar,
    Skew,
    TracelessSym,
    Diagonal,
    General,
}

impl ConeTag {
    pub fn name(self) -> &'static str {
        match self {
            ConeTag::Zero => "Zero",
            ConeTag::Scalar => "Scalar",
            ConeTag::Skew => "Skew",
            ConeTag::TracelessSym => "TracelessSym",
            ConeTag::Diagonal => "Diagonal",
            ConeTag::General => "General",
        }
    }
}

impl fmt::Display for ConeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An irreducible invariant cone, identified by its generator's parameters.
/// `a_sq` is set for `Diagonal` and `General`, `s_sq` only for `General`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalCone<T> {
    pub tag: ConeTag,
    pub a_sq: Option<T>,
    pub s_sq: Option<T>,
}

impl<T: Scalar> CanonicalCone<T> {
    fn bare(tag: ConeTag) -> Self {
        CanonicalCone {
            tag,
            a_sq: None,
            s_sq: None,
        }
    }

    pub fn diagonal(a_sq: T) -> Result<Self> {
        if a_sq.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::Input("a diagonal cone needs a² > 0".into()));
        }
        Ok(CanonicalCone {
            tag: ConeTag::Diagonal,
            a_sq: Some(a_sq),
            s_sq: None,
        })
    }

    pub fn general(a_sq: T, s_sq: T) -> Result<Self> {
        if a_sq < T::zero() || s_sq < T::zero() || (a_sq.is_zero() && s_sq.is_zero()) {
            return Err(Error::Input(
                "a general cone needs a², s² ≥ 0, not both zero".into(),
            ));
        }
        Ok(CanonicalCone {
            tag: ConeTag::General,
            a_sq: Some(a_sq),
            s_sq: Some(s_sq),
        })
    }

    pub fn simple(tag: ConeTag) -> Result<Self> {
        match tag {
            ConeTag::Diagonal | ConeTag::General => Err(Error::Input(format!(
                "cone {tag} needs parameters"
            ))),
            _ => Ok(Self::bare(tag)),
        }
    }

    /// Same tag and parameters, with a relative tolerance on the real backend.
    pub fn approx_eq(&self, other: &Self) -> bool {
        fn close<T: Scalar>(x: &Option<T>, y: &Option<T>) -> bool {
            match (x, y) {
                (None, None) => true,
                (Some(x), Some(y)) => {
                    let scale = x.to_f64().abs().max(y.to_f64().abs());
                    (x.clone() - y.clone()).is_negligible(scale)
                }
                _ => false,
            }
        }
        self.tag == other.tag && close(&self.a_sq, &other.a_sq) && close(&self.s_sq, &other.s_sq)
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({ "tag": self.tag.name() });
        if let Some(a) = &self.a_sq {
            out["a_sq"] = a.to_json();
        }
        if let Some(s) = &self.s_sq {
            out["s_sq"] = s.to_json();
        }
        out
    }
}

impl<T: Scalar> fmt::Display for CanonicalCone<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        match (&self.a_sq, &self.s_sq) {
            (Some(a), Some(s)) => write!(f, "(a²={a}, s²={s})"),
            (Some(a), None) => write!(f, "(a²={a})"),
            _ => Ok(()),
        }
    }
}

fn check_two<T: Scalar>(a: &Matrix<T>) -> Result<()> {
    if a.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.n(),
        });
    }
    Ok(())
}

pub fn decompose_m2<T: Scalar>(a: &Matrix<T>) -> Result<M2Decomp<T>> {
    check_two(a)?;
    let half = T::from_ratio(1, 2);
    let (a11, a12, a21, a22) = (
        a[(0, 0)].clone(),
        a[(0, 1)].clone(),
        a[(1, 0)].clone(),
        a[(1, 1)].clone(),
    );
    Ok(M2Decomp {
        alpha0: (a11.clone() + a22.clone()) * half.clone(),
        alpha12: (a12.clone() - a21.clone()) * half.clone(),
        u1: (a11 - a22) * half.clone(),
        u2: (a12 + a21) * half,
    })
}

pub fn orbit_invariant<T: Scalar>(a: &Matrix<T>) -> Result<OrbitInvariant<T>> {
    let d = decompose_m2(a)?;
    Ok(OrbitInvariant {
        alpha12_sq: d.alpha12.clone() * d.alpha12.clone(),
        norm_u_sq: d.norm_u_sq(),
        alpha0: d.alpha0,
    })
}

/// Whether `B = QᵗAQ` for some orthogonal `Q`.
pub fn same_orbit<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<bool> {
    let (x, y) = (orbit_invariant(a)?, orbit_invariant(b)?);
    let scale = a.norm_inf().max(b.norm_inf());
    let sq_scale = scale * scale;
    Ok((x.alpha0 - y.alpha0).is_negligible(scale)
        && (x.alpha12_sq - y.alpha12_sq).is_negligible(sq_scale)
        && (x.norm_u_sq - y.norm_u_sq).is_negligible(sq_scale))
}

/// The irreducible invariant cone generated by `A` under nonzero scaling and
/// orthogonal conjugation.
pub fn classify_cone<T: Scalar>(a: &Matrix<T>) -> Result<CanonicalCone<T>> {
    let d = decompose_m2(a)?;
    let scale = a.norm_inf();
    let gamma_sq = d.norm_u_sq();
    let alpha0_zero = d.alpha0.is_negligible(scale);
    let alpha12_zero = d.alpha12.is_negligible(scale);
    let gamma_zero = d.u1.is_negligible(scale) && d.u2.is_negligible(scale);
    let alpha0_sq = d.alpha0.clone() * d.alpha0.clone();

    Ok(match (alpha12_zero, gamma_zero, alpha0_zero) {
        (true, true, true) => CanonicalCone::bare(ConeTag::Zero),
        (true, true, false) => CanonicalCone::bare(ConeTag::Scalar),
        (true, false, true) => CanonicalCone::bare(ConeTag::TracelessSym),
        (true, false, false) => CanonicalCone {
            tag: ConeTag::Diagonal,
            a_sq: Some(alpha0_sq / gamma_sq),
            s_sq: None,
        },
        (false, true, true) => CanonicalCone::bare(ConeTag::Skew),
        (false, _, _) => {
            let alpha12_sq = d.alpha12.clone() * d.alpha12.clone();
            let (a_sq, s_sq) = if T::EXACT {
                (alpha0_sq / alpha12_sq.clone(), gamma_sq / alpha12_sq)
            } else {
                // snap parameters that were zero before division
                let a = if alpha0_zero { T::zero() } else { alpha0_sq / alpha12_sq.clone() };
                let s = if gamma_zero { T::zero() } else { gamma_sq / alpha12_sq };
                (a, s)
            };
            CanonicalCone {
                tag: ConeTag::General,
                a_sq: Some(a_sq),
                s_sq: Some(s_sq),
            }
        }
    })
}

/// The listed generator of a cone: `0, I, E, e₁, diag(a+1, a−1)` or `[[a+s, 1], [−1, a−s]]`.
pub fn representative<T: Scalar>(c: &CanonicalCone<T>) -> Result<Matrix<f64>> {
    let root = |x: &Option<T>, name: &str| -> Result<f64> {
        let v = x
            .as_ref()
            .ok_or_else(|| Error::Input(format!("cone {} is missing {name}", c.tag)))?
            .to_f64();
        if v < 0.0 {
            return Err(Error::Input(format!("{name} must be non-negative")));
        }
        Ok(v.sqrt())
    };
    let m = |rows: [[f64; 2]; 2]| Matrix::from_fn(2, |i, j| rows[i][j]);
    Ok(match c.tag {
        ConeTag::Zero => Matrix::zeros(2),
        ConeTag::Scalar => Matrix::identity(2),
        ConeTag::Skew => m([[0.0, 1.0], [-1.0, 0.0]]),
        ConeTag::TracelessSym => m([[1.0, 0.0], [0.0, -1.0]]),
        ConeTag::Diagonal => {
            let a = root(&c.a_sq, "a²")?;
            m([[a + 1.0, 0.0], [0.0, a - 1.0]])
        }
        ConeTag::General => {
            let a = root(&c.a_sq, "a²")?;
            let s = root(&c.s_sq, "s²")?;
            m([[a + s, 1.0], [-1.0, a - s]])
        }
    })
}
