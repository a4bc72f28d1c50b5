//! Constructive commutator and product decompositions of real matrices:
//! trace-zero symmetric `A = [B, C]` with `B` symmetric and `C` skew,
//! skew `A = [B, C]` with both symmetric, and `A = S1 · S2` with both symmetric.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{complete_orthonormal, norm, symmetric_eigen, Kernel};
use crate::matrix::Matrix;

/// Tolerance on input symmetry, skewness and trace, relative to `max(1, ‖A‖∞)`.
const INPUT_TOL: f64 = 1e-9;
/// Singular values below this fraction of `‖A‖∞` count as zero blocks.
const ZERO_BLOCK_TOL: f64 = 1e-10;
const TWO_SYMMETRIC_RETRIES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// `B` symmetric, `C` skew-symmetric.
    SymmetricSkew,
    /// `B` and `C` both symmetric.
    SymmetricSymmetric,
}

#[derive(Clone, Debug)]
pub struct CommutatorPair {
    pub b: Matrix<f64>,
    pub c: Matrix<f64>,
    pub kind: PairKind,
}

impl CommutatorPair {
    /// `‖[B, C] − A‖∞`.
    pub fn residual(&self, a: &Matrix<f64>) -> f64 {
        (&self.b.commutator(&self.c) - a).norm_inf()
    }
}

fn tol(a: &Matrix<f64>) -> f64 {
    INPUT_TOL * a.norm_inf().max(1.0)
}

/// Writes a trace-zero symmetric matrix as `[B, C]` with `B` symmetric and `C` skew.
///
/// Works by induction on `n`: a unit vector `v` with `vᵗAv = 0` is built from
/// eigenvectors of a positive and a negative eigenvalue, `v` is completed to an
/// orthogonal `P`, and the trailing block of `PᵗAP` is decomposed recursively.
pub fn sym_traceless_to_commutator(a: &Matrix<f64>) -> Result<CommutatorPair> {
    let t = tol(a);
    if (a - &a.transpose()).norm_inf() > t {
        return Err(Error::Precondition("input is not symmetric".into()));
    }
    if a.trace().abs() > t * a.n() as f64 {
        return Err(Error::Precondition(format!(
            "trace {} is not zero",
            a.trace()
        )));
    }
    let sym = Matrix::from_fn(a.n(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let zero_tol = ZERO_BLOCK_TOL * a.norm_inf();
    let (b, c) = comm_recursive(&sym, zero_tol)?;
    Ok(CommutatorPair {
        b: symmetrize(&b),
        c: antisymmetrize(&c),
        kind: PairKind::SymmetricSkew,
    })
}

fn comm_recursive(a: &Matrix<f64>, zero_tol: f64) -> Result<(Matrix<f64>, Matrix<f64>)> {
    let n = a.n();
    if a.norm_inf() <= zero_tol {
        return Ok((Matrix::zeros(n), Matrix::zeros(n)));
    }
    if n == 1 {
        return Err(Error::Precondition(
            "a nonzero 1×1 matrix cannot have trace zero".into(),
        ));
    }

    let eig = symmetric_eigen(a);
    let (lambda_pos, lambda_neg) = (eig.values[0], eig.values[n - 1]);
    if lambda_pos <= 0.0 || lambda_neg >= 0.0 {
        return Err(Error::Precondition(
            "trace-zero symmetric input must have eigenvalues of both signs".into(),
        ));
    }
    let (u_pos, u_neg) = (eig.column(0), eig.column(n - 1));
    // vᵗAv = (-λ₋)λ₊ + λ₊λ₋ = 0
    let mut v: Vec<f64> = u_pos
        .iter()
        .zip(&u_neg)
        .map(|(p, m)| (-lambda_neg).sqrt() * p + lambda_pos.sqrt() * m)
        .collect();
    let len = norm(&v);
    v.iter_mut().for_each(|x| *x /= len);

    let p = complete_orthonormal(&[v], n);
    let rotated = &(&p.transpose() * a) * &p;
    let u: Vec<f64> = (1..n).map(|i| rotated[(i, 0)]).collect();
    let a0 = Matrix::from_fn(n - 1, |i, j| {
        0.5 * (rotated[(i + 1, j + 1)] + rotated[(j + 1, i + 1)])
    });

    let (b0, c0) = comm_recursive(&a0, zero_tol)?;
    // shift by σ = 1 + (bound on the spectral radius) so that B0 is invertible
    let radius = (0..n - 1)
        .map(|i| b0.row(i).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let b0 = &b0 + &Matrix::scalar(n - 1, 1.0 + radius);
    let b0_inv = b0.inverse()?;
    let w: Vec<f64> = (0..n - 1)
        .map(|i| (0..n - 1).map(|k| b0_inv[(i, k)] * u[k]).sum())
        .collect();

    let mut b1 = Matrix::zeros(n);
    let mut c1 = Matrix::zeros(n);
    for i in 0..n - 1 {
        c1[(i + 1, 0)] = w[i];
        c1[(0, i + 1)] = -w[i];
        for j in 0..n - 1 {
            b1[(i + 1, j + 1)] = b0[(i, j)];
            c1[(i + 1, j + 1)] = c0[(i, j)];
        }
    }
    let pt = p.transpose();
    Ok((&(&p * &b1) * &pt, &(&p * &c1) * &pt))
}

/// Orthogonal block form `PᵗAP = ⊕ [[0, λᵢ], [-λᵢ, 0]] ⊕ 0` of a real skew matrix,
/// with `λ₁ ≥ λ₂ ≥ … > 0`.
#[derive(Clone, Debug)]
pub struct SkewCanonicalForm {
    pub p: Matrix<f64>,
    pub lambdas: Vec<f64>,
}

pub fn skew_canonical_form(a: &Matrix<f64>) -> Result<SkewCanonicalForm> {
    if (a + &a.transpose()).norm_inf() > tol(a) {
        return Err(Error::Precondition("input is not skew-symmetric".into()));
    }
    let skew = antisymmetrize(a);
    let zero_tol = ZERO_BLOCK_TOL * a.norm_inf();
    let mut lambdas = Vec::new();
    let p = skew_blocks(&skew, zero_tol, &mut lambdas);
    Ok(SkewCanonicalForm { p, lambdas })
}

fn skew_blocks(a: &Matrix<f64>, zero_tol: f64, lambdas: &mut Vec<f64>) -> Matrix<f64> {
    let n = a.n();
    if n < 2 {
        return Matrix::identity(n);
    }
    // AᵗA is symmetric with eigenvalues λᵢ², each of even multiplicity
    let ata = &a.transpose() * a;
    let eig = symmetric_eigen(&ata);
    let p_vec = eig.column(0);
    let ap: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|k| a[(i, k)] * p_vec[k]).sum())
        .collect();
    let lambda = norm(&ap);
    if lambda <= zero_tol {
        return Matrix::identity(n);
    }
    // q = Aᵗp / λ gives pᵗAq = λ and qᵗAp = -λ
    let q_vec: Vec<f64> = ap.iter().map(|x| -x / lambda).collect();
    lambdas.push(lambda);

    let frame = complete_orthonormal(&[p_vec, q_vec], n);
    let rotated = &(&frame.transpose() * a) * &frame;
    let rest = Matrix::from_fn(n - 2, |i, j| {
        0.5 * (rotated[(i + 2, j + 2)] - rotated[(j + 2, i + 2)])
    });
    let inner = skew_blocks(&rest, zero_tol, lambdas);
    // P = frame · (I₂ ⊕ inner)
    let mut lift = Matrix::identity(n);
    for i in 0..n - 2 {
        for j in 0..n - 2 {
            lift[(i + 2, j + 2)] = inner[(i, j)];
        }
    }
    &frame * &lift
}

/// Writes a real skew-symmetric matrix as `[B, C]` with `B`, `C` symmetric:
/// `B = P D Pᵗ`, `C = P S Pᵗ` where `D = ½ ⊕ diag(λᵢ, −λᵢ) ⊕ 0` and
/// `S = ⊕ antidiag(1, 1) ⊕ 0`.
pub fn skew_to_sym_commutator(a: &Matrix<f64>) -> Result<CommutatorPair> {
    let form = skew_canonical_form(a)?;
    let n = a.n();
    let mut d = Matrix::zeros(n);
    let mut s = Matrix::zeros(n);
    for (k, &lambda) in form.lambdas.iter().enumerate() {
        let (i, j) = (2 * k, 2 * k + 1);
        d[(i, i)] = 0.5 * lambda;
        d[(j, j)] = -0.5 * lambda;
        s[(i, j)] = 1.0;
        s[(j, i)] = 1.0;
    }
    let pt = form.p.transpose();
    Ok(CommutatorPair {
        b: symmetrize(&(&(&form.p * &d) * &pt)),
        c: symmetrize(&(&(&form.p * &s) * &pt)),
        kind: PairKind::SymmetricSymmetric,
    })
}

/// Factors `A = S1 · S2` with both factors symmetric.
///
/// Solves `S A = Aᵗ S`, `S = Sᵗ`, draws seeded random combinations of the
/// solution basis until `S` is invertible, and returns `(S⁻¹, S A)`.
pub fn two_symmetric_factors<T: Kernel>(a: &Matrix<T>, seed: u64) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = a.n();
    // unknowns: S_ij for i <= j
    let index = |i: usize, j: usize| -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + j
    };
    let unknowns = n * (n + 1) / 2;
    let mut rows = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            // (S A)_rc - (Aᵗ S)_rc = Σ_k S_rk A_kc - A_kr S_kc
            let mut row = vec![T::zero(); unknowns];
            for k in 0..n {
                let at = index(r, k);
                row[at] = row[at].clone() + a[(k, c)].clone();
                let at = index(k, c);
                row[at] = row[at].clone() - a[(k, r)].clone();
            }
            rows.push(row);
        }
    }
    let basis = T::kernel(&rows, unknowns);
    if basis.is_empty() {
        return Err(Error::RetryExhausted {
            attempts: 0,
            solution_dim: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..TWO_SYMMETRIC_RETRIES {
        let weights: Vec<T> = basis
            .iter()
            .enumerate()
            .map(|(k, _)| {
                if attempt == 0 && basis.len() == 1 {
                    T::one()
                } else {
                    let w = rng.gen_range(-1000i64..=1000);
                    let _ = k;
                    T::from_i64(w)
                }
            })
            .collect();
        let mut coeffs = vec![T::zero(); unknowns];
        for (w, v) in weights.iter().zip(&basis) {
            for (c, x) in coeffs.iter_mut().zip(v) {
                *c = c.clone() + w.clone() * x.clone();
            }
        }
        let s = Matrix::from_fn(n, |i, j| coeffs[index(i, j)].clone());
        let Ok(s_inv) = s.inverse() else {
            continue;
        };
        if !T::EXACT && s_inv.norm_inf() * s.norm_inf() > 1e8 {
            continue;
        }
        let s2 = &s * a;
        if T::EXACT {
            return Ok((s_inv, s2));
        }
        let s1 = Matrix::from_fn(n, |i, j| {
            (s_inv[(i, j)].clone() + s_inv[(j, i)].clone()) / T::from_i64(2)
        });
        let s2 = Matrix::from_fn(n, |i, j| {
            (s2[(i, j)].clone() + s2[(j, i)].clone()) / T::from_i64(2)
        });
        return Ok((s1, s2));
    }
    Err(Error::RetryExhausted {
        attempts: TWO_SYMMETRIC_RETRIES,
        solution_dim: basis.len(),
    })
}

fn symmetrize(m: &Matrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(m.n(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

fn antisymmetrize(m: &Matrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(m.n(), |i, j| 0.5 * (m[(i, j)] - m[(j, i)]))
}
