//! Cyclic Jacobi eigen-solver for real symmetric matrices and orthonormal
//! basis completion.

use crate::matrix::Matrix;

/// Off-diagonal Frobenius norm below which the sweep stops, relative to `‖A‖_F`.
const OFF_DIAGONAL_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a symmetric matrix: `A = V · diag(values) · Vᵗ`.
/// Eigenvalues are sorted in descending order; `vectors` holds them as columns.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
}

impl SymmetricEigen {
    pub fn column(&self, k: usize) -> Vec<f64> {
        let n = self.vectors.n();
        (0..n).map(|i| self.vectors[(i, k)]).collect()
    }
}

pub fn symmetric_eigen(a: &Matrix<f64>) -> SymmetricEigen {
    let n = a.n();
    let mut m = a.clone();
    // symmetrize away rounding noise in the input
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let mut v = Matrix::<f64>::identity(n);
    let frob = m.entries().iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOL * frob.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&k| m[(k, k)]).collect();
    let vectors = Matrix::from_fn(n, |i, k| v[(i, order[k])]);
    SymmetricEigen { values, vectors }
}

/// Applies the Jacobi rotation `Jᵗ M J` in the `(p, q)` plane and accumulates `V J`.
fn rotate(m: &mut Matrix<f64>, v: &mut Matrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    let n = m.n();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Extends orthonormal `columns` to an orthogonal `n × n` matrix whose leading
/// columns are `columns`, using pivoted Gram-Schmidt over the standard basis.
pub fn complete_orthonormal(columns: &[Vec<f64>], n: usize) -> Matrix<f64> {
    let mut basis: Vec<Vec<f64>> = columns.to_vec();
    let mut candidates: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();
    while basis.len() < n {
        // orthogonalize every remaining candidate, keep the largest residual
        let residuals: Vec<Vec<f64>> = candidates
            .iter()
            .map(|c| {
                let mut r = c.clone();
                for _ in 0..2 {
                    for b in &basis {
                        let d = dot(&r, b);
                        for (x, y) in r.iter_mut().zip(b) {
                            *x -= d * y;
                        }
                    }
                }
                r
            })
            .collect();
        let (best, _) = residuals
            .iter()
            .enumerate()
            .map(|(k, r)| (k, norm(r)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("candidates remain while the basis is incomplete");
        let r = residuals[best].clone();
        let len = norm(&r);
        basis.push(r.into_iter().map(|x| x / len).collect());
        candidates.swap_remove(best);
    }
    Matrix::from_fn(n, |i, k| basis[k][i])
}

/// Orthonormal basis of the numerical kernel of `rows` (each of length `ncols`):
/// right singular vectors whose singular value is below `1e-7 · σ_max`.
pub fn real_nullspace(rows: &[Vec<f64>], ncols: usize) -> Vec<Vec<f64>> {
    let gram = Matrix::from_fn(ncols, |i, j| rows.iter().map(|r| r[i] * r[j]).sum());
    let eig = symmetric_eigen(&gram);
    let top = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let cutoff = (1e-7 * top.sqrt()).powi(2).max(1e-300);
    (0..ncols)
        .filter(|&k| eig.values[k] <= cutoff)
        .map(|k| eig.column(k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(e: &SymmetricEigen) -> Matrix<f64> {
        let n = e.vectors.n();
        let d = Matrix::from_fn(n, |i, j| if i == j { e.values[i] } else { 0.0 });
        &(&e.vectors * &d) * &e.vectors.transpose()
    }

    #[test]
    fn diagonal_input() {
        let a = Matrix::from_fn(3, |i, j| if i == j { [2.0, -1.0, 5.0][i] } else { 0.0 });
        let e = symmetric_eigen(&a);
        assert_eq!(e.values, vec![5.0, 2.0, -1.0]);
    }

    #[test]
    fn known_spectrum() {
        // eigenvalues of [[2,1],[1,2]] are 3 and 1
        let a = Matrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let e = symmetric_eigen(&a);
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
        assert!(reconstruct(&e).approx_eq(&a));
    }

    #[test]
    fn random_reconstruction_and_orthogonality() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for n in 1..=8 {
            let raw = Matrix::from_fn(n, |_, _| next());
            let a = &raw + &raw.transpose();
            let e = symmetric_eigen(&a);
            assert!(reconstruct(&e).approx_eq(&a));
            let vtv = &e.vectors.transpose() * &e.vectors;
            assert!(vtv.approx_eq(&Matrix::identity(n)));
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn completion_is_orthogonal_with_given_first_column() {
        let v = vec![0.6, 0.0, -0.8];
        let p = complete_orthonormal(std::slice::from_ref(&v), 3);
        assert!((&p.transpose() * &p).approx_eq(&Matrix::identity(3)));
        for i in 0..3 {
            assert_eq!(p[(i, 0)], v[i]);
        }
    }

    #[test]
    fn nullspace_of_rank_deficient_system() {
        let rows = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]];
        let ns = real_nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&rows[0], v).abs() < 1e-12);
        }
    }
}
