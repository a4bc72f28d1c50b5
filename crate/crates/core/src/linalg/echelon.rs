use num::{One, Zero};

use crate::matrix::{Matrix, Q};

/// Brings `rows` to reduced row-echelon form over `Q`, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(&mut reduced);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A subspace of `M_n` held as the reduced row-echelon basis of its coordinate
/// vectors in the row-major unit-matrix basis `{E_11, E_12, ..., E_nn}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    n: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(n: usize) -> Self {
        SubspaceBasis {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::span(n, (0..n * n).map(|k| Matrix::unit(n, k / n, k % n)))
    }

    pub fn span<'a, I, M>(n: usize, matrices: I) -> Self
    where
        I: IntoIterator<Item = M>,
        M: std::borrow::Borrow<Matrix<Q>> + 'a,
    {
        let mut s = Self::zero(n);
        for m in matrices {
            s.insert(m.borrow());
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn coords(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Basis matrices, one per echelon row.
    pub fn matrices(&self) -> Vec<Matrix<Q>> {
        self.rows
            .iter()
            .map(|r| Matrix::from_entries(self.n, r.clone()))
            .collect()
    }

    fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }

    pub fn contains(&self, m: &Matrix<Q>) -> bool {
        assert_eq!(m.n(), self.n, "dimension mismatch");
        let mut v = m.entries().to_vec();
        self.reduce(&mut v);
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.matrices().iter().all(|m| self.contains(m))
    }

    /// Adds `m` to the span; returns `true` when the dimension grew.
    pub fn insert(&mut self, m: &Matrix<Q>) -> bool {
        assert_eq!(m.n(), self.n, "dimension mismatch");
        let mut v = m.entries().to_vec();
        self.reduce(&mut v);
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[col].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&v) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < col);
        self.pivots.insert(at, col);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut s = self.clone();
        for m in other.matrices() {
            s.insert(&m);
        }
        s
    }

    /// Coordinates of `m` in the echelon basis, or `None` when `m` is outside.
    pub fn coordinates_of(&self, m: &Matrix<Q>) -> Option<Vec<Q>> {
        if !self.contains(m) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| m.entries()[p].clone()).collect())
    }

    pub fn to_real_matrices(&self) -> Vec<Matrix<f64>> {
        self.matrices().iter().map(Matrix::to_real).collect()
    }
}

/// Solves `Σ c_i · basis_i = target` exactly; `None` when no solution exists.
/// The basis must be linearly independent.
pub fn solve_in_basis(basis: &[Matrix<Q>], target: &Matrix<Q>) -> Option<Vec<Q>> {
    let k = basis.len();
    let len = target.entries().len();
    // augmented system: one row per matrix entry
    let mut rows: Vec<Vec<Q>> = (0..len)
        .map(|e| {
            basis
                .iter()
                .map(|b| b.entries()[e].clone())
                .chain(std::iter::once(target.entries()[e].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some(rows.iter().take(k).map(|r| r[k].clone()).collect())
}
