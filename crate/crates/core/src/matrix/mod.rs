//! Square matrices over a [`Scalar`] backend, involutions and the fixed bases
//! used throughout the crate.

mod involution;
mod scalar;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use involution::{InvolutionCtx, InvolutionKind};
pub use scalar::{parse_rational, Scalar, Q, REAL_TOL};

/// Dense square matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, c: T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Builds a matrix from small integers; panics unless the rows form a square.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| {
            assert_eq!(rows[i].len(), n, "matrix literal must be square");
            T::from_i64(rows[i][j])
        })
    }

    /// Unit matrix `E_ij` (zero-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = T::one();
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn from_entries(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n);
        Matrix { n, data }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Exact zero test, or `‖self‖∞ <= REAL_TOL` on the real backend.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_negligible(1.0))
    }

    /// Largest absolute entry.
    pub fn norm_inf(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Equality up to `REAL_TOL * max(1, ‖self‖∞, ‖other‖∞)`; exact on the rational backend.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        if T::EXACT {
            return self == other;
        }
        let scale = self.norm_inf().max(other.norm_inf());
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(scale))
    }

    /// `Some(c)` when the matrix equals `c·I` (within tolerance on the real backend).
    pub fn as_scalar(&self) -> Option<T> {
        let c = self[(0, 0)].clone();
        let candidate = Self::scalar(self.n, c.clone());
        self.approx_eq(&candidate).then_some(c)
    }

    pub fn is_symmetric(&self) -> bool {
        self.approx_eq(&self.transpose())
    }

    pub fn is_skew(&self) -> bool {
        self.approx_eq(&-self.transpose())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.n), |acc, _| &acc * self)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let scale = self.norm_inf();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| {
                    a[(r, col)]
                        .abs()
                        .partial_cmp(&a[(s, col)].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty pivot range");
            let p = a[(pivot, col)].clone();
            if p.is_zero() || (!T::EXACT && p.to_f64().abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE)) {
                return Err(Error::Singular);
            }
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let t = factor.clone() * a[(col, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - t;
                    let t = factor.clone() * inv[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - t;
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> T {
        let n = self.n;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| {
                    a[(r, col)]
                        .abs()
                        .partial_cmp(&a[(s, col)].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty pivot range");
            if a[(pivot, col)].is_zero() {
                return T::zero();
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det * p.clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone() / p.clone();
                for j in col..n {
                    let t = factor.clone() * a[(col, j)].clone();
                    a[(r, j)] = a[(r, j)].clone() - t;
                }
            }
        }
        det
    }

    /// `P⁻¹ A P`.
    pub fn conjugate(&self, p: &Self) -> Result<Self> {
        check_dims(self, p)?;
        let p_inv = p.inverse()?;
        Ok(&(&p_inv * self) * p)
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        if r == s {
            return;
        }
        for j in 0..self.n {
            self.data.swap(r * self.n + j, s * self.n + j);
        }
    }

    /// Converts entries into another backend through `f64` or exact rationals.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_real(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    /// Matrix JSON: `{"n": n, "entries": [[...], ...]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.n)
            .map(|i| Value::Array(self.row(i).iter().map(Scalar::to_json).collect()))
            .collect();
        json!({ "n": self.n, "entries": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("matrix JSON needs an `entries` array".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Input("matrix rows must be arrays".into()))?
                    .iter()
                    .map(T::from_json)
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Self::from_rows(parsed)?;
        if let Some(n) = v.get("n") {
            let n = n
                .as_u64()
                .ok_or_else(|| Error::Input("`n` must be a non-negative integer".into()))?;
            if n as usize != m.n {
                return Err(Error::DimensionMismatch {
                    expected: n as usize,
                    found: m.n,
                });
            }
        }
        if m.n == 0 {
            return Err(Error::Input("matrix must be non-empty".into()));
        }
        Ok(m)
    }
}

impl Matrix<Q> {
    pub fn from_real(m: &Matrix<f64>) -> Option<Self> {
        let data = m
            .data
            .iter()
            .map(|&x| Q::from_float(x))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: m.n, data })
    }
}

pub(crate) fn check_dims<T>(a: &Matrix<T>, b: &Matrix<T>) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(())
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "dimension mismatch in addition");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "dimension mismatch in subtraction");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.n, rhs.n, "dimension mismatch in product");
        let n = self.n;
        let mut out = Matrix::<T>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl<T: Scalar> $tr for Matrix<T> {
            type Output = Matrix<T>;
            fn $f(self, rhs: Matrix<T>) -> Matrix<T> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The basis `(I, E, e1, e2)` of `M_2`: `e1 = diag(1,-1)`, `e2 = antidiag(1,1)`, `E = e1·e2`.
pub fn basis_m2<T: Scalar>() -> [Matrix<T>; 4] {
    let e1 = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
    let e2 = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
    let e = &e1 * &e2;
    [Matrix::identity(2), e, e1, e2]
}

/// Generators of `K1 ⊂ M_4` for `(a,b,c) = (1,0,0), (0,1,0), (0,0,1)`.
pub fn basis_k1_m4<T: Scalar>() -> [Matrix<T>; 3] {
    [(1, 0, 0), (0, 1, 0), (0, 0, 1)].map(|(a, b, c)| {
        Matrix::from_i64(&[
            &[0, a, b, c],
            &[-a, 0, c, -b],
            &[-b, -c, 0, a],
            &[-c, b, -a, 0],
        ])
    })
}

/// Generators of `K2 ⊂ M_4` for `(a,b,c) = (1,0,0), (0,1,0), (0,0,1)`.
pub fn basis_k2_m4<T: Scalar>() -> [Matrix<T>; 3] {
    [(1, 0, 0), (0, 1, 0), (0, 0, 1)].map(|(a, b, c)| {
        Matrix::from_i64(&[
            &[0, a, b, c],
            &[-a, 0, -c, b],
            &[-b, c, 0, -a],
            &[-c, -b, a, 0],
        ])
    })
}

/// Unit matrix `E_ij` with one-based indices.
pub fn basis_unit<T: Scalar>(n: usize, i: usize, j: usize) -> Matrix<T> {
    assert!((1..=n).contains(&i) && (1..=n).contains(&j), "index out of range");
    Matrix::unit(n, i - 1, j - 1)
}

/// Skew basis `{E_ij - E_ji : i < j}` for the transpose involution.
pub fn skew_basis_transpose<T: Scalar>(n: usize) -> Vec<Matrix<T>> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(&Matrix::unit(n, i, j) - &Matrix::unit(n, j, i));
        }
    }
    out
}

/// Symmetric basis `{E_ii} ∪ {E_ij + E_ji : i < j}` for the transpose involution.
pub fn sym_basis_transpose<T: Scalar>(n: usize) -> Vec<Matrix<T>> {
    let mut out: Vec<Matrix<T>> = (0..n).map(|i| Matrix::unit(n, i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(&Matrix::unit(n, i, j) + &Matrix::unit(n, j, i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    #[test]
    fn named_basis_matrices() {
        let [i, e, e1, e2] = basis_m2::<Q>();
        assert_eq!(i, Matrix::identity(2));
        assert_eq!(e, q(&[&[0, 1], &[-1, 0]]));
        assert_eq!(e1, q(&[&[1, 0], &[0, -1]]));
        assert_eq!(e2, q(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn k_generators() {
        let k1 = &basis_k1_m4::<Q>()[0];
        let mut want = Matrix::<Q>::zeros(4);
        for (i, j, v) in [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)] {
            want[(i, j)] = Q::from_i64(v);
        }
        assert_eq!(k1, &want);
        let k2 = &basis_k2_m4::<Q>()[0];
        let mut want = Matrix::<Q>::zeros(4);
        for (i, j, v) in [(0, 1, 1), (1, 0, -1), (2, 3, -1), (3, 2, 1)] {
            want[(i, j)] = Q::from_i64(v);
        }
        assert_eq!(k2, &want);
        for m in basis_k1_m4::<Q>().iter().chain(basis_k2_m4::<Q>().iter()) {
            assert!(m.is_skew());
        }
    }

    #[test]
    fn commutator_trace_and_conjugation() {
        let [i, e, e1, e2] = basis_m2::<Q>();
        assert_eq!(e1.commutator(&e2), e.scale(&Q::from_i64(2)));
        assert_eq!(e1.commutator(&e1), Matrix::zeros(2));
        assert_eq!(e1.conjugate(&e2).unwrap(), -&e1);
        assert_eq!(e1.conjugate(&i).unwrap(), e1);
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = q(&[&[0, 5], &[-1, 7]]);
        assert!(a.commutator(&b).trace().is_zero());
    }

    #[test]
    fn singular_conjugator_is_rejected() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let p = q(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.conjugate(&p), Err(Error::Singular)));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert_eq!(a.determinant(), Q::from_i64(18));
        let r = a.to_real();
        let rinv = r.inverse().unwrap();
        assert!((&r * &rinv).approx_eq(&Matrix::identity(3)));
    }

    #[test]
    fn json_round_trip_exact_and_real() {
        let a = Matrix::<Q>::from_rows(vec![
            vec![Q::from_ratio(1, 2), Q::from_i64(-3)],
            vec![Q::from_i64(0), Q::from_ratio(7, 3)],
        ])
        .unwrap();
        let v = a.to_json();
        assert_eq!(v["entries"][0][0], "1/2");
        assert_eq!(Matrix::<Q>::from_json(&v).unwrap(), a);

        let r: Matrix<f64> =
            Matrix::from_json(&serde_json::json!({"n": 2, "entries": [[0, 1], [-1, 0.5]]})).unwrap();
        assert_eq!(r[(1, 1)], 0.5);
        assert!(Matrix::<f64>::from_json(&serde_json::json!({"n": 3, "entries": [[0, 1], [-1, 0]]})).is_err());
        assert!(Matrix::<f64>::from_json(&serde_json::json!({"entries": [[0, 1]]})).is_err());
    }
}
