#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use starimage::matrix::Scalar;
use starimage::{Matrix, StarPolynomial, Variable, Q};

pub fn poly(text: &str) -> StarPolynomial {
    text.parse().unwrap()
}

/// The eight example polynomials, one per image class on `M_2` with transpose.
pub fn corpus() -> Vec<StarPolynomial> {
    let s4 = StarPolynomial::standard(&(1..=4).map(Variable::y).collect::<Vec<_>>()).unwrap();
    let mut out = vec![s4];
    for text in [
        "[y1,y2]",
        "[y1,y2][y3,y4]",
        "[y1,y2,y3]",
        "[y1,y2,y3][y4,y5,y6]",
        "[y1y2,y3y4]",
        "y1",
        "y1y2",
    ] {
        out.push(poly(text));
    }
    out
}

/// A random multilinear polynomial with `sym` symmetric and `skew` skew
/// variables, 1 to 4 distinct words and small nonzero coefficients.
pub fn random_poly_with(rng: &mut impl Rng, sym: u32, skew: u32) -> StarPolynomial {
    let vars: Vec<Variable> = (1..=sym)
        .map(Variable::y)
        .chain((1..=skew).map(Variable::z))
        .collect();
    let terms = rng.gen_range(1..=4);
    let mut words = Vec::new();
    for _ in 0..terms {
        let mut w = vars.clone();
        w.shuffle(rng);
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3i64..=3);
        }
        words.push((w, Q::from_i64(c)));
    }
    StarPolynomial::from_terms(words, vars).unwrap()
}

/// Degree at most `max_degree` with at least one variable of each kind.
pub fn random_mixed_poly(rng: &mut impl Rng, max_degree: u32) -> StarPolynomial {
    let degree = rng.gen_range(2..=max_degree);
    let skew = rng.gen_range(1..degree);
    random_poly_with(rng, degree - skew, skew)
}

pub fn random_real(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    Matrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
}

pub fn random_symmetric_traceless(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let a = random_real(rng, n);
    let s = Matrix::from_fn(n, |i, j| a[(i, j)] + a[(j, i)]);
    let shift = s.trace() / n as f64;
    &s - &Matrix::scalar(n, shift)
}

pub fn random_skew(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let a = random_real(rng, n);
    Matrix::from_fn(n, |i, j| a[(i, j)] - a[(j, i)])
}

pub fn random_integer(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix<Q> {
    Matrix::from_fn(n, |_, _| Q::from_i64(rng.gen_range(-bound..=bound)))
}

/// A random rotation or reflection of the plane.
pub fn random_orthogonal_2(rng: &mut impl Rng) -> Matrix<f64> {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (c, s) = (t.cos(), t.sin());
    if rng.gen_bool(0.5) {
        Matrix::from_fn(2, |i, j| [[c, -s], [s, c]][i][j])
    } else {
        Matrix::from_fn(2, |i, j| [[c, s], [s, -c]][i][j])
    }
}

/// Rational rotations and reflections from Pythagorean triples.
pub fn rational_orthogonal_2(rng: &mut impl Rng) -> Matrix<Q> {
    let (a, b, c) = *[(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (1, 0, 1)]
        .choose(rng)
        .unwrap();
    let (x, y) = (Q::from_ratio(a, c), Q::from_ratio(b, c));
    let rows = if rng.gen_bool(0.5) {
        vec![vec![x.clone(), -y.clone()], vec![y, x]]
    } else {
        vec![vec![x.clone(), y.clone()], vec![y, -x]]
    };
    Matrix::from_rows(rows).unwrap()
}

/// Random `n×n` orthogonal matrix from Gram-Schmidt on a random matrix.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    starimage::linalg::complete_orthonormal(&cols, n)
}
