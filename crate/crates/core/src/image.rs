//! Evaluation of multilinear *-polynomials and classification of their images.
//!
//! By multilinearity the linear span of the image of `f` is spanned by the
//! values of `f` on tuples of basis elements, so every span here is computed by
//! enumerating basis tuples with exact rational arithmetic.
//!
//! On `M_2` the basis `{I, E, e1, e2}` is closed under multiplication up to
//! sign, so each word evaluates to `±` a basis element. The fast path
//! tabulates that signed product and accumulates integer coefficients.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SubspaceBasis;
use crate::matrix::{basis_m2, InvolutionCtx, InvolutionKind, Matrix, Scalar, Q};
use crate::star_poly::{StarPolynomial, Variable};

/// Evaluates `p` with the given values; symmetric variables need symmetric
/// values and skew variables skew values for `ctx`.
pub fn evaluate<T: Scalar>(
    p: &StarPolynomial,
    assign: &BTreeMap<Variable, Matrix<T>>,
    ctx: &InvolutionCtx,
) -> Result<Matrix<T>> {
    for v in p.variables() {
        let value = assign.get(&v).ok_or(Error::MissingVariable(v))?;
        if value.n() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                found: value.n(),
            });
        }
        if v.is_skew() {
            if !ctx.is_skew(value)? {
                return Err(Error::WrongSymmetryType {
                    var: v,
                    expected: "skew-symmetric",
                });
            }
        } else if !ctx.is_symmetric(value)? {
            return Err(Error::WrongSymmetryType {
                var: v,
                expected: "symmetric",
            });
        }
    }
    Ok(evaluate_unchecked(p, |v| &assign[&v], ctx.n()))
}

/// Evaluates `p` on values listed in the order of `p.variables()`.
pub fn evaluate_tuple<T: Scalar>(
    p: &StarPolynomial,
    values: &[Matrix<T>],
    ctx: &InvolutionCtx,
) -> Result<Matrix<T>> {
    let vars: Vec<Variable> = p.variables().collect();
    if vars.len() != values.len() {
        return Err(Error::Input(format!(
            "expected {} values for {}, got {}",
            vars.len(),
            p,
            values.len()
        )));
    }
    let assign = vars.into_iter().zip(values.iter().cloned()).collect();
    evaluate(p, &assign, ctx)
}

fn evaluate_unchecked<'a, T: Scalar>(
    p: &StarPolynomial,
    value: impl Fn(Variable) -> &'a Matrix<T>,
    n: usize,
) -> Matrix<T> {
    let mut acc = Matrix::zeros(n);
    for (word, c) in p.terms() {
        let mut prod = value(word[0]).clone();
        for v in &word[1..] {
            prod = &prod * value(*v);
        }
        acc = &acc + &prod.scale(&T::from_q(c));
    }
    acc
}

// ---------------------------------------------------------------------------
// spans

/// Signed element `±B_k` of the basis `(I, E, e1, e2)`: bits 0..2 hold `k`,
/// bit 2 the sign.
type Signed = u8;

struct SignedTable {
    mul: [[Signed; 8]; 8],
}

impl SignedTable {
    fn new() -> Self {
        let basis = basis_m2::<Q>();
        let element = |s: Signed| -> Matrix<Q> {
            let m = basis[(s & 3) as usize].clone();
            if s & 4 != 0 {
                -m
            } else {
                m
            }
        };
        let mut mul = [[0; 8]; 8];
        for a in 0..8u8 {
            for b in 0..8u8 {
                let prod = &element(a) * &element(b);
                mul[a as usize][b as usize] = (0..8u8)
                    .find(|&s| element(s) == prod)
                    .expect("the signed basis is closed under multiplication");
            }
        }
        SignedTable { mul }
    }
}

const I_: Signed = 0;
const E_: Signed = 1;
const E1_: Signed = 2;
const E2_: Signed = 3;

/// Words as slot positions, with coefficients scaled to a common denominator.
struct CompiledPoly {
    words: Vec<Vec<usize>>,
    small: Option<Vec<i128>>,
    big: Vec<BigInt>,
}

impl CompiledPoly {
    fn new(p: &StarPolynomial) -> Self {
        let vars: Vec<Variable> = p.variables().collect();
        let slot = |v: &Variable| vars.iter().position(|w| w == v).expect("known variable");
        let mut words = Vec::new();
        let mut coeffs = Vec::new();
        for (word, c) in p.terms() {
            words.push(word.iter().map(slot).collect());
            coeffs.push(c.clone());
        }
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let big: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let small = big
            .iter()
            .map(|b| b.to_i64().map(i128::from))
            .collect::<Option<Vec<_>>>();
        CompiledPoly { words, small, big }
    }
}

/// Span of `p` on `M_2` with each slot ranging over a list of signed basis elements.
fn fast_span_m2(p: &StarPolynomial, sym: &[Signed], skew: &[Signed]) -> SubspaceBasis {
    let table = SignedTable::new();
    let compiled = CompiledPoly::new(p);
    let choices: Vec<&[Signed]> = p
        .variables()
        .map(|v| if v.is_skew() { skew } else { sym })
        .collect();
    let basis = basis_m2::<Q>();
    let mut span = SubspaceBasis::zero(2);
    if compiled.words.is_empty() || choices.iter().any(|c| c.is_empty()) {
        return span;
    }
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut counters = vec![0usize; choices.len()];
    let mut tuple: Vec<Signed> = choices.iter().map(|c| c[0]).collect();
    loop {
        let coords = evaluate_signed(&compiled, &table, &tuple);
        if coords.iter().any(|c| !c.is_zero()) && seen.insert(coords.clone()) {
            let m = coords
                .iter()
                .zip(&basis)
                .fold(Matrix::<Q>::zeros(2), |acc, (c, b)| {
                    &acc + &b.scale(&Q::from_integer(c.clone()))
                });
            span.insert(&m);
            if span.dim() == 4 {
                return span;
            }
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == counters.len() {
                return span;
            }
            counters[k] += 1;
            if counters[k] < choices[k].len() {
                tuple[k] = choices[k][counters[k]];
                break;
            }
            counters[k] = 0;
            tuple[k] = choices[k][0];
            k += 1;
        }
    }
}

fn evaluate_signed(compiled: &CompiledPoly, table: &SignedTable, tuple: &[Signed]) -> Vec<BigInt> {
    let product = |word: &[usize]| -> Signed {
        word.iter()
            .fold(I_, |acc, &slot| table.mul[acc as usize][tuple[slot] as usize])
    };
    match &compiled.small {
        Some(small) => {
            let mut acc = [0i128; 4];
            for (word, c) in compiled.words.iter().zip(small) {
                let s = product(word);
                if s & 4 == 0 {
                    acc[(s & 3) as usize] += c;
                } else {
                    acc[(s & 3) as usize] -= c;
                }
            }
            acc.iter().map(|&x| BigInt::from(x)).collect()
        }
        None => {
            let mut acc = vec![BigInt::zero(); 4];
            for (word, c) in compiled.words.iter().zip(&compiled.big) {
                let s = product(word);
                if s & 4 == 0 {
                    acc[(s & 3) as usize] += c;
                } else {
                    acc[(s & 3) as usize] -= c;
                }
            }
            acc
        }
    }
}

/// Span of the image of `p` on `M_2` with the transpose involution:
/// symmetric slots over `{I, e1, e2}`, skew slots over `{E}`.
pub fn image_span_transpose(p: &StarPolynomial) -> SubspaceBasis {
    fast_span_m2(p, &[I_, E1_, E2_], &[E_])
}

/// Span of the image of `p` on `M_2` with the symplectic involution:
/// symmetric slots over `{I}`, skew slots over `{e1, e2, E}`.
pub fn image_span_symplectic(p: &StarPolynomial) -> SubspaceBasis {
    fast_span_m2(p, &[I_], &[E1_, E2_, E_])
}

/// Span of the image of `p` on `M_n` for any involution, by evaluating on
/// tuples from the echelon bases of the symmetric and skew elements.
pub fn image_span_generic(p: &StarPolynomial, ctx: &InvolutionCtx) -> SubspaceBasis {
    let n = ctx.n();
    let (sym, skew) = (ctx.sym_basis(), ctx.skew_basis());
    let vars: Vec<Variable> = p.variables().collect();
    let choices: Vec<&[Matrix<Q>]> = vars
        .iter()
        .map(|v| if v.is_skew() { &skew[..] } else { &sym[..] })
        .collect();
    let mut span = SubspaceBasis::zero(n);
    if p.is_zero() || choices.iter().any(|c| c.is_empty()) {
        return span;
    }
    let mut counters = vec![0usize; vars.len()];
    loop {
        let value = evaluate_unchecked(
            p,
            |v| {
                let k = vars.iter().position(|w| *w == v).expect("known variable");
                &choices[k][counters[k]]
            },
            n,
        );
        span.insert(&value);
        if span.dim() == n * n {
            return span;
        }
        let mut k = 0;
        loop {
            if k == counters.len() {
                return span;
            }
            counters[k] += 1;
            if counters[k] < choices[k].len() {
                break;
            }
            counters[k] = 0;
            k += 1;
        }
    }
}

/// Span of the image of `p` under `ctx`, using the signed-basis table on `M_2`.
pub fn image_span(p: &StarPolynomial, ctx: &InvolutionCtx) -> SubspaceBasis {
    match (ctx.n(), ctx.kind()) {
        (2, InvolutionKind::Transpose) => image_span_transpose(p),
        (2, InvolutionKind::Symplectic) => image_span_symplectic(p),
        _ => image_span_generic(p, ctx),
    }
}

/// Whether `span` is closed under commutators with every skew element of `ctx`.
pub fn is_closed_under_skew(span: &SubspaceBasis, ctx: &InvolutionCtx) -> bool {
    let skew = ctx.skew_basis();
    span.matrices()
        .iter()
        .all(|x| skew.iter().all(|k| span.contains(&x.commutator(k))))
}

// ---------------------------------------------------------------------------
// image classes

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ImageClass {
    Zero,
    ScalarLine,
    SkewLine,
    TracelessSym2,
    ScalarPlusSkew,
    Sl2,
    Sym,
    ContainsBasis,
    Full,
}

impl ImageClass {
    pub fn name(self) -> &'static str {
        match self {
            ImageClass::Zero => "Zero",
            ImageClass::ScalarLine => "ScalarLine",
            ImageClass::SkewLine => "SkewLine",
            ImageClass::TracelessSym2 => "TracelessSym2",
            ImageClass::ScalarPlusSkew => "ScalarPlusSkew",
            ImageClass::Sl2 => "Sl2",
            ImageClass::Sym => "Sym",
            ImageClass::ContainsBasis => "ContainsBasis",
            ImageClass::Full => "Full",
        }
    }

    /// The image as a set, in the usual notation.
    pub fn description(self) -> &'static str {
        match self {
            ImageClass::Zero => "{0}",
            ImageClass::ScalarLine => "ℝ",
            ImageClass::SkewLine => "ℝ·E (skew-symmetric matrices)",
            ImageClass::TracelessSym2 => "traceless symmetric matrices",
            ImageClass::ScalarPlusSkew => "ℝ⊕ℝ·E",
            ImageClass::Sl2 => "sl₂ (trace-zero matrices)",
            ImageClass::Sym => "symmetric matrices",
            ImageClass::ContainsBasis => "contains a basis of M₂",
            ImageClass::Full => "M₂",
        }
    }
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn m2_span(indices: &[usize]) -> SubspaceBasis {
    let basis = basis_m2::<Q>();
    SubspaceBasis::span(2, indices.iter().map(|&k| &basis[k]))
}

/// Image of `p` on symmetric and skew-symmetric `2×2` real matrices.
pub fn classify_image_transpose(p: &StarPolynomial) -> Result<ImageClass> {
    let span = image_span_transpose(p);
    classify_transpose_span(&span)
}

fn classify_transpose_span(span: &SubspaceBasis) -> Result<ImageClass> {
    // basis indices: I = 0, E = 1, e1 = 2, e2 = 3
    let table: [(&[usize], ImageClass); 8] = [
        (&[], ImageClass::Zero),
        (&[0], ImageClass::ScalarLine),
        (&[1], ImageClass::SkewLine),
        (&[2, 3], ImageClass::TracelessSym2),
        (&[0, 1], ImageClass::ScalarPlusSkew),
        (&[1, 2, 3], ImageClass::Sl2),
        (&[0, 2, 3], ImageClass::Sym),
        (&[0, 1, 2, 3], ImageClass::ContainsBasis),
    ];
    table
        .iter()
        .find(|(idx, _)| m2_span(idx) == *span)
        .map(|(_, class)| *class)
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "span of dimension {} is not invariant under orthogonal conjugation",
                span.dim()
            ))
        })
}

/// Image of `p` on `M_2` with the symplectic involution.
pub fn classify_image_symplectic(p: &StarPolynomial) -> Result<ImageClass> {
    let span = image_span_symplectic(p);
    let table: [(&[usize], ImageClass); 4] = [
        (&[], ImageClass::Zero),
        (&[0], ImageClass::ScalarLine),
        (&[1, 2, 3], ImageClass::Sl2),
        (&[0, 1, 2, 3], ImageClass::Full),
    ];
    table
        .iter()
        .find(|(idx, _)| m2_span(idx) == span)
        .map(|(_, class)| *class)
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "span of dimension {} is not a Lie ideal of M₂",
                span.dim()
            ))
        })
}

pub fn classify_image(p: &StarPolynomial, ctx: &InvolutionCtx) -> Result<ImageClass> {
    if ctx.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: ctx.n(),
        });
    }
    match ctx.kind() {
        InvolutionKind::Transpose => classify_image_transpose(p),
        InvolutionKind::Symplectic => classify_image_symplectic(p),
    }
}

// ---------------------------------------------------------------------------
// span labels

/// The eight candidate spans `0, Z, K, Z+K, [S,K], S, [A,A], A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpanLabel {
    Zero,
    Z,
    K,
    ZplusK,
    SK,
    S,
    Comm,
    A,
}

impl SpanLabel {
    pub const ALL: [SpanLabel; 8] = [
        SpanLabel::Zero,
        SpanLabel::Z,
        SpanLabel::K,
        SpanLabel::ZplusK,
        SpanLabel::SK,
        SpanLabel::S,
        SpanLabel::Comm,
        SpanLabel::A,
    ];

    /// Resolution order when two labels name the same subspace, as for the
    /// symplectic involution on `M_2` where `K = [A,A]` and `S = Z`.
    const PREFERENCE: [SpanLabel; 8] = [
        SpanLabel::Zero,
        SpanLabel::Z,
        SpanLabel::Comm,
        SpanLabel::A,
        SpanLabel::K,
        SpanLabel::ZplusK,
        SpanLabel::SK,
        SpanLabel::S,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpanLabel::Zero => "Zero",
            SpanLabel::Z => "Z",
            SpanLabel::K => "K",
            SpanLabel::ZplusK => "ZplusK",
            SpanLabel::SK => "SK",
            SpanLabel::S => "S",
            SpanLabel::Comm => "Comm",
            SpanLabel::A => "A",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            SpanLabel::Zero => "0",
            SpanLabel::Z => "Z",
            SpanLabel::K => "K",
            SpanLabel::ZplusK => "Z+K",
            SpanLabel::SK => "[S,K]",
            SpanLabel::S => "S",
            SpanLabel::Comm => "[A,A]",
            SpanLabel::A => "A",
        }
    }
}

impl fmt::Display for SpanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The subspace named by `label` in `M_n` with involution `ctx`.
pub fn reference_subspace(label: SpanLabel, ctx: &InvolutionCtx) -> SubspaceBasis {
    let n = ctx.n();
    let (sym, skew) = (ctx.sym_basis(), ctx.skew_basis());
    let scalars = || SubspaceBasis::span(n, [Matrix::<Q>::identity(n)]);
    match label {
        SpanLabel::Zero => SubspaceBasis::zero(n),
        SpanLabel::Z => scalars(),
        SpanLabel::K => SubspaceBasis::span(n, &skew),
        SpanLabel::ZplusK => scalars().sum(&SubspaceBasis::span(n, &skew)),
        SpanLabel::SK => SubspaceBasis::span(
            n,
            sym.iter()
                .flat_map(|s| skew.iter().map(move |k| s.commutator(k))),
        ),
        SpanLabel::S => SubspaceBasis::span(n, &sym),
        SpanLabel::Comm => SubspaceBasis::span(
            n,
            (0..n * n).filter(|&k| k != 0).map(|k| {
                // E_ij (i ≠ j) and E_ii − E_11 span the traceless matrices
                let (i, j) = (k / n, k % n);
                if i == j {
                    &Matrix::<Q>::unit(n, i, i) - &Matrix::unit(n, 0, 0)
                } else {
                    Matrix::unit(n, i, j)
                }
            }),
        ),
        SpanLabel::A => SubspaceBasis::full(n),
    }
}

pub fn label_of_span(span: &SubspaceBasis, ctx: &InvolutionCtx) -> Result<SpanLabel> {
    SpanLabel::PREFERENCE
        .into_iter()
        .find(|&label| reference_subspace(label, ctx) == *span)
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "span of dimension {} is none of the eight Lie skew-ideals",
                span.dim()
            ))
        })
}

/// The label of the linear span of the image of `p`.
pub fn bresar_klep_label(p: &StarPolynomial, ctx: &InvolutionCtx) -> Result<SpanLabel> {
    label_of_span(&image_span(p, ctx), ctx)
}

/// Identity and centrality properties of `p`, each decided on basis tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    /// `p` vanishes identically.
    pub is_identity: bool,
    /// Every value of `p` is scalar.
    pub is_central: bool,
    /// `p + p*` vanishes identically, so every value is skew-symmetric.
    pub skew_part_identity: bool,
    /// `p − p*` vanishes identically, so every value is symmetric.
    pub sym_part_identity: bool,
    /// Every value of `p + p*` is scalar.
    pub sym_part_central: bool,
    /// Every value of `p` has trace zero.
    pub trace_vanishes: bool,
    /// `p` is a sum of commutators in the free algebra.
    pub cyclic_zero: bool,
}

pub fn predicates(p: &StarPolynomial, ctx: &InvolutionCtx) -> Predicates {
    let n = ctx.n();
    let span = image_span(p, ctx);
    let scalars = SubspaceBasis::span(n, [Matrix::<Q>::identity(n)]);
    let plus = p.checked_add(&p.star()).expect("same variables");
    let minus = p.checked_sub(&p.star()).expect("same variables");
    let plus_span = image_span(&plus, ctx);
    Predicates {
        is_identity: span.dim() == 0,
        is_central: scalars.contains_subspace(&span),
        skew_part_identity: plus_span.dim() == 0,
        sym_part_identity: image_span(&minus, ctx).dim() == 0,
        sym_part_central: scalars.contains_subspace(&plus_span),
        trace_vanishes: span.matrices().iter().all(|m| m.trace().is_zero()),
        cyclic_zero: p.cyclic_sum_zero(),
    }
}

/// The span label implied by the predicates, following the eight-row case analysis.
pub fn label_from_predicates(pr: &Predicates) -> SpanLabel {
    if pr.is_identity {
        SpanLabel::Zero
    } else if pr.is_central {
        SpanLabel::Z
    } else if pr.skew_part_identity {
        SpanLabel::K
    } else if pr.sym_part_central {
        SpanLabel::ZplusK
    } else if pr.sym_part_identity && pr.trace_vanishes {
        SpanLabel::SK
    } else if pr.sym_part_identity {
        SpanLabel::S
    } else if pr.trace_vanishes {
        SpanLabel::Comm
    } else {
        SpanLabel::A
    }
}

// ---------------------------------------------------------------------------
// witnesses

/// Values `r` with `p(r) = 1` and a replacement for slot `index` (1-based)
/// that makes the value non-scalar.
#[derive(Clone, Debug)]
pub struct Witness {
    pub index: usize,
    pub r: Vec<Matrix<Q>>,
    pub r_star: Matrix<Q>,
}

/// Given `x` with `p(x)` a nonzero scalar and `y` with `p(y)` non-scalar,
/// finds the first `i` such that `p(y_1, …, y_i, x_{i+1}, …)` is non-scalar
/// and moves slots `1..i` along `x_k + t·y_k` until `p(r)` stays a nonzero
/// scalar while replacing slot `i` by `y_i` gives a non-scalar.
pub fn witness_search(
    p: &StarPolynomial,
    x: &[Matrix<Q>],
    y: &[Matrix<Q>],
    ctx: &InvolutionCtx,
) -> Result<Witness> {
    let fx = evaluate_tuple(p, x, ctx)?;
    let fy = evaluate_tuple(p, y, ctx)?;
    if !fx.as_scalar().is_some_and(|c| !c.is_zero()) {
        return Err(Error::Precondition(
            "p(x) must be a nonzero scalar matrix".into(),
        ));
    }
    if fy.as_scalar().is_some() {
        return Err(Error::Precondition("p(y) must be non-scalar".into()));
    }

    let m = x.len();
    let mixed = |i: usize| -> Vec<Matrix<Q>> {
        (0..m)
            .map(|k| if k < i { y[k].clone() } else { x[k].clone() })
            .collect()
    };
    let index = (1..=m)
        .find(|&i| {
            evaluate_unchecked_tuple(p, &mixed(i), ctx.n())
                .as_scalar()
                .is_none()
        })
        .expect("p(y) is non-scalar, so i = m qualifies");

    // slots before `index` move to x_k + t·y_k; both conditions are
    // polynomial in t of degree < index and hold for large t, so one of
    // t = 0, 1, …, 2·index succeeds
    for t in 0..=2 * index as i64 {
        let t = Q::from_i64(t);
        let mut r: Vec<Matrix<Q>> = x.to_vec();
        for k in 0..index - 1 {
            r[k] = &x[k] + &y[k].scale(&t);
        }
        let value = evaluate_unchecked_tuple(p, &r, ctx.n());
        let Some(scale) = value.as_scalar().filter(|s| !s.is_zero()) else {
            continue;
        };
        let mut alt = r.clone();
        alt[index - 1] = y[index - 1].clone();
        if evaluate_unchecked_tuple(p, &alt, ctx.n()).as_scalar().is_some() {
            continue;
        }
        r[0] = r[0].scale(&scale.recip());
        return Ok(Witness {
            index,
            r,
            r_star: y[index - 1].clone(),
        });
    }
    Err(Error::Inconsistent(
        "no parameter along the chain separated the scalar and non-scalar values".into(),
    ))
}

fn evaluate_unchecked_tuple(p: &StarPolynomial, values: &[Matrix<Q>], n: usize) -> Matrix<Q> {
    let vars: Vec<Variable> = p.variables().collect();
    evaluate_unchecked(
        p,
        |v| &values[vars.iter().position(|w| *w == v).expect("known variable")],
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> StarPolynomial {
        s.parse().unwrap()
    }

    fn m2() -> [Matrix<Q>; 4] {
        basis_m2()
    }

    fn assign(p: &StarPolynomial, values: &[Matrix<Q>]) -> Matrix<Q> {
        evaluate_tuple(p, values, &InvolutionCtx::transpose(2)).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let [i, e, e1, e2] = m2();
        assert_eq!(assign(&poly("[y1,y2]"), &[e1.clone(), e2.clone()]), e.scale(&Q::from_i64(2)));
        assert_eq!(
            assign(
                &poly("[y1,y2][y3,y4]"),
                &[e1.clone(), e2.clone(), e1.clone(), e2.clone()]
            ),
            i.scale(&Q::from_i64(-4))
        );
        assert_eq!(
            assign(&poly("[[y1,y2],y3]"), &[e1.clone(), e2.clone(), e1]),
            e2.scale(&Q::from_i64(-4))
        );
    }

    #[test]
    fn evaluation_errors() {
        let [i, e, _, _] = m2();
        let ctx = InvolutionCtx::transpose(2);
        let p = poly("y1*z1");
        assert!(matches!(
            evaluate_tuple(&p, &[e.clone(), e.clone()], &ctx),
            Err(Error::WrongSymmetryType { .. })
        ));
        assert!(matches!(
            evaluate_tuple(&p, &[i.clone(), i.clone()], &ctx),
            Err(Error::WrongSymmetryType { .. })
        ));
        let assign = BTreeMap::from([(Variable::y(1), i)]);
        assert!(matches!(
            evaluate(&p, &assign, &ctx),
            Err(Error::MissingVariable(v)) if v == Variable::z(1)
        ));
    }

    #[test]
    fn span_examples() {
        assert_eq!(image_span_transpose(&poly("[y1,y2]")).dim(), 1);
        let s4 = StarPolynomial::standard(&(1..=4).map(Variable::y).collect::<Vec<_>>()).unwrap();
        assert_eq!(image_span_transpose(&s4).dim(), 0);
        assert_eq!(image_span_transpose(&poly("y1y2")).dim(), 4);
    }

    #[test]
    fn fast_span_matches_generic() {
        for text in ["[y1,y2]", "y1*z1 - z1*y1", "[y1,y2,y3]", "z1", "y1y2", "[z1,y1][y2,y3]"] {
            let p = poly(text);
            let t = InvolutionCtx::transpose(2);
            assert_eq!(image_span_transpose(&p), image_span_generic(&p, &t), "{text}");
            let s = InvolutionCtx::symplectic(2).unwrap();
            assert_eq!(image_span_symplectic(&p), image_span_generic(&p, &s), "{text}");
        }
    }

    #[test]
    fn large_coefficients_use_exact_path() {
        let p = poly("100000000000000000000 y1*y2 - 100000000000000000000 y2*y1");
        assert_eq!(image_span_transpose(&p), m2_span(&[1]));
    }

    #[test]
    fn transpose_classes() {
        assert_eq!(classify_image_transpose(&poly("[[y1,y2],y3]")).unwrap(), ImageClass::TracelessSym2);
        assert_eq!(
            classify_image_transpose(&poly("[y1,y2,y3][y4,y5,y6]")).unwrap(),
            ImageClass::ScalarPlusSkew
        );
        assert_eq!(classify_image_transpose(&poly("[y1y2, y3y4]")).unwrap(), ImageClass::Sl2);
        assert_eq!(classify_image_transpose(&poly("z1")).unwrap(), ImageClass::SkewLine);
    }

    #[test]
    fn impossible_span_is_inconsistent() {
        assert!(matches!(
            classify_transpose_span(&m2_span(&[2])),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn symplectic_classes() {
        assert_eq!(classify_image_symplectic(&poly("y1")).unwrap(), ImageClass::ScalarLine);
        assert_eq!(classify_image_symplectic(&poly("z1")).unwrap(), ImageClass::Sl2);
        assert_eq!(classify_image_symplectic(&poly("z1z2")).unwrap(), ImageClass::Full);
    }

    #[test]
    fn labels() {
        let t = InvolutionCtx::transpose(2);
        assert_eq!(bresar_klep_label(&poly("[y1,y2][y3,y4]"), &t).unwrap(), SpanLabel::Z);
        assert_eq!(bresar_klep_label(&poly("[[y1,y2],y3]"), &t).unwrap(), SpanLabel::SK);
        let s = InvolutionCtx::symplectic(2).unwrap();
        assert_eq!(bresar_klep_label(&poly("z1"), &s).unwrap(), SpanLabel::Comm);
    }

    #[test]
    fn reference_subspaces_of_m2_transpose_are_distinct() {
        let t = InvolutionCtx::transpose(2);
        let dims: Vec<usize> = SpanLabel::ALL
            .iter()
            .map(|&l| reference_subspace(l, &t).dim())
            .collect();
        assert_eq!(dims, [0, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(reference_subspace(SpanLabel::SK, &t), m2_span(&[2, 3]));
    }

    #[test]
    fn predicate_examples() {
        let t = InvolutionCtx::transpose(2);
        let s4 = StarPolynomial::standard(&(1..=4).map(Variable::y).collect::<Vec<_>>()).unwrap();
        assert!(predicates(&s4, &t).is_identity);
        let pr = predicates(&poly("[y1,y2][y3,y4]"), &t);
        assert!(pr.is_central && !pr.is_identity);
        let pr = predicates(&poly("[y1,y2]"), &t);
        assert!(pr.skew_part_identity && !pr.sym_part_identity && pr.cyclic_zero);
        assert_eq!(label_from_predicates(&pr), SpanLabel::K);
    }

    #[test]
    fn witness_degree_one() {
        let [i, _, e1, _] = m2();
        let ctx = InvolutionCtx::transpose(2);
        let w = witness_search(&poly("y1"), std::slice::from_ref(&i), std::slice::from_ref(&e1), &ctx).unwrap();
        assert_eq!(w.index, 1);
        assert_eq!(w.r, vec![i]);
        assert_eq!(w.r_star, e1);
    }

    #[test]
    fn witness_postconditions() {
        let [i, _, e1, e2] = m2();
        let ctx = InvolutionCtx::transpose(2);
        let p = poly("y1y2");
        let w = witness_search(&p, &[i.clone(), i.scale(&Q::from_i64(3))], &[e1, e2], &ctx).unwrap();
        assert_eq!(evaluate_tuple(&p, &w.r, &ctx).unwrap(), i);
        let mut alt = w.r.clone();
        alt[w.index - 1] = w.r_star.clone();
        assert!(evaluate_tuple(&p, &alt, &ctx).unwrap().as_scalar().is_none());
    }

    #[test]
    fn witness_requires_non_scalar_value() {
        let [i, _, e1, e2] = m2();
        let ctx = InvolutionCtx::transpose(2);
        let p = poly("[y1,y2][y3,y4]");
        let x = [e1.clone(), e2.clone(), e1.clone(), e2.clone()];
        let y = [e2.clone(), e1.clone(), i.clone(), e2];
        assert!(matches!(witness_search(&p, &x, &y, &ctx), Err(Error::Precondition(_))));
    }

    #[test]
    fn spans_are_lie_skew_ideals() {
        let t = InvolutionCtx::transpose(2);
        let s = InvolutionCtx::symplectic(2).unwrap();
        for text in ["[y1,y2]", "[y1,y2,y3]", "y1", "z1z2", "[z1,z2]"] {
            let p = poly(text);
            assert!(is_closed_under_skew(&image_span(&p, &t), &t));
            assert!(is_closed_under_skew(&image_span(&p, &s), &s));
        }
    }
}
