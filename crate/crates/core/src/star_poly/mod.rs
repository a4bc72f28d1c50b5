//! Multilinear polynomials in the free algebra with involution, over
//! symmetric variables `y_i` and skew-symmetric variables `z_i`.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::matrix::{Scalar, Q};

pub use parse::{parse, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Symmetric,
    Skew,
}

/// A variable `y<index>` (symmetric) or `z<index>` (skew-symmetric), `index >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub kind: VarKind,
    pub index: u32,
}

impl Variable {
    pub fn y(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable {
            kind: VarKind::Symmetric,
            index,
        }
    }

    pub fn z(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable {
            kind: VarKind::Skew,
            index,
        }
    }

    pub fn is_skew(&self) -> bool {
        self.kind == VarKind::Skew
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            VarKind::Symmetric => 'y',
            VarKind::Skew => 'z',
        };
        write!(f, "{c}{}", self.index)
    }
}

pub type Word = Vec<Variable>;

pub(crate) fn word_to_string(word: &[Variable]) -> String {
    word.iter()
        .map(Variable::to_string)
        .collect::<Vec<_>>()
        .join("*")
}

/// A stored term `coefficient · word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: Q,
    pub word: Word,
}

/// A multilinear *-polynomial: every monomial uses each variable of
/// [`StarPolynomial::variables`] exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPolynomial {
    terms: BTreeMap<Word, Q>,
    vars: BTreeSet<Variable>,
}

impl StarPolynomial {
    /// Combines like terms, drops zero coefficients and checks multilinearity.
    /// `extra_vars` are recorded as the variable set when every term cancels.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Word, Q)>,
        extra_vars: impl IntoIterator<Item = Variable>,
    ) -> Result<Self, ParseError> {
        let mut combined: BTreeMap<Word, Q> = BTreeMap::new();
        let mut mentioned: BTreeSet<Variable> = extra_vars.into_iter().collect();
        for (word, c) in terms {
            check_no_repeat(&word)?;
            mentioned.extend(word.iter().copied());
            *combined.entry(word).or_insert_with(Q::zero) += c;
        }
        combined.retain(|_, c| !c.is_zero());

        let vars = match combined.keys().next() {
            Some(first) => first.iter().copied().collect::<BTreeSet<_>>(),
            None => mentioned.clone(),
        };
        for word in combined.keys() {
            let here: BTreeSet<Variable> = word.iter().copied().collect();
            if let Some(v) = vars.symmetric_difference(&here).next() {
                return Err(ParseError::NotMultilinear {
                    variable: *v,
                    monomial: word_to_string(word),
                });
            }
        }
        // a variable mentioned in the input must occur in every surviving monomial
        if !combined.is_empty() {
            if let Some(v) = mentioned.difference(&vars).next() {
                let word = combined.keys().next().expect("non-empty");
                return Err(ParseError::NotMultilinear {
                    variable: *v,
                    monomial: word_to_string(word),
                });
            }
        }
        Ok(StarPolynomial {
            terms: combined,
            vars,
        })
    }

    pub fn monomial(coefficient: Q, word: Word) -> Result<Self, ParseError> {
        Self::from_terms([(word, coefficient)], [])
    }

    pub fn variable(v: Variable) -> Self {
        Self::monomial(Q::one(), vec![v]).expect("single variable is multilinear")
    }

    pub fn zero_in(vars: impl IntoIterator<Item = Variable>) -> Self {
        Self::from_terms([], vars).expect("empty polynomial is multilinear")
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(w, c)| Monomial {
            coefficient: c.clone(),
            word: w.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, word: &[Variable]) -> Q {
        self.terms.get(word).cloned().unwrap_or_else(Q::zero)
    }

    /// Variables in canonical order: symmetric by index, then skew by index.
    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.vars.iter().copied()
    }

    pub fn sym_variables(&self) -> Vec<Variable> {
        self.variables().filter(|v| !v.is_skew()).collect()
    }

    pub fn skew_variables(&self) -> Vec<Variable> {
        self.variables().filter(Variable::is_skew).collect()
    }

    pub fn sym_arity(&self) -> usize {
        self.sym_variables().len()
    }

    pub fn skew_arity(&self) -> usize {
        self.skew_variables().len()
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(w, x)| (w.clone(), x * c)),
            self.vars.iter().copied(),
        )
        .expect("scaling preserves multilinearity")
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ParseError> {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(w, c)| (w.clone(), c.clone())),
            self.vars.union(&other.vars).copied(),
        )
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ParseError> {
        self.checked_add(&-other)
    }

    /// Product of polynomials in disjoint variable sets.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ParseError> {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.push((w, ca * cb));
            }
        }
        Self::from_terms(out, self.vars.union(&other.vars).copied())
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, ParseError> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    /// The involution on the free algebra: reverses every word and multiplies
    /// by `(-1)^(number of skew variables)`.
    pub fn star(&self) -> Self {
        let terms = self.terms.iter().map(|(w, c)| {
            let skew = w.iter().filter(|v| v.is_skew()).count();
            let reversed: Word = w.iter().rev().copied().collect();
            let c = if skew % 2 == 0 { c.clone() } else { -c.clone() };
            (reversed, c)
        });
        Self::from_terms(terms, self.vars.iter().copied()).expect("star preserves multilinearity")
    }

    /// `(p + p*) / 2`.
    pub fn symmetric_part(&self) -> Self {
        self.checked_add(&self.star())
            .expect("same variable set")
            .scale(&Q::from_ratio(1, 2))
    }

    /// `(p - p*) / 2`.
    pub fn skew_part(&self) -> Self {
        self.checked_sub(&self.star())
            .expect("same variable set")
            .scale(&Q::from_ratio(1, 2))
    }

    /// The symmetric variable pair that replaces the skew variable of rank `j`
    /// (1-based among the skew variables) in [`Self::substitute_commutators`].
    pub fn commutator_slots(&self) -> Vec<(Variable, Variable, Variable)> {
        let base = self
            .sym_variables()
            .iter()
            .map(|v| v.index)
            .max()
            .unwrap_or(0);
        self.skew_variables()
            .into_iter()
            .enumerate()
            .map(|(r, z)| {
                let j = r as u32 + 1;
                (z, Variable::y(base + 2 * j - 1), Variable::y(base + 2 * j))
            })
            .collect()
    }

    /// Replaces every skew variable by a commutator `[y_a, y_b]` of two fresh
    /// symmetric variables, producing a polynomial in symmetric variables only.
    pub fn substitute_commutators(&self) -> Self {
        let slots: BTreeMap<Variable, (Variable, Variable)> = self
            .commutator_slots()
            .into_iter()
            .map(|(z, a, b)| (z, (a, b)))
            .collect();
        let mut out: Vec<(Word, Q)> = Vec::new();
        for (word, c) in &self.terms {
            let mut partial: Vec<(Word, Q)> = vec![(Vec::with_capacity(word.len() * 2), c.clone())];
            for v in word {
                match slots.get(v) {
                    None => partial.iter_mut().for_each(|(w, _)| w.push(*v)),
                    Some(&(a, b)) => {
                        partial = partial
                            .into_iter()
                            .flat_map(|(w, c)| {
                                let mut ab = w.clone();
                                ab.extend([a, b]);
                                let mut ba = w;
                                ba.extend([b, a]);
                                [(ab, c.clone()), (ba, -c)]
                            })
                            .collect();
                    }
                }
            }
            out.extend(partial);
        }
        let vars = self
            .sym_variables()
            .into_iter()
            .chain(slots.values().flat_map(|&(a, b)| [a, b]));
        Self::from_terms(out, vars).expect("substitution preserves multilinearity")
    }

    /// Whether the polynomial is a sum of commutators in the free algebra:
    /// the coefficient sum over every class of cyclic rotations vanishes.
    pub fn cyclic_sum_zero(&self) -> bool {
        let mut classes: BTreeMap<Word, Q> = BTreeMap::new();
        for (word, c) in &self.terms {
            *classes.entry(min_rotation(word)).or_insert_with(Q::zero) += c;
        }
        classes.values().all(Zero::is_zero)
    }

    /// The standard polynomial `Σ_σ sgn(σ) x_σ(1) ⋯ x_σ(n)` in the given variables.
    pub fn standard(vars: &[Variable]) -> Result<Self, ParseError> {
        let mut terms = Vec::new();
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        heap_permutations(&mut perm, vars.len(), &mut |p| {
            let word: Word = p.iter().map(|&i| vars[i]).collect();
            terms.push((word, Q::from_i64(permutation_sign(p))));
        });
        Self::from_terms(terms, vars.iter().copied())
    }
}

fn check_no_repeat(word: &[Variable]) -> Result<(), ParseError> {
    let mut seen = BTreeSet::new();
    for v in word {
        if !seen.insert(*v) {
            return Err(ParseError::NotMultilinear {
                variable: *v,
                monomial: word_to_string(word),
            });
        }
    }
    Ok(())
}

fn min_rotation(word: &[Variable]) -> Word {
    (0..word.len().max(1))
        .map(|r| {
            word[r..]
                .iter()
                .chain(&word[..r])
                .copied()
                .collect::<Word>()
        })
        .min()
        .unwrap_or_default()
}

fn heap_permutations(a: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, visit);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, visit);
}

fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl std::ops::Neg for &StarPolynomial {
    type Output = StarPolynomial;
    fn neg(self) -> StarPolynomial {
        self.scale(&-Q::one())
    }
}

impl FromStr for StarPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

impl fmt::Display for StarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (word, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            f.write_str(&word_to_string(word))?;
        }
        Ok(())
    }
}
