//! Recursive-descent parser for *-polynomial expressions.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational ['*']] factor (['*'] factor)*
//! factor   := var | '(' expr ')' | '[' expr ',' expr (',' expr)* ']'
//! var      := ('y'|'z') digit+
//! rational := int ['/' int]
//! ```
//!
//! Adjacent factors multiply (`[y1,y2][y3,y4]`, `y1y2`), and brackets with more
//! than two entries nest to the left: `[a,b,c] = [[a,b],c]`.

use std::collections::{BTreeMap, BTreeSet};

use num::bigint::BigInt;
use num::{One, Zero};
use thiserror::Error;

use super::{StarPolynomial, VarKind, Variable, Word};
use crate::matrix::Q;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("constant term at position {position}; multilinear polynomials have no constants")]
    Constant { position: usize },

    #[error("not multilinear: variable {variable} does not occur exactly once in monomial {monomial}")]
    NotMultilinear { variable: Variable, monomial: String },
}

/// Noncommutative polynomial used while parsing; words may repeat variables
/// until validation.
#[derive(Clone, Default)]
struct Raw {
    terms: BTreeMap<Word, Q>,
}

impl Raw {
    fn var(v: Variable) -> Self {
        Raw {
            terms: BTreeMap::from([(vec![v], Q::one())]),
        }
    }

    fn add(mut self, other: Raw, sign: i64) -> Raw {
        for (w, c) in other.terms {
            let entry = self.terms.entry(w).or_insert_with(Q::zero);
            if sign < 0 {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, other: &Raw) -> Result<Raw, ParseError> {
        let mut out: BTreeMap<Word, Q> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                super::check_no_repeat(&w)?;
                *out.entry(w).or_insert_with(Q::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Raw { terms: out })
    }

    fn scale(mut self, c: &Q) -> Raw {
        for x in self.terms.values_mut() {
            *x *= c;
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn commutator(&self, other: &Raw) -> Result<Raw, ParseError> {
        Ok(self.mul(other)?.add(other.mul(self)?, -1))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mentioned: BTreeSet<Variable>,
}

pub fn parse(text: &str) -> Result<StarPolynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        mentioned: BTreeSet::new(),
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let raw = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(&format!("unexpected `{}`", c as char)));
    }
    StarPolynomial::from_terms(raw.terms, p.mentioned)
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Raw, ParseError> {
        self.skip_ws();
        let mut sign = 1;
        if self.eat(b'-') {
            sign = -1;
        } else {
            self.eat(b'+');
        }
        let mut acc = Raw::default().add(self.term()?, sign);
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
            acc = acc.add(self.term()?, sign);
        }
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(b'y' | b'z' | b'(' | b'['))
    }

    fn term(&mut self) -> Result<Raw, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let coefficient = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.rational()?;
            let star = self.eat(b'*');
            if !self.starts_factor() {
                if star {
                    return Err(self.error("expected a factor after `*`"));
                }
                if c.is_zero() {
                    return Ok(Raw::default());
                }
                return Err(ParseError::Constant { position: start });
            }
            Some(c)
        } else {
            None
        };
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') || self.starts_factor() {
                acc = acc.mul(&self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(match coefficient {
            Some(c) => acc.scale(&c),
            None => acc,
        })
    }

    fn factor(&mut self) -> Result<Raw, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'y' | b'z') => {
                let v = self.variable()?;
                self.mentioned.insert(v);
                Ok(Raw::var(v))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.expr()?;
                self.expect(b',')?;
                loop {
                    let next = self.expr()?;
                    acc = acc.commutator(&next)?;
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b']')?;
                Ok(acc)
            }
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn variable(&mut self) -> Result<Variable, ParseError> {
        let kind = match self.peek() {
            Some(b'y') => VarKind::Symmetric,
            Some(b'z') => VarKind::Skew,
            _ => return Err(self.error("expected a variable")),
        };
        self.pos += 1;
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.error("expected a variable index"));
        }
        let text = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
        let index: u32 = text.parse().map_err(|_| ParseError::Syntax {
            position: digits_start,
            message: "variable index out of range".into(),
        })?;
        if index == 0 {
            return Err(ParseError::Syntax {
                position: digits_start,
                message: "variable indices start at 1".into(),
            });
        }
        Ok(Variable { kind, index })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string parses"))
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let num = self.integer()?;
        self.skip_ws();
        // `/` only belongs to the rational when a digit follows
        let save = self.pos;
        if self.eat(b'/') {
            self.skip_ws();
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let den_pos = self.pos;
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(ParseError::Syntax {
                        position: den_pos,
                        message: "zero denominator".into(),
                    });
                }
                return Ok(Q::new(num, den));
            }
            return Err(self.error("expected a denominator"));
        }
        self.pos = save;
        Ok(Q::from_integer(num))
    }
}
