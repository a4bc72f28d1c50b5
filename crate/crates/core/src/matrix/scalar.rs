//! Scalar backends: exact rationals and double-precision reals.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Num, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// Relative tolerance used by the real backend for all zero and equality tests.
pub const REAL_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` for the exact rational backend.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    fn from_q(q: &Q) -> Self;

    /// Zero test against a magnitude: exact equality on the rational backend,
    /// `|x| <= REAL_TOL * max(1, scale)` on the real backend.
    fn is_negligible(&self, scale: f64) -> bool;

    /// Zero test for a quantity that is the square of a length of magnitude `scale`.
    fn is_negligible_square(&self, scale: f64) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

impl Scalar for Q {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Q::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_q(q: &Q) -> Self {
        q.clone()
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn is_negligible_square(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Input(format!("expected a scalar, found {other}"))),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_q(q: &Q) -> Self {
        Scalar::to_f64(q)
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= REAL_TOL * scale.max(1.0)
    }

    fn is_negligible_square(&self, scale: f64) -> bool {
        self.abs().sqrt() <= REAL_TOL * scale.max(1.0)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let x = match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Input(format!("scalar {n} is not representable")))?,
            Value::String(s) => Scalar::to_f64(&parse_rational(s)?),
            other => return Err(Error::Input(format!("expected a scalar, found {other}"))),
        };
        if !x.is_finite() {
            return Err(Error::Input("matrix entries must be finite".into()));
        }
        Ok(x)
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::Input(format!("malformed rational `{text}`"));
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Input(format!("zero denominator in `{text}`")));
        }
        return Ok(Q::new(num, den));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Ok(Q::from_integer(n));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Q> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Q::from_integer(BigInt::from_str_radix(&digits, 10).ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Q::from_integer(BigInt::from(10));
    let power = num::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Some(if negative { -value } else { value })
}
