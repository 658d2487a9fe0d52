//! Scalar fields: exact arbitrary-precision rationals and binary64 floats.
//!
//! Every construction in this crate is generic over [`Scalar`], so one
//! computation always runs in exactly one field. Mixing modes is a type
//! error rather than a silent promotion.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, Pow, ToPrimitive, Zero};

use crate::Error;

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Which field a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::Float),
            other => Err(Error::UnknownMode(other.to_string())),
        }
    }
}

/// An element of an ordered field usable as a matrix entry.
///
/// `Display` output is the serialization format: `"p/q"` in lowest terms
/// (integers without the `/q`) for rationals, shortest round-trip decimal for
/// floats. Both re-parse through [`Scalar::parse_literal`].
pub trait Scalar:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Num + Neg<Output = Self>
{
    const MODE: ScalarMode;

    fn from_i64(value: i64) -> Self;

    /// Exact rationalization for [`Rational`], identity for `f64`.
    fn from_f64(value: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses an integer, a fraction `p/q`, or a decimal literal.
    fn parse_literal(text: &str) -> Result<Self, Error>;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// Whether two nodes count as distinct given the span of the node set.
    fn separated(a: &Self, b: &Self, span: &Self) -> bool;
}

/// Relative node gap below which float nodes are treated as coincident.
pub const FLOAT_NODE_GAP: f64 = 1e-12;

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn from_f64(value: f64) -> Self {
        Rational::from_float(value).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(text: &str) -> Result<Self, Error> {
        parse_rational(text)
    }

    fn abs(&self) -> Self {
        num_traits::Signed::abs(self)
    }

    fn powu(&self, exp: u32) -> Self {
        Pow::pow(self, exp)
    }

    fn separated(a: &Self, b: &Self, _span: &Self) -> bool {
        a != b
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_f64(value: f64) -> Self {
        value
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text.contains('/') {
            let r = parse_rational(text)?;
            return Ok(Scalar::to_f64(&r));
        }
        check_decimal_syntax(text)?;
        let value: f64 = text.parse().map_err(|_| malformed(text))?;
        if !value.is_finite() {
            return Err(malformed(text));
        }
        Ok(value)
    }

    fn powu(&self, exp: u32) -> Self {
        libm::pow(*self, exp as f64)
    }

    fn separated(a: &Self, b: &Self, span: &Self) -> bool {
        if a == b {
            return false;
        }
        *span == 0.0 || Scalar::abs(&(a - b)) >= FLOAT_NODE_GAP * span
    }
}

fn malformed(text: &str) -> Error {
    Error::MalformedLiteral(text.to_string())
}

/// Grammar `[+-]? digits ('.' digits*)? ([eE] [+-]? digits)?`.
fn check_decimal_syntax(text: &str) -> Result<(), Error> {
    let bytes = text.as_bytes();
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return Err(malformed(text));
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
        i += 1;
        if i < bytes.len() && matches!(bytes[i], b'+' | b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return Err(malformed(text));
        }
    }
    if i != bytes.len() {
        return Err(malformed(text));
    }
    Ok(())
}

fn parse_integer(text: &str, whole: &str) -> Result<BigInt, Error> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed(whole));
    }
    let value = BigInt::from_str_radix(digits, 10).map_err(|_| malformed(whole))?;
    Ok(if text.starts_with('-') { -value } else { value })
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_integer(num, text)?;
        let den = parse_integer(den, text)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    check_decimal_syntax(text)?;
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = text[pos + 1..].parse().map_err(|_| malformed(text))?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let negative = mantissa.starts_with('-');
    let unsigned = mantissa.trim_start_matches(['+', '-']);
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut value = Rational::from_integer(
        BigInt::from_str_radix(&digits, 10).map_err(|_| malformed(text))?,
    );
    let scale = exponent - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let magnitude = u32::try_from(scale.unsigned_abs()).map_err(|_| malformed(text))?;
    let power: Rational = Pow::pow(&ten, magnitude);
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Ok(if negative { -value } else { value })
}

/// Parses a scalar literal in the field `S`.
pub fn scalar_parse<S: Scalar>(text: &str) -> Result<S, Error> {
    S::parse_literal(text)
}

/// The deformation parameter `q`; any nonzero scalar, including `q = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QParam<S>(S);

impl<S: Scalar> QParam<S> {
    pub fn new(q: S) -> Result<Self, Error> {
        if q.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(QParam(q))
    }

    pub fn one() -> Self {
        QParam(S::one())
    }

    pub fn value(&self) -> &S {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// The basic number `[m]_q = 1 + q + ... + q^(m-1)`.
///
/// The sum form is total at `q = 1`, where it gives `m`; for `q != 1` it is
/// identically `(q^m - 1)/(q - 1)`.
pub fn basic_number<S: Scalar>(m: u32, q: &QParam<S>) -> S {
    let mut acc = S::zero();
    for _ in 0..m {
        acc = acc * q.value().clone() + S::one();
    }
    acc
}
