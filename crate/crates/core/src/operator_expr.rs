//! Normal-ordered linear operators `Σ p_k(x) ∂^k` and their Calogero matrices.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := number | 'x' ['^' int] | 'D' ['^' int] | '(' expression ')'
//! ```
//!
//! Numbers use the scalar literal format (`3`, `3/2`, `1.25`). Within a
//! product every `x` must stand left of every `D`; `D*x` is rejected rather
//! than rewritten, because `D x = x D + 1` is a different operator from `x D`.
//!
//! [`realize`] substitutes `x → X` and `D → D` (classical) or `D → 𝒟`
//! (q-deformed), giving `Σ p_k(X) M^k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::calogero::d_matrix_bzb;
use crate::qmatrix::q_d_matrix;
use crate::{Diagonal, Error, Matrix, NodeSet, Polynomial, QParam, Scalar};

/// A linear operator `Σ_k p_k(x) ∂^k` with like terms merged.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr<S> {
    // derivative power -> nonzero coefficient polynomial
    terms: BTreeMap<u32, Polynomial<S>>,
}

impl<S: Scalar> OperatorExpr<S> {
    pub fn zero() -> Self {
        OperatorExpr {
            terms: BTreeMap::new(),
        }
    }

    /// The single term `p(x) ∂^power`.
    pub fn term(p: Polynomial<S>, power: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(p, power);
        e
    }

    pub fn constant(c: S) -> Self {
        Self::term(Polynomial::constant(c), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, derivative power)` pairs in ascending power.
    pub fn terms(&self) -> impl Iterator<Item = (&Polynomial<S>, u32)> {
        self.terms.iter().map(|(k, p)| (p, *k))
    }

    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, p: Polynomial<S>, power: u32) {
        let merged = match self.terms.remove(&power) {
            Some(existing) => existing.add(&p),
            None => p,
        };
        if !merged.is_zero() {
            self.terms.insert(power, merged);
        }
    }

    fn negate(&self) -> Self {
        let mut out = Self::zero();
        for (p, k) in self.terms() {
            out.add_term(p.scale(&-S::one()), k);
        }
        out
    }

    /// Product `self · rhs`, defined only when it stays normal-ordered.
    fn compose(&self, rhs: &Self, pos: usize) -> Result<Self, Error> {
        let mut out = Self::zero();
        for (p, k) in self.terms() {
            for (r, l) in rhs.terms() {
                if k > 0 && !r.is_constant() {
                    return Err(Error::NormalOrdering { pos });
                }
                out.add_term(p.mul(r), k + l);
            }
        }
        Ok(out)
    }
}

impl<S: Scalar> Add for &OperatorExpr<S> {
    type Output = OperatorExpr<S>;

    fn add(self, rhs: &OperatorExpr<S>) -> OperatorExpr<S> {
        let mut out = self.clone();
        for (p, k) in rhs.terms() {
            out.add_term(p.clone(), k);
        }
        out
    }
}

/// Prints a flat sum of `c*x^i*D^k` monomials that parses back to an equal
/// expression.
impl<S: Scalar> fmt::Display for OperatorExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, k) in self.terms() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let negative = *c < S::zero();
                match (first, negative) {
                    (true, true) => f.write_str("-")?,
                    (true, false) => {}
                    (false, true) => f.write_str(" - ")?,
                    (false, false) => f.write_str(" + ")?,
                }
                first = false;
                let magnitude = c.abs();
                let mut factors: Vec<String> = Vec::new();
                if !magnitude.is_one() || (i == 0 && k == 0) {
                    factors.push(magnitude.to_string());
                }
                match i {
                    0 => {}
                    1 => factors.push("x".into()),
                    _ => factors.push(format!("x^{i}")),
                }
                match k {
                    0 => {}
                    1 => factors.push("D".into()),
                    _ => factors.push(format!("D^{k}")),
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    X,
    D,
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'x' => Token::X,
            b'D' => Token::D,
            b'^' => Token::Caret,
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                i = digits(i);
                if i < bytes.len() && bytes[i] == b'.' {
                    i = digits(i + 1);
                }
                if i < bytes.len() && matches!(bytes[i], b'e' | b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && matches!(bytes[j], b'+' | b'-') {
                        j += 1;
                    }
                    let end = digits(j);
                    if end > j {
                        i = end;
                    }
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    let end = digits(i + 1);
                    if end == i + 1 {
                        return Err(syntax(i, "expected a denominator after '/'"));
                    }
                    i = end;
                }
                out.push((start, Token::Number(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expression<S: Scalar>(&mut self) -> Result<OperatorExpr<S>, Error> {
        let negate_first = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                true
            }
            Some(Token::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate_first { first.negate() } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc + &self.term::<S>()?.negate();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<S: Scalar>(&mut self) -> Result<OperatorExpr<S>, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            let pos = self.pos();
            let rhs = self.factor()?;
            acc = acc.compose(&rhs, pos)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32, Error> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(1);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(s)) => s
                .parse()
                .map_err(|_| syntax(pos, "exponent must be a nonnegative integer")),
            _ => Err(syntax(pos, "expected an integer exponent after '^'")),
        }
    }

    fn factor<S: Scalar>(&mut self) -> Result<OperatorExpr<S>, Error> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(s)) => {
                let value = S::parse_literal(&s).map_err(|e| syntax(pos, e.to_string()))?;
                Ok(OperatorExpr::constant(value))
            }
            Some(Token::X) => {
                let m = self.exponent()?;
                Ok(OperatorExpr::term(Polynomial::monomial(S::one(), m as usize), 0))
            }
            Some(Token::D) => {
                let k = self.exponent()?;
                Ok(OperatorExpr::term(Polynomial::constant(S::one()), k))
            }
            Some(Token::LParen) => {
                let inner = self.expression()?;
                let close = self.pos();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(_) => Err(syntax(pos, "expected a number, 'x', 'D' or '('")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses a normal-ordered operator expression.
pub fn parse_operator<S: Scalar>(text: &str) -> Result<OperatorExpr<S>, Error> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        at: 0,
        end: text.len(),
    };
    let expr = parser.expression()?;
    if parser.at < tokens.len() {
        return Err(syntax(parser.pos(), "unexpected trailing input"));
    }
    Ok(expr)
}

/// Which derivative matrix replaces `D`.
#[derive(Debug, Clone, PartialEq)]
pub enum Variant<S> {
    /// The classical `D = B Z B⁻¹`.
    Classical,
    /// The q-derivative matrix `𝒟`; requires nonzero nodes.
    QDeformed(QParam<S>),
}

/// `Σ_k p_k(X) M^k` with `M` chosen by `variant`.
///
/// Powers `k >= n` are allowed; in the classical case they annihilate every
/// degree `< n` sample vector.
pub fn realize<S: Scalar>(
    expr: &OperatorExpr<S>,
    ns: &NodeSet<S>,
    variant: &Variant<S>,
) -> Result<Matrix<S>, Error> {
    let n = ns.len();
    let base = match variant {
        Variant::Classical => d_matrix_bzb(ns),
        Variant::QDeformed(q) => q_d_matrix(ns, q)?,
    };
    let mut out = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    let mut current = 0;
    for (p, k) in expr.terms() {
        while current < k {
            power = &power * &base;
            current += 1;
        }
        let px = Diagonal::new(ns.sample(|x| p.eval(x)));
        out = &out + &px.mul_left(&power);
    }
    Ok(out)
}

/// Matrix–vector action on node samples.
pub fn apply_matrix<S: Scalar>(m: &Matrix<S>, samples: &[S]) -> Result<Vec<S>, Error> {
    m.apply(samples)
}
