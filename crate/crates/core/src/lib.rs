//! Finite-dimensional Calogero matrix representations of `d/dx` and of the
//! Jackson q-derivative `D_q f(x) = (f(qx) - f(x)) / (x (q - 1))`.
//!
//! Given distinct nodes `x_1..x_n`, the Lagrange basis `δ^(j)` turns any
//! linear operator that preserves polynomials of degree `< n` into an `n × n`
//! matrix acting on node samples. This crate builds those matrices over exact
//! rationals or `f64`:
//!
//! * [`calogero`]: `X`, `B`, `Z`, `N` and the differentiation matrix `D`,
//!   both as `B Z B⁻¹` and as `X⁻¹ V N V⁻¹`.
//! * [`qmatrix`]: the q-derivative matrix `X⁻¹ V [N]_q V⁻¹`, the direct
//!   Jackson-quotient oracle, and `X 𝒟`.
//! * [`operator_expr`]: a small grammar for normal-ordered operators such as
//!   `x^2*D^2 + 3*D + 1`, realized by substituting `X` and `D` (or `𝒟`).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod calogero;
pub mod lagrange;
pub mod matrix;
pub mod nodes;
pub mod operator_expr;
pub mod polynomial;
pub mod qmatrix;
pub mod scalar;

mod error;

pub use error::Error;
pub use matrix::{Diagonal, Discrepancy, Matrix};
pub use nodes::{generate_nodes, NodeKind, NodeSet};
pub use operator_expr::{parse_operator, realize, OperatorExpr, Variant};
pub use polynomial::Polynomial;
pub use qmatrix::{Function, SampledFunction};
pub use scalar::{basic_number, scalar_parse, QParam, Rational, Scalar, ScalarMode};
