//! Classical Calogero matrices on a node set: `X`, `B`, `Z`, `N` and the
//! differentiation matrix `D`, whose entry `(j, k)` is `(δ^(k))'(x_j)`.
//!
//! `D` has two constructions. [`d_matrix_bzb`] is the reference and accepts a
//! node at the origin; [`d_matrix_vandermonde`] goes through monomials and
//! needs every node nonzero.

use alloc::vec::Vec;

use crate::lagrange::{inverse_vandermonde, node_products, vandermonde};
use crate::{Diagonal, Error, Matrix, NodeSet, Scalar};

/// Multiplication by `x`: `diag(x_j)`.
pub fn x_matrix<S: Scalar>(ns: &NodeSet<S>) -> Diagonal<S> {
    Diagonal::new(ns.nodes().to_vec())
}

/// `diag(b_j)` with `b_j = Π_{k≠j} (x_j - x_k)`.
pub fn b_matrix<S: Scalar>(ns: &NodeSet<S>) -> Diagonal<S> {
    Diagonal::new(node_products(ns))
}

/// `Z[j][k] = 1/(x_j - x_k)` off the diagonal, `Σ_{k≠j} 1/(x_j - x_k)` on it.
pub fn z_matrix<S: Scalar>(ns: &NodeSet<S>) -> Matrix<S> {
    let xs = ns.nodes();
    let n = xs.len();
    let mut z = Vec::with_capacity(n * n);
    for j in 0..n {
        let row_start = z.len();
        let mut diag = S::zero();
        for k in 0..n {
            if j == k {
                z.push(S::zero());
            } else {
                let inv = S::one() / (xs[j].clone() - xs[k].clone());
                diag = diag + inv.clone();
                z.push(inv);
            }
        }
        z[row_start + j] = diag;
    }
    Matrix::new(n, n, z).expect("n*n entries")
}

/// `N = diag(0, 1, ..., n-1)`.
pub fn n_matrix<S: Scalar>(n: usize) -> Diagonal<S> {
    Diagonal::new((0..n).map(|j| S::from_i64(j as i64)).collect())
}

/// `D = B Z B⁻¹`.
pub fn d_matrix_bzb<S: Scalar>(ns: &NodeSet<S>) -> Matrix<S> {
    let b = b_matrix(ns);
    let b_inv = b.inverse().expect("distinct nodes give nonzero b_j");
    b_inv.mul_right(&b.mul_left(&z_matrix(ns)))
}

/// `D = X⁻¹ V N V⁻¹`, with `V⁻¹` taken from the Lagrange coefficients.
pub fn d_matrix_vandermonde<S: Scalar>(ns: &NodeSet<S>) -> Result<Matrix<S>, Error> {
    ns.require_nonzero()?;
    Ok(conjugated_diagonal(ns, &n_matrix(ns.len())))
}

/// `X⁻¹ V Λ V⁻¹` for a diagonal `Λ`. Caller guarantees nonzero nodes.
pub(crate) fn conjugated_diagonal<S: Scalar>(ns: &NodeSet<S>, lambda: &Diagonal<S>) -> Matrix<S> {
    let x_inv = x_matrix(ns).inverse().expect("nonzero nodes");
    x_inv.mul_left(&euler_form(ns, lambda))
}

/// `V Λ V⁻¹`.
pub(crate) fn euler_form<S: Scalar>(ns: &NodeSet<S>, lambda: &Diagonal<S>) -> Matrix<S> {
    let v = vandermonde(ns);
    &lambda.mul_right(&v) * &inverse_vandermonde(ns)
}
