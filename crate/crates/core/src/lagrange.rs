//! Lagrange interpolation on a [`NodeSet`]: the Vandermonde matrix, the
//! coefficient matrix of the basis polynomials, basis evaluation, the
//! interpolant and the discrete pairing over node samples.
//!
//! Indices are 0-based: `delta_eval(ns, j, x)` evaluates the basis polynomial
//! that is 1 at `ns.get(j)`.

use alloc::vec::Vec;

use crate::{Error, Matrix, NodeSet, Polynomial, Scalar};

/// `V[j][k] = x_j^k`.
pub fn vandermonde<S: Scalar>(ns: &NodeSet<S>) -> Matrix<S> {
    let n = ns.len();
    let mut data = Vec::with_capacity(n * n);
    for x in ns.nodes() {
        let mut p = S::one();
        for _ in 0..n {
            data.push(p.clone());
            p = p * x.clone();
        }
    }
    Matrix::new(n, n, data).expect("n*n entries")
}

/// `b_j = Π_{k≠j} (x_j - x_k)`; 1 for a single node.
pub fn node_products<S: Scalar>(ns: &NodeSet<S>) -> Vec<S> {
    let xs = ns.nodes();
    (0..xs.len())
        .map(|j| {
            xs.iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(S::one(), |acc, (_, xk)| acc * (xs[j].clone() - xk.clone()))
        })
        .collect()
}

/// The basis polynomial `δ^(j)` in monomial form.
pub fn basis_polynomial<S: Scalar>(ns: &NodeSet<S>, j: usize) -> Result<Polynomial<S>, Error> {
    check_index(ns, j)?;
    let xs = ns.nodes();
    let mut p = Polynomial::constant(S::one());
    let mut denom = S::one();
    for (k, xk) in xs.iter().enumerate() {
        if k != j {
            p.mul_linear(xk);
            denom = denom * (xs[j].clone() - xk.clone());
        }
    }
    Ok(p.scale(&(S::one() / denom)))
}

/// The matrix `C` whose row `j` holds the ascending coefficients of `δ^(j)`.
///
/// Built by expanding the product of linear factors for each row, never by
/// inverting `V`. Since `δ^(j)(x_i) = (V Cᵀ)[i][j]`, the inverse of the
/// Vandermonde matrix is `Cᵀ`.
pub fn lagrange_coefficients<S: Scalar>(ns: &NodeSet<S>) -> Matrix<S> {
    let n = ns.len();
    let mut data = Vec::with_capacity(n * n);
    for j in 0..n {
        let p = basis_polynomial(ns, j).expect("index in range");
        data.extend((0..n).map(|k| p.coeff(k)));
    }
    Matrix::new(n, n, data).expect("n*n entries")
}

/// `V⁻¹`, taken as the transpose of [`lagrange_coefficients`].
pub fn inverse_vandermonde<S: Scalar>(ns: &NodeSet<S>) -> Matrix<S> {
    lagrange_coefficients(ns).transpose()
}

/// `δ^(j)(x) = Π_{k≠j} (x - x_k)/(x_j - x_k)`, evaluated in product form.
pub fn delta_eval<S: Scalar>(ns: &NodeSet<S>, j: usize, x: &S) -> Result<S, Error> {
    check_index(ns, j)?;
    let xs = ns.nodes();
    let mut num = S::one();
    let mut den = S::one();
    for (k, xk) in xs.iter().enumerate() {
        if k != j {
            num = num * (x.clone() - xk.clone());
            den = den * (xs[j].clone() - xk.clone());
        }
    }
    Ok(num / den)
}

/// `Σ_j f_j δ^(j)(x)`.
pub fn interpolate<S: Scalar>(ns: &NodeSet<S>, values: &[S], x: &S) -> Result<S, Error> {
    check_len(ns, values)?;
    let mut acc = S::zero();
    for (j, f) in values.iter().enumerate() {
        acc = acc + f.clone() * delta_eval(ns, j, x)?;
    }
    Ok(acc)
}

/// The discrete pairing `⟨f, g⟩ = Σ_j f(x_j) g(x_j)` on node samples.
pub fn inner_product<S: Scalar>(ns: &NodeSet<S>, f: &[S], g: &[S]) -> Result<S, Error> {
    check_len(ns, f)?;
    check_len(ns, g)?;
    Ok(f.iter()
        .zip(g)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// Samples of `δ^(j)` at every node.
pub fn delta_samples<S: Scalar>(ns: &NodeSet<S>, j: usize) -> Result<Vec<S>, Error> {
    ns.nodes().iter().map(|x| delta_eval(ns, j, x)).collect()
}

fn check_index<S>(ns: &NodeSet<S>, j: usize) -> Result<(), Error>
where
    S: Scalar,
{
    if j >= ns.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: ns.len(),
        });
    }
    Ok(())
}

fn check_len<S: Scalar>(ns: &NodeSet<S>, values: &[S]) -> Result<(), Error> {
    if values.len() != ns.len() {
        return Err(Error::LengthMismatch {
            expected: ns.len(),
            found: values.len(),
        });
    }
    Ok(())
}
