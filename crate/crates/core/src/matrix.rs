//! Dense row-major matrices and diagonal matrices over a [`Scalar`] field.

use alloc::format;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use crate::{Error, Scalar};

/// An immutable `rows × cols` matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * factor.clone()).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
            }
            acc
        }))
    }

    /// Matrix–vector product on a sample vector.
    pub fn apply(&self, samples: &[S]) -> Result<Vec<S>, Error> {
        if samples.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to {} samples",
                self.rows,
                self.cols,
                samples.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(samples)
                    .fold(S::zero(), |acc, (m, v)| acc + m.clone() * v.clone())
            })
            .collect())
    }

    /// `self^exp` by repeated multiplication. Square matrices only.
    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square(), "matrix power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes differ"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_mul(rhs).expect("matrix shapes are incompatible")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;

    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;

    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

/// A square diagonal matrix, stored as its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal<S>(Vec<S>);

impl<S: Scalar> Diagonal<S> {
    pub fn new(diag: Vec<S>) -> Self {
        Diagonal(diag)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[S] {
        &self.0
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        let n = self.0.len();
        Matrix::from_fn(n, n, |r, c| if r == c { self.0[r].clone() } else { S::zero() })
    }

    /// Reciprocal diagonal, or `None` if some entry is zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.0.iter().any(|d| d.is_zero()) {
            return None;
        }
        Some(Diagonal(self.0.iter().map(|d| S::one() / d.clone()).collect()))
    }

    /// `self · m`: scales row `r` of `m` by entry `r`.
    pub fn mul_left(&self, m: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.0.len(), m.rows(), "diagonal size differs from row count");
        Matrix::from_fn(m.rows(), m.cols(), |r, c| self.0[r].clone() * m.get(r, c).clone())
    }

    /// `m · self`: scales column `c` of `m` by entry `c`.
    pub fn mul_right(&self, m: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.0.len(), m.cols(), "diagonal size differs from column count");
        Matrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).clone() * self.0[c].clone())
    }
}

/// How far apart two equally shaped arrays of scalars are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    /// Largest `|a - b|`.
    pub max_abs: f64,
    /// Largest entrywise `|a - b| / max(|a|, |b|)`; entries that are both zero count as 0.
    pub max_rel: f64,
    /// Largest `|b|` over the reference array.
    pub scale: f64,
    /// Whether every pair compared equal.
    pub exact_zero: bool,
}

impl Discrepancy {
    pub fn between<S: Scalar>(a: &[S], b: &[S]) -> Self {
        assert_eq!(a.len(), b.len(), "compared arrays differ in length");
        let mut max_abs = S::zero();
        let mut max_rel = S::zero();
        let mut scale = S::zero();
        let mut exact_zero = true;
        for (x, y) in a.iter().zip(b) {
            let diff = (x.clone() - y.clone()).abs();
            let ay = y.abs();
            if ay > scale {
                scale = ay.clone();
            }
            if diff.is_zero() && x == y {
                continue;
            }
            exact_zero = false;
            let ax = x.abs();
            let denom = if ax > ay { ax } else { ay };
            let rel = diff.clone() / denom;
            if diff > max_abs {
                max_abs = diff;
            }
            if rel > max_rel {
                max_rel = rel;
            }
        }
        Discrepancy {
            max_abs: max_abs.to_f64(),
            max_rel: max_rel.to_f64(),
            scale: scale.to_f64(),
            exact_zero,
        }
    }

    pub fn of_matrices<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()), "matrix shapes differ");
        Self::between(a.as_slice(), b.as_slice())
    }

    /// `max_abs` relative to the largest reference entry.
    pub fn normwise(&self) -> f64 {
        if self.exact_zero || self.max_abs == 0.0 {
            0.0
        } else if self.scale == 0.0 {
            self.max_abs
        } else {
            self.max_abs / self.scale
        }
    }

    /// A zero tolerance demands exact equality.
    pub fn within_entrywise(&self, tol: f64) -> bool {
        self.exact_zero || (tol > 0.0 && self.max_rel <= tol)
    }

    pub fn within_normwise(&self, tol: f64) -> bool {
        self.exact_zero || (tol > 0.0 && self.normwise() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::vec;

    fn m(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::new(rows, cols, v.iter().map(|&x| Rational::from_i64(x)).collect()).unwrap()
    }

    #[test]
    fn product_and_identity() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(&a * &b, m(2, 2, &[2, 1, 4, 3]));
        assert_eq!(&a * &Matrix::identity(2), a);
        assert_eq!(a.pow(0), Matrix::identity(2));
        assert_eq!(a.pow(2), m(2, 2, &[7, 10, 15, 22]));
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::<f64>::new(2, 2, vec![1.0; 3]).is_err());
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert!(a.try_mul(&a).is_err());
        assert!(a.apply(&[Rational::from_i64(1)]).is_err());
    }

    #[test]
    fn apply_identity_and_zero() {
        let v = vec![Rational::from_i64(3), Rational::from_i64(-2)];
        assert_eq!(Matrix::identity(2).apply(&v).unwrap(), v);
        assert_eq!(
            Matrix::<Rational>::zeros(2, 2).apply(&v).unwrap(),
            vec![Rational::from_i64(0); 2]
        );
    }

    #[test]
    fn diagonal_scaling_matches_dense_product() {
        let d = Diagonal::new(vec![Rational::from_i64(2), Rational::from_i64(-3)]);
        let a = m(2, 2, &[1, 2, 3, 4]);
        assert_eq!(d.mul_left(&a), &d.to_matrix() * &a);
        assert_eq!(d.mul_right(&a), &a * &d.to_matrix());
        let inv = d.inverse().unwrap();
        assert_eq!(&d.to_matrix() * &inv.to_matrix(), Matrix::identity(2));
        assert!(Diagonal::new(vec![Rational::from_i64(0)]).inverse().is_none());
    }

    #[test]
    fn discrepancy_measures() {
        let d = Discrepancy::between(&[1.0, 2.0, 0.0], &[1.0, 2.5, 0.0]);
        assert!(!d.exact_zero);
        assert_eq!(d.max_abs, 0.5);
        assert_eq!(d.max_rel, 0.2);
        assert_eq!(d.normwise(), 0.2);
        assert!(d.within_entrywise(0.25));
        assert!(!d.within_entrywise(0.0));
        let e = Discrepancy::between(&[1.0, 0.0], &[1.0, 0.0]);
        assert!(e.exact_zero && e.within_entrywise(0.0));
    }
}
