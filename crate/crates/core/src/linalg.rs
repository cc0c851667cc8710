//! Small dense complex linear algebra: enough for commutators, spectral norms and
//! Gram-matrix eigenvalues at dimensions of a few hundred.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out.data[i * n + i] = Complex::one();
        }
        out
    }

    pub fn from_diag(diag: &[Complex<T>]) -> Self {
        let n = diag.len();
        let mut out = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            out.data[i * n + i] = d;
        }
        out
    }

    /// From row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
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

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn diag(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * c).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (d, &b) in dst.iter_mut().zip(other.row(k)) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.try_sub(other)?.max_abs())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> T {
        singular_values(self).into_iter().fold(T::zero(), T::max)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<T: Real> $tr for &CMatrix<T> {
            type Output = CMatrix<T>;
            /// Panics on shape mismatch; use the `try_` form to get an error instead.
            fn $method(self, rhs: Self) -> CMatrix<T> {
                self.$call(rhs).expect("matrix shape mismatch")
            }
        }
    };
}

forward_binop!(Mul, mul, try_mul);
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);

fn to_dmatrix<T: Real>(a: &CMatrix<T>) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(a.rows, a.cols, |i, j| {
        let v = a.get(i, j);
        Complex::new(v.re.as_f64(), v.im.as_f64())
    })
}

/// Singular values (unordered). Decomposed in double precision whatever `T` is.
pub fn singular_values<T: Real>(a: &CMatrix<T>) -> Vec<T> {
    if a.rows == 0 || a.cols == 0 {
        return Vec::new();
    }
    to_dmatrix(a).singular_values().iter().map(|&s| T::lit(s)).collect()
}

/// Eigenvalues (ascending) of a Hermitian matrix.
pub fn hermitian_eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows, found: a.cols });
    }
    if a.rows == 0 {
        return Ok(Vec::new());
    }
    let mut ev: Vec<f64> = to_dmatrix(a).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    Ok(ev.into_iter().map(T::lit).collect())
}
