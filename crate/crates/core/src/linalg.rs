//! Small dense linear algebra: row-major matrices, LU with partial pivoting,
//! a one-norm condition estimate, and 2×2 complex matrices.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{numeric, Result};
use crate::scalar::{Cplx, Scalar};

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| a * s).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect() }
    }

    /// Largest entry in absolute value.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &a| m.max(a.abs()))
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        (0..self.cols).map(|j| (0..self.rows).fold(T::zero(), |s, i| s + self[(i, j)].abs())).fold(T::zero(), T::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.is_finite())
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// `PA = LU` with unit lower `L` stored below the diagonal of `lu`.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
    norm1: T,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(a: &DenseMatrix<T>) -> Result<Self> {
        if a.rows != a.cols {
            return Err(numeric("lu", "matrix is not square"));
        }
        if !a.is_finite() {
            return Err(numeric("lu", "non-finite entries"));
        }
        let n = a.rows;
        let norm1 = a.norm1();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n).map(|i| (i, lu[(i, k)].abs())).fold((k, -T::one()), |b, c| if c.1 > b.1 { c } else { b });
            if pivot <= T::epsilon() * norm1 * T::from_int(n as i64) || pivot.is_zero() {
                return Err(numeric("lu", format!("matrix is singular to working precision at column {k}")));
            }
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Self { lu, perm, norm1 })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// Solves `Aᵗ x = b`.
    pub fn solve_transpose(&self, b: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut y = b.to_vec();
        for i in 0..n {
            for j in 0..i {
                let u = self.lu[(j, i)];
                y[i] = y[i] - u * y[j];
            }
            y[i] /= self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let l = self.lu[(j, i)];
                y[i] = y[i] - l * y[j];
            }
        }
        let mut x = vec![T::zero(); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix<T>) -> DenseMatrix<T> {
        let mut out = DenseMatrix::zeros(b.rows, b.cols);
        for j in 0..b.cols {
            let x = self.solve(&b.column(j));
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    pub fn inverse(&self) -> DenseMatrix<T> {
        self.solve_matrix(&DenseMatrix::identity(self.dim()))
    }

    /// Hager's estimate of `‖A‖₁ ‖A⁻¹‖₁`.
    pub fn condition_estimate(&self) -> T {
        let n = self.dim();
        if n == 0 {
            return T::one();
        }
        let mut x = vec![T::one() / T::from_int(n as i64); n];
        let mut est = T::zero();
        for _ in 0..5 {
            let y = self.solve(&x);
            let y_norm = y.iter().fold(T::zero(), |s, v| s + v.abs());
            let xi: Vec<T> = y.iter().map(|v| if *v >= T::zero() { T::one() } else { -T::one() }).collect();
            let z = self.solve_transpose(&xi);
            let z_dot_x = z.iter().zip(&x).fold(T::zero(), |s, (a, b)| s + *a * *b);
            let (j, zmax) = z.iter().enumerate().fold((0, -T::one()), |b, (i, v)| if v.abs() > b.1 { (i, v.abs()) } else { b });
            est = est.max(y_norm);
            if zmax <= z_dot_x {
                break;
            }
            x = vec![T::zero(); n];
            x[j] = T::one();
        }
        est * self.norm1
    }
}

/// 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T: Scalar>(pub [[Cplx<T>; 2]; 2]);

impl<T: Scalar> Mat2<T> {
    pub fn new(m11: Cplx<T>, m12: Cplx<T>, m21: Cplx<T>, m22: Cplx<T>) -> Self {
        Self([[m11, m12], [m21, m22]])
    }

    pub fn identity() -> Self {
        Self::new(Cplx::one(), Cplx::zero(), Cplx::zero(), Cplx::one())
    }

    pub fn zero() -> Self {
        Self([[Cplx::zero(); 2]; 2])
    }

    pub fn diag(a: Cplx<T>, d: Cplx<T>) -> Self {
        Self::new(a, Cplx::zero(), Cplx::zero(), d)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cplx<T> {
        self.0[i][j]
    }

    pub fn det(&self) -> Cplx<T> {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.0[0][0], self.0[1][0], self.0[0][1], self.0[1][1])
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        Self::new(self.0[1][1] / d, -self.0[0][1] / d, -self.0[1][0] / d, self.0[0][0] / d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        self.map2(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.map2(o, |a, b| a - b)
    }

    pub fn scale(&self, s: Cplx<T>) -> Self {
        Self(self.0.map(|r| r.map(|a| a * s)))
    }

    pub fn apply(&self, v: [Cplx<T>; 2]) -> [Cplx<T>; 2] {
        [self.0[0][0] * v[0] + self.0[0][1] * v[1], self.0[1][0] * v[0] + self.0[1][1] * v[1]]
    }

    fn map2(&self, o: &Self, f: impl Fn(Cplx<T>, Cplx<T>) -> Cplx<T>) -> Self {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = f(self.0[i][j], o.0[i][j]);
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |m, a| m.max(a.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}
