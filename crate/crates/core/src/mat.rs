//! Dense matrices over an exact scalar.
//!
//! A deliberately small container: the matrices in this crate are at most
//! 8x8 (ambient dimension 7 plus an affine row here and there), so clarity
//! and exactness win over sparsity or SIMD.  Determinants use Laplace
//! expansion with zero-skipping, which is instant at these sizes and works
//! over any commutative [`Scalar`] ring — no division, no pivoting.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("rows of unequal length"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::shape(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("matrix addition shape mismatch"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("matrix subtraction shape mismatch"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by Laplace expansion along the first remaining row,
    /// skipping zero entries.  Division-free, so valid over any
    /// commutative scalar ring.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::shape("determinant of a non-square matrix"));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.det_on(0, &idx))
    }

    fn det_on(&self, row: usize, cols: &[usize]) -> T {
        if cols.is_empty() {
            return T::one();
        }
        let mut acc = T::zero();
        for (pos, &j) in cols.iter().enumerate() {
            let entry = &self[(row, j)];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &c)| c)
                .collect();
            let minor = self.det_on(row + 1, &rest);
            let signed = if pos % 2 == 0 {
                entry.clone() * minor
            } else {
                -(entry.clone() * minor)
            };
            acc = acc + signed;
        }
        acc
    }

    /// Determinant of the square submatrix picked out by `row_idx` and
    /// `col_idx` (used for pullback minors).
    pub fn minor_det(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<T> {
        if row_idx.len() != col_idx.len() {
            return Err(Error::shape("minor index sets of unequal size"));
        }
        let sub = Matrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])].clone()
        });
        sub.det()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] -= q * row[source]`
    pub fn row_sub(&mut self, target: usize, source: usize, q: &T) {
        for j in 0..self.cols {
            let delta = q.clone() * self[(source, j)].clone();
            self[(target, j)] = self[(target, j)].clone() - delta;
        }
    }

    /// `col[target] -= q * col[source]`
    pub fn col_sub(&mut self, target: usize, source: usize, q: &T) {
        for i in 0..self.rows {
            let delta = q.clone() * self[(i, source)].clone();
            self[(i, target)] = self[(i, target)].clone() - delta;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

/// Basis of the right kernel `{x : M x = 0}` over the rationals.
///
/// Plain Gauss-Jordan; only meaningful for field scalars, hence pinned to
/// [`Rational`] rather than offered generically.
pub fn rational_kernel_basis(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a = m.clone();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for j in 0..cols {
        if r >= rows {
            break;
        }
        let pivot_row = (r..rows).find(|&i| !a[(i, j)].is_zero());
        let Some(p) = pivot_row else { continue };
        a.swap_rows(r, p);
        let inv = Rational::one() / a[(r, j)].clone();
        for jj in 0..cols {
            a[(r, jj)] = a[(r, jj)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[(i, j)].is_zero() {
                let q = a[(i, j)].clone();
                a.row_sub(i, r, &q);
            }
        }
        pivot_cols.push(j);
        r += 1;
    }
    let free_cols: Vec<usize> = (0..cols).filter(|j| !pivot_cols.contains(j)).collect();
    free_cols
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (rank_i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[(rank_i, f)].clone();
            }
            v
        })
        .collect()
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{})\n{}", self.rows, self.cols, self)
    }
}
