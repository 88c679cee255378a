//! Dense matrices over a [`Ring`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// A dense row-major matrix. Shapes with zero rows or columns are allowed
/// and stand for maps to or from the zero module.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<E>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        Ok(Matrix { rows, cols, data: entries.into_iter().flatten().collect() })
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
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

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        Matrix { rows: idx.len(), cols: self.cols, data }
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<E> core::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<E> core::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

/// Ring-aware constructors and arithmetic.
pub trait MatrixOps: Ring {
    fn zeros(&self, rows: usize, cols: usize) -> Matrix<Self::Elem> {
        Matrix::filled(rows, cols, self.zero())
    }

    fn identity(&self, n: usize) -> Matrix<Self::Elem> {
        let mut m = self.zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.one();
        }
        m
    }

    fn scalar_identity(&self, n: usize, c: &Self::Elem) -> Matrix<Self::Elem> {
        let mut m = self.zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    fn int_matrix(&self, rows: usize, cols: usize, entries: &[i64]) -> Matrix<Self::Elem> {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|v| self.from_i64(*v)).collect() }
    }

    fn matmul(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.cols, b.rows, "matmul shape mismatch");
        let mut out = self.zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = &a[(i, k)];
                if self.is_zero(x) {
                    continue;
                }
                for j in 0..b.cols {
                    let y = &b[(k, j)];
                    if self.is_zero(y) {
                        continue;
                    }
                    out[(i, j)] = self.add(&out[(i, j)], &self.mul(x, y));
                }
            }
        }
        out
    }

    fn mat_vec(&self, a: &Matrix<Self::Elem>, v: &[Self::Elem]) -> Vec<Self::Elem> {
        assert_eq!(a.cols, v.len(), "mat_vec shape mismatch");
        (0..a.rows)
            .map(|i| {
                let mut acc = self.zero();
                for (k, x) in v.iter().enumerate() {
                    if !self.is_zero(x) {
                        acc = self.add(&acc, &self.mul(&a[(i, k)], x));
                    }
                }
                acc
            })
            .collect()
    }

    fn mat_add(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.shape(), b.shape(), "mat_add shape mismatch");
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(x, y)| self.add(x, y)).collect(),
        }
    }

    fn mat_sub(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.shape(), b.shape(), "mat_sub shape mismatch");
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(x, y)| self.sub(x, y)).collect(),
        }
    }

    fn mat_scale(&self, c: &Self::Elem, a: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        a.map(|x| self.mul(c, x))
    }

    fn mat_is_zero(&self, a: &Matrix<Self::Elem>) -> bool {
        a.data.iter().all(|x| self.is_zero(x))
    }

    fn kron(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        let mut out = self.zeros(a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = &a[(i, j)];
                if self.is_zero(x) {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out[(i * b.rows + k, j * b.cols + l)] = self.mul(x, &b[(k, l)]);
                    }
                }
            }
        }
        out
    }

    fn block_diag(&self, blocks: &[Matrix<Self::Elem>]) -> Matrix<Self::Elem> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = self.zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Column-wise concatenation of several blocks with equal row counts.
    fn hcat(&self, rows: usize, blocks: &[Matrix<Self::Elem>]) -> Matrix<Self::Elem> {
        blocks.iter().fold(self.zeros(rows, 0), |acc, b| acc.hstack(b))
    }

    /// Row-wise concatenation of several blocks with equal column counts.
    fn vcat(&self, cols: usize, blocks: &[Matrix<Self::Elem>]) -> Matrix<Self::Elem> {
        blocks.iter().fold(self.zeros(0, cols), |acc, b| acc.vstack(b))
    }
}

impl<R: Ring> MatrixOps for R {}
