//! Small dense real matrices in column-major storage.

use crate::error::{Error, Result};
use crate::pattern::BinaryPattern;
use crate::scalar::Scalar;

/// Dense matrix with entries of type `T`, stored column-major.
///
/// Indexing on this type is 0-based; the 1-based convention of the rest of
/// the crate applies to file formats and patterns, and the I/O layer
/// converts at the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    /// Builds a matrix from column-major values; all entries must be finite.
    pub fn from_column_major(rows: usize, cols: usize, values: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain("matrix dimensions must be positive"));
        }
        if values.len() != rows * cols {
            return Err(Error::domain(format!(
                "expected {} values for a {rows}x{cols} matrix, got {}",
                rows * cols,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("matrix entries must be finite"));
        }
        Ok(DenseMatrix { rows, cols, values })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            values: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut values = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                values.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, values }
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

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        debug_assert!(row < self.rows && col < self.cols);
        self.values[col * self.rows + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: T) {
        debug_assert!(row < self.rows && col < self.cols);
        self.values[col * self.rows + row] = value;
    }

    /// Column-major slice of the values.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn frobenius_norm(&self) -> T {
        self.values
            .iter()
            .map(|&v| v * v)
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn scale(&self, factor: T) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            values: self.values.iter().map(|&v| v * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// `self * v`.
    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![T::zero(); self.rows];
        for (j, &vj) in v.iter().enumerate() {
            let col = &self.values[j * self.rows..(j + 1) * self.rows];
            for (o, &c) in out.iter_mut().zip(col) {
                *o += c * vj;
            }
        }
        out
    }

    /// `self^T * v`.
    pub fn matvec_transposed(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let col = &self.values[j * self.rows..(j + 1) * self.rows];
                col.iter()
                    .zip(v)
                    .map(|(&c, &x)| c * x)
                    .fold(T::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Dense Kronecker product; intended for small test and verification
    /// matrices.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = DenseMatrix::zeros(rows, cols);
        for ja in 0..self.cols {
            for ia in 0..self.rows {
                let a = self.get(ia, ja);
                for jb in 0..other.cols {
                    for ib in 0..other.rows {
                        out.set(
                            ia * other.rows + ib,
                            ja * other.cols + jb,
                            a * other.get(ib, jb),
                        );
                    }
                }
            }
        }
        out
    }

    /// Positions of the nonzero entries, as a 1-based binary pattern.
    /// Square matrices only.
    pub fn sparsity_pattern(&self) -> Result<BinaryPattern> {
        if !self.is_square() {
            return Err(Error::domain(format!(
                "sparsity pattern requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows as u64;
        let entries = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, _)| idx as u64 + 1)
            .collect();
        BinaryPattern::from_linear_indices(n, entries)
    }
}
