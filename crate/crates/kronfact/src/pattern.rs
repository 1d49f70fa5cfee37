//! Binary sparsity patterns and the column-major index arithmetic they
//! are built on.
//!
//! A [`BinaryPattern`] is the set of nonzero positions of an `n x n` binary
//! matrix. All indices on the public surface are 1-based and column-major:
//! the entry `(i, j)` has linear index `(j - 1) * n + i`. Internally a
//! pattern is stored as the sorted vector of those linear indices, which
//! makes equality, deduplication and Kronecker products cheap.

use crate::error::{Error, Result};

/// Largest supported matrix size; keeps `n * n` comfortably inside `u64`.
pub const MAX_SIZE: u64 = (1 << 31) - 1;

/// A 1-based (row, column) position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub row: u64,
    pub col: u64,
}

impl Coordinate {
    pub fn new(row: u64, col: u64) -> Self {
        Coordinate { row, col }
    }
}

impl From<(u64, u64)> for Coordinate {
    fn from((row, col): (u64, u64)) -> Self {
        Coordinate { row, col }
    }
}

/// Column-major linear index of `(i, j)` in an `n x n` matrix.
///
/// Bijective from `{1..n} x {1..n}` onto `{1..n^2}`.
pub fn linear_index(i: u64, j: u64, n: u64) -> Result<u64> {
    if i < 1 || j < 1 || i > n || j > n {
        return Err(Error::domain(format!(
            "index ({i}, {j}) out of range for size {n}"
        )));
    }
    Ok((j - 1) * n + i)
}

/// Inverse of [`linear_index`]: recovers `(i, j)` from `l` by Euclidean
/// division.
pub fn inverse_linear_index(l: u64, n: u64) -> Result<Coordinate> {
    if l < 1 || l > n * n {
        return Err(Error::domain(format!(
            "linear index {l} out of range for size {n}"
        )));
    }
    let j = (l - 1) / n + 1;
    let i = (l - 1) % n + 1;
    Ok(Coordinate { row: i, col: j })
}

/// Splits a 1-based index by the block size `n2`:
/// `i - 1 = (i1 - 1) * n2 + (i2 - 1)` with `1 <= i2 <= n2`.
pub fn split_coordinate(i: u64, n2: u64) -> (u64, u64) {
    debug_assert!(i >= 1 && n2 >= 1);
    ((i - 1) / n2 + 1, (i - 1) % n2 + 1)
}

/// Sparsity pattern of a square binary matrix.
///
/// Immutable after construction; all operations return new values, so
/// patterns may be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryPattern {
    size: u64,
    /// Sorted, deduplicated column-major linear indices.
    entries: Vec<u64>,
}

impl BinaryPattern {
    /// Empty pattern of the given size.
    pub fn empty(size: u64) -> Result<Self> {
        check_size(size)?;
        Ok(BinaryPattern {
            size,
            entries: Vec::new(),
        })
    }

    /// Builds a pattern from coordinates, deduplicating and sorting.
    pub fn from_coordinates<I>(size: u64, coords: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Coordinate>,
    {
        check_size(size)?;
        let mut entries = Vec::new();
        for c in coords {
            let c = c.into();
            entries.push(linear_index(c.row, c.col, size)?);
        }
        entries.sort_unstable();
        entries.dedup();
        Ok(BinaryPattern { size, entries })
    }

    /// Builds a pattern from column-major linear indices.
    pub fn from_linear_indices(size: u64, mut entries: Vec<u64>) -> Result<Self> {
        check_size(size)?;
        if let Some(&l) = entries.iter().find(|&&l| l < 1 || l > size * size) {
            return Err(Error::domain(format!(
                "linear index {l} out of range for size {size}"
            )));
        }
        entries.sort_unstable();
        entries.dedup();
        Ok(BinaryPattern { size, entries })
    }

    /// Identity pattern of size `n`.
    pub fn identity(n: u64) -> Result<Self> {
        check_size(n)?;
        Ok(BinaryPattern {
            size: n,
            entries: (1..=n).map(|i| (i - 1) * n + i).collect(),
        })
    }

    /// Pattern of the all-ones matrix of size `n`.
    pub fn ones(n: u64) -> Result<Self> {
        check_size(n)?;
        Ok(BinaryPattern {
            size: n,
            entries: (1..=n * n).collect(),
        })
    }

    /// Basis pattern with a single entry at `(i, j)`.
    pub fn basis(n: u64, i: u64, j: u64) -> Result<Self> {
        check_size(n)?;
        Ok(BinaryPattern {
            size: n,
            entries: vec![linear_index(i, j, n)?],
        })
    }

    /// Banded pattern: entries `(i, j)` with `i - j <= lower` below the
    /// diagonal and `j - i <= upper` above it.
    pub fn banded(n: u64, lower: u64, upper: u64) -> Result<Self> {
        check_size(n)?;
        let mut entries = Vec::new();
        for j in 1..=n {
            let lo = j.saturating_sub(upper).max(1);
            let hi = (j + lower).min(n);
            for i in lo..=hi {
                entries.push((j - 1) * n + i);
            }
        }
        Ok(BinaryPattern { size: n, entries })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorted column-major linear indices of the entries.
    pub fn linear_indices(&self) -> &[u64] {
        &self.entries
    }

    /// Entries in strictly increasing column-major order.
    pub fn coordinates(&self) -> impl Iterator<Item = Coordinate> + '_ {
        let n = self.size;
        self.entries.iter().map(move |&l| Coordinate {
            row: (l - 1) % n + 1,
            col: (l - 1) / n + 1,
        })
    }

    pub fn contains(&self, row: u64, col: u64) -> bool {
        match linear_index(row, col, self.size) {
            Ok(l) => self.entries.binary_search(&l).is_ok(),
            Err(_) => false,
        }
    }

    /// Kronecker product of two patterns.
    ///
    /// The result has size `size(self) * size(other)` and one entry
    /// `((iA-1)*nB + iB, (jA-1)*nB + jB)` per pair of entries, so
    /// `nnz = nnz(self) * nnz(other)`. This is the brute-force oracle all
    /// factorization code is checked against.
    pub fn kron(&self, other: &BinaryPattern) -> BinaryPattern {
        let na = self.size;
        let nb = other.size;
        let n = na.checked_mul(nb).expect("pattern size overflow");
        assert!(n <= MAX_SIZE, "Kronecker product size {n} exceeds maximum");
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for a in self.coordinates() {
            let row_base = (a.row - 1) * nb;
            let col_base = (a.col - 1) * nb;
            for b in other.coordinates() {
                let row = row_base + b.row;
                let col = col_base + b.col;
                entries.push((col - 1) * n + row);
            }
        }
        entries.sort_unstable();
        BinaryPattern { size: n, entries }
    }
}

/// Kronecker product of a nonempty sequence of patterns, left to right.
pub fn kron_all(factors: &[BinaryPattern]) -> BinaryPattern {
    assert!(!factors.is_empty(), "kron_all requires at least one factor");
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.kron(f);
    }
    acc
}

fn check_size(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::domain("pattern size must be positive"));
    }
    if n > MAX_SIZE {
        return Err(Error::domain(format!(
            "pattern size {n} exceeds maximum {MAX_SIZE}"
        )));
    }
    Ok(())
}
