//! Dense square matrices of exact rationals, plus the two 0/1 structural
//! matrices: the divisibility matrix (1 at (i,j) iff j | i, unit
//! lower-triangular) and its complement.
//!
//! Indices are 1-based everywhere; divisibility of the indices themselves is
//! the whole point of these matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// First cell where two matrices differ, row-major order, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Dense n×n matrix of rationals in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Rat>, // row-major, entries[(i-1)*n + (j-1)] = entry(i, j)
}

impl ExactMatrix {
    /// Build from a function of the 1-based cell position.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::OrderMismatch(n, row.len()));
            }
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    /// C_n: entry(i,j) = 1 iff j divides i. Unit lower-triangular, so its
    /// determinant is 1.
    pub fn divisibility_matrix(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i % j == 0 { Rat::one() } else { Rat::zero() })
    }

    /// D_n: entry(i,j) = 1 iff j does not divide i; the complement of the
    /// divisibility matrix within the all-ones matrix.
    pub fn nondivisibility_matrix(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i % j == 0 { Rat::zero() } else { Rat::one() })
    }

    pub fn diagonal(values: &[Rat]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i - 1].clone()
            } else {
                Rat::zero()
            }
        }))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// entry(i, j), 1-based. Panics out of range.
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "index out of range");
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.entry(j, i).clone())
    }

    /// Exact product. Zero entries are skipped, which makes products with the
    /// sparse 0/1 factors and with diagonal factors cheap without changing
    /// the result.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = vec![Rat::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out[i * n + j] += a * b;
                }
            }
        }
        Ok(ExactMatrix { n, entries: out })
    }

    pub fn is_diagonal(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| i == j || self.entry(i, j).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// Smallest (i, j) in row-major order where the two matrices differ,
    /// or `None` when they are entrywise equal.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<Mismatch>> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.entry(i, j) != other.entry(i, j) {
                    return Ok(Some(Mismatch {
                        i,
                        j,
                        lhs: self.entry(i, j).clone(),
                        rhs: other.entry(i, j).clone(),
                    }));
                }
            }
        }
        Ok(None)
    }

    pub fn entrywise_equal(&self, other: &Self) -> Result<bool> {
        Ok(self.first_mismatch(other)?.is_none())
    }

    pub(crate) fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        self.entries.chunks(self.n)
    }
}
