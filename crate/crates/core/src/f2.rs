//! Dense linear algebra over the two-element field, with rows packed into
//! 64-bit words.

use crate::bits::BitWord;
use crate::error::{Error, Result};
use std::fmt;

/// A vector over F2 packed into u64 words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    words: Vec<u64>,
    len: usize,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, idx0: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(idx0, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, idx0: usize) -> bool {
        debug_assert!(idx0 < self.len);
        self.words[idx0 / 64] >> (idx0 % 64) & 1 == 1
    }

    pub fn set(&mut self, idx0: usize, value: bool) {
        debug_assert!(idx0 < self.len);
        let (w, b) = (idx0 / 64, idx0 % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &F2Vec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// A matrix over F2. All arithmetic is mod 2.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: Vec<F2Vec>,
    cols: usize,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![F2Vec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<F2Vec>) -> Self {
        let cols = rows.first().map_or(0, F2Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols));
        Self { rows, cols }
    }

    /// Rows given as 0/1 arrays, handy in tests.
    pub fn from_bool_rows(rows: &[&[bool]]) -> Self {
        Self::from_rows(rows.iter().map(|r| F2Vec::from_bools(r)).collect())
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &F2Vec {
        &self.rows[r]
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.n_rows());
        for r in 0..self.n_rows() {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.n_rows(), other.n_rows());
        assert_eq!(self.cols, other.cols);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.xor_assign(b);
                r
            })
            .collect();
        F2Matrix::from_rows(rows)
    }

    /// Row vector times matrix: `x . M` for `x` of length `n_rows`.
    pub fn left_mul(&self, x: &BitWord) -> BitWord {
        assert_eq!(x.len(), self.n_rows());
        let mut acc = F2Vec::zeros(self.cols);
        for (i, xi) in x.iter().enumerate() {
            if xi {
                acc.xor_assign(&self.rows[i]);
            }
        }
        BitWord::from_bits(acc.iter())
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &F2Vec) -> F2Vec {
        assert_eq!(v.len(), self.cols);
        F2Vec::from_bools(
            &self
                .rows
                .iter()
                .map(|row| row.dot(v))
                .collect::<Vec<bool>>(),
        )
    }

    /// Reduced row echelon form. Returns `(reduced, rank, pivot_cols)` with
    /// pivot columns reported 1-based and strictly increasing.
    pub fn row_reduce(&self) -> (F2Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(pivot_row) = (rank..m.n_rows()).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.rows.swap(rank, pivot_row);
            let pivot = m.rows[rank].clone();
            for (r, row) in m.rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col + 1);
            rank += 1;
            if rank == m.n_rows() {
                break;
            }
        }
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1
    }

    /// Inverse of a square matrix, or an error when singular.
    pub fn inverse(&self) -> Result<F2Matrix> {
        let n = self.n_rows();
        if n != self.cols {
            return Err(Error::InvalidParameter(
                "inverse of non-square matrix".into(),
            ));
        }
        // Row-reduce [M | I].
        let mut aug = F2Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            aug.set(r, n + r, true);
        }
        // The identity half keeps the augmented rank at n, so singularity
        // shows up as a pivot escaping into the right half.
        let (red, _, pivots) = aug.row_reduce();
        let left_rank = pivots.iter().filter(|&&c| c <= n).count();
        if left_rank < n {
            return Err(Error::RankDeficient {
                rank: left_rank,
                expected: n,
            });
        }
        let mut inv = F2Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if red.get(r, n + c) {
                    inv.set(r, c, true);
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}:", self.n_rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}
