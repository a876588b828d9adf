//! Dense linear algebra over GF(2) with u64-packed rows.
//!
//! Matrices here are small (dozens of rows), so plain Gaussian elimination
//! with a fixed pivot order is both fast enough and deterministic, which
//! keeps every solution and rank computation reproducible across runs.

/// A dense matrix over GF(2). Rows are packed 64 columns per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

/// Result of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The unique solution vector, `cols` entries.
    Unique(Vec<bool>),
    /// No solution exists.
    Inconsistent,
    /// Solutions exist but are not unique (the matrix has a nontrivial kernel).
    Underdetermined,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.data[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / 64;
        let mask = 1u64 << (c % 64);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    fn xor_row(&mut self, target: usize, source: usize) {
        let w = self.words_per_row;
        let (t, s) = (target * w, source * w);
        for k in 0..w {
            let v = self.data[s + k];
            self.data[t + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Rank via forward elimination. Pivots are chosen as the first row with
    /// a set bit in each column, scanning columns left to right.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, c));
            let Some(pivot) = pivot else { continue };
            m.swap_rows(rank, pivot);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_row(r, rank);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Solve `A x = b` by eliminating the augmented matrix.
    pub fn solve(&self, rhs: &[bool]) -> SolveOutcome {
        assert_eq!(rhs.len(), self.rows, "rhs length must match row count");
        let mut m = self.clone();
        let mut b: Vec<bool> = rhs.to_vec();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, c));
            let Some(pivot) = pivot else { continue };
            m.swap_rows(rank, pivot);
            b.swap(rank, pivot);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_row(r, rank);
                    b[r] ^= b[rank];
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }
        // rows past the rank are all-zero; a set rhs bit there means no solution
        if b[rank..].iter().any(|&bit| bit) {
            return SolveOutcome::Inconsistent;
        }
        if rank < self.cols {
            return SolveOutcome::Underdetermined;
        }
        let mut x = vec![false; self.cols];
        for (i, &c) in pivot_cols.iter().enumerate() {
            x[c] = b[i];
        }
        SolveOutcome::Unique(x)
    }
}
