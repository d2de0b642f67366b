//! Dense GF(2) matrices with word-packed rows.
//!
//! Rows are stored contiguously, each padded to a whole number of 64-bit
//! words, so row xor (the inner loop of every elimination and product here)
//! runs on words. Observable semantics are plain row-major bits.

use crate::bits::{BitsError, BitString};
use rand::Rng;

const WORD_BITS: usize = 64;

/// A matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = cols.div_ceil(WORD_BITS);
        BinMatrix {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given equal-length strings.
    pub fn from_rows(rows: &[BitString]) -> Result<Self, BitsError> {
        let cols = rows.first().map_or(0, BitString::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(BitsError::Dimension {
                    left: format!("{} cols", cols),
                    right: format!("{} cols", r.len()),
                });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let strings: Vec<BitString> = (0..rows).map(|_| BitString::random(cols, rng)).collect();
        Self::from_rows(&strings).expect("equal-length rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.wpr + c / WORD_BITS] >> (WORD_BITS - 1 - c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (WORD_BITS - 1 - c % WORD_BITS);
        let w = &mut self.data[r * self.wpr + c / WORD_BITS];
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitString {
        BitString::from_words(self.row_words(r).to_vec(), self.cols)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * self.wpr);
            (&mut lo[dst * self.wpr..(dst + 1) * self.wpr], &hi[..self.wpr])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * self.wpr);
            (&mut hi[..self.wpr], &lo[src * self.wpr..(src + 1) * self.wpr])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.wpr {
            self.data.swap(a * self.wpr + w, b * self.wpr + w);
        }
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let base = r * self.wpr;
            for w in 0..self.wpr {
                let mut word = self.data[base + w];
                while word != 0 {
                    let lz = word.leading_zeros() as usize;
                    word &= !(1u64 << (WORD_BITS - 1 - lz));
                    out.set(w * WORD_BITS + lz, r, true);
                }
            }
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BinMatrix) -> Result<BinMatrix, BitsError> {
        if self.cols != other.rows {
            return Err(BitsError::Dimension {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u64; other.wpr];
            for c in self.row(r).iter_ones() {
                for (a, b) in acc.iter_mut().zip(other.row_words(c)) {
                    *a ^= b;
                }
            }
            out.row_words_mut(r).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (BinMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let word = col / WORD_BITS;
            let mask = 1u64 << (WORD_BITS - 1 - col % WORD_BITS);
            let Some(pivot) = (next_row..m.rows).find(|&r| m.data[r * m.wpr + word] & mask != 0)
            else {
                continue;
            };
            m.swap_rows(next_row, pivot);
            for r in 0..m.rows {
                if r != next_row && m.data[r * m.wpr + word] & mask != 0 {
                    m.xor_rows(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right nullspace `{v : M vᵀ = 0}`, one vector per row.
    /// The returned matrix restricted to the free columns is the identity;
    /// the second value lists those columns in ascending order.
    pub fn nullspace(&self) -> (BinMatrix, Vec<usize>) {
        let (reduced, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (bi, &f) in free.iter().enumerate() {
            basis.set(bi, f, true);
            for (pi, &p) in pivots.iter().enumerate() {
                if reduced.get(pi, f) {
                    basis.set(bi, p, true);
                }
            }
        }
        (basis, free)
    }

    /// The inverse of a square matrix, if it is non-singular.
    pub fn inverse(&self) -> Option<BinMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let word = col / WORD_BITS;
            let mask = 1u64 << (WORD_BITS - 1 - col % WORD_BITS);
            let pivot = (col..n).find(|&r| work.data[r * work.wpr + word] & mask != 0)?;
            work.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for r in 0..n {
                if r != col && work.data[r * work.wpr + word] & mask != 0 {
                    work.xor_rows(r, col);
                    inv.xor_rows(r, col);
                }
            }
        }
        Some(inv)
    }

    /// Samples a uniformly random non-singular matrix, returning it with its
    /// inverse. Rejection sampling; the success probability per draw exceeds
    /// 0.28 for every dimension.
    pub fn random_invertible<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (BinMatrix, BinMatrix) {
        assert!(dim >= 1);
        loop {
            let candidate = Self::random(dim, dim, rng);
            if let Some(inv) = candidate.inverse() {
                return (candidate, inv);
            }
        }
    }

    /// Samples a uniformly random permutation matrix, returning it with its
    /// inverse (its transpose).
    pub fn random_permutation<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (BinMatrix, BinMatrix) {
        assert!(dim >= 1);
        let mut perm: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut p = Self::zeros(dim, dim);
        let mut p_inv = Self::zeros(dim, dim);
        for (i, &j) in perm.iter().enumerate() {
            p.set(i, j, true);
            p_inv.set(j, i, true);
        }
        (p, p_inv)
    }

    pub fn is_permutation(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| self.row(r).weight() == 1)
            && self.transpose().mul(self).map(|m| m == Self::identity(self.rows)) == Ok(true)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

impl std::fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Row vector times matrix over GF(2).
pub fn vec_mat_mul(v: &BitString, m: &BinMatrix) -> Result<BitString, BitsError> {
    if v.len() != m.rows {
        return Err(BitsError::Dimension {
            left: format!("{} bits", v.len()),
            right: format!("{}x{}", m.rows, m.cols),
        });
    }
    let mut acc = vec![0u64; m.wpr];
    for r in v.iter_ones() {
        for (a, b) in acc.iter_mut().zip(m.row_words(r)) {
            *a ^= b;
        }
    }
    Ok(BitString::from_words(acc, m.cols))
}
