//! Dense bit-packed GF(2) linear algebra.
//!
//! The matrices in this toolkit top out around 2640 x 5280 bits, small
//! enough that word-packed Gaussian elimination beats any sparse scheme.
//! Pivots are always the first nonzero entry in column order, so every
//! result is deterministic.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[{}; ones: {:?}]", self.len, self.iter_ones().collect::<Vec<_>>())
    }
}

/// Row-major bit-packed binary matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words_per_row: wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, ones) in rows.iter().enumerate() {
            for &c in ones {
                m.set(r, c, true);
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// XOR row `src` into row `dst`.
    fn xor_rows(&mut self, dst: usize, src: usize) {
        let wpr = self.words_per_row;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * wpr);
            (&mut lo[dst * wpr..dst * wpr + wpr], &hi[..wpr])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * wpr);
            (&mut hi[..wpr], &lo[src * wpr..src * wpr + wpr])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for w in 0..wpr {
            self.data.swap(a * wpr + w, b * wpr + w);
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        debug_assert_eq!(v.len, self.cols);
        self.data[r * self.words_per_row..(r + 1) * self.words_per_row].copy_from_slice(&v.words);
    }

    /// Column indices of the ones in row `r` (the sparse view).
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        self.row(r).iter_ones().collect()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.cols];
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                w[c] += 1;
            }
        }
        w
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hconcat: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                m.set(r, c, true);
            }
            for c in other.row(r).iter_ones() {
                m.set(r, self.cols + c, true);
            }
        }
        Ok(m)
    }

    pub fn mat_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "mat_vec: matrix has {} cols, vector has {}",
                self.cols, x.len
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(r).iter().zip(&x.words) {
                acc ^= a & b;
            }
            if acc.count_ones() & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mat_mat(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mat_mat: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            let wpr = out.words_per_row;
            let dst = &mut out.data[r * wpr..(r + 1) * wpr];
            for c in row.iter_ones() {
                for (x, y) in dst.iter_mut().zip(other.row_words(c)) {
                    *x ^= y;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduced row-echelon form with the pivot column list.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(next_row, pr);
            for r in 0..m.rows {
                if r != next_row && m.get(r, col) {
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

    /// Any solution of `self * x = s`, or `None` if the system is infeasible.
    ///
    /// Free variables are set to 0, so the solution is supported on the
    /// pivot columns.
    pub fn solve(&self, s: &BitVec) -> Result<Option<BitVec>> {
        if s.len != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: matrix has {} rows, rhs has {}",
                self.rows, s.len
            )));
        }
        let aug = self.hconcat(&column_matrix(s))?;
        let (r, pivots) = aug.rref();
        // A pivot in the rhs column marks an inconsistent system.
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &col) in pivots.iter().enumerate() {
            if r.get(i, self.cols) {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }

    /// True iff `v` lies in the row space of `self`.
    pub fn in_rowspace(&self, v: &BitVec) -> Result<bool> {
        if v.len != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "in_rowspace: matrix has {} cols, vector has {}",
                self.cols, v.len
            )));
        }
        // Rank is unchanged exactly when v is spanned by the rows.
        let base = self.rank();
        let mut aug = BitMatrix::zeros(self.rows + 1, self.cols);
        for r in 0..self.rows {
            aug.set_row(r, &self.row(r));
        }
        aug.set_row(self.rows, v);
        Ok(aug.rank() == base)
    }

    /// A basis of the right nullspace, one vector per row of the result.
    pub fn nullspace(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = BitMatrix::zeros(free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, true);
            for (i, &pc) in pivots.iter().enumerate() {
                if r.get(i, fc) {
                    basis.set(bi, pc, true);
                }
            }
        }
        basis
    }

    /// Raw packed words, row-major; stable across runs for digesting.
    pub fn packed_words(&self) -> &[u64] {
        &self.data
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(16) {
            for c in 0..self.cols.min(80) {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn column_matrix(v: &BitVec) -> BitMatrix {
    let mut m = BitMatrix::zeros(v.len, 1);
    for i in v.iter_ones() {
        m.set(i, 0, true);
    }
    m
}

/// Precomputed row-space membership tester: reduces queries against the
/// RREF instead of re-eliminating the whole matrix per call.
pub struct RowSpace {
    rref: BitMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let (rref, pivots) = m.rref();
        RowSpace { rref, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut rem = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if rem.get(p) {
                rem.xor_assign(&self.rref.row(i));
            }
        }
        rem.is_zero()
    }
}

/// Column-permuted elimination state reused by OSD for repeated solves
/// against the same matrix.
///
/// Rows of `reduced` are the RREF of the column-permuted input; `transform`
/// satisfies `transform * permuted(input) = reduced`, so any rhs can be
/// mapped through it once and read off the pivot rows.
pub struct PermutedRref {
    pub reduced: BitMatrix,
    pub transform: BitMatrix,
    pub pivots: Vec<usize>,
    pub perm: Vec<usize>,
}

impl PermutedRref {
    /// Eliminate `m` with its columns taken in the order given by `perm`.
    pub fn new(m: &BitMatrix, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), m.cols());
        let mut work = BitMatrix::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            let row = m.row(r);
            for (newc, &oldc) in perm.iter().enumerate() {
                if row.get(oldc) {
                    work.set(r, newc, true);
                }
            }
        }
        let mut t = BitMatrix::identity(m.rows());
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..work.cols() {
            if next_row >= work.rows() {
                break;
            }
            let Some(pr) = (next_row..work.rows()).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(next_row, pr);
            t.swap_rows(next_row, pr);
            for r in 0..work.rows() {
                if r != next_row && work.get(r, col) {
                    work.xor_rows(r, next_row);
                    t.xor_rows(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        PermutedRref {
            reduced: work,
            transform: t,
            pivots,
            perm: perm.to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Map a rhs through the recorded row operations.
    pub fn apply_transform(&self, s: &BitVec) -> BitVec {
        self.transform.mat_vec(s).expect("rhs length checked by caller")
    }

    /// True iff `transformed` (already passed through `apply_transform`) is
    /// consistent, i.e. zero on all non-pivot rows.
    pub fn consistent(&self, transformed: &BitVec) -> bool {
        (self.rank()..transformed.len()).all(|r| !transformed.get(r))
    }
}
