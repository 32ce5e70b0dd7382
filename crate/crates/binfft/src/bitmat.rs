//! Square bit matrices over GF(2) with method-of-four-Russians application,
//! Gauss-Jordan inversion, and a linear-system solver. These back the
//! representation-change isomorphisms and the s_i evaluation tables.

use crate::bits::W256;

/// A word type usable as a GF(2) vector of fixed width.
pub trait BitWord: Copy + PartialEq {
    const BITS: usize;
    fn zero() -> Self;
    fn xor(self, other: Self) -> Self;
    fn bit(self, i: usize) -> bool;
    fn set_bit(&mut self, i: usize);
    /// Extracts `width <= 16` bits starting at `offset` as a table index.
    fn chunk(self, offset: usize, width: usize) -> usize;
}

impl BitWord for u32 {
    const BITS: usize = 32;
    fn zero() -> Self {
        0
    }
    fn xor(self, other: Self) -> Self {
        self ^ other
    }
    fn bit(self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    fn set_bit(&mut self, i: usize) {
        *self |= 1 << i;
    }
    fn chunk(self, offset: usize, width: usize) -> usize {
        ((self >> offset) as usize) & ((1 << width) - 1)
    }
}

impl BitWord for u128 {
    const BITS: usize = 128;
    fn zero() -> Self {
        0
    }
    fn xor(self, other: Self) -> Self {
        self ^ other
    }
    fn bit(self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }
    fn set_bit(&mut self, i: usize) {
        *self |= 1 << i;
    }
    fn chunk(self, offset: usize, width: usize) -> usize {
        ((self >> offset) as usize) & ((1 << width) - 1)
    }
}

impl BitWord for W256 {
    const BITS: usize = 256;
    fn zero() -> Self {
        W256::ZERO
    }
    fn xor(self, other: Self) -> Self {
        self ^ other
    }
    fn bit(self, i: usize) -> bool {
        W256::bit(self, i)
    }
    fn set_bit(&mut self, i: usize) {
        W256::set_bit(self, i)
    }
    fn chunk(self, offset: usize, width: usize) -> usize {
        let shifted = if offset < 128 {
            let mut v = (self.lo >> offset) as usize;
            if offset + width > 128 {
                v |= (self.hi as usize) << (128 - offset);
            }
            v
        } else {
            (self.hi >> (offset - 128)) as usize
        };
        shifted & ((1 << width) - 1)
    }
}

/// Column-major square matrix over GF(2): `cols[j]` is the image of basis
/// vector `j`.
#[derive(Clone, Debug)]
pub struct BitMatrix<V: BitWord> {
    pub cols: Vec<V>,
}

impl<V: BitWord> BitMatrix<V> {
    pub fn from_cols(cols: Vec<V>) -> Self {
        assert_eq!(cols.len(), V::BITS);
        BitMatrix { cols }
    }

    pub fn identity() -> Self {
        let mut cols = vec![V::zero(); V::BITS];
        for (j, c) in cols.iter_mut().enumerate() {
            c.set_bit(j);
        }
        BitMatrix { cols }
    }

    /// Naive column-XOR application; the oracle the M4R path is checked against.
    pub fn apply_naive(&self, x: V) -> V {
        let mut acc = V::zero();
        for (j, &c) in self.cols.iter().enumerate() {
            if x.bit(j) {
                acc = acc.xor(c);
            }
        }
        acc
    }

    fn rows(&self) -> Vec<V> {
        let n = V::BITS;
        let mut rows = vec![V::zero(); n];
        for (j, &c) in self.cols.iter().enumerate() {
            for (i, r) in rows.iter_mut().enumerate() {
                if c.bit(i) {
                    r.set_bit(j);
                }
            }
        }
        rows
    }

    fn from_rows(rows: &[V]) -> Self {
        let n = V::BITS;
        let mut cols = vec![V::zero(); n];
        for (i, &r) in rows.iter().enumerate() {
            for (j, c) in cols.iter_mut().enumerate() {
                if r.bit(j) {
                    c.set_bit(i);
                }
            }
        }
        BitMatrix { cols }
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<BitMatrix<V>> {
        let n = V::BITS;
        let mut left = self.rows();
        let mut right = BitMatrix::<V>::identity().rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| left[r].bit(col))?;
            left.swap(col, pivot);
            right.swap(col, pivot);
            for r in 0..n {
                if r != col && left[r].bit(col) {
                    left[r] = left[r].xor(left[col]);
                    right[r] = right[r].xor(right[col]);
                }
            }
        }
        Some(BitMatrix::from_rows(&right))
    }

    pub fn rank(&self) -> usize {
        let n = V::BITS;
        let mut rows = self.rows();
        let mut rank = 0;
        for col in 0..n {
            if let Some(p) = (rank..n).find(|&r| rows[r].bit(col)) {
                rows.swap(rank, p);
                for r in 0..n {
                    if r != rank && rows[r].bit(col) {
                        rows[r] = rows[r].xor(rows[rank]);
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &BitMatrix<V>) -> BitMatrix<V> {
        let cols = other.cols.iter().map(|&c| self.apply_naive(c)).collect();
        BitMatrix { cols }
    }
}

/// Precombined column XORs for chunked application of a bit matrix: the input
/// is split into `chunk_bits`-wide pieces and each piece selects one table row.
#[derive(Clone, Debug)]
pub struct M4rTables<V: BitWord> {
    chunk_bits: usize,
    tables: Vec<Vec<V>>,
}

impl<V: BitWord> M4rTables<V> {
    pub fn build(m: &BitMatrix<V>, chunk_bits: usize) -> Self {
        assert!(chunk_bits > 0 && chunk_bits <= 16 && V::BITS % chunk_bits == 0);
        let n_chunks = V::BITS / chunk_bits;
        let mut tables = Vec::with_capacity(n_chunks);
        for c in 0..n_chunks {
            let mut table = vec![V::zero(); 1 << chunk_bits];
            for t in 1usize..(1 << chunk_bits) {
                let low = t & (t - 1);
                let bit = t.trailing_zeros() as usize;
                table[t] = table[low].xor(m.cols[c * chunk_bits + bit]);
            }
            tables.push(table);
        }
        M4rTables { chunk_bits, tables }
    }

    #[inline]
    pub fn apply(&self, x: V) -> V {
        let mut acc = V::zero();
        for (c, table) in self.tables.iter().enumerate() {
            acc = acc.xor(table[x.chunk(c * self.chunk_bits, self.chunk_bits)]);
        }
        acc
    }
}

/// Solver for 128-dimensional GF(2) systems `A x = b` with a fixed elimination
/// precomputed once. Used for the Artin-Schreier equations r^2 + r = c, whose
/// map has a one-dimensional kernel.
pub struct LinSolver128 {
    reduced: Vec<u128>,
    transform: Vec<u128>,
    pivot_col: Vec<Option<usize>>,
}

impl LinSolver128 {
    pub fn new(a: &BitMatrix<u128>) -> Self {
        let n = 128;
        let mut reduced = a.rows();
        let mut transform: Vec<u128> = (0..n).map(|i| 1u128 << i).collect();
        let mut pivot_col = vec![None; n];
        let mut rank = 0;
        for col in 0..n {
            if let Some(p) = (rank..n).find(|&r| (reduced[r] >> col) & 1 == 1) {
                reduced.swap(rank, p);
                transform.swap(rank, p);
                for r in 0..n {
                    if r != rank && (reduced[r] >> col) & 1 == 1 {
                        reduced[r] ^= reduced[rank];
                        transform[r] ^= transform[rank];
                    }
                }
                pivot_col[rank] = Some(col);
                rank += 1;
            }
        }
        LinSolver128 { reduced, transform, pivot_col }
    }

    /// One particular solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: u128) -> Option<u128> {
        let mut x = 0u128;
        for (r, &pc) in self.pivot_col.iter().enumerate() {
            let rhs = (self.transform[r] & b).count_ones() & 1 == 1;
            match pc {
                Some(col) => {
                    if rhs {
                        x |= 1 << col;
                    }
                }
                None => {
                    if rhs {
                        return None;
                    }
                }
            }
        }
        debug_assert!(self.check(x, b));
        Some(x)
    }

    fn check(&self, x: u128, b: u128) -> bool {
        // verify through the reduced system
        for (r, &row) in self.reduced.iter().enumerate() {
            let lhs = (row & x).count_ones() & 1;
            let rhs = (self.transform[r] & b).count_ones() & 1;
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}
