//! Conversion between the monomial basis and the basis whose k-th vector is
//! the product of the vanishing polynomials s_i selected by the bits of k.
//! The transform is a pure XOR network on coefficient words: every step is a
//! division by a two-term polynomial x^A + x^B, performed by repeated
//! subtraction. Coefficient words are opaque; the network never multiplies.

use std::ops::BitXorAssign;

/// Buffer the conversion network operates on: a sequence of coefficient
/// items supporting bulk range XOR (`dst ^= src`, ranges disjoint).
pub trait XorBuf {
    fn len_items(&self) -> usize;
    fn xor_range(&mut self, src: usize, dst: usize, len: usize);
}

impl<T: Copy + BitXorAssign> XorBuf for [T] {
    fn len_items(&self) -> usize {
        self.len()
    }

    fn xor_range(&mut self, src: usize, dst: usize, len: usize) {
        debug_assert!(dst + len <= src);
        for o in 0..len {
            let v = self[src + o];
            self[dst + o] ^= v;
        }
    }
}

/// One-bit coefficients packed 64 per machine word; the same network run at
/// bit granularity (used by the Frobenius-path encoding).
pub struct PackedBits<'a> {
    pub words: &'a mut [u64],
    pub nbits: usize,
}

impl XorBuf for PackedBits<'_> {
    fn len_items(&self) -> usize {
        self.nbits
    }

    fn xor_range(&mut self, src: usize, dst: usize, len: usize) {
        crate::bits::xor_bit_range(self.words, src, dst, len);
    }
}

/// A bulk XOR of `len` items from `src` into `dst`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct RangeXor {
    pub src: usize,
    pub dst: usize,
    pub len: usize,
}

fn largest_pow2_at_most(x: usize) -> usize {
    debug_assert!(x >= 1);
    1 << (usize::BITS - 1 - x.leading_zeros())
}

/// Division chunk size for a length: the divisor is s_K with K the largest
/// power of two such that deg(s_K) = 2^K is at most items-1.
fn division_chunk(items: usize) -> usize {
    let m = items.trailing_zeros() as usize;
    1 << largest_pow2_at_most(m - 1)
}

/// Emits the variable-substitution network: divisions of the item range by
/// powers of the two-term divisor of degree `d` items. A division by
/// x^A + x^B replaces coefficient j (j >= A) by adding it at j-A+B; run
/// descending, which groups into two disjoint bulk ranges.
fn varsubs_ops(base: usize, items: usize, d: usize, unit: usize, forward: bool, f: &mut impl FnMut(RangeXor)) {
    if items <= d {
        return;
    }
    let a = items / 2;
    let b = items / (2 * d);
    let op_high = RangeXor {
        src: base + (a + b) * unit,
        dst: base + 2 * b * unit,
        len: (a - b) * unit,
    };
    let op_low = RangeXor { src: base + a * unit, dst: base + b * unit, len: b * unit };
    if forward {
        f(op_high);
        f(op_low);
        varsubs_ops(base, a, d, unit, forward, f);
        varsubs_ops(base + a * unit, a, d, unit, forward, f);
    } else {
        varsubs_ops(base + a * unit, a, d, unit, forward, f);
        varsubs_ops(base, a, d, unit, forward, f);
        f(op_low);
        f(op_high);
    }
}

fn cvt_ops(base: usize, items: usize, unit: usize, forward: bool, f: &mut impl FnMut(RangeXor)) {
    if items <= 2 {
        return;
    }
    let chunk = division_chunk(items);
    let n_chunks = items / chunk;
    if forward {
        varsubs_ops(base, items, chunk, unit, true, f);
        cvt_ops(base, n_chunks, unit * chunk, true, f);
        for c in 0..n_chunks {
            cvt_ops(base + c * chunk * unit, chunk, unit, true, f);
        }
    } else {
        for c in (0..n_chunks).rev() {
            cvt_ops(base + c * chunk * unit, chunk, unit, false, f);
        }
        cvt_ops(base, n_chunks, unit * chunk, false, f);
        varsubs_ops(base, items, chunk, unit, false, f);
    }
}

fn assert_pow2(items: usize) {
    assert!(items.is_power_of_two(), "coefficient count must be a power of two, got {items}");
}

/// Monomial basis to the product basis, in place. Length must be a power of
/// two (callers zero-pad).
pub fn basis_cvt<B: XorBuf + ?Sized>(buf: &mut B) {
    let items = buf.len_items();
    assert_pow2(items);
    cvt_ops(0, items, 1, true, &mut |op| buf.xor_range(op.src, op.dst, op.len));
}

/// Inverse conversion: the same XOR network executed in reverse order.
pub fn i_basis_cvt<B: XorBuf + ?Sized>(buf: &mut B) {
    let items = buf.len_items();
    assert_pow2(items);
    cvt_ops(0, items, 1, false, &mut |op| buf.xor_range(op.src, op.dst, op.len));
}

/// Expresses f as a series in y = s_{2^i} (divisor degree 2^(2^i) items):
/// afterwards the buffer holds the y-power coefficients concatenated, each a
/// polynomial of degree below deg(y).
pub fn var_subs<B: XorBuf + ?Sized>(buf: &mut B, i: u32) {
    let items = buf.len_items();
    assert_pow2(items);
    let d = 1usize << (1usize << i);
    varsubs_ops(0, items, d, 1, true, &mut |op| buf.xor_range(op.src, op.dst, op.len));
}

/// The forward conversion schedule for a given length, for inspection and
/// structural tests.
pub fn conversion_schedule(items: usize) -> Vec<RangeXor> {
    assert_pow2(items);
    let mut ops = Vec::new();
    cvt_ops(0, items, 1, true, &mut |op| ops.push(op));
    ops
}

/// Literal recursive form of the conversion, dividing item by item; kept as
/// the reference the scheduled version is checked against.
pub fn basis_cvt_reference<T: Copy + BitXorAssign>(buf: &mut [T]) {
    assert_pow2(buf.len());
    cvt_reference_inner(buf, 1);
}

fn cvt_reference_inner<T: Copy + BitXorAssign>(buf: &mut [T], item: usize) {
    let items = buf.len() / item;
    if items <= 2 {
        return;
    }
    let chunk = division_chunk(items);
    varsubs_reference_inner(buf, item, chunk);
    cvt_reference_inner(buf, item * chunk);
    for piece in buf.chunks_mut(chunk * item) {
        cvt_reference_inner(piece, item);
    }
}

fn varsubs_reference_inner<T: Copy + BitXorAssign>(buf: &mut [T], item: usize, d: usize) {
    let items = buf.len() / item;
    if items <= d {
        return;
    }
    let a = items / 2;
    let b = items / (2 * d);
    for j in (a..items).rev() {
        for o in 0..item {
            let v = buf[j * item + o];
            buf[(j - a + b) * item + o] ^= v;
        }
    }
    let (lo, hi) = buf.split_at_mut(a * item);
    varsubs_reference_inner(lo, item, d);
    varsubs_reference_inner(hi, item, d);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::SplitMix64;

    fn bits_to_vec(bits: &[u64], n: usize) -> Vec<u64> {
        let mut v = vec![0u64; n];
        v[..bits.len()].copy_from_slice(bits);
        v
    }

    #[test]
    fn low_degree_input_passes_through() {
        // deg f below the divisor degree: unchanged
        let mut f = bits_to_vec(&[3, 1, 4, 1], 8);
        let orig = f.clone();
        var_subs(&mut f[..], 1); // y = s_2, degree 4; f has degree 3 content in low half
        assert_eq!(&f[..4], &orig[..4]);

        let mut g = vec![7u64, 9];
        let before = g.clone();
        basis_cvt(&mut g[..]);
        assert_eq!(g, before);
    }

    #[test]
    fn varsubs_x4_example() {
        // x^4 with y = x^4 + x becomes x + y
        let mut f = vec![0u64; 8];
        f[4] = 1;
        var_subs(&mut f[..], 1);
        let mut expect = vec![0u64; 8];
        expect[1] = 1; // h_0 = x
        expect[4] = 1; // h_1 = 1
        assert_eq!(f, expect);
    }

    #[test]
    fn varsubs_char2_square_example() {
        // x^8 + x^2 = (x^4+x)^2, so h = y^2
        let mut f = vec![0u64; 16];
        f[8] = 1;
        f[2] = 1;
        var_subs(&mut f[..], 1);
        let mut expect = vec![0u64; 16];
        expect[8] = 1; // chunk 2 (items 8..12) holds h_2 = 1
        assert_eq!(f, expect);
    }

    #[test]
    fn x_squared_converts_to_two_basis_terms() {
        let mut f = vec![0u64, 0, 1, 0];
        basis_cvt(&mut f[..]);
        assert_eq!(f, vec![0, 1, 1, 0]);
        i_basis_cvt(&mut f[..]);
        assert_eq!(f, vec![0, 0, 1, 0]);
    }

    #[test]
    fn degree15_division_cascade() {
        // four layers for sixteen coefficients: divide by s_2^2 = x^8+x^2,
        // then s_2 = x^4+x twice, then the s_1-in-y chunk step, then s_1
        // within each chunk
        let ops = conversion_schedule(16);
        let expect = vec![
            RangeXor { src: 10, dst: 4, len: 6 },
            RangeXor { src: 8, dst: 2, len: 2 },
            RangeXor { src: 5, dst: 2, len: 3 },
            RangeXor { src: 4, dst: 1, len: 1 },
            RangeXor { src: 13, dst: 10, len: 3 },
            RangeXor { src: 12, dst: 9, len: 1 },
            RangeXor { src: 12, dst: 8, len: 4 },
            RangeXor { src: 8, dst: 4, len: 4 },
            RangeXor { src: 3, dst: 2, len: 1 },
            RangeXor { src: 2, dst: 1, len: 1 },
            RangeXor { src: 7, dst: 6, len: 1 },
            RangeXor { src: 6, dst: 5, len: 1 },
            RangeXor { src: 11, dst: 10, len: 1 },
            RangeXor { src: 10, dst: 9, len: 1 },
            RangeXor { src: 15, dst: 14, len: 1 },
            RangeXor { src: 14, dst: 13, len: 1 },
        ];
        assert_eq!(ops, expect);
    }

    #[test]
    fn scheduled_matches_reference() {
        let mut rng = SplitMix64::new(1);
        for m in 2..=10u32 {
            let n = 1usize << m;
            for _ in 0..20 {
                let orig: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
                let mut scheduled = orig.clone();
                basis_cvt(&mut scheduled[..]);
                let mut reference = orig.clone();
                basis_cvt_reference(&mut reference);
                assert_eq!(scheduled, reference, "size 2^{m}");
            }
        }
    }

    #[test]
    fn roundtrip_many_sizes() {
        let mut rng = SplitMix64::new(2);
        for m in 1..=12u32 {
            let n = 1usize << m;
            for _ in 0..(1000 / m as usize).max(4) {
                let orig: Vec<u128> = (0..n).map(|_| rng.next_u128()).collect();
                let mut buf = orig.clone();
                basis_cvt(&mut buf[..]);
                i_basis_cvt(&mut buf[..]);
                assert_eq!(buf, orig);
                i_basis_cvt(&mut buf[..]);
                basis_cvt(&mut buf[..]);
                assert_eq!(buf, orig);
            }
        }
    }

    #[test]
    fn constant_vector_unchanged() {
        let mut f = bits_to_vec(&[42], 16);
        basis_cvt(&mut f[..]);
        assert_eq!(f, bits_to_vec(&[42], 16));
    }

    #[test]
    fn transform_is_linear_in_words() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..50 {
            let n = 64;
            let a: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
            let b: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
            let mut ca = a.clone();
            let mut cb = b.clone();
            let mut cab: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
            basis_cvt(&mut ca[..]);
            basis_cvt(&mut cb[..]);
            basis_cvt(&mut cab[..]);
            let xored: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| x ^ y).collect();
            assert_eq!(cab, xored);
        }
    }

    #[test]
    fn network_is_width_agnostic() {
        let mut rng = SplitMix64::new(4);
        let n = 128;
        let a: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
        let mut as_u64 = a.clone();
        let mut as_u128: Vec<u128> = a.iter().map(|&x| x as u128).collect();
        basis_cvt(&mut as_u64[..]);
        basis_cvt(&mut as_u128[..]);
        assert_eq!(as_u64, as_u128.iter().map(|&x| x as u64).collect::<Vec<_>>());
        assert!(as_u128.iter().all(|&x| x >> 64 == 0));
    }

    #[test]
    fn zero_padding_commutes_with_conversion() {
        let mut rng = SplitMix64::new(5);
        for m in 1..=8u32 {
            let n = 1usize << m;
            for _ in 0..20 {
                let f: Vec<u64> = (0..n).map(|_| rng.next_u64()).collect();
                let mut small = f.clone();
                basis_cvt(&mut small[..]);
                small.resize(2 * n, 0);
                let mut padded = f.clone();
                padded.resize(2 * n, 0);
                basis_cvt(&mut padded[..]);
                assert_eq!(small, padded);
            }
        }
    }

    #[test]
    fn packed_bits_match_word_network() {
        let mut rng = SplitMix64::new(6);
        for m in 6..=12u32 {
            let nbits = 1usize << m;
            let mut words: Vec<u64> = (0..nbits / 64).map(|_| rng.next_u64()).collect();
            let mut as_items: Vec<u64> = (0..nbits)
                .map(|i| (words[i / 64] >> (i % 64)) & 1)
                .collect();
            basis_cvt(&mut PackedBits { words: &mut words, nbits });
            basis_cvt(&mut as_items[..]);
            for i in 0..nbits {
                assert_eq!((words[i / 64] >> (i % 64)) & 1, as_items[i], "bit {i} size 2^{m}");
            }
        }
    }
}
