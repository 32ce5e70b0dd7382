//! Dense polynomials over GF(2), the reference multiplier used as the oracle
//! for every FFT backend, and the block split/combine steps that move between
//! bit-polynomials and field-coefficient polynomials.

use crate::bits::W256;

/// A dense GF(2)[x] polynomial. Bit `i` of word `j` is the coefficient of
/// `x^(64j+i)`. `nbits` is a capacity declaration (all bits at positions
/// `>= nbits` are zero), not the exact degree; use [`BitPoly::degree`] for that.
#[derive(Clone, Debug)]
pub struct BitPoly {
    words: Vec<u64>,
    nbits: usize,
}

/// Oracle threshold: operands at most this many words are multiplied by the
/// word-comb schoolbook; longer ones split with Karatsuba. Chosen so the
/// oracle handles 2^22-bit inputs in seconds; correctness does not depend on it.
const KARATSUBA_THRESHOLD_WORDS: usize = 64;

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { words: Vec::new(), nbits: 0 }
    }

    pub fn one() -> Self {
        BitPoly { words: vec![1], nbits: 1 }
    }

    /// Builds a polynomial from packed words, declaring `nbits` coefficients.
    /// Bits at positions `>= nbits` are cleared.
    pub fn from_words(mut words: Vec<u64>, nbits: usize) -> Self {
        words.resize(nbits.div_ceil(64), 0);
        if !nbits.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (nbits % 64)) - 1;
            }
        }
        BitPoly { words, nbits }
    }

    /// The monomial x^k.
    pub fn monomial(k: usize) -> Self {
        let mut p = BitPoly::from_words(vec![0; k / 64 + 1], k + 1);
        p.set_bit(k);
        p
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        i < self.nbits && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set_bit(&mut self, i: usize) {
        assert!(i < self.nbits, "bit {i} out of declared range {}", self.nbits);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set coefficient, scanning from the top.
    pub fn degree(&self) -> Option<usize> {
        for (j, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(j * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Re-declares the capacity, truncating or zero-extending the word array.
    /// Truncation must not drop set bits.
    pub fn with_nbits(mut self, nbits: usize) -> Self {
        if let Some(d) = self.degree() {
            assert!(d < nbits, "cannot truncate below degree {d}");
        }
        self.words.resize(nbits.div_ceil(64), 0);
        self.nbits = nbits;
        self
    }

    pub fn xor_assign(&mut self, other: &BitPoly) {
        assert!(other.nbits <= self.nbits);
        for (d, &s) in self.words.iter_mut().zip(other.words.iter()) {
            *d ^= s;
        }
    }

    pub fn random(rng: &mut crate::bits::SplitMix64, nbits: usize) -> Self {
        let words = (0..nbits.div_ceil(64)).map(|_| rng.next_u64()).collect();
        BitPoly::from_words(words, nbits)
    }
}

impl PartialEq for BitPoly {
    /// Value equality: capacity padding is ignored.
    fn eq(&self, other: &Self) -> bool {
        let n = self.words.len().max(other.words.len());
        (0..n).all(|j| {
            self.words.get(j).copied().unwrap_or(0) == other.words.get(j).copied().unwrap_or(0)
        })
    }
}

impl Eq for BitPoly {}

/// Exact product in GF(2)[x] by shift-XOR schoolbook under a Karatsuba split.
/// This is the reference every FFT backend is checked against; it shares no
/// code with the carry-less kernels.
pub fn mul_oracle(a: &BitPoly, b: &BitPoly) -> BitPoly {
    if a.is_zero() || b.is_zero() {
        return BitPoly::zero();
    }
    let words = mul_words(&a.words, &b.words);
    BitPoly::from_words(words, a.nbits + b.nbits)
}

fn mul_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD_WORDS {
        return mul_schoolbook(a, b);
    }
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = split_at_clamped(a, m);
    let (b0, b1) = split_at_clamped(b, m);

    let z0 = mul_words(a0, b0);
    let z2 = mul_words(a1, b1);
    let z1 = {
        let sa = xor_words(a0, a1);
        let sb = xor_words(b0, b1);
        let mut z1 = mul_words(&sa, &sb);
        xor_into(&mut z1, &z0, 0);
        xor_into(&mut z1, &z2, 0);
        z1
    };

    let mut out = vec![0u64; a.len() + b.len()];
    xor_into(&mut out, &z0, 0);
    xor_into(&mut out, &z1, m);
    xor_into(&mut out, &z2, 2 * m);
    out
}

fn split_at_clamped(v: &[u64], m: usize) -> (&[u64], &[u64]) {
    if v.len() <= m {
        (v, &[])
    } else {
        v.split_at(m)
    }
}

fn xor_words(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    out[..a.len()].copy_from_slice(a);
    for (d, &s) in out.iter_mut().zip(b.iter()) {
        *d ^= s;
    }
    out
}

fn xor_into(dst: &mut [u64], src: &[u64], word_offset: usize) {
    for (j, &s) in src.iter().enumerate() {
        if s != 0 {
            dst[word_offset + j] ^= s;
        }
    }
}

/// Word-comb schoolbook: for each bit position k, XOR the k-shifted copy of
/// `a` into the result wherever `b` has bit k set.
fn mul_schoolbook(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    if a.is_empty() || b.is_empty() {
        return out;
    }
    let mut shifted = vec![0u64; a.len() + 1];
    for k in 0..64 {
        if k == 0 {
            shifted[..a.len()].copy_from_slice(a);
            shifted[a.len()] = 0;
        } else {
            shifted[a.len()] = a[a.len() - 1] >> (64 - k);
            for i in (1..a.len()).rev() {
                shifted[i] = (a[i] << k) | (a[i - 1] >> (64 - k));
            }
            shifted[0] = a[0] << k;
        }
        for (j, &bw) in b.iter().enumerate() {
            if (bw >> k) & 1 == 1 {
                for (i, &s) in shifted.iter().enumerate() {
                    out[j + i] ^= s;
                }
            }
        }
    }
    out
}

/// A polynomial split into `2w`-bit field-element slots. After [`split`] only
/// the low `w` bits of each slot are populated; after pointwise products the
/// full `2w` bits carry data.
#[derive(Clone, Debug)]
pub struct BlockPoly {
    pub blocks: Vec<W256>,
    pub w: usize,
}

/// Partitions the coefficients of `a` into `ceil(nbits/w)` blocks of `w` bits.
/// `w` must be 64 or 128. Power-of-two padding for the FFT is the caller's job.
pub fn split(a: &BitPoly, w: usize) -> BlockPoly {
    assert!(w == 64 || w == 128, "block width must be 64 or 128");
    let n = a.nbits.div_ceil(w);
    let mut blocks = Vec::with_capacity(n);
    for j in 0..n {
        let lo = word_at(&a.words, j * (w / 64));
        let slot = if w == 64 {
            W256::from_u128(lo as u128)
        } else {
            W256::from_u128(lo as u128 | (word_at(&a.words, j * 2 + 1) as u128) << 64)
        };
        blocks.push(slot);
    }
    BlockPoly { blocks, w }
}

#[inline]
fn word_at(words: &[u64], j: usize) -> u64 {
    words.get(j).copied().unwrap_or(0)
}

/// Reassembles a bit-polynomial from `2w`-bit product blocks: output bit `p`
/// is the XOR of bit `p - jw` of block `j` over the (at most two) blocks that
/// cover position `p`. Block offsets are word-aligned, so this is pure word XOR.
pub fn interleaved_combine(c: &BlockPoly) -> BitPoly {
    let w = c.w;
    let n = c.blocks.len();
    if n == 0 {
        return BitPoly::zero();
    }
    let nbits = (n - 1) * w + 2 * w;
    let mut words = vec![0u64; nbits.div_ceil(64)];
    for (j, slot) in c.blocks.iter().enumerate() {
        let base = j * w / 64;
        let slot_words = [
            slot.lo as u64,
            (slot.lo >> 64) as u64,
            slot.hi as u64,
            (slot.hi >> 64) as u64,
        ];
        for (i, &sw) in slot_words.iter().take(2 * w / 64).enumerate() {
            words[base + i] ^= sw;
        }
    }
    BitPoly::from_words(words, nbits)
}
