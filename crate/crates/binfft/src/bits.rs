//! Small bit-manipulation helpers shared across the crate: a 256-bit word,
//! GF(2) range XORs on packed bit buffers, and bit-matrix transposes.

use std::ops::{BitXor, BitXorAssign};

/// A 256-bit value stored as two `u128` halves, little-endian (`lo` holds bits 0..127).
#[derive(Copy, Clone, PartialEq, Eq, Default, Hash)]
pub struct W256 {
    pub lo: u128,
    pub hi: u128,
}

impl W256 {
    pub const ZERO: W256 = W256 { lo: 0, hi: 0 };
    pub const ONE: W256 = W256 { lo: 1, hi: 0 };

    pub fn new(lo: u128, hi: u128) -> Self {
        W256 { lo, hi }
    }

    pub fn from_u128(lo: u128) -> Self {
        W256 { lo, hi: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.lo == 0 && self.hi == 0
    }

    pub fn bit(self, i: usize) -> bool {
        if i < 128 {
            (self.lo >> i) & 1 == 1
        } else {
            (self.hi >> (i - 128)) & 1 == 1
        }
    }

    pub fn set_bit(&mut self, i: usize) {
        if i < 128 {
            self.lo |= 1u128 << i;
        } else {
            self.hi |= 1u128 << (i - 128);
        }
    }
}

impl BitXor for W256 {
    type Output = W256;
    fn bitxor(self, rhs: W256) -> W256 {
        W256 { lo: self.lo ^ rhs.lo, hi: self.hi ^ rhs.hi }
    }
}

impl BitXorAssign for W256 {
    fn bitxor_assign(&mut self, rhs: W256) {
        self.lo ^= rhs.lo;
        self.hi ^= rhs.hi;
    }
}

impl std::fmt::Debug for W256 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:032x}{:032x}", self.hi, self.lo)
    }
}

/// Reads 64 bits starting at bit position `pos` from a packed little-endian buffer.
/// Bits past the end of the buffer read as zero.
#[inline]
pub fn get_bits64(words: &[u64], pos: usize) -> u64 {
    let w = pos / 64;
    let off = pos % 64;
    if w >= words.len() {
        return 0;
    }
    let lo = words[w] >> off;
    if off == 0 || w + 1 >= words.len() {
        lo
    } else {
        lo | (words[w + 1] << (64 - off))
    }
}

/// XORs the bit range `[src, src+len)` into `[dst, dst+len)` within one packed buffer.
/// The ranges must be disjoint with `dst < src`.
pub fn xor_bit_range(words: &mut [u64], src: usize, dst: usize, len: usize) {
    debug_assert!(dst + len <= src, "ranges must be disjoint, dst below src");
    let mut done = 0;
    while done < len {
        let take = (len - done).min(64);
        let chunk = get_bits64(words, src + done) & mask64(take);
        xor_bits64(words, dst + done, chunk);
        done += take;
    }
}

#[inline]
fn mask64(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// XORs up to 64 bits of `val` into the buffer starting at bit position `pos`.
#[inline]
fn xor_bits64(words: &mut [u64], pos: usize, val: u64) {
    let w = pos / 64;
    let off = pos % 64;
    words[w] ^= val << off;
    if off != 0 && w + 1 < words.len() {
        words[w + 1] ^= val >> (64 - off);
    }
}

/// Gathers a packed 128 x n bit matrix into n lanes: output lane `i` has bit `j`
/// equal to input bit `j*n + i`.
pub fn transpose_128xn(words: &[u64], n: usize) -> Vec<u128> {
    let mut lanes = vec![0u128; n];
    for j in 0..128usize {
        for (i, lane) in lanes.iter_mut().enumerate() {
            let pos = j * n + i;
            if (words[pos / 64] >> (pos % 64)) & 1 == 1 {
                *lane |= 1u128 << j;
            }
        }
    }
    lanes
}

/// Inverse of [`transpose_128xn`]: scatters n lanes back into a packed 128n-bit buffer.
pub fn untranspose_128xn(lanes: &[u128]) -> Vec<u64> {
    let n = lanes.len();
    let mut words = vec![0u64; (128 * n).div_ceil(64)];
    for (i, &lane) in lanes.iter().enumerate() {
        for j in 0..128usize {
            if (lane >> j) & 1 == 1 {
                let pos = j * n + i;
                words[pos / 64] |= 1u64 << (pos % 64);
            }
        }
    }
    words
}

/// Spreads the bits of a 64-bit word so bit `i` lands at position `2i`.
#[inline]
pub fn spread64(x: u64) -> u128 {
    let mut v = x as u128;
    v = (v | (v << 32)) & 0x0000_0000_ffff_ffff_0000_0000_ffff_ffff;
    v = (v | (v << 16)) & 0x0000_ffff_0000_ffff_0000_ffff_0000_ffff;
    v = (v | (v << 8)) & 0x00ff_00ff_00ff_00ff_00ff_00ff_00ff_00ff;
    v = (v | (v << 4)) & 0x0f0f_0f0f_0f0f_0f0f_0f0f_0f0f_0f0f_0f0f;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333_3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555_5555_5555_5555_5555;
    v
}

/// Deterministic splitmix64 stream, used for seeded self-tests and benches.
#[derive(Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn next_u128(&mut self) -> u128 {
        (self.next_u64() as u128) << 64 | self.next_u64() as u128
    }
}
