//! GF(2^128) in polynomial-basis representation, GF(2)[x]/(x^128+x^7+x^2+x+1),
//! built on a portable carry-less 64x64 multiply. Used by the simple (Cantor-
//! indexed) multiplication pipeline and the Frobenius variant.

use crate::bits::spread64;

/// Field element; bit i is the coefficient of x^i.
#[derive(Copy, Clone, PartialEq, Eq, Default, Hash)]
pub struct Gf128(pub u128);

impl Gf128 {
    pub const ZERO: Gf128 = Gf128(0);
    pub const ONE: Gf128 = Gf128(1);
}

impl std::fmt::Debug for Gf128 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:032x}", self.0)
    }
}

impl std::ops::BitXor for Gf128 {
    type Output = Gf128;
    fn bitxor(self, rhs: Gf128) -> Gf128 {
        Gf128(self.0 ^ rhs.0)
    }
}

impl std::ops::BitXorAssign for Gf128 {
    fn bitxor_assign(&mut self, rhs: Gf128) {
        self.0 ^= rhs.0;
    }
}

/// Carry-less 64x64 -> 128 bit product via a 4-bit window: sixteen multiples
/// of `a` are tabulated, then combined nibble by nibble of `b`. A hardware
/// carry-less multiply can be substituted behind this contract.
pub fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut table = [0u128; 16];
    table[1] = a;
    let mut i = 2;
    while i < 16 {
        table[i] = table[i / 2] << 1;
        table[i + 1] = table[i] ^ a;
        i += 2;
    }
    let mut acc = 0u128;
    for i in 0..16 {
        acc ^= table[(b >> (4 * i)) as usize & 0xf] << (4 * i);
    }
    acc
}

/// Full product in GF(2^128): Karatsuba over three clmul64 calls, then a
/// two-pass fold of the 256-bit result through the low-weight modulus.
pub fn gf128_mul(a: Gf128, b: Gf128) -> Gf128 {
    let (a0, a1) = (a.0 as u64, (a.0 >> 64) as u64);
    let (b0, b1) = (b.0 as u64, (b.0 >> 64) as u64);
    let p0 = clmul64(a0, b0);
    let p2 = clmul64(a1, b1);
    let pm = clmul64(a0 ^ a1, b0 ^ b1) ^ p0 ^ p2;
    let lo = p0 ^ (pm << 64);
    let hi = p2 ^ (pm >> 64);
    Gf128(reduce256(lo, hi))
}

/// Squaring: bit i moves to position 2i, then reduce. This is the Frobenius
/// map of the field.
pub fn gf128_sqr(a: Gf128) -> Gf128 {
    let lo = spread64(a.0 as u64);
    let hi = spread64((a.0 >> 64) as u64);
    Gf128(reduce256(lo, hi))
}

/// Reduces a 256-bit polynomial mod x^128+x^7+x^2+x+1. First fold brings
/// 256 -> 135 bits, the second clears the 7-bit overhang.
#[inline]
fn reduce256(lo: u128, hi: u128) -> u128 {
    let folded = lo ^ (hi << 7) ^ (hi << 2) ^ (hi << 1) ^ hi;
    let over = (hi >> 121) ^ (hi >> 126) ^ (hi >> 127);
    folded ^ (over << 7) ^ (over << 2) ^ (over << 1) ^ over
}
