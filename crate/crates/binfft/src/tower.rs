//! Tower fields TGF(2^2) .. TGF(2^256) in the multiplicative v-basis: level k
//! holds 2^k-bit values, each field extending the previous one by
//! x_k^2 + x_k = x_1*x_2*...*x_{k-1}. Small values are exactly embedded
//! subfield elements, which is what makes FFT multipliers cheap here.
//!
//! Generic multiplication is one-level Karatsuba recursing to a GF(256)
//! log/exp kernel; multiplication by a subfield element decomposes into
//! independent limb products.

use crate::bits::W256;

pub const MAX_LEVEL: u8 = 8;

/// Element of TGF(2^(2^level)); bit j of the value is the coordinate of the
/// basis vector v_j.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct TowerElem {
    pub value: W256,
    pub level: u8,
}

impl TowerElem {
    pub fn new(level: u8, value: W256) -> Self {
        assert!(level <= MAX_LEVEL);
        if level < 8 {
            let width = 1usize << level;
            assert!(value.hi == 0 && (width == 128 || value.lo < (1u128 << width)));
        }
        TowerElem { value, level }
    }

    pub fn from_u128(level: u8, value: u128) -> Self {
        TowerElem::new(level, W256::from_u128(value))
    }

    pub fn one(level: u8) -> Self {
        TowerElem::from_u128(level, 1)
    }

    pub fn zero(level: u8) -> Self {
        TowerElem::from_u128(level, 0)
    }
}

/// Smallest level whose field contains this value.
pub fn min_level_u128(v: u128) -> u8 {
    let bits = 128 - v.leading_zeros() as usize;
    let mut level = 0u8;
    while (1usize << level) < bits {
        level += 1;
    }
    level
}

/// Reduction constant of level k as a level-(k-1) value: v_{2^(k-1)-1}, the
/// product of all generators below x_k.
#[inline]
fn level_constant(k: u8) -> u128 {
    1u128 << ((1u128 << (k - 1)) - 1)
}

/// Bit-recursive product, all the way down to GF(2). No tables; this is the
/// independent oracle for the fast kernel and the bootstrap for table building.
pub fn mul_slow_u128(a: u128, b: u128, level: u8) -> u128 {
    debug_assert!(level <= 7);
    if level == 0 {
        return a & b & 1;
    }
    let half = 1usize << (level - 1);
    let mask = if half == 128 { u128::MAX } else { (1u128 << half) - 1 };
    let (a0, a1) = (a & mask, a >> half);
    let (b0, b1) = (b & mask, b >> half);
    let m0 = mul_slow_u128(a0, b0, level - 1);
    let m2 = mul_slow_u128(a1, b1, level - 1);
    let m1 = mul_slow_u128(a0 ^ a1, b0 ^ b1, level - 1);
    let lo = m0 ^ mul_slow_u128(m2, level_constant(level), level - 1);
    let hi = m0 ^ m1;
    lo | (hi << half)
}

/// Log/exp tables for GF(16) and GF(256) in the tower representation.
#[derive(Clone)]
pub struct LogExpTables {
    pub log256: [u16; 256],
    pub exp256: [u8; 510],
    pub gen256: u8,
    pub log16: [u16; 16],
    pub exp16: [u8; 30],
    pub gen16: u8,
}

impl LogExpTables {
    pub fn build() -> LogExpTables {
        let (gen256, log256, exp256) = Self::tables::<256, 510>(3);
        let (gen16, log16, exp16) = Self::tables::<16, 30>(2);
        LogExpTables { log256, exp256, gen256, log16, exp16, gen16 }
    }

    /// Finds the smallest generator (scanning 0x2, 0x3, ...) with full
    /// multiplicative order, then fills exp (doubled period) and log.
    fn tables<const N: usize, const E: usize>(level: u8) -> (u8, [u16; N], [u8; E]) {
        let order = N - 1;
        let mut gen = 0u8;
        'scan: for g in 2..N as u32 {
            let mut p = 1u128;
            for i in 1..=order {
                p = mul_slow_u128(p, g as u128, level);
                if p == 1 {
                    if i == order {
                        gen = g as u8;
                        break 'scan;
                    }
                    continue 'scan;
                }
            }
        }
        assert!(gen != 0, "no generator found");
        let mut log = [0u16; N];
        let mut exp = [0u8; E];
        let mut p = 1u128;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = p as u8;
            if i < order {
                log[p as usize] = i as u16;
            }
            p = mul_slow_u128(p, gen as u128, level);
        }
        (gen, log, exp)
    }

    /// GF(256) kernel product. GF(16) (and smaller) inputs go through the
    /// same kernel via their value embedding.
    #[inline]
    pub fn mul8(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp256[(self.log256[a as usize] + self.log256[b as usize]) as usize]
    }
}

/// Fast product at level <= 7: Karatsuba down to the GF(256) kernel.
pub fn mul_fast_u128(a: u128, b: u128, level: u8, t: &LogExpTables) -> u128 {
    if level <= 3 {
        return t.mul8(a as u8, b as u8) as u128;
    }
    let half = 1usize << (level - 1);
    let mask = if half == 128 { u128::MAX } else { (1u128 << half) - 1 };
    let (a0, a1) = (a & mask, a >> half);
    let (b0, b1) = (b & mask, b >> half);
    let m0 = mul_fast_u128(a0, b0, level - 1, t);
    let m2 = mul_fast_u128(a1, b1, level - 1, t);
    let m1 = mul_fast_u128(a0 ^ a1, b0 ^ b1, level - 1, t);
    let lo = m0 ^ mul_fast_u128(m2, level_constant(level), level - 1, t);
    let hi = m0 ^ m1;
    lo | (hi << half)
}

/// Generic product of two elements of the same level.
pub fn tower_mul(a: TowerElem, b: TowerElem, t: &LogExpTables) -> TowerElem {
    assert_eq!(a.level, b.level, "tower_mul requires equal levels");
    let level = a.level;
    if level <= 7 {
        return TowerElem::from_u128(level, mul_fast_u128(a.value.lo, b.value.lo, level, t));
    }
    TowerElem::new(level, mul_w256(a.value, b.value, t))
}

/// Level-8 product on raw 256-bit words.
pub fn mul_w256(a: W256, b: W256, t: &LogExpTables) -> W256 {
    let m0 = mul_fast_u128(a.lo, b.lo, 7, t);
    let m2 = mul_fast_u128(a.hi, b.hi, 7, t);
    let m1 = mul_fast_u128(a.lo ^ a.hi, b.lo ^ b.hi, 7, t);
    // x_8^2 = x_8 + v_127
    let lo = m0 ^ mul_fast_u128(m2, 1u128 << 127, 7, t);
    W256 { lo, hi: m0 ^ m1 }
}

/// Oracle variant of [`tower_mul`] built on the bit recursion.
pub fn tower_mul_slow(a: TowerElem, b: TowerElem) -> TowerElem {
    assert_eq!(a.level, b.level);
    let level = a.level;
    if level <= 7 {
        return TowerElem::from_u128(level, mul_slow_u128(a.value.lo, b.value.lo, level));
    }
    let m0 = mul_slow_u128(a.value.lo, b.value.lo, 7);
    let m2 = mul_slow_u128(a.value.hi, b.value.hi, 7);
    let m1 = mul_slow_u128(a.value.lo ^ a.value.hi, b.value.lo ^ b.value.hi, 7);
    let lo = m0 ^ mul_slow_u128(m2, 1u128 << 127, 7);
    TowerElem::new(level, W256 { lo, hi: m0 ^ m1 })
}

/// Zero-extension into a larger field of the tower; both the additive and the
/// multiplicative structure embed.
pub fn embed(b: TowerElem, k: u8) -> TowerElem {
    assert!(k >= b.level && k <= MAX_LEVEL);
    TowerElem { value: b.value, level: k }
}

/// Multiplies `a` (level k) by the embedded subfield element `b` (level j <= k)
/// as 2^(k-j) independent level-j products on the limbs of `a`.
pub fn subfield_scalar_mul(a: TowerElem, b: TowerElem, t: &LogExpTables) -> TowerElem {
    subfield_scalar_mul_counted(a, b, t).0
}

/// Same as [`subfield_scalar_mul`] but also reports how many limb
/// multiplications were performed.
pub fn subfield_scalar_mul_counted(
    a: TowerElem,
    b: TowerElem,
    t: &LogExpTables,
) -> (TowerElem, usize) {
    assert!(b.level <= a.level);
    let j = b.level;
    let s = b.value.lo;
    if a.level == j {
        return (tower_mul(a, b, t), 1);
    }
    let width = 1usize << j;
    let mut count = 0;
    let mut mul_half = |half: u128| -> u128 {
        let mut out = 0u128;
        let mask = if width == 128 { u128::MAX } else { (1u128 << width) - 1 };
        let mut pos = 0;
        while pos < 128.min(1usize << a.level) {
            let limb = (half >> pos) & mask;
            out |= mul_fast_u128(limb, s, j.max(3), t) << pos;
            count += 1;
            pos += width;
        }
        out
    };
    let lo = mul_half(a.value.lo);
    let hi = if a.level == 8 { mul_half(a.value.hi) } else { 0 };
    (TowerElem::new(a.level, W256 { lo, hi }), count)
}

/// FFT hot path: multiply a level-7 element by a 32-bit multiplier, choosing
/// the narrowest subfield limb width (floored at the GF(256) kernel).
#[inline]
pub fn scalar_mul_u128(a: u128, s: u32, t: &LogExpTables) -> u128 {
    if s == 0 {
        return 0;
    }
    if s == 1 {
        return a;
    }
    if s < 256 {
        // one log lookup for the scalar, one exp per nonzero byte limb
        let ls = t.log256[s as usize];
        let mut out = 0u128;
        for byte in 0..16 {
            let limb = (a >> (8 * byte)) as u8;
            if limb != 0 {
                out |= (t.exp256[(t.log256[limb as usize] + ls) as usize] as u128) << (8 * byte);
            }
        }
        return out;
    }
    let level = min_level_u128(s as u128);
    let width = 1usize << level;
    let mask = (1u128 << width) - 1;
    let mut out = 0u128;
    let mut pos = 0;
    while pos < 128 {
        let limb = (a >> pos) & mask;
        if limb != 0 {
            out |= mul_fast_u128(limb, s as u128, level, t) << pos;
        }
        pos += width;
    }
    out
}

/// Level-8 variant of [`scalar_mul_u128`]; the halves are independent limbs.
#[inline]
pub fn scalar_mul_w256(a: W256, s: u32, t: &LogExpTables) -> W256 {
    W256 { lo: scalar_mul_u128(a.lo, s, t), hi: scalar_mul_u128(a.hi, s, t) }
}
