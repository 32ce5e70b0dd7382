//! Multiplication directly over GF(2)[x] without block segmentation: a linear
//! bijection between GF(2)[x] with fewer than 128n coefficients and n field
//! elements, realized as a bit-level basis conversion, a 128 x n transpose, a
//! per-lane 128-bit encoding matrix, and a shifted n-point transform. The
//! shift point's Frobenius orbit has full length 128, which is what makes the
//! n evaluations determine all 128n coefficients.

use crate::bitmat::BitMatrix;
use crate::bits::{transpose_128xn, untranspose_128xn};
use crate::bitpoly::BitPoly;
use crate::cantor::IsoMatrix;
use crate::context::{FieldContext, Repr};
use crate::gf128::{gf128_mul, gf128_sqr, Gf128};
use crate::lch_fft::{fft, ifft, EvalVector, Gf128CantorKernel};
use crate::novelpoly::{basis_cvt, i_basis_cvt, PackedBits};
use crate::pipeline::SizeError;

/// Largest supported log2 lane count; multiplier tabulation and the basis
/// chain length bound the shift index.
pub const MAX_LOG2_LANES: u32 = 25;

/// Precomputed artifacts for evaluating 128n-bit polynomials at the shifted
/// point family.
pub struct FrobeniusPlan {
    pub m: u32,
    /// Cantor index of the affine shift; the default is the basis vector
    /// numbered m+64, validated by [`frob_order_check`].
    pub shift_index: u128,
    /// The seven collapsed top layers: column j is the product of the layer
    /// multipliers s_{m+k}(shift) selected by the bits of j.
    pub encode: IsoMatrix,
    pub decode: IsoMatrix,
    pub layer_multipliers: [Gf128; 7],
}

impl FrobeniusPlan {
    pub fn new(ctx: &FieldContext, m: u32) -> Result<FrobeniusPlan, SizeError> {
        Self::with_shift(ctx, m, 1u128 << (m + 64))
    }

    /// Builds a plan around an arbitrary shift index. The default shift is a
    /// plan parameter rather than a constant; callers may validate candidates
    /// with [`shift_has_full_frobenius_order`].
    pub fn with_shift(ctx: &FieldContext, m: u32, shift_index: u128) -> Result<FrobeniusPlan, SizeError> {
        if m > MAX_LOG2_LANES {
            return Err(SizeError::FrobeniusLanes { m });
        }
        let to_field = ctx.iso(Repr::Cantor, Repr::Gf128Poly);
        let mut layer_multipliers = [Gf128::ZERO; 7];
        for (k, lm) in layer_multipliers.iter_mut().enumerate() {
            *lm = Gf128(to_field.apply(shift_index >> (m + k as u32)));
        }
        let mut cols = vec![0u128; 128];
        cols[0] = 1;
        for j in 1..128usize {
            let low = j & (j - 1);
            cols[j] = gf128_mul(Gf128(cols[low]), layer_multipliers[j.trailing_zeros() as usize]).0;
        }
        let encode_mat = BitMatrix::from_cols(cols);
        let decode_mat = encode_mat
            .inverse()
            .ok_or(SizeError::DegenerateShift { shift_index })?;
        Ok(FrobeniusPlan {
            m,
            shift_index,
            encode: IsoMatrix::new(encode_mat),
            decode: IsoMatrix::new(decode_mat),
            layer_multipliers,
        })
    }

    pub fn lanes(&self) -> usize {
        1usize << self.m
    }
}

/// Evaluates `a` (at most 128n coefficient bits) at the n shifted points:
/// bit-level basis conversion, transpose, per-lane encode, shifted transform.
pub fn frob_eval(ctx: &FieldContext, plan: &FrobeniusPlan, a: &BitPoly) -> EvalVector<Gf128> {
    let n = plan.lanes();
    let total_bits = 128 * n;
    assert!(a.nbits() <= total_bits, "input exceeds the plan's 128n bits");
    let mut words = vec![0u64; total_bits / 64];
    words[..a.words().len()].copy_from_slice(a.words());
    basis_cvt(&mut PackedBits { words: &mut words, nbits: total_bits });
    let lanes = transpose_128xn(&words, n);
    let elems: Vec<Gf128> = lanes.into_iter().map(|l| Gf128(plan.encode.apply(l))).collect();
    let mut v = EvalVector::new(elems, plan.shift_index);
    fft(&Gf128CantorKernel::new(ctx), &mut v);
    v
}

/// Inverse of [`frob_eval`]: recover the unique 128n-bit polynomial with the
/// given evaluations.
pub fn frob_interp(ctx: &FieldContext, plan: &FrobeniusPlan, e: &EvalVector<Gf128>) -> BitPoly {
    let n = plan.lanes();
    assert_eq!(e.len(), n, "evaluation count must match the plan");
    let mut v = EvalVector::new(e.elems.clone(), plan.shift_index);
    ifft(&Gf128CantorKernel::new(ctx), &mut v);
    let lanes: Vec<u128> = v.elems.iter().map(|g| plan.decode.apply(g.0)).collect();
    let mut words = untranspose_128xn(&lanes);
    i_basis_cvt(&mut PackedBits { words: &mut words, nbits: 128 * n });
    BitPoly::from_words(words, 128 * n)
}

/// Product via evaluation: pad both operands into the plan's coefficient
/// space, evaluate, multiply pointwise, interpolate.
pub fn frob_multiply(ctx: &FieldContext, a: &BitPoly, b: &BitPoly) -> Result<BitPoly, SizeError> {
    if a.is_zero() || b.is_zero() {
        return Ok(BitPoly::zero());
    }
    let d = a.nbits() + b.nbits();
    let lanes = d.div_ceil(128).next_power_of_two();
    let m = lanes.trailing_zeros();
    let plan = FrobeniusPlan::new(ctx, m)?;
    let ea = frob_eval(ctx, &plan, a);
    let eb = frob_eval(ctx, &plan, b);
    let prod: Vec<Gf128> = ea
        .elems
        .iter()
        .zip(&eb.elems)
        .map(|(&x, &y)| gf128_mul(x, y))
        .collect();
    let c = frob_interp(ctx, &plan, &EvalVector::new(prod, plan.shift_index));
    Ok(c.with_nbits(d))
}

/// True iff the squaring map returns the shift point to itself after exactly
/// 128 applications and no fewer. Orbit lengths divide 128, so the first
/// return is always at a power of two.
pub fn shift_has_full_frobenius_order(ctx: &FieldContext, shift_index: u128) -> bool {
    let e = Gf128(ctx.iso(Repr::Cantor, Repr::Gf128Poly).apply(shift_index));
    let mut t = e;
    for step in 1..=128u32 {
        t = gf128_sqr(t);
        if t == e {
            return step == 128;
        }
    }
    false
}

pub fn frob_order_check(ctx: &FieldContext, plan: &FrobeniusPlan) -> bool {
    shift_has_full_frobenius_order(ctx, plan.shift_index)
}

/// Reference path: the seven collapsed layers run as explicit butterflies of
/// a full 128n-point transform over 0/1 coefficients, truncated to the first
/// n outputs. For differential testing at small n.
pub fn frob_eval_reference(ctx: &FieldContext, plan: &FrobeniusPlan, a: &BitPoly) -> Vec<Gf128> {
    let n = plan.lanes();
    let total = 128 * n;
    let mut coeffs: Vec<Gf128> = (0..total)
        .map(|i| if a.bit(i) { Gf128::ONE } else { Gf128::ZERO })
        .collect();
    basis_cvt(&mut coeffs[..]);
    let mut v = EvalVector::new(coeffs, plan.shift_index);
    fft(&Gf128CantorKernel::new(ctx), &mut v);
    v.elems.truncate(n);
    v.elems
}
