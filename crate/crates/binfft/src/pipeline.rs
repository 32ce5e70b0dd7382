//! End-to-end binary polynomial multipliers. The block pipelines follow
//! Split -> BasisCvt -> [ChangeRepr] -> two forward FFTs at 2n points ->
//! Pointmul -> iFFT -> iBasisCvt -> [iChangeRepr] -> InterleavedCombine;
//! the representation changes appear only on the tower routes. The Frobenius
//! route replaces segmentation entirely. Every backend returns bit-identical
//! products to the oracle.

use crate::bitpoly::{interleaved_combine, mul_oracle, split, BitPoly, BlockPoly};
use crate::bits::W256;
use crate::context::{FieldContext, Repr};
use crate::frobenius;
use crate::gf128::{gf128_mul, Gf128};
use crate::lch_fft::{fft, ifft, EvalVector, FftKernel, Gf128CantorKernel, Tower128Kernel, Tower256Kernel};
use crate::novelpoly::{basis_cvt, i_basis_cvt};
use crate::tower::{mul_fast_u128, mul_w256};

/// Point-count cap imposed by the 32-bit multiplier tables.
pub const MAX_FFT_POINTS: u128 = 1 << 32;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Backend {
    Oracle,
    Gf128,
    Tower128,
    Tower256,
    Frobenius,
}

impl Backend {
    pub const ALL: [Backend; 5] =
        [Backend::Oracle, Backend::Gf128, Backend::Tower128, Backend::Tower256, Backend::Frobenius];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Oracle => "oracle",
            Backend::Gf128 => "gf128",
            Backend::Tower128 => "tower128",
            Backend::Tower256 => "tower256",
            Backend::Frobenius => "frobenius",
        }
    }

    /// Kronecker block width of the FFT pipelines.
    pub fn block_width(self) -> usize {
        match self {
            Backend::Tower256 | Backend::Frobenius => 128,
            _ => 64,
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Backend, String> {
        Backend::ALL
            .iter()
            .copied()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown backend '{s}' (expected one of oracle, gf128, tower128, tower256, frobenius)"))
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Size-cap violations and degenerate plan parameters.
#[derive(Debug, PartialEq, Eq)]
pub enum SizeError {
    FftPoints { points: u128 },
    FrobeniusLanes { m: u32 },
    DegenerateShift { shift_index: u128 },
}

impl std::fmt::Display for SizeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SizeError::FftPoints { points } => {
                write!(f, "FFT of {points} points exceeds the 2^32-point table cap")
            }
            SizeError::FrobeniusLanes { m } => {
                write!(f, "2^{m} lanes exceed the Frobenius plan cap of 2^{}", frobenius::MAX_LOG2_LANES)
            }
            SizeError::DegenerateShift { shift_index } => {
                write!(f, "shift index {shift_index:#x} yields a singular encoding")
            }
        }
    }
}

impl std::error::Error for SizeError {}

/// FFT sizing for a `d`-bit operand: n blocks of w bits, transform length the
/// smallest power of two covering 2n so the 2d-bit product fits.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub w: usize,
    pub n_blocks: usize,
    pub fft_size: usize,
}

pub fn plan(d_bits: usize, backend: Backend) -> Plan {
    assert!(d_bits > 0, "plan requires a positive size");
    let w = backend.block_width();
    let n_blocks = d_bits.div_ceil(w);
    let fft_size = (2 * n_blocks).next_power_of_two();
    debug_assert!(fft_size * w >= 2 * d_bits);
    Plan { w, n_blocks, fft_size }
}

/// Pipeline stages in execution order, for structural tests.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Stage {
    Split,
    BasisCvt,
    ChangeRepr,
    Fft,
    Pointmul,
    Ifft,
    IBasisCvt,
    IChangeRepr,
    Combine,
}

/// Componentwise field product of two evaluation vectors.
pub fn pointmul<T: Copy>(
    u: &EvalVector<T>,
    v: &EvalVector<T>,
    mul: impl Fn(T, T) -> T,
) -> EvalVector<T> {
    assert_eq!(u.len(), v.len(), "pointmul requires equal sizes");
    let elems = u.elems.iter().zip(&v.elems).map(|(&x, &y)| mul(x, y)).collect();
    EvalVector::new(elems, u.alpha_idx)
}

pub fn multiply(ctx: &FieldContext, a: &BitPoly, b: &BitPoly, backend: Backend) -> Result<BitPoly, SizeError> {
    multiply_traced(ctx, a, b, backend).map(|(c, _)| c)
}

/// As [`multiply`], also reporting the ordered list of stages executed.
pub fn multiply_traced(
    ctx: &FieldContext,
    a: &BitPoly,
    b: &BitPoly,
    backend: Backend,
) -> Result<(BitPoly, Vec<Stage>), SizeError> {
    if a.is_zero() || b.is_zero() {
        return Ok((BitPoly::zero(), Vec::new()));
    }
    let out_bits = a.nbits() + b.nbits();
    let mut trace = Vec::new();
    let product = match backend {
        Backend::Oracle => mul_oracle(a, b),
        Backend::Frobenius => {
            trace.extend([Stage::Fft, Stage::Fft, Stage::Pointmul, Stage::Ifft]);
            frobenius::frob_multiply(ctx, a, b)?
        }
        Backend::Gf128 => run_gf128(ctx, a, b, &mut trace)?,
        Backend::Tower128 => run_tower128(ctx, a, b, &mut trace)?,
        Backend::Tower256 => run_tower256(ctx, a, b, &mut trace)?,
    };
    debug_assert!(product.degree().is_none_or(|d| d < out_bits));
    Ok((product.with_nbits(out_bits), trace))
}

fn checked_plan(a: &BitPoly, b: &BitPoly, backend: Backend) -> Result<Plan, SizeError> {
    let p = plan(a.nbits().max(b.nbits()), backend);
    if p.fft_size as u128 > MAX_FFT_POINTS {
        return Err(SizeError::FftPoints { points: p.fft_size as u128 });
    }
    Ok(p)
}

/// The two operand transforms are independent; run them on two threads.
fn fft_pair<K: FftKernel + Sync>(k: &K, va: &mut EvalVector<K::Elem>, vb: &mut EvalVector<K::Elem>) {
    std::thread::scope(|s| {
        s.spawn(|| fft(k, va));
        fft(k, vb);
    });
}

fn split_padded_w64(x: &BitPoly, fft_size: usize, trace: &mut Vec<Stage>) -> Vec<u64> {
    trace.push(Stage::Split);
    let blocks = split(x, 64);
    let mut out: Vec<u64> = blocks.blocks.iter().map(|s| s.lo as u64).collect();
    out.resize(fft_size, 0);
    out
}

fn split_padded_w128(x: &BitPoly, fft_size: usize, trace: &mut Vec<Stage>) -> Vec<u128> {
    trace.push(Stage::Split);
    let blocks = split(x, 128);
    let mut out: Vec<u128> = blocks.blocks.iter().map(|s| s.lo).collect();
    out.resize(fft_size, 0);
    out
}

fn run_gf128(ctx: &FieldContext, a: &BitPoly, b: &BitPoly, trace: &mut Vec<Stage>) -> Result<BitPoly, SizeError> {
    let p = checked_plan(a, b, Backend::Gf128)?;
    let mut ca = split_padded_w64(a, p.fft_size, trace);
    let mut cb = split_padded_w64(b, p.fft_size, trace);
    trace.push(Stage::BasisCvt);
    basis_cvt(&mut ca[..]);
    trace.push(Stage::BasisCvt);
    basis_cvt(&mut cb[..]);

    let kernel = Gf128CantorKernel::new(ctx);
    let lift = |c: Vec<u64>| EvalVector::new(c.into_iter().map(|w| Gf128(w as u128)).collect(), 0);
    let mut va = lift(ca);
    let mut vb = lift(cb);
    trace.extend([Stage::Fft, Stage::Fft]);
    fft_pair(&kernel, &mut va, &mut vb);

    trace.push(Stage::Pointmul);
    let mut vc = pointmul(&va, &vb, gf128_mul);
    trace.push(Stage::Ifft);
    ifft(&kernel, &mut vc);

    trace.push(Stage::IBasisCvt);
    i_basis_cvt(&mut vc.elems[..]);

    trace.push(Stage::Combine);
    let blocks = vc.elems.iter().map(|g| W256::from_u128(g.0)).collect();
    Ok(interleaved_combine(&BlockPoly { blocks, w: 64 }))
}

fn run_tower128(ctx: &FieldContext, a: &BitPoly, b: &BitPoly, trace: &mut Vec<Stage>) -> Result<BitPoly, SizeError> {
    let p = checked_plan(a, b, Backend::Tower128)?;
    let mut ca = split_padded_w64(a, p.fft_size, trace);
    let mut cb = split_padded_w64(b, p.fft_size, trace);
    trace.push(Stage::BasisCvt);
    basis_cvt(&mut ca[..]);
    trace.push(Stage::BasisCvt);
    basis_cvt(&mut cb[..]);

    let to_tower = ctx.iso(Repr::Gf128Poly, Repr::Tower);
    let lift = |c: Vec<u64>, trace: &mut Vec<Stage>| {
        trace.push(Stage::ChangeRepr);
        EvalVector::new(c.into_iter().map(|w| to_tower.apply(w as u128)).collect::<Vec<u128>>(), 0)
    };
    let mut va = lift(ca, trace);
    let mut vb = lift(cb, trace);

    let kernel = Tower128Kernel::new(ctx);
    trace.extend([Stage::Fft, Stage::Fft]);
    fft_pair(&kernel, &mut va, &mut vb);

    trace.push(Stage::Pointmul);
    let mut vc = pointmul(&va, &vb, |x, y| mul_fast_u128(x, y, 7, &ctx.tables));
    trace.push(Stage::Ifft);
    ifft(&kernel, &mut vc);

    trace.push(Stage::IBasisCvt);
    i_basis_cvt(&mut vc.elems[..]);

    trace.push(Stage::IChangeRepr);
    let to_gf = ctx.iso(Repr::Tower, Repr::Gf128Poly);
    let blocks = vc.elems.iter().map(|&t| W256::from_u128(to_gf.apply(t))).collect();

    trace.push(Stage::Combine);
    Ok(interleaved_combine(&BlockPoly { blocks, w: 64 }))
}

fn run_tower256(ctx: &FieldContext, a: &BitPoly, b: &BitPoly, trace: &mut Vec<Stage>) -> Result<BitPoly, SizeError> {
    let p = checked_plan(a, b, Backend::Tower256)?;
    let mut ca = split_padded_w128(a, p.fft_size, trace);
    let mut cb = split_padded_w128(b, p.fft_size, trace);
    trace.push(Stage::BasisCvt);
    basis_cvt(&mut ca[..]);
    trace.push(Stage::BasisCvt);
    basis_cvt(&mut cb[..]);

    let lift = |c: Vec<u128>, trace: &mut Vec<Stage>| {
        trace.push(Stage::ChangeRepr);
        let elems: Vec<W256> =
            c.into_iter().map(|w| ctx.tower256_encode.apply(W256::from_u128(w))).collect();
        EvalVector::new(elems, 0)
    };
    let mut va = lift(ca, trace);
    let mut vb = lift(cb, trace);

    let kernel = Tower256Kernel::new(ctx);
    trace.extend([Stage::Fft, Stage::Fft]);
    fft_pair(&kernel, &mut va, &mut vb);

    trace.push(Stage::Pointmul);
    let mut vc = pointmul(&va, &vb, |x, y| mul_w256(x, y, &ctx.tables));
    trace.push(Stage::Ifft);
    ifft(&kernel, &mut vc);

    trace.push(Stage::IBasisCvt);
    i_basis_cvt(&mut vc.elems[..]);

    trace.push(Stage::IChangeRepr);
    let blocks = vc.elems.iter().map(|&t| ctx.tower256_decode.apply(t)).collect();

    trace.push(Stage::Combine);
    Ok(interleaved_combine(&BlockPoly { blocks, w: 128 }))
}
