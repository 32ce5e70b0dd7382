//! The fast invariant suite behind the `selftest` command: structural vectors,
//! algebraic identities, transform roundtrips, and oracle-equivalence spot
//! checks, all deterministic for a given seed.

use crate::bitpoly::{mul_oracle, BitPoly};
use crate::bits::SplitMix64;
use crate::cantor::s_exponents;
use crate::context::{FieldContext, Repr};
use crate::frobenius::{frob_eval, frob_interp, frob_order_check, FrobeniusPlan};
use crate::gf128::{gf128_mul, gf128_sqr, Gf128};
use crate::lch_fft::{fft, fft_observed, ifft, EvalVector, MulRecorder, Tower128Kernel};
use crate::novelpoly::{basis_cvt, i_basis_cvt};
use crate::pipeline::{multiply, Backend};
use crate::tower::{mul_fast_u128, tower_mul, TowerElem};

pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn group(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> GroupResult {
    match f() {
        Ok(detail) => GroupResult { name, passed: true, detail },
        Err(detail) => GroupResult { name, passed: false, detail },
    }
}

macro_rules! check {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

/// Runs every group; the result order is fixed.
pub fn run(ctx: &FieldContext, seed: u64) -> Vec<GroupResult> {
    vec![
        table1_group(),
        fig2_group(ctx),
        cantor_chain_group(ctx),
        tower_props_group(ctx),
        claim1_group(ctx, seed),
        isomorphism_group(ctx, seed),
        roundtrip_group(ctx, seed),
        oracle_group(ctx, seed),
    ]
}

fn table1_group() -> GroupResult {
    group("table1_exponents", || {
        let expect: [&[u128]; 8] = [
            &[1],
            &[1, 2],
            &[1, 4],
            &[1, 2, 4, 8],
            &[1, 16],
            &[1, 2, 16, 32],
            &[1, 4, 16, 64],
            &[1, 2, 4, 8, 16, 32, 64, 128],
        ];
        for (i, want) in expect.iter().enumerate() {
            let got = s_exponents(i as u32);
            check!(got == *want, "s_{i} exponents {got:?} != {want:?}");
        }
        for i in 1..=31u32 {
            let two = s_exponents(i).len() == 2;
            check!(two == i.is_power_of_two(), "two-term rule fails at i={i}");
        }
        Ok("exponent sets for s_0..s_7 and the two-term rule".into())
    })
}

fn fig2_group(ctx: &FieldContext) -> GroupResult {
    group("fig2_multipliers", || {
        let k = Tower128Kernel::new(ctx);
        let mut elems = vec![1u128; 8];
        elems.resize(16, 0);
        let mut v = EvalVector::new(elems, 0);
        let mut rec = MulRecorder::default();
        fft_observed(&k, &mut v, &mut rec);
        let layer = |l: u32| -> Vec<u128> { rec.layer_multipliers[&l].iter().copied().collect() };
        check!(layer(3) == vec![0], "top layer not a fan-out: {:?}", layer(3));
        check!(layer(2) == vec![0, 0x2], "layer 2 multipliers {:?}", layer(2));
        check!(layer(1) == vec![0, 0x2, 0x5, 0x7], "layer 1 multipliers {:?}", layer(1));
        let want0: Vec<u128> = (0..8).map(|t| 2 * t).collect();
        check!(layer(0) == want0, "layer 0 multipliers {:?}", layer(0));
        Ok("16-point butterfly layer multipliers".into())
    })
}

fn cantor_chain_group(ctx: &FieldContext) -> GroupResult {
    group("cantor_chain", || {
        check!(ctx.beta(0) == Gf128::ONE, "beta_0 != 1");
        for i in 1..128 {
            let lhs = gf128_sqr(ctx.beta(i)) ^ ctx.beta(i);
            check!(lhs == ctx.beta(i - 1), "chain relation fails at i={i}");
        }
        let m = crate::bitmat::BitMatrix::from_cols(
            (0..128).map(|i| ctx.beta(i).0).collect::<Vec<_>>(),
        );
        check!(m.rank() == 128, "basis vectors are dependent");
        Ok("chain relation and independence of 128 basis vectors".into())
    })
}

fn tower_props_group(ctx: &FieldContext) -> GroupResult {
    group("tower_props", || {
        for k in 1..=31u32 {
            check!(ctx.sk.eval(k, 1 << k) == 1, "s_k(v_k) != 1 at k={k}");
        }
        for i in 0..32usize {
            let v = 1u128 << i;
            let d = mul_fast_u128(v, v, 5.max(crate::tower::min_level_u128(v)), &ctx.tables) ^ v;
            check!(d < (1u128 << i), "v_i^2 + v_i not below 2^i at i={i}");
        }
        for k in 1..=8u8 {
            let g = {
                let mut w = crate::bits::W256::ZERO;
                w.set_bit(1 << (k - 1));
                TowerElem::new(k, w)
            };
            let sq = tower_mul(g, g, &ctx.tables);
            let mut want = crate::bits::W256::ZERO;
            want.set_bit((1usize << (k - 1)) - 1);
            check!(sq.value ^ g.value == want, "defining relation fails at level {k}");
        }
        Ok("s_k(v_k)=1 for k<=31, basis squares stay low, defining relations".into())
    })
}

fn claim1_group(ctx: &FieldContext, seed: u64) -> GroupResult {
    group("claim1_cross_repr", || {
        let to_cantor = ctx.iso(Repr::Tower, Repr::Cantor);
        let mut rng = SplitMix64::new(seed ^ 0xc1a1);
        for i in 0..=8u32 {
            for _ in 0..2048 {
                let j = (rng.next_u64() & 0xffff) as u32;
                let tower_out = ctx.sk.eval(i, j);
                let want = to_cantor.apply(j as u128) >> i;
                check!(
                    to_cantor.apply(tower_out as u128) == want,
                    "shift rule mismatch at i={i} j={j:#x}"
                );
            }
        }
        Ok("tower and Cantor s_i agree through the isomorphism".into())
    })
}

fn isomorphism_group(ctx: &FieldContext, seed: u64) -> GroupResult {
    group("isomorphisms", || {
        let mut rng = SplitMix64::new(seed ^ 0x150);
        for &(from, to) in &[
            (Repr::Tower, Repr::Gf128Poly),
            (Repr::Cantor, Repr::Gf128Poly),
            (Repr::Tower, Repr::Cantor),
        ] {
            let fwd = ctx.iso(from, to);
            let bwd = ctx.iso(to, from);
            check!(fwd.apply(1) == 1, "map {from:?}->{to:?} does not fix 1");
            for _ in 0..1000 {
                let v = rng.next_u128();
                check!(bwd.apply(fwd.apply(v)) == v, "roundtrip fails {from:?}<->{to:?}");
            }
        }
        let fwd = ctx.iso(Repr::Tower, Repr::Gf128Poly);
        for _ in 0..1000 {
            let a = rng.next_u128();
            let b = rng.next_u128();
            let tower = mul_fast_u128(a, b, 7, &ctx.tables);
            let gf = gf128_mul(Gf128(fwd.apply(a)), Gf128(fwd.apply(b)));
            check!(fwd.apply(tower) == gf.0, "homomorphism fails on a sampled pair");
        }
        Ok("unital, invertible, multiplicative on 1000 sampled pairs".into())
    })
}

fn roundtrip_group(ctx: &FieldContext, seed: u64) -> GroupResult {
    group("roundtrips", || {
        let mut rng = SplitMix64::new(seed ^ 0x707);
        let k = Tower128Kernel::new(ctx);
        for _ in 0..100 {
            let m = 1 + (rng.next_u64() % 10) as u32;
            let n = 1usize << m;
            let coeffs: Vec<u128> = (0..n).map(|_| rng.next_u128()).collect();
            let alpha = ((rng.next_u64() % 16) as u128) << m;
            let mut v = EvalVector::new(coeffs.clone(), alpha);
            fft(&k, &mut v);
            ifft(&k, &mut v);
            check!(v.elems == coeffs, "fft/ifft roundtrip fails at 2^{m}");

            let mut c = coeffs.clone();
            basis_cvt(&mut c[..]);
            i_basis_cvt(&mut c[..]);
            check!(c == coeffs, "conversion roundtrip fails at 2^{m}");
        }
        let plan = FrobeniusPlan::new(ctx, 3).map_err(|e| e.to_string())?;
        check!(frob_order_check(ctx, &plan), "shift point order is not 128");
        for _ in 0..20 {
            let a = BitPoly::random(&mut rng, 128 * 8);
            let e = frob_eval(ctx, &plan, &a);
            check!(frob_interp(ctx, &plan, &e) == a, "bijection roundtrip fails");
        }
        Ok("fft, conversion and bijection roundtrips".into())
    })
}

fn oracle_group(ctx: &FieldContext, seed: u64) -> GroupResult {
    group("oracle_equivalence", || {
        let mut rng = SplitMix64::new(seed ^ 0xace);
        let backends = [Backend::Gf128, Backend::Tower128, Backend::Tower256, Backend::Frobenius];
        for case in 0..50 {
            let bits = 1 + (rng.next_u64() % (1 << 14)) as usize;
            let a = BitPoly::random(&mut rng, bits);
            let b = BitPoly::random(&mut rng, bits);
            let want = mul_oracle(&a, &b);
            let backend = backends[case % backends.len()];
            let got = multiply(ctx, &a, &b, backend).map_err(|e| e.to_string())?;
            check!(got == want, "case {case}: {backend} disagrees with the oracle at {bits} bits");
        }
        Ok("50 random products match the oracle across all backends".into())
    })
}
