//! The immutable context of precomputed tables: Cantor basis, representation
//! change matrices with their lookup tables, s_i evaluation tables, and the
//! small-field log/exp kernel. Built once, shared everywhere.

use std::sync::OnceLock;

use crate::bitmat::{BitMatrix, M4rTables};
use crate::bits::W256;
use crate::cantor::{
    build_cantor_basis, dump_hex_u128, solve_tower_generators, tower_to_gf_matrix,
    ArtinSchreierSolver, CantorBasis, ContextError, IsoMatrix, SkTables,
};
use crate::gf128::Gf128;
use crate::tower::{mul_w256, LogExpTables};

/// Field representations the context can translate between. `Gf128Poly` is
/// the polynomial basis modulo x^128+x^7+x^2+x+1; `Cantor` means coordinates
/// in the beta chain; `Tower` is the v-basis of the tower construction.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Repr {
    Gf128Poly,
    Cantor,
    Tower,
}

/// A 256-bit linear map with lookup tables, for the width-128 pipeline's
/// block encoding into TGF(2^256).
pub struct Iso256 {
    pub matrix: BitMatrix<W256>,
    m4r: M4rTables<W256>,
}

impl Iso256 {
    fn new(matrix: BitMatrix<W256>) -> Iso256 {
        let m4r = M4rTables::build(&matrix, 4);
        Iso256 { matrix, m4r }
    }

    #[inline]
    pub fn apply(&self, v: W256) -> W256 {
        self.m4r.apply(v)
    }
}

pub struct FieldContext {
    pub basis: CantorBasis,
    pub tables: LogExpTables,
    pub sk: SkTables,
    /// Images of the tower generators x_1..x_7 in GF(2^128).
    pub x_images: [Gf128; 7],
    cantor_to_gf: IsoMatrix,
    gf_to_cantor: IsoMatrix,
    tower_to_gf: IsoMatrix,
    gf_to_tower: IsoMatrix,
    tower_to_cantor: IsoMatrix,
    cantor_to_tower: IsoMatrix,
    /// Bit-polynomial blocks (coefficients of powers of x_8) into TGF(2^256).
    pub tower256_encode: Iso256,
    /// Inverse of `tower256_encode`.
    pub tower256_decode: Iso256,
}

static GLOBAL: OnceLock<FieldContext> = OnceLock::new();

impl FieldContext {
    pub fn new() -> Result<FieldContext, ContextError> {
        let tables = LogExpTables::build();
        let sk = SkTables::build(&tables);
        let basis = build_cantor_basis()?;

        let b = BitMatrix::from_cols(basis.beta.iter().map(|g| g.0).collect());
        let b_inv = b.inverse().ok_or(ContextError::SingularMatrix("cantor basis"))?;

        let solver = ArtinSchreierSolver::new();
        let x_images = solve_tower_generators(&solver)?;
        let t = tower_to_gf_matrix(&x_images);
        let t_inv = t.inverse().ok_or(ContextError::SingularMatrix("tower embedding"))?;

        let c = b_inv.compose(&t);
        let c_inv = c.inverse().ok_or(ContextError::SingularMatrix("tower to cantor"))?;

        // powers of x_8 = v_128: the min-poly has full degree 256 because x_8
        // lies outside the unique subfield of size 2^128 (the values < 2^128)
        let zeta = W256 { lo: 0, hi: 1 };
        let mut pow_cols = vec![W256::ZERO; 256];
        pow_cols[0] = W256::ONE;
        for i in 1..256 {
            pow_cols[i] = mul_w256(pow_cols[i - 1], zeta, &tables);
        }
        let p = BitMatrix::from_cols(pow_cols);
        let p_inv = p.inverse().ok_or(ContextError::SingularMatrix("x_8 powers"))?;

        Ok(FieldContext {
            basis,
            tables,
            sk,
            x_images,
            cantor_to_gf: IsoMatrix::new(b),
            gf_to_cantor: IsoMatrix::new(b_inv),
            tower_to_gf: IsoMatrix::new(t),
            gf_to_tower: IsoMatrix::new(t_inv),
            tower_to_cantor: IsoMatrix::new(c),
            cantor_to_tower: IsoMatrix::new(c_inv),
            tower256_encode: Iso256::new(p),
            tower256_decode: Iso256::new(p_inv),
        })
    }

    /// The process-wide context; construction failures are fatal.
    pub fn global() -> &'static FieldContext {
        GLOBAL.get_or_init(|| FieldContext::new().expect("field context construction failed"))
    }

    /// The representation-change map for an ordered pair of representations.
    pub fn iso(&self, from: Repr, to: Repr) -> &IsoMatrix {
        match (from, to) {
            (Repr::Cantor, Repr::Gf128Poly) => &self.cantor_to_gf,
            (Repr::Gf128Poly, Repr::Cantor) => &self.gf_to_cantor,
            (Repr::Tower, Repr::Gf128Poly) => &self.tower_to_gf,
            (Repr::Gf128Poly, Repr::Tower) => &self.gf_to_tower,
            (Repr::Tower, Repr::Cantor) => &self.tower_to_cantor,
            (Repr::Cantor, Repr::Tower) => &self.cantor_to_tower,
            _ => panic!("identity representation pair"),
        }
    }

    pub fn beta(&self, i: usize) -> Gf128 {
        self.basis.beta[i]
    }

    /// One 128-bit basis vector per line, for cross-implementation diffing.
    pub fn dump_beta_hex(&self) -> String {
        dump_hex_u128(self.basis.beta.iter().map(|g| g.0))
    }

    /// Flips a bit of beta[i]; only for fault-injection tests of the
    /// self-test machinery.
    #[doc(hidden)]
    pub fn corrupt_beta_for_tests(&mut self, i: usize) {
        self.basis.beta[i].0 ^= 1 << 63;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::SplitMix64;
    use crate::gf128::gf128_mul;
    use crate::tower::{mul_fast_u128, TowerElem};

    #[test]
    fn isos_are_unital_and_invertible() {
        let ctx = FieldContext::global();
        for &(a, b) in &[
            (Repr::Cantor, Repr::Gf128Poly),
            (Repr::Tower, Repr::Gf128Poly),
            (Repr::Tower, Repr::Cantor),
        ] {
            let fwd = ctx.iso(a, b);
            let bwd = ctx.iso(b, a);
            assert_eq!(fwd.apply(1), 1);
            assert_eq!(bwd.apply(1), 1);
            let mut rng = SplitMix64::new(7);
            for _ in 0..200 {
                let v = rng.next_u128();
                assert_eq!(bwd.apply(fwd.apply(v)), v);
            }
        }
    }

    #[test]
    fn tower_iso_is_multiplicative() {
        let ctx = FieldContext::global();
        let fwd = ctx.iso(Repr::Tower, Repr::Gf128Poly);
        let mut rng = SplitMix64::new(8);
        for _ in 0..1000 {
            let a = rng.next_u128();
            let b = rng.next_u128();
            let in_tower = mul_fast_u128(a, b, 7, &ctx.tables);
            let in_gf = gf128_mul(Gf128(fwd.apply(a)), Gf128(fwd.apply(b)));
            assert_eq!(fwd.apply(in_tower), in_gf.0);
        }
    }

    #[test]
    fn tower_to_cantor_is_triangular() {
        // v_j lies in the span of beta_0..beta_j, so column j has no bit above j
        let ctx = FieldContext::global();
        let c = &ctx.iso(Repr::Tower, Repr::Cantor).matrix;
        for (j, &col) in c.cols.iter().enumerate() {
            if j < 127 {
                assert_eq!(col >> (j + 1), 0, "column {j}");
            }
            assert!(col >> j & 1 == 1, "unit diagonal at {j}");
        }
    }

    #[test]
    fn claim1_shift_rule_through_the_isomorphism() {
        // s_i in tower coordinates agrees with the index shift in Cantor
        // coordinates on all low indices
        let ctx = FieldContext::global();
        let to_cantor = ctx.iso(Repr::Tower, Repr::Cantor);
        for i in 0..=8u32 {
            for j in 0..(1u32 << 12) {
                let tower_out = ctx.sk.eval(i, j);
                let cantor_in = to_cantor.apply(j as u128);
                let cantor_out = to_cantor.apply(tower_out as u128);
                assert_eq!(cantor_out, cantor_in >> i, "i={i} j={j:#x}");
            }
        }
    }

    #[test]
    fn tower256_encode_decode_roundtrip() {
        let ctx = FieldContext::global();
        let mut rng = SplitMix64::new(9);
        assert_eq!(ctx.tower256_encode.apply(W256::ONE), W256::ONE);
        for _ in 0..200 {
            let v = W256 { lo: rng.next_u128(), hi: rng.next_u128() };
            assert_eq!(ctx.tower256_decode.apply(ctx.tower256_encode.apply(v)), v);
        }
    }

    #[test]
    fn tower256_encode_is_multiplicative_below_degree_256() {
        // products of degree-<128 blocks never wrap, so the encoding must be
        // multiplicative on them
        let ctx = FieldContext::global();
        let mut rng = SplitMix64::new(10);
        for _ in 0..100 {
            let a = rng.next_u128();
            let b = rng.next_u128();
            let pa = crate::bitpoly::BitPoly::from_words(vec![a as u64, (a >> 64) as u64], 128);
            let pb = crate::bitpoly::BitPoly::from_words(vec![b as u64, (b >> 64) as u64], 128);
            let prod = crate::bitpoly::mul_oracle(&pa, &pb);
            let w = |j: usize| prod.words().get(j).copied().unwrap_or(0) as u128;
            let prod_bits = W256 { lo: w(0) | w(1) << 64, hi: w(2) | w(3) << 64 };

            let ea = ctx.tower256_encode.apply(W256::from_u128(a));
            let eb = ctx.tower256_encode.apply(W256::from_u128(b));
            let eprod = mul_w256(ea, eb, &ctx.tables);
            assert_eq!(ctx.tower256_decode.apply(eprod), prod_bits);
        }
    }

    #[test]
    fn hex_dumps_are_one_value_per_line() {
        let ctx = FieldContext::global();
        let beta = ctx.dump_beta_hex();
        assert_eq!(beta.lines().count(), 128);
        assert!(beta.lines().all(|l| l.len() == 32 && l.bytes().all(|c| c.is_ascii_hexdigit())));
        assert_eq!(beta.lines().next(), Some("00000000000000000000000000000001"));
        assert_eq!(ctx.iso(Repr::Tower, Repr::Gf128Poly).dump_hex().lines().count(), 128);
    }

    #[test]
    fn prop1_via_cross_module_arithmetic() {
        // s_k(v_k) = 1 checked with tower arithmetic through the gf128 side
        let ctx = FieldContext::global();
        let to_gf = ctx.iso(Repr::Tower, Repr::Gf128Poly);
        for k in 1..=7u32 {
            let vk = TowerElem::from_u128(7, 1u128 << k);
            let img = Gf128(to_gf.apply(vk.value.lo));
            // s_k as the canonical linearized polynomial via its exponent set
            let mut acc = Gf128::ZERO;
            for e in crate::cantor::s_exponents(k) {
                let mut p = img;
                let mut sq = e;
                while sq > 1 {
                    p = crate::gf128::gf128_sqr(p);
                    sq >>= 1;
                }
                acc ^= p;
            }
            assert_eq!(acc, Gf128::ONE, "s_{k}(v_{k})");
        }
    }
}
