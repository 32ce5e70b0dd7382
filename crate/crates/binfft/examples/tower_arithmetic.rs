//! Tower-field arithmetic: products in the small fields, the defining
//! relation of each extension level, and subfield scalar multiplication as
//! independent limb products.
//!
//! ```bash
//! cargo run --release -p binfft --example tower_arithmetic
//! ```

use binfft::bits::W256;
use binfft::tower::{
    embed, subfield_scalar_mul_counted, tower_mul, tower_mul_slow, TowerElem,
};
use binfft::FieldContext;

fn main() {
    let ctx = FieldContext::global();
    let t = &ctx.tables;

    println!("GF(4):   0x2 * 0x2 = {:#x}", tower_mul(e(1, 0x2), e(1, 0x2), t).value.lo);
    println!("GF(4):   0x2 * 0x3 = {:#x}", tower_mul(e(1, 0x2), e(1, 0x3), t).value.lo);
    println!("GF(16):  0x2 * 0x8 = {:#x}", tower_mul(e(2, 0x2), e(2, 0x8), t).value.lo);
    println!(
        "GF(256) log/exp kernel generator: {:#x}; GF(16) generator: {:#x}",
        t.gen256, t.gen16
    );

    println!("\ndefining relations g^2 + g = product of all lower generators:");
    for k in 1..=8u8 {
        let mut gv = W256::ZERO;
        gv.set_bit(1 << (k - 1));
        let g = TowerElem::new(k, gv);
        let sq = tower_mul(g, g, t);
        let back = sq.value ^ g.value;
        let expect_bit = (1usize << (k - 1)) - 1;
        assert!(back.bit(expect_bit), "level {k}");
        println!("  level {k}: x_{k}^2 + x_{k} = v_{expect_bit}");
    }

    // multiply a 128-bit element by a 16-bit subfield element: 8 limb products
    let a = e(7, 0x0123_4567_89ab_cdef_0f1e_2d3c_4b5a_6978);
    let b = e(4, 0xbeef);
    let (prod, limbs) = subfield_scalar_mul_counted(a, b, t);
    assert_eq!(prod, tower_mul(a, embed(b, 7), t));
    println!("\n128-bit by 16-bit scalar product used {limbs} limb multiplications");
    println!("  result: {:032x}", prod.value.lo);

    // the table-driven kernel agrees with the bit-level recursion
    let slow = tower_mul_slow(a, embed(b, 7));
    assert_eq!(prod, slow);
    println!("  matches the bit-recursive oracle");
}

fn e(level: u8, v: u128) -> TowerElem {
    TowerElem::from_u128(level, v)
}
