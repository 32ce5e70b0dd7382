//! Multiplication without block segmentation: polynomials with up to 128n
//! coefficient bits map bijectively onto n field evaluations at a shifted
//! subspace, because the shift point has full Frobenius order.
//!
//! ```bash
//! cargo run --release -p binfft --example frobenius_multiply
//! ```

use binfft::bits::SplitMix64;
use binfft::frobenius::{
    frob_eval, frob_interp, frob_multiply, frob_order_check, shift_has_full_frobenius_order,
    FrobeniusPlan,
};
use binfft::{mul_oracle, BitPoly, FieldContext};

fn main() {
    let ctx = FieldContext::global();

    let plan = FrobeniusPlan::new(ctx, 3).expect("within the lane cap");
    println!("plan: 2^{} lanes, shift index 2^{}", plan.m, plan.shift_index.trailing_zeros());
    println!("shift has full Frobenius order 128: {}", frob_order_check(ctx, &plan));
    println!(
        "the identity element would not qualify: {}",
        shift_has_full_frobenius_order(ctx, 1)
    );
    println!("\nseven collapsed layer multipliers (hex):");
    for (k, m) in plan.layer_multipliers.iter().enumerate() {
        println!("  layer m+{k}: {:032x}", m.0);
    }

    // 1024 coefficient bits round-trip through 8 field elements
    let mut rng = SplitMix64::new(9);
    let a = BitPoly::random(&mut rng, 128 * 8);
    let e = frob_eval(ctx, &plan, &a);
    assert_eq!(frob_interp(ctx, &plan, &e), a);
    println!("\n1024 bits -> 8 evaluations -> 1024 bits: exact roundtrip");

    let x = BitPoly::random(&mut rng, 1 << 15);
    let y = BitPoly::random(&mut rng, 1 << 15);
    let got = frob_multiply(ctx, &x, &y).unwrap();
    assert_eq!(got, mul_oracle(&x, &y));
    println!("2^15-bit product matches the reference multiplier");
}
