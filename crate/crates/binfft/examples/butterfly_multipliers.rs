//! Evaluate a degree-7 polynomial at 16 points over the tower representation
//! and show how the butterfly multipliers collapse into tiny subfield values,
//! layer by layer.
//!
//! ```bash
//! cargo run --release -p binfft --example butterfly_multipliers
//! ```

use binfft::bits::SplitMix64;
use binfft::lch_fft::{eval_oracle, fft_observed, ifft, MulRecorder, Tower128Kernel};
use binfft::{EvalVector, FieldContext};

fn main() {
    let ctx = FieldContext::global();
    let kernel = Tower128Kernel::new(ctx);

    let mut rng = SplitMix64::new(1);
    let mut coeffs: Vec<u128> = (0..8).map(|_| rng.next_u128()).collect();
    coeffs.resize(16, 0);

    let mut v = EvalVector::new(coeffs.clone(), 0);
    let mut rec = MulRecorder::default();
    fft_observed(&kernel, &mut v, &mut rec);

    println!("degree-7 polynomial at 16 points; multipliers per butterfly layer:");
    for layer in (0..4u32).rev() {
        let set: Vec<String> =
            rec.layer_multipliers[&layer].iter().map(|m| format!("{m:#x}")).collect();
        let note = if layer == 3 { "  (zero high coefficients: pure fan-out)" } else { "" };
        println!("  layer {layer}: {{{}}}{note}", set.join(", "));
    }
    println!("issued scalar multiplications: {}", rec.scalar_mults);

    // every output equals the naive product-basis evaluation
    for (i, &out) in v.elems.iter().enumerate() {
        assert_eq!(out, eval_oracle(&kernel, &coeffs, i as u128));
    }
    println!("\nall 16 outputs match the naive evaluation oracle");

    ifft(&kernel, &mut v);
    assert_eq!(v.elems, coeffs);
    println!("inverse butterflies recover the coefficients exactly");
}
