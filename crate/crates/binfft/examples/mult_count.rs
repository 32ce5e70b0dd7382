//! Instrumented multiplication counts of the forward transform against the
//! half-n-log-n butterfly bound. Zero and unit multipliers cost nothing, so
//! the issued count always sits below m * 2^(m-1).
//!
//! ```bash
//! cargo run --release -p binfft --example mult_count
//! ```

use binfft::bits::SplitMix64;
use binfft::lch_fft::{fft_observed, MulRecorder, Tower128Kernel};
use binfft::{EvalVector, FieldContext};

fn main() {
    let ctx = FieldContext::global();
    let kernel = Tower128Kernel::new(ctx);
    let mut rng = SplitMix64::new(3);

    println!("{:>4} {:>12} {:>12} {:>8}", "m", "issued", "m*2^(m-1)", "ratio");
    for m in 4..=14u32 {
        let n = 1usize << m;
        let coeffs: Vec<u128> = (0..n).map(|_| rng.next_u128()).collect();
        let mut v = EvalVector::new(coeffs, 0);
        let mut rec = MulRecorder::default();
        fft_observed(&kernel, &mut v, &mut rec);
        let bound = (m as u64) << (m - 1);
        assert!(rec.scalar_mults <= bound);
        println!(
            "{m:>4} {:>12} {bound:>12} {:>8.3}",
            rec.scalar_mults,
            rec.scalar_mults as f64 / bound as f64
        );
    }
    println!("\nevery count is within the bound; the shortfall is the skipped");
    println!("zero-multiplier blocks (and the occasional unit multiplier).");
}
