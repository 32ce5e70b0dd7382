//! Multiply a pair of random polynomials on every backend and check the
//! results against the shift-XOR reference multiplier.
//!
//! ```bash
//! cargo run --release -p binfft --example multiply
//! ```

use std::time::Instant;

use binfft::bits::SplitMix64;
use binfft::{mul_oracle, multiply, Backend, BitPoly, FieldContext};

fn main() {
    let ctx = FieldContext::global();
    let mut rng = SplitMix64::new(0xb1f);
    let bits = 1 << 18;
    let a = BitPoly::random(&mut rng, bits);
    let b = BitPoly::random(&mut rng, bits);

    println!("multiplying two random {bits}-bit polynomials\n");
    let start = Instant::now();
    let want = mul_oracle(&a, &b);
    println!("{:>10}  {:8.2} ms  (reference)", "oracle", start.elapsed().as_secs_f64() * 1e3);

    for backend in [Backend::Gf128, Backend::Tower128, Backend::Tower256, Backend::Frobenius] {
        let start = Instant::now();
        let got = multiply(ctx, &a, &b, backend).expect("within size caps");
        let ms = start.elapsed().as_secs_f64() * 1e3;
        assert_eq!(got, want, "{backend} disagrees with the oracle");
        println!("{:>10}  {:8.2} ms  matches the oracle", backend.name(), ms);
    }
    println!("\nproduct degree: {}", want.degree().unwrap());
}
