//! The conversion of a sixteen-coefficient polynomial into the product basis:
//! four layers of two-term divisions, printed as the bulk XOR schedule, then a
//! roundtrip through the inverse network.
//!
//! ```bash
//! cargo run --release -p binfft --example basis_conversion
//! ```

use binfft::bits::SplitMix64;
use binfft::novelpoly::{basis_cvt, conversion_schedule, i_basis_cvt, var_subs};

fn main() {
    println!("conversion schedule for 16 coefficients (src -> dst, length):");
    for op in conversion_schedule(16) {
        println!("  [{:2}..{:2}) ^= [{:2}..{:2})", op.dst, op.dst + op.len, op.src, op.src + op.len);
    }
    println!("  (divisions by x^8+x^2, then x^4+x twice, the chunk step, and x^2+x per chunk)\n");

    // x^2 = (x^2 + x) + x: two basis terms after conversion
    let mut f = [0u64, 0, 1, 0];
    basis_cvt(&mut f[..]);
    println!("x^2 converts to coefficients {f:?} (terms at indices 1 and 2)");
    i_basis_cvt(&mut f[..]);
    assert_eq!(f, [0, 0, 1, 0]);
    println!("inverse network recovers the monomial form\n");

    // substitute y = x^4 + x into x^8 + x^2 = y^2
    let mut g = [0u64; 16];
    g[8] = 1;
    g[2] = 1;
    var_subs(&mut g[..], 1);
    println!("x^8 + x^2 under y = x^4+x: chunk coefficients {:?} (pure y^2)", &g[8..12]);

    // roundtrip a large random buffer
    let mut rng = SplitMix64::new(7);
    let orig: Vec<u64> = (0..(1 << 12)).map(|_| rng.next_u64()).collect();
    let mut buf = orig.clone();
    basis_cvt(&mut buf[..]);
    i_basis_cvt(&mut buf[..]);
    assert_eq!(buf, orig);
    println!("\nroundtrip on 2^12 random coefficients: exact");
}
