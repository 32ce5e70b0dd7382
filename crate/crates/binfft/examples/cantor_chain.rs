//! Build the 128-vector basis chain beta_0 = 1, beta_i^2 + beta_i = beta_{i-1}
//! inside GF(2^128) and dump the head of the chain as hex, one vector per
//! line, for diffing against other implementations.
//!
//! ```bash
//! cargo run --release -p binfft --example cantor_chain
//! ```

use binfft::cantor::eval_s_cantor;
use binfft::gf128::gf128_sqr;
use binfft::FieldContext;

fn main() {
    let ctx = FieldContext::global();

    for i in 1..128 {
        let b = ctx.beta(i);
        assert_eq!(gf128_sqr(b) ^ b, ctx.beta(i - 1), "chain relation at {i}");
    }
    println!("chain relation beta_i^2 + beta_i = beta_(i-1) holds for i = 1..127\n");

    println!("first 8 basis vectors (hex, one per line):");
    let dump = ctx.dump_beta_hex();
    for line in dump.lines().take(8) {
        println!("  {line}");
    }

    // with indices in this basis, evaluating s_i is a right shift
    println!("\ns_3 at the point with index 0b1011000 has index {:#b}", eval_s_cantor(3, 0b1011000));
    println!("s_1(beta_1) = beta_0: index {}", eval_s_cantor(1, 2));

    println!("\ntower generator images in GF(2^128):");
    for (k, img) in ctx.x_images.iter().enumerate() {
        println!("  x_{} -> {:032x}", k + 1, img.0);
    }
}
