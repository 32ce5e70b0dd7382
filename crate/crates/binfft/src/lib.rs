//! Multiplication of long binary polynomials over GF(2) with additive FFTs.
//!
//! The transforms evaluate polynomials over GF(2)-linear subspaces of a
//! 128-bit binary field instead of multiplicative subgroups. Coefficients are
//! carried either in the AES-GCM polynomial basis or in a tower-field basis
//! whose butterfly multipliers collapse into small subfields, and a
//! Frobenius-bijection variant multiplies without block segmentation at all.
//! Every backend is checked bit-for-bit against a shift-XOR reference
//! multiplier.
//!
//! Runnable examples, one per capability (`cargo run --release -p binfft
//! --example NAME`):
//!
//! - **`multiply`** - multiply random polynomials on every backend and check
//!   them against each other
//! - **`cantor_chain`** - build the 128-vector basis chain and dump it as hex
//! - **`tower_arithmetic`** - tower-field products, subfield scalars, and the
//!   defining relations
//! - **`basis_conversion`** - the division cascade converting a degree-15
//!   polynomial into the product basis
//! - **`butterfly_multipliers`** - the 16-point transform and its per-layer
//!   multiplier sets
//! - **`mult_count`** - instrumented multiplication counts against the
//!   half-n-log-n bound
//! - **`frobenius_multiply`** - segmentation-free multiplication through the
//!   128-to-1 evaluation bijection
//!
//! The `binfft` binary fronts the same machinery (`mul`, `bench`,
//! `selftest`).

pub mod bitmat;
pub mod bitpoly;
pub mod bits;
pub mod cantor;
pub mod cli;
pub mod context;
pub mod frobenius;
pub mod gf128;
pub mod lch_fft;
pub mod novelpoly;
pub mod pipeline;
pub mod selftest;
pub mod tower;

pub use bitpoly::{interleaved_combine, mul_oracle, split, BitPoly, BlockPoly};
pub use context::{FieldContext, Repr};
pub use lch_fft::EvalVector;
pub use pipeline::{multiply, multiply_traced, plan, pointmul, Backend, Plan, SizeError, Stage};
