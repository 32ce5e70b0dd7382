//! Cantor basis construction inside GF(2^128), subspace vanishing polynomial
//! evaluation in the Cantor and tower representations, and the tabulated
//! 32-bit s_i maps used by the butterfly layers.
//!
//! The chain (beta_i) satisfies beta_0 = 1 and beta_i^2 + beta_i = beta_{i-1}.
//! With indices in this basis, evaluating s_i is a plain right shift.

use crate::bitmat::{BitMatrix, LinSolver128, M4rTables};
use crate::gf128::{gf128_mul, gf128_sqr, Gf128};
use crate::tower::{mul_fast_u128, LogExpTables};

/// The 128-vector Cantor chain.
#[derive(Clone)]
pub struct CantorBasis {
    pub beta: Vec<Gf128>,
}

/// Fatal context-construction failures.
#[derive(Debug)]
pub enum ContextError {
    ArtinSchreierUnsolvable { step: usize },
    DependentBasis,
    SingularMatrix(&'static str),
}

impl std::fmt::Display for ContextError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ContextError::ArtinSchreierUnsolvable { step } => {
                write!(f, "no root for r^2 + r = c at chain step {step}")
            }
            ContextError::DependentBasis => write!(f, "basis vectors are linearly dependent"),
            ContextError::SingularMatrix(name) => write!(f, "singular matrix: {name}"),
        }
    }
}

impl std::error::Error for ContextError {}

/// Solver for r^2 + r = c in GF(2^128). The map r -> r^2 + r is GF(2)-linear
/// with kernel {0, 1}, so the system is solved by a fixed elimination; the two
/// roots of a solvable equation differ exactly in bit 0.
pub struct ArtinSchreierSolver {
    solver: LinSolver128,
}

impl ArtinSchreierSolver {
    pub fn new() -> Self {
        let cols = (0..128)
            .map(|i| {
                let xi = Gf128(1u128 << i);
                (gf128_sqr(xi) ^ xi).0
            })
            .collect();
        ArtinSchreierSolver { solver: LinSolver128::new(&BitMatrix::from_cols(cols)) }
    }

    /// The numerically smaller root, if any.
    pub fn smaller_root(&self, c: Gf128) -> Option<Gf128> {
        let r = self.solver.solve(c.0)?;
        Some(Gf128(r.min(r ^ 1)))
    }
}

impl Default for ArtinSchreierSolver {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds the chain deterministically: each step takes the smaller of the two
/// roots of beta_i^2 + beta_i = beta_{i-1}.
pub fn build_cantor_basis() -> Result<CantorBasis, ContextError> {
    let solver = ArtinSchreierSolver::new();
    let mut beta = Vec::with_capacity(128);
    beta.push(Gf128::ONE);
    for i in 1..128 {
        let prev = beta[i - 1];
        let r = solver
            .smaller_root(prev)
            .ok_or(ContextError::ArtinSchreierUnsolvable { step: i })?;
        debug_assert_eq!(gf128_sqr(r) ^ r, prev);
        beta.push(r);
    }
    let rank = BitMatrix::from_cols(beta.iter().map(|b| b.0).collect::<Vec<_>>()).rank();
    if rank != 128 {
        return Err(ContextError::DependentBasis);
    }
    Ok(CantorBasis { beta })
}

/// s_i on a Cantor-basis index: the representation of s_i(phi_beta(j)) is j
/// shifted right by i bits.
#[inline]
pub fn eval_s_cantor(i: u32, j: u128) -> u128 {
    j >> i
}

/// Tabulated s_1 .. s_31 on 32-bit tower values, applied with 8-bit-chunk
/// table lookups (four per query). Caps FFT sizes at 2^32 points.
pub struct SkTables {
    mats: Vec<BitMatrix<u32>>,
    maps: Vec<M4rTables<u32>>,
}

impl SkTables {
    pub fn build(t: &LogExpTables) -> SkTables {
        // s_1(v_j) = v_j^2 + v_j computed in the 32-bit tower field
        let s1_cols: Vec<u32> = (0..32)
            .map(|j| {
                let vj = 1u128 << j;
                (mul_fast_u128(vj, vj, 5, t) ^ vj) as u32
            })
            .collect();
        let s1 = BitMatrix::from_cols(s1_cols);
        let mut mats = vec![s1.clone()];
        for _ in 2..=31 {
            let prev = mats.last().unwrap();
            mats.push(s1.compose(prev));
        }
        let maps = mats.iter().map(|m| M4rTables::build(m, 8)).collect();
        SkTables { mats, maps }
    }

    /// s_i evaluated on a 32-bit tower value; i = 0 is the identity.
    #[inline]
    pub fn eval(&self, i: u32, alpha: u32) -> u32 {
        if i == 0 {
            return alpha;
        }
        assert!(i <= 31, "s_i tables cover i <= 31");
        self.maps[i as usize - 1].apply(alpha)
    }

    /// Column-XOR oracle for the tabulated path.
    pub fn eval_naive(&self, i: u32, alpha: u32) -> u32 {
        if i == 0 {
            return alpha;
        }
        self.mats[i as usize - 1].apply_naive(alpha)
    }
}

/// s_i on a 32-bit tower value via the precomputed tables.
#[inline]
pub fn eval_s_tower(sk: &SkTables, i: u32, alpha: u32) -> u32 {
    sk.eval(i, alpha)
}

/// Exponent set of s_i under the recurrence s_{i+1} = s_i^2 + s_i, as a mask:
/// bit m set means the monomial x^(2^m) appears. Squaring doubles exponents
/// (shifts the mask) and coefficients live in GF(2), so the sum is an XOR.
pub fn s_exponent_mask(i: u32) -> u128 {
    assert!(i <= 127);
    let mut mask = 1u128; // s_0 = x
    for _ in 0..i {
        mask = (mask << 1) ^ mask;
    }
    mask
}

/// The exponents of s_i in increasing order, e.g. s_3 -> [1, 2, 4, 8].
pub fn s_exponents(i: u32) -> Vec<u128> {
    let mask = s_exponent_mask(i);
    (0..128).filter(|&m| (mask >> m) & 1 == 1).map(|m| 1u128 << m).collect()
}

/// A representation-change matrix with its chunked lookup tables.
pub struct IsoMatrix {
    pub matrix: BitMatrix<u128>,
    m4r: M4rTables<u128>,
}

impl IsoMatrix {
    /// 4-bit chunks: 32 tables of 16 precombined columns.
    pub fn new(matrix: BitMatrix<u128>) -> IsoMatrix {
        let m4r = M4rTables::build(&matrix, 4);
        IsoMatrix { matrix, m4r }
    }

    #[inline]
    pub fn apply(&self, v: u128) -> u128 {
        self.m4r.apply(v)
    }

    pub fn apply_naive(&self, v: u128) -> u128 {
        self.matrix.apply_naive(v)
    }

    /// One column per line, 32 hex digits each.
    pub fn dump_hex(&self) -> String {
        dump_hex_u128(self.matrix.cols.iter().copied())
    }
}

/// Chunked matrix-vector application; equals the naive column-XOR product.
#[inline]
pub fn apply_m4r(m: &IsoMatrix, v: u128) -> u128 {
    m.apply(v)
}

pub fn dump_hex_u128(values: impl IntoIterator<Item = u128>) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&format!("{v:032x}\n"));
    }
    out
}

/// Images of the tower generators x_1..x_7 inside GF(2^128), solved from
/// x_k^2 + x_k = x_1 * ... * x_{k-1} with the same deterministic root rule as
/// the beta chain.
pub fn solve_tower_generators(solver: &ArtinSchreierSolver) -> Result<[Gf128; 7], ContextError> {
    let mut imgs = [Gf128::ZERO; 7];
    let mut rhs = Gf128::ONE;
    for (k, img) in imgs.iter_mut().enumerate() {
        *img = solver
            .smaller_root(rhs)
            .ok_or(ContextError::ArtinSchreierUnsolvable { step: 128 + k })?;
        rhs = gf128_mul(rhs, *img);
    }
    Ok(imgs)
}

/// The tower-to-polynomial-basis matrix: column j is the image of v_j, the
/// product of the solved generator images selected by the bits of j.
pub fn tower_to_gf_matrix(x_images: &[Gf128; 7]) -> BitMatrix<u128> {
    let mut cols = vec![0u128; 128];
    cols[0] = 1;
    for j in 1..128usize {
        let low = j & (j - 1);
        let gen = x_images[j.trailing_zeros() as usize];
        cols[j] = gf128_mul(Gf128(cols[low]), gen).0;
    }
    BitMatrix::from_cols(cols)
}
