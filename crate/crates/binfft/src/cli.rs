//! Command-line front end: multiply polynomial files, emit benchmark tables,
//! and run the self-test suite.
//!
//! Exit codes: 0 success, 1 usage/parse/io failure, 2 size-cap exceeded.

use std::time::Instant;

use crate::bitpoly::BitPoly;
use crate::bits::SplitMix64;
use crate::context::FieldContext;
use crate::pipeline::{multiply, Backend, SizeError};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERR: i32 = 1;
pub const EXIT_SIZE_CAP: i32 = 2;

const USAGE: &str = "\
usage:
  binfft mul --backend B --in-a FILE --in-b FILE --out FILE [--format hex|bin]
  binfft bench --backends B[,B...] --log2-words LO..HI --csv FILE [--reps N] [--seed S] [--machine-note TEXT]
  binfft selftest [--seed S]

backends: oracle, gf128, tower128, tower256, frobenius
formats:  hex (most-significant nibble first)
          bin (little-endian 64-bit words, length implied by file size)
";

pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n{USAGE}");
            EXIT_ERR
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERR
        }
        Err(CliError::Size(e)) => {
            eprintln!("error: {e}");
            EXIT_SIZE_CAP
        }
    }
}

enum CliError {
    Usage(String),
    Io(String),
    Size(SizeError),
}

impl From<SizeError> for CliError {
    fn from(e: SizeError) -> Self {
        CliError::Size(e)
    }
}

fn dispatch(args: &[String]) -> Result<i32, CliError> {
    let Some(cmd) = args.first() else {
        return Err(CliError::Usage("missing subcommand".into()));
    };
    let flags = Flags::parse(&args[1..])?;
    match cmd.as_str() {
        "mul" => cmd_mul(&flags),
        "bench" => cmd_bench(&flags),
        "selftest" => Ok(cmd_selftest(flags.get_u64("--seed")?.unwrap_or(0))),
        other => Err(CliError::Usage(format!("unknown subcommand '{other}'"))),
    }
}

struct Flags {
    pairs: Vec<(String, String)>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, CliError> {
        let mut pairs = Vec::new();
        let mut it = args.iter();
        while let Some(key) = it.next() {
            if !key.starts_with("--") {
                return Err(CliError::Usage(format!("expected a --flag, got '{key}'")));
            }
            let Some(value) = it.next() else {
                return Err(CliError::Usage(format!("flag '{key}' is missing a value")));
            };
            pairs.push((key.clone(), value.clone()));
        }
        Ok(Flags { pairs })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key).ok_or_else(|| CliError::Usage(format!("missing required flag {key}")))
    }

    fn get_u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.get(key)
            .map(|v| v.parse::<u64>().map_err(|_| CliError::Usage(format!("{key} expects an integer"))))
            .transpose()
    }
}

fn cmd_mul(flags: &Flags) -> Result<i32, CliError> {
    let backend: Backend = flags
        .require("--backend")?
        .parse()
        .map_err(CliError::Usage)?;
    let in_a = flags.require("--in-a")?;
    let in_b = flags.require("--in-b")?;
    let out = flags.require("--out")?;
    let format = match flags.get("--format").unwrap_or("hex") {
        "hex" => Format::Hex,
        "bin" => Format::Bin,
        other => return Err(CliError::Usage(format!("unknown format '{other}'"))),
    };

    let a = read_poly(in_a, format)?;
    let b = read_poly(in_b, format)?;
    let ctx = FieldContext::global();
    let product = multiply(ctx, &a, &b, backend)?;
    let bytes = match format {
        Format::Hex => poly_to_hex(&product).into_bytes(),
        Format::Bin => poly_to_bytes(&product),
    };
    std::fs::write(out, bytes).map_err(|e| CliError::Io(format!("writing {out}: {e}")))?;
    Ok(EXIT_OK)
}

#[derive(Copy, Clone)]
enum Format {
    Hex,
    Bin,
}

fn read_poly(path: &str, format: Format) -> Result<BitPoly, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("reading {path}: {e}")))?;
    match format {
        Format::Hex => {
            let text = std::str::from_utf8(&bytes)
                .map_err(|e| CliError::Io(format!("{path}: not utf-8 at byte {}", e.valid_up_to())))?;
            poly_from_hex(text).map_err(|off| {
                CliError::Io(format!("{path}: invalid hex digit at byte offset {off}"))
            })
        }
        Format::Bin => {
            if bytes.len() % 8 != 0 {
                let off = bytes.len() - bytes.len() % 8;
                return Err(CliError::Io(format!(
                    "{path}: binary length {} is not a whole number of 64-bit words (trailing fragment at byte offset {off})",
                    bytes.len()
                )));
            }
            let words: Vec<u64> = bytes
                .chunks_exact(8)
                .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            let nbits = words.len() * 64;
            Ok(BitPoly::from_words(words, nbits.max(1)))
        }
    }
}

/// Hex text: most-significant nibble first, the value being the bit pattern
/// read as a big integer. Whitespace is allowed only at the end.
pub fn poly_from_hex(text: &str) -> Result<BitPoly, usize> {
    let trimmed = text.trim_end();
    let mut nibbles = Vec::with_capacity(trimmed.len());
    for (off, ch) in trimmed.bytes().enumerate() {
        match (ch as char).to_digit(16) {
            Some(d) => nibbles.push(d as u64),
            None => return Err(off),
        }
    }
    if nibbles.is_empty() {
        return Err(0);
    }
    let nbits = nibbles.len() * 4;
    let mut words = vec![0u64; nbits.div_ceil(64)];
    for (i, nib) in nibbles.iter().rev().enumerate() {
        words[i / 16] |= nib << (4 * (i % 16));
    }
    Ok(BitPoly::from_words(words, nbits.max(1)))
}

pub fn poly_to_hex(p: &BitPoly) -> String {
    let Some(deg) = p.degree() else {
        return "0".into();
    };
    let nibble_count = deg / 4 + 1;
    let mut out = String::with_capacity(nibble_count);
    for i in (0..nibble_count).rev() {
        let word = p.words().get(i / 16).copied().unwrap_or(0);
        let nib = (word >> (4 * (i % 16))) & 0xf;
        out.push(char::from_digit(nib as u32, 16).unwrap());
    }
    out
}

fn poly_to_bytes(p: &BitPoly) -> Vec<u8> {
    let mut out = Vec::with_capacity(p.words().len() * 8);
    for w in p.words() {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out
}

/// One benchmark cell: median wall time of `reps` runs at d = 64 * 2^k bits.
#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub log2_d_div_64: u32,
    pub backend: Backend,
    pub millis: f64,
    pub reps: u32,
}

/// Measures the given backends over d = 64 * 2^k for k in lo..=hi.
pub fn bench_records(
    ctx: &FieldContext,
    backends: &[Backend],
    lo: u32,
    hi: u32,
    reps: u32,
    seed: u64,
) -> Result<Vec<BenchRecord>, SizeError> {
    assert!(reps >= 3, "bench requires at least 3 repetitions");
    let mut records = Vec::new();
    for k in lo..=hi {
        let d_bits = 64usize << k;
        let mut rng = SplitMix64::new(seed ^ (k as u64) << 32);
        let a = BitPoly::random(&mut rng, d_bits);
        let b = BitPoly::random(&mut rng, d_bits);
        for &backend in backends {
            let mut times = Vec::with_capacity(reps as usize);
            for _ in 0..reps {
                let start = Instant::now();
                let product = multiply(ctx, &a, &b, backend)?;
                let elapsed = start.elapsed();
                std::hint::black_box(&product);
                times.push(elapsed.as_secs_f64() * 1e3);
            }
            times.sort_by(f64::total_cmp);
            let millis = if reps % 2 == 1 {
                times[reps as usize / 2]
            } else {
                (times[reps as usize / 2 - 1] + times[reps as usize / 2]) / 2.0
            };
            records.push(BenchRecord { log2_d_div_64: k, backend, millis, reps });
        }
    }
    Ok(records)
}

/// Strict CSV schema; the free-text machine note is for the user to describe
/// the hardware, since frequency control is outside this tool's power.
pub fn records_to_csv(records: &[BenchRecord], machine_note: &str) -> String {
    let mut out = String::from("log2_d_div_64,backend,millis,reps,machine_note\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{:.3},{},{}\n",
            r.log2_d_div_64, r.backend, r.millis, r.reps, machine_note
        ));
    }
    out
}

fn cmd_bench(flags: &Flags) -> Result<i32, CliError> {
    let backends: Vec<Backend> = flags
        .require("--backends")?
        .split(',')
        .map(|s| s.parse().map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    let range = flags.require("--log2-words")?;
    let (lo, hi) = range
        .split_once("..")
        .and_then(|(lo, hi)| Some((lo.parse::<u32>().ok()?, hi.parse::<u32>().ok()?)))
        .ok_or_else(|| CliError::Usage(format!("--log2-words expects LO..HI, got '{range}'")))?;
    if lo > hi {
        return Err(CliError::Usage(format!("empty range {lo}..{hi}")));
    }
    let reps = flags.get_u64("--reps")?.unwrap_or(5) as u32;
    if reps < 3 {
        return Err(CliError::Usage("--reps must be at least 3".into()));
    }
    let seed = flags.get_u64("--seed")?.unwrap_or(0);
    let csv_path = flags.require("--csv")?;
    let note = flags.get("--machine-note").unwrap_or("");

    let ctx = FieldContext::global();
    let records = bench_records(ctx, &backends, lo, hi, reps, seed)?;
    for r in &records {
        println!("log2_d/64={:2}  {:>10}  {:10.3} ms  (median of {})", r.log2_d_div_64, r.backend, r.millis, r.reps);
    }
    let csv = records_to_csv(&records, note);
    std::fs::write(csv_path, csv).map_err(|e| CliError::Io(format!("writing {csv_path}: {e}")))?;
    Ok(EXIT_OK)
}

fn cmd_selftest(seed: u64) -> i32 {
    let ctx = FieldContext::global();
    let results = selftest::run(ctx, seed);
    let mut all_ok = true;
    for r in &results {
        println!("{:<22} {}  {}", r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
        all_ok &= r.passed;
    }
    if all_ok {
        EXIT_OK
    } else {
        EXIT_ERR
    }
}
