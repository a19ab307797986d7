//! Deterministic rendering of solver results: human tables, CSV, JSON.

use anyhow::{bail, Result};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use tabcode::scheme::{format_cost, Cost};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => bail!("unknown output format '{other}'"),
        }
    }
}

/// Exact rational string: `106`, or `53/2`.
pub fn exact(c: &Cost) -> String {
    format_cost(c)
}

/// Four-decimal fixed rendering, round half away from zero, trailing
/// zeros trimmed. `53/2` → `26.5`.
pub fn decimal(c: &Cost) -> String {
    let scaled = c * Cost::from_integer(10_000);
    let rounded = if scaled.is_negative() {
        -(-scaled + Cost::new(1, 2)).floor()
    } else {
        (scaled + Cost::new(1, 2)).floor()
    };
    let units = rounded.to_integer().to_i128().expect("bounded report values");
    let sign = if units < 0 { "-" } else { "" };
    let units = units.unsigned_abs();
    let (int, frac) = (units / 10_000, units % 10_000);
    if frac == 0 {
        return format!("{sign}{int}");
    }
    let frac = format!("{frac:04}");
    format!("{sign}{int}.{}", frac.trim_end_matches('0'))
}

/// Exact value with a decimal gloss when they differ: `53/2 (~26.5)`.
pub fn pretty(c: &Cost) -> String {
    if c.is_integer() {
        exact(c)
    } else {
        format!("{} (~{})", exact(c), decimal(c))
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub input: String,
    pub symbols: usize,
    pub total_count: u64,
    pub entropy_bits_per_symbol: String,
    pub huffman_length: u64,
    pub huffman_bits_per_symbol: String,
    pub scheme: Option<String>,
    pub huffman_decode_time: Option<String>,
    pub per_block_counts: Option<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct OptimizeReport {
    pub input: String,
    pub scheme: String,
    pub algorithm: String,
    pub budget: u64,
    pub huffman_length: u64,
    pub huffman_decode_time: String,
    pub optimized_length: u64,
    pub optimized_decode_time: String,
    /// Achieved length over the unconstrained optimum, minus one.
    pub realized_relaxation: String,
    /// Baseline decode time over optimized decode time.
    pub speedup: String,
    pub huffman_per_block: Vec<u64>,
    pub optimized_per_block: Vec<u64>,
    pub codebook: String,
}

#[derive(Debug, Serialize)]
pub struct DecodeReport {
    pub input: String,
    pub output: String,
    pub symbols: u64,
    pub payload_bits: u64,
    pub measured_access_cost: String,
    pub model_access_cost: String,
    pub agreement: bool,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub input: String,
    pub scheme: String,
    pub algorithm: String,
    pub budget: u64,
    pub input_bytes: u64,
    pub huffman_payload_bytes: u64,
    pub optimized_payload_bytes: u64,
    pub huffman_model_decode: String,
    pub optimized_model_decode: String,
    pub huffman_measured_cost: String,
    pub optimized_measured_cost: String,
    pub model_agreement: bool,
    pub model_speedup: String,
    pub measured_speedup: String,
    pub encode_seconds: f64,
    pub decode_seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct SimulateCell {
    pub latency_factor: String,
    pub scheme: String,
    pub epsilon: String,
    pub huffman_decode: String,
    pub optimized_decode: String,
    pub speedup: String,
    pub realized_relaxation: String,
}

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

/// `key,value` lines for single-record reports.
pub fn print_kv_csv(pairs: &[(&str, String)]) {
    println!("key,value");
    for (k, v) in pairs {
        println!("{k},{v}");
    }
}

pub fn print_kv_table(title: &str, pairs: &[(&str, String)]) {
    println!("{title}");
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        println!("  {k:<width$}  {v}");
    }
}

/// The simulate sweep as a grid: rows are latency factors, one column per
/// (scheme, epsilon) pair.
pub fn print_simulate_table(cells: &[SimulateCell]) {
    let mut columns: Vec<(String, String)> = Vec::new();
    let mut rows: Vec<String> = Vec::new();
    for cell in cells {
        let col = (cell.scheme.clone(), cell.epsilon.clone());
        if !columns.contains(&col) {
            columns.push(col);
        }
        if !rows.contains(&cell.latency_factor) {
            rows.push(cell.latency_factor.clone());
        }
    }
    let header: Vec<String> = columns
        .iter()
        .map(|(s, e)| format!("{s} eps={e}"))
        .collect();
    let width = header.iter().map(String::len).max().unwrap_or(8).max(8);
    print!("{:<10}", "factor");
    for h in &header {
        print!("  {h:<width$}");
    }
    println!();
    for row in &rows {
        print!("{row:<10}");
        for (scheme, eps) in &columns {
            let cell = cells
                .iter()
                .find(|c| &c.latency_factor == row && &c.scheme == scheme && &c.epsilon == eps)
                .map(|c| c.speedup.clone())
                .unwrap_or_default();
            print!("  {cell:<width$}");
        }
        println!();
    }
}

pub fn print_simulate_csv(cells: &[SimulateCell]) {
    println!("latency_factor,scheme,epsilon,huffman_decode,optimized_decode,speedup,realized_relaxation");
    for c in cells {
        println!(
            "{},\"{}\",{},{},{},{},{}",
            c.latency_factor,
            c.scheme,
            c.epsilon,
            c.huffman_decode,
            c.optimized_decode,
            c.speedup,
            c.realized_relaxation
        );
    }
}
