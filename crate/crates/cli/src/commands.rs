//! Command implementations behind the thin argument parser.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use num_traits::One;
use tabcode::approx::{solve_constant_hierarchy, solve_pseudo_approx};
use tabcode::codec::{compile_tables, decode_stream, encode_stream, measured_cost, EncodedContainer};
use tabcode::cost::CostReport;
use tabcode::dual::solve_fixed_block_levels;
use tabcode::exact::{solve_exact, SolveOptions};
use tabcode::freq::{FrequencyTable, Symbol};
use tabcode::huffman::{ceil_log2, huffman_dp};
use tabcode::scheme::{parse_scheme, BlockingScheme, Cost};
use tabcode::shape::{decode_time_from_shape, per_block_counts, TreeShape};
use tabcode::tree::PrefixCode;

use crate::ingest::{ingest_path, InputKind};
use crate::report::{self, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Exact,
    Fixed,
    Approx,
    ConstK,
}

impl Algo {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "exact" => Ok(Algo::Exact),
            "fixed" => Ok(Algo::Fixed),
            "approx" => Ok(Algo::Approx),
            "const-k" => Ok(Algo::ConstK),
            other => bail!("unknown algorithm '{other}' (expected exact|fixed|approx|const-k)"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algo::Exact => "exact",
            Algo::Fixed => "fixed",
            Algo::Approx => "approx",
            Algo::ConstK => "const-k",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum BudgetMode {
    Absolute(u64),
    /// Multiple of the unconstrained length optimum, floored.
    Factor(Cost),
}

impl BudgetMode {
    pub fn resolve(&self, huffman_length: u64) -> Result<u64> {
        match self {
            BudgetMode::Absolute(v) => Ok(*v),
            BudgetMode::Factor(f) => {
                if *f < Cost::one() {
                    bail!("budget factor must be at least 1.0");
                }
                Ok((*f * Cost::from_integer(huffman_length as i128)).floor().to_integer()
                    as u64)
            }
        }
    }
}

/// Dispatches one solve. The rounded solvers take `epsilon`; the
/// height-bounded one also takes `delta`.
pub fn run_solver(
    algo: Algo,
    ft: &FrequencyTable,
    bs: &BlockingScheme,
    budget: u64,
    epsilon: Cost,
    delta: Cost,
    opts: &SolveOptions,
) -> Result<(CostReport, TreeShape)> {
    let out = match algo {
        Algo::Exact => solve_exact(ft, bs, budget, opts)?,
        Algo::Fixed => solve_fixed_block_levels(ft, bs, budget, opts)?,
        Algo::Approx => solve_pseudo_approx(ft, bs, budget, epsilon, opts)?,
        Algo::ConstK => solve_constant_hierarchy(ft, bs, budget, epsilon, delta, opts)?,
    };
    Ok(out)
}

/// Height the CLI searches when none is requested: deep enough to keep
/// the unconstrained optimum inside the space, never below `⌈log₂ n⌉`.
pub fn default_height(ft: &FrequencyTable) -> u32 {
    let (_, shape) = huffman_dp(ft);
    shape.height().max(ceil_log2(ft.len()))
}

/// Solve options for a command: explicit height wins; otherwise the
/// height-bounded solver picks its own bound and everything else gets the
/// default above.
pub fn solve_options(
    ft: &FrequencyTable,
    algo: Algo,
    height: Option<u32>,
    work_limit: u64,
) -> SolveOptions {
    let height = match (height, algo) {
        (Some(h), _) => Some(h),
        (None, Algo::ConstK) => None,
        (None, _) => Some(default_height(ft)),
    };
    SolveOptions { height, max_cells: work_limit as u128 }
}

pub struct AnalyzeArgs {
    pub input: PathBuf,
    pub input_format: InputKind,
    pub scheme: Option<String>,
    pub format: OutputFormat,
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let ing = ingest_path(&args.input, args.input_format)?;
    let ft = &ing.table;
    let total = ft.total();
    let entropy: f64 = ft
        .freqs()
        .iter()
        .map(|&f| {
            let p = f as f64 / total as f64;
            -p * p.log2()
        })
        .sum();
    let (huff_len, huff_shape) = huffman_dp(ft);

    let (scheme, decode, blocks) = match &args.scheme {
        Some(text) => {
            let bs = parse_scheme(text)?;
            let dec = decode_time_from_shape(ft, &huff_shape, &bs)?;
            let blocks = per_block_counts(&huff_shape, &bs)?;
            (Some(text.clone()), Some(report::exact(&dec)), Some(blocks))
        }
        None => (None, None, None),
    };
    let rep = report::AnalyzeReport {
        input: args.input.display().to_string(),
        symbols: ft.len(),
        total_count: total,
        entropy_bits_per_symbol: format!("{entropy:.4}"),
        huffman_length: huff_len,
        huffman_bits_per_symbol: report::decimal(&Cost::new(
            huff_len as i128,
            total.max(1) as i128,
        )),
        scheme,
        huffman_decode_time: decode,
        per_block_counts: blocks,
    };
    match args.format {
        OutputFormat::Json => report::print_json(&rep),
        OutputFormat::Csv => report::print_kv_csv(&analyze_pairs(&rep)),
        OutputFormat::Table => report::print_kv_table("analysis", &analyze_pairs(&rep)),
    }
    Ok(())
}

fn analyze_pairs(rep: &report::AnalyzeReport) -> Vec<(&'static str, String)> {
    let mut pairs = vec![
        ("input", rep.input.clone()),
        ("symbols", rep.symbols.to_string()),
        ("total_count", rep.total_count.to_string()),
        ("entropy_bits_per_symbol", rep.entropy_bits_per_symbol.clone()),
        ("huffman_length", rep.huffman_length.to_string()),
        ("huffman_bits_per_symbol", rep.huffman_bits_per_symbol.clone()),
    ];
    if let Some(scheme) = &rep.scheme {
        pairs.push(("scheme", scheme.clone()));
    }
    if let Some(dec) = &rep.huffman_decode_time {
        pairs.push(("huffman_decode_time", dec.clone()));
    }
    if let Some(blocks) = &rep.per_block_counts {
        pairs.push(("per_block_counts", join_counts(blocks)));
    }
    pairs
}

fn join_counts(counts: &[u64]) -> String {
    counts
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join("/")
}

pub struct OptimizeArgs {
    pub input: PathBuf,
    pub input_format: InputKind,
    pub scheme: String,
    pub budget: BudgetMode,
    pub algo: Algo,
    pub epsilon: Cost,
    pub delta: Cost,
    pub height: Option<u32>,
    pub work_limit: u64,
    pub codebook: Option<PathBuf>,
    pub format: OutputFormat,
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<()> {
    let ing = ingest_path(&args.input, args.input_format)?;
    let ft = &ing.table;
    let bs = parse_scheme(&args.scheme)?;
    let (huff_len, huff_shape) = huffman_dp(ft);
    let huff_decode = decode_time_from_shape(ft, &huff_shape, &bs)?;
    let budget = args.budget.resolve(huff_len)?;
    let opts = solve_options(ft, args.algo, args.height, args.work_limit);
    let (result, shape) =
        run_solver(args.algo, ft, &bs, budget, args.epsilon, args.delta, &opts)?;

    let code = PrefixCode::from_shape(ft, &shape)?;
    let codebook_path = args
        .codebook
        .clone()
        .unwrap_or_else(|| args.input.with_extension("codebook"));
    write_codebook(&codebook_path, &code)?;

    let speedup = huff_decode / result.decode_time;
    let realized =
        Cost::new(result.code_length as i128, huff_len.max(1) as i128) - Cost::one();
    let rep = report::OptimizeReport {
        input: args.input.display().to_string(),
        scheme: args.scheme.clone(),
        algorithm: args.algo.name().to_string(),
        budget,
        huffman_length: huff_len,
        huffman_decode_time: report::exact(&huff_decode),
        optimized_length: result.code_length,
        optimized_decode_time: report::exact(&result.decode_time),
        realized_relaxation: report::decimal(&realized),
        speedup: report::decimal(&speedup),
        huffman_per_block: per_block_counts(&huff_shape, &bs)?,
        optimized_per_block: result.per_block_counts.clone(),
        codebook: codebook_path.display().to_string(),
    };
    match args.format {
        OutputFormat::Json => report::print_json(&rep),
        OutputFormat::Csv => report::print_kv_csv(&optimize_pairs(&rep)),
        OutputFormat::Table => report::print_kv_table("optimization", &optimize_pairs(&rep)),
    }
    Ok(())
}

fn optimize_pairs(rep: &report::OptimizeReport) -> Vec<(&'static str, String)> {
    vec![
        ("input", rep.input.clone()),
        ("scheme", rep.scheme.clone()),
        ("algorithm", rep.algorithm.clone()),
        ("budget", rep.budget.to_string()),
        ("huffman_length", rep.huffman_length.to_string()),
        ("huffman_decode_time", rep.huffman_decode_time.clone()),
        ("optimized_length", rep.optimized_length.to_string()),
        ("optimized_decode_time", rep.optimized_decode_time.clone()),
        ("realized_relaxation", rep.realized_relaxation.clone()),
        ("speedup", rep.speedup.clone()),
        ("huffman_per_block", join_counts(&rep.huffman_per_block)),
        ("optimized_per_block", join_counts(&rep.optimized_per_block)),
        ("codebook", rep.codebook.clone()),
    ]
}

/// Codebook files are `symbol,length` lines in canonical order; the code
/// bits are implied.
pub fn write_codebook(path: &Path, code: &PrefixCode) -> Result<()> {
    let mut out = String::new();
    for (sym, len) in code.length_pairs() {
        out.push_str(&format!("{sym},{len}\n"));
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn load_codebook(path: &Path) -> Result<PrefixCode> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((sym, len)) = line.split_once(',') else {
            bail!("codebook line {}: expected 'symbol,length'", lineno + 1);
        };
        let sym: Symbol = sym.trim().parse().context("codebook symbol id")?;
        let len: u32 = len.trim().parse().context("codebook length")?;
        pairs.push((sym, len));
    }
    PrefixCode::from_lengths(&pairs).map_err(anyhow::Error::from)
}

pub struct EncodeArgs {
    pub input: PathBuf,
    pub codebook: PathBuf,
    pub output: PathBuf,
}

pub fn cmd_encode(args: &EncodeArgs) -> Result<()> {
    let data =
        std::fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let code = load_codebook(&args.codebook)?;
    let symbols: Vec<Symbol> = data.iter().map(|&b| b as Symbol).collect();
    let container = encode_stream(&symbols, &code)?;
    let bytes = container.to_bytes();
    std::fs::write(&args.output, &bytes)
        .with_context(|| format!("writing {}", args.output.display()))?;
    println!(
        "encoded {} symbols into {} payload bits ({} container bytes)",
        container.symbol_count,
        container.payload_bits,
        bytes.len()
    );
    Ok(())
}

pub struct DecodeArgs {
    pub input: PathBuf,
    pub scheme: String,
    pub output: PathBuf,
    pub format: OutputFormat,
}

pub fn cmd_decode(args: &DecodeArgs) -> Result<()> {
    let bytes =
        std::fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let container = EncodedContainer::from_bytes(&bytes)?;
    let bs = parse_scheme(&args.scheme)?;
    let code = container.code()?;
    let tables = compile_tables(&code, &bs)?;
    let (symbols, meter) = decode_stream(&container, &tables)?;

    let mut out = Vec::with_capacity(symbols.len());
    for &sym in &symbols {
        if sym > u8::MAX as Symbol {
            bail!("container alphabet does not fit a byte stream");
        }
        out.push(sym as u8);
    }
    std::fs::write(&args.output, &out)
        .with_context(|| format!("writing {}", args.output.display()))?;

    // the model evaluated on the decoded stream's own counts
    let mut counts: std::collections::BTreeMap<Symbol, u64> = std::collections::BTreeMap::new();
    for &sym in &symbols {
        *counts.entry(sym).or_insert(0) += 1;
    }
    let mut model = Cost::from_integer(0);
    for (&sym, &count) in &counts {
        let depth = code.lookup(sym).expect("decoded symbols are in the code").len;
        model += bs.block_of_depth(depth)?.1 * Cost::from_integer(count as i128);
    }
    let measured = measured_cost(&meter, &bs)?;
    let rep = report::DecodeReport {
        input: args.input.display().to_string(),
        output: args.output.display().to_string(),
        symbols: container.symbol_count,
        payload_bits: container.payload_bits,
        measured_access_cost: report::exact(&measured),
        model_access_cost: report::exact(&model),
        agreement: measured == model,
    };
    match args.format {
        OutputFormat::Json => report::print_json(&rep),
        OutputFormat::Csv => report::print_kv_csv(&decode_pairs(&rep)),
        OutputFormat::Table => report::print_kv_table("decode", &decode_pairs(&rep)),
    }
    Ok(())
}

fn decode_pairs(rep: &report::DecodeReport) -> Vec<(&'static str, String)> {
    vec![
        ("input", rep.input.clone()),
        ("output", rep.output.clone()),
        ("symbols", rep.symbols.to_string()),
        ("payload_bits", rep.payload_bits.to_string()),
        ("measured_access_cost", rep.measured_access_cost.clone()),
        ("model_access_cost", rep.model_access_cost.clone()),
        ("agreement", rep.agreement.to_string()),
    ]
}

pub struct BenchArgs {
    pub input: PathBuf,
    pub scheme: String,
    pub budget: BudgetMode,
    pub algo: Algo,
    pub epsilon: Cost,
    pub delta: Cost,
    pub height: Option<u32>,
    pub work_limit: u64,
    pub format: OutputFormat,
}

pub fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let data =
        std::fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let ing = crate::ingest::ingest_bytes(&data)?;
    let ft = &ing.table;
    let bs = parse_scheme(&args.scheme)?;
    let symbols: Vec<Symbol> = data.iter().map(|&b| b as Symbol).collect();

    let (huff_len, huff_shape) = huffman_dp(ft);
    let huff_decode = decode_time_from_shape(ft, &huff_shape, &bs)?;
    let budget = args.budget.resolve(huff_len)?;
    let opts = solve_options(ft, args.algo, args.height, args.work_limit);
    let (result, opt_shape) =
        run_solver(args.algo, ft, &bs, budget, args.epsilon, args.delta, &opts)?;

    let huff_code = PrefixCode::from_shape(ft, &huff_shape)?;
    let opt_code = PrefixCode::from_shape(ft, &opt_shape)?;
    let huff_tables = compile_tables(&huff_code, &bs)?;
    let opt_tables = compile_tables(&opt_code, &bs)?;

    let started = Instant::now();
    let huff_container = encode_stream(&symbols, &huff_code)?;
    let opt_container = encode_stream(&symbols, &opt_code)?;
    let encode_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let (huff_out, huff_meter) = decode_stream(&huff_container, &huff_tables)?;
    let (opt_out, opt_meter) = decode_stream(&opt_container, &opt_tables)?;
    let decode_seconds = started.elapsed().as_secs_f64();
    if huff_out != symbols || opt_out != symbols {
        bail!("round trip mismatch");
    }

    let huff_measured = measured_cost(&huff_meter, &bs)?;
    let opt_measured = measured_cost(&opt_meter, &bs)?;
    let rep = report::BenchReport {
        input: args.input.display().to_string(),
        scheme: args.scheme.clone(),
        algorithm: args.algo.name().to_string(),
        budget,
        input_bytes: data.len() as u64,
        huffman_payload_bytes: huff_container.payload.len() as u64,
        optimized_payload_bytes: opt_container.payload.len() as u64,
        huffman_model_decode: report::exact(&huff_decode),
        optimized_model_decode: report::exact(&result.decode_time),
        huffman_measured_cost: report::exact(&huff_measured),
        optimized_measured_cost: report::exact(&opt_measured),
        model_agreement: huff_measured == huff_decode && opt_measured == result.decode_time,
        model_speedup: report::decimal(&(huff_decode / result.decode_time)),
        measured_speedup: report::decimal(&(huff_measured / opt_measured)),
        encode_seconds,
        decode_seconds,
    };
    match args.format {
        OutputFormat::Json => report::print_json(&rep),
        OutputFormat::Csv => report::print_kv_csv(&bench_pairs(&rep)),
        OutputFormat::Table => report::print_kv_table("bench", &bench_pairs(&rep)),
    }
    Ok(())
}

fn bench_pairs(rep: &report::BenchReport) -> Vec<(&'static str, String)> {
    vec![
        ("input", rep.input.clone()),
        ("scheme", rep.scheme.clone()),
        ("algorithm", rep.algorithm.clone()),
        ("budget", rep.budget.to_string()),
        ("input_bytes", rep.input_bytes.to_string()),
        ("huffman_payload_bytes", rep.huffman_payload_bytes.to_string()),
        ("optimized_payload_bytes", rep.optimized_payload_bytes.to_string()),
        ("huffman_model_decode", rep.huffman_model_decode.clone()),
        ("optimized_model_decode", rep.optimized_model_decode.clone()),
        ("huffman_measured_cost", rep.huffman_measured_cost.clone()),
        ("optimized_measured_cost", rep.optimized_measured_cost.clone()),
        ("model_agreement", rep.model_agreement.to_string()),
        ("model_speedup", rep.model_speedup.clone()),
        ("measured_speedup", rep.measured_speedup.clone()),
        ("encode_seconds", format!("{:.6}", rep.encode_seconds)),
        ("decode_seconds", format!("{:.6}", rep.decode_seconds)),
    ]
}

pub struct SimulateArgs {
    pub input: PathBuf,
    pub input_format: InputKind,
    pub schemes: Vec<String>,
    pub epsilons: Vec<Cost>,
    pub factors: Vec<String>,
    pub algo: Algo,
    pub delta: Cost,
    pub height: Option<u32>,
    pub work_limit: u64,
    pub format: OutputFormat,
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let ing = ingest_path(&args.input, args.input_format)?;
    let spec = crate::simulate::SweepSpec {
        templates: args.schemes.clone(),
        epsilons: args.epsilons.clone(),
        factors: args.factors.clone(),
        algo: args.algo,
        delta: args.delta,
        opts: solve_options(&ing.table, args.algo, args.height, args.work_limit),
    };
    let cells = crate::simulate::run_sweep(&ing.table, &spec)?;
    match args.format {
        OutputFormat::Json => report::print_json(&cells),
        OutputFormat::Csv => report::print_simulate_csv(&cells),
        OutputFormat::Table => report::print_simulate_table(&cells),
    }
    Ok(())
}
