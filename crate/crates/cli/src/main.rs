use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use tabcode::scheme::{parse_cost, Cost};
use tabcode_cli::commands::{self, Algo, BudgetMode};
use tabcode_cli::ingest::InputKind;
use tabcode_cli::report::OutputFormat;

/// Prefix codes tuned for fast table-driven decoding: analyze a corpus,
/// restructure its code for a blocking scheme, and run the codec.
#[derive(Parser)]
#[command(name = "tabcode", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonSolve {
    /// Blocking scheme, e.g. "(4,1),(4,20),..." (trailing ",..." repeats
    /// the last block)
    #[arg(long)]
    scheme: String,

    /// Absolute code-length budget
    #[arg(long, conflicts_with = "budget_factor")]
    budget: Option<u64>,

    /// Budget as a multiple of the unconstrained optimum, e.g. 1.02
    #[arg(long)]
    budget_factor: Option<String>,

    /// Solver: exact | fixed | approx | const-k
    #[arg(long, default_value = "exact")]
    algo: String,

    /// Rounding slack for the approximate solvers
    #[arg(long, default_value = "0.05")]
    epsilon: String,

    /// Height-bounding slack for const-k
    #[arg(long, default_value = "0.25")]
    delta: String,

    /// Tree height bound (default: height of the unconstrained optimum)
    #[arg(long)]
    height: Option<u32>,

    /// Dynamic-program cell limit
    #[arg(long, default_value_t = 50_000_000)]
    work_limit: u64,
}

impl CommonSolve {
    fn budget_mode(&self) -> Result<BudgetMode> {
        match (self.budget, &self.budget_factor) {
            (Some(v), None) => Ok(BudgetMode::Absolute(v)),
            (None, Some(f)) => Ok(BudgetMode::Factor(parse_cost(f)?)),
            (None, None) => anyhow::bail!("one of --budget or --budget-factor is required"),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }

    fn algo(&self) -> Result<Algo> {
        Algo::parse(&self.algo)
    }

    fn epsilon(&self) -> Result<Cost> {
        Ok(parse_cost(&self.epsilon)?)
    }

    fn delta(&self) -> Result<Cost> {
        Ok(parse_cost(&self.delta)?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Frequency statistics and the unconstrained baseline
    Analyze {
        /// Input file: raw bytes, or a CSV/JSON (symbol, count) table
        input: PathBuf,
        /// auto | bytes | csv | json
        #[arg(long, default_value = "auto")]
        input_format: String,
        #[arg(long)]
        scheme: Option<String>,
        /// table | csv | json
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Find a decode-optimal code under a length budget; write a codebook
    Optimize {
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        input_format: String,
        #[command(flatten)]
        solve: CommonSolve,
        /// Codebook output path (default: INPUT with .codebook)
        #[arg(long)]
        codebook: Option<PathBuf>,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Encode a byte file with a codebook into a container
    Encode {
        input: PathBuf,
        #[arg(long)]
        codebook: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode a container through metered lookup tables
    Decode {
        input: PathBuf,
        #[arg(long)]
        scheme: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Model-predicted speedups over latency factors, schemes, epsilons
    Simulate {
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        input_format: String,
        /// Scheme template; a literal `x` cost is replaced per factor
        /// (repeatable)
        #[arg(long, required = true)]
        scheme: Vec<String>,
        /// Total relaxation values (repeatable)
        #[arg(long, default_value = "0.02")]
        epsilon: Vec<String>,
        /// Values substituted for `x`, comma separated
        #[arg(long, default_value = "1,10,100")]
        latency_factors: String,
        #[arg(long, default_value = "approx")]
        algo: String,
        #[arg(long, default_value = "0.25")]
        delta: String,
        #[arg(long)]
        height: Option<u32>,
        #[arg(long, default_value_t = 50_000_000)]
        work_limit: u64,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Round-trip a file under both codes and compare model to meter
    Bench {
        input: PathBuf,
        #[command(flatten)]
        solve: CommonSolve,
        #[arg(long, default_value = "table")]
        format: String,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Analyze { input, input_format, scheme, format } => {
            commands::cmd_analyze(&commands::AnalyzeArgs {
                input,
                input_format: InputKind::parse(&input_format)?,
                scheme,
                format: OutputFormat::parse(&format)?,
            })
        }
        Cmd::Optimize { input, input_format, solve, codebook, format } => {
            commands::cmd_optimize(&commands::OptimizeArgs {
                input,
                input_format: InputKind::parse(&input_format)?,
                scheme: solve.scheme.clone(),
                budget: solve.budget_mode()?,
                algo: solve.algo()?,
                epsilon: solve.epsilon()?,
                delta: solve.delta()?,
                height: solve.height,
                work_limit: solve.work_limit,
                codebook,
                format: OutputFormat::parse(&format)?,
            })
        }
        Cmd::Encode { input, codebook, output } => {
            commands::cmd_encode(&commands::EncodeArgs { input, codebook, output })
        }
        Cmd::Decode { input, scheme, output, format } => {
            commands::cmd_decode(&commands::DecodeArgs {
                input,
                scheme,
                output,
                format: OutputFormat::parse(&format)?,
            })
        }
        Cmd::Simulate {
            input,
            input_format,
            scheme,
            epsilon,
            latency_factors,
            algo,
            delta,
            height,
            work_limit,
            format,
        } => {
            let epsilons: Result<Vec<Cost>> =
                epsilon.iter().map(|e| Ok(parse_cost(e)?)).collect();
            let factors: Vec<String> = latency_factors
                .split(',')
                .map(|f| f.trim().to_string())
                .filter(|f| !f.is_empty())
                .collect();
            for f in &factors {
                parse_cost(f)?; // validate early
            }
            commands::cmd_simulate(&commands::SimulateArgs {
                input,
                input_format: InputKind::parse(&input_format)?,
                schemes: scheme,
                epsilons: epsilons?,
                factors,
                algo: Algo::parse(&algo)?,
                delta: parse_cost(&delta)?,
                height,
                work_limit,
                format: OutputFormat::parse(&format)?,
            })
        }
        Cmd::Bench { input, solve, format } => commands::cmd_bench(&commands::BenchArgs {
            input,
            scheme: solve.scheme.clone(),
            budget: solve.budget_mode()?,
            algo: solve.algo()?,
            epsilon: solve.epsilon()?,
            delta: solve.delta()?,
            height: solve.height,
            work_limit: solve.work_limit,
            format: OutputFormat::parse(&format)?,
        }),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<tabcode::Error>() {
        Some(tabcode::Error::Infeasible { .. }) | Some(tabcode::Error::NoValidTree) => 2,
        Some(tabcode::Error::WorkLimitExceeded { .. }) | Some(tabcode::Error::TooLarge { .. }) => 4,
        Some(_) => 3,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
