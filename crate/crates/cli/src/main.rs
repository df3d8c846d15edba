mod config;
mod graph;
mod sigma;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use golden_birkhoff::birkhoff::{birkhoff_sum_with, RotationSpec, MAX_DIRECT_TERMS};
use golden_birkhoff::corefuncs::KernelId;
use golden_birkhoff::fibarith::{fibonacci, level_at_least, Natural};
use golden_birkhoff::goldengraph::{estimate_huge_with, EstimateConfig};
use golden_birkhoff::SCHEMA_VERSION;
use serde_json::json;

use config::RunConfig;

/// Birkhoff sums of cot-type kernels over the golden rotation.
#[derive(Parser, Debug)]
#[command(name = "goldbirk", version)]
struct Cli {
    /// Working precision for the multi-precision suites.
    #[arg(long, global = true)]
    precision_bits: Option<u64>,
    /// Distance to a pole below which a kernel evaluation fails.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pole_epsilon: f64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Decimals in CSV output.
    #[arg(long, global = true, default_value_t = 15)]
    digits: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S_n(theta) for one kernel and rotation, with its normalisations.
    Sum {
        #[arg(long, default_value = "cot")]
        kernel: KernelId,
        #[arg(long, default_value = "golden")]
        rot: RotationSpec,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value = "0")]
        n: Natural,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sampled graphs as CSV (`x,value`).
    Graph(graph::GraphArgs),
    /// Taylor table of sigma, cached between runs.
    Sigma {
        #[arg(long, default_value_t = sigma::DEFAULT_ORDER)]
        order: usize,
        /// Comma separated even levels.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u32>>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Block-series estimate of S_(n-1)/n for arbitrarily large n.
    Estimate {
        n: Natural,
        #[arg(long, default_value_t = sigma::DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u32>>,
        #[arg(long)]
        no_cache: bool,
        /// Longest Zeckendorf representation accepted.
        #[arg(long, default_value_t = 512)]
        max_terms: usize,
    },
    /// Runs a named check suite; exits nonzero when any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
        /// Extra rotations p/q for the renorm fixed-point check.
        #[arg(long)]
        rot: Vec<RotationSpec>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn cmd_sum(kernel: KernelId, rot: RotationSpec, theta: f64, n: &Natural, format: Format, cfg: &RunConfig) -> Result<()> {
    let Some(count) = n.to_u64().filter(|&c| c <= MAX_DIRECT_TERMS) else {
        bail!("direct sums are limited to {MAX_DIRECT_TERMS} terms; use `estimate` for larger n");
    };
    let level = level_at_least(n);
    let q = fibonacci(level).to_f64();
    let policy = cfg.policy()?;
    let s = birkhoff_sum_with(kernel, &rot, theta, count, policy)?;
    let before = if count == 0 { 0.0 } else { birkhoff_sum_with(kernel, &rot, theta, count - 1, policy)? };
    let per = |v: f64, d: f64| if count == 0 { 0.0 } else { v / d };
    let provenance = format!("direct compensated sum of {count} terms, kernel {kernel}, rotation {rot}");
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "sum",
        "kernel": kernel,
        "rotation": rot.to_string(),
        "theta": theta,
        "n": n,
        "level": level,
        "q": fibonacci(level),
        "sum": s,
        "per_n": per(s, count as f64),
        "per_q": per(s, q),
        "normalized": per(before, count as f64),
        "provenance": provenance,
    });
    match format {
        Format::Json => cfg.emit(&serde_json::to_string_pretty(&doc)?),
        Format::Csv => {
            let d = cfg.digits;
            let mut out = String::from("quantity,value\n");
            for key in ["sum", "per_n", "per_q", "normalized"] {
                out.push_str(&format!("{key},{:.d$}\n", doc[key].as_f64().unwrap()));
            }
            out.push_str(&format!("# {provenance}\n"));
            cfg.emit(&out)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = RunConfig {
        precision_bits: cli.precision_bits,
        pole_epsilon: cli.pole_epsilon,
        output: cli.output,
        digits: cli.digits,
        seed: cli.seed,
        verbose: cli.verbose,
    };
    cfg.validate()?;
    match cli.command {
        Command::Sum { kernel, rot, theta, n, format } => cmd_sum(kernel, rot, theta, &n, format, &cfg)?,
        Command::Graph(args) => graph::run(&args, &cfg)?,
        Command::Sigma { order, levels, no_cache } => {
            let levels = levels.unwrap_or_else(sigma::default_levels);
            let table = sigma::load_or_build(order, &levels, !no_cache, &cfg)?;
            cfg.emit(&serde_json::to_string_pretty(&table.to_json())?)?;
        }
        Command::Estimate { n, order, levels, no_cache, max_terms } => {
            let levels = levels.unwrap_or_else(sigma::default_levels);
            let table = sigma::load_or_build(order, &levels, !no_cache, &cfg)?;
            let est = estimate_huge_with(&n, &table, EstimateConfig { max_terms, ..Default::default() })?;
            cfg.emit(&serde_json::to_string_pretty(&est.to_json())?)?;
        }
        Command::Verify { suite, rot } => return verify::run(suite, &rot, &cfg),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
