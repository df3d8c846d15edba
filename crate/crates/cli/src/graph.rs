use std::fmt::Write;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use golden_birkhoff::birkhoff::{birkhoff_graph_with, RotationSpec};
use golden_birkhoff::corefuncs::KernelId;
use golden_birkhoff::goldengraph::{caricature, t_function_many, Side};
use golden_birkhoff::related::csc2_graph;
use golden_birkhoff::SCHEMA_VERSION;
use serde_json::json;

use crate::config::{write_file, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// cot sums along the golden rotation
    Golden,
    /// cot sums along the convergent F_(n-1)/F_n
    Rational,
    Csc2,
    Sec,
    Caricature,
    /// golden graphs for several offsets y
    Sfamily,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long, value_enum, default_value = "golden")]
    pub target: Target,
    #[arg(long, default_value_t = 24)]
    pub level: u32,
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Offset y, or a range `a..b` for the sfamily target.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub y: String,
    /// Number of offsets in an sfamily range.
    #[arg(long, default_value_t = 7)]
    pub steps: usize,
    /// Digit depth for the caricature.
    #[arg(long, default_value_t = 60)]
    pub depth: u32,
}

fn parse_range(s: &str, steps: usize) -> Result<Vec<f64>> {
    match s.split_once("..") {
        None => Ok(vec![s.parse().with_context(|| format!("bad offset {s:?}"))?]),
        Some((a, b)) => {
            let a: f64 = a.parse().with_context(|| format!("bad range start {a:?}"))?;
            let b: f64 = b.parse().with_context(|| format!("bad range end {b:?}"))?;
            if steps < 2 {
                bail!("a range needs --steps >= 2");
            }
            Ok((0..steps).map(|i| a + (b - a) * i as f64 / (steps - 1) as f64).collect())
        }
    }
}

struct Series {
    xs: Vec<f64>,
    values: Vec<f64>,
    y: f64,
}

fn grid_points(grid: usize) -> Vec<f64> {
    (0..=grid).map(|i| i as f64 / grid as f64).collect()
}

pub fn run(args: &GraphArgs, cfg: &RunConfig) -> Result<()> {
    if args.grid == 0 {
        bail!("--grid must be at least 1");
    }
    let offsets = parse_range(&args.y, args.steps)?;
    if offsets.len() > 1 && args.target != Target::Sfamily {
        bail!("offset ranges are only meaningful for --target sfamily");
    }
    let policy = cfg.policy()?;
    let golden = RotationSpec::Golden;
    let mut series = Vec::new();
    let mut meta = json!({
        "target": format!("{:?}", args.target).to_lowercase(),
        "level": args.level,
        "grid": args.grid,
    });
    for &y in &offsets {
        let s = match args.target {
            Target::Golden | Target::Sfamily => {
                let g = birkhoff_graph_with(KernelId::Cot, &golden, y, args.level, args.grid, 1, policy)?;
                meta["parity"] = json!(g.parity);
                Series { xs: g.xs, values: g.values, y }
            }
            Target::Rational => {
                let xs = grid_points(args.grid);
                let values = t_function_many(&xs, y, args.level, Side::Right)?;
                Series { xs, values, y }
            }
            Target::Csc2 => {
                let g = csc2_graph(y, args.level, args.grid)?;
                Series { xs: g.xs, values: g.values, y }
            }
            Target::Sec => {
                let g = birkhoff_graph_with(KernelId::Sec, &golden, y, args.level, args.grid, 1, policy)?;
                Series { xs: g.xs, values: g.values, y }
            }
            Target::Caricature => {
                let xs = grid_points(args.grid);
                // x = 1 is read as its left limit
                let values = xs
                    .iter()
                    .map(|&x| caricature(if x >= 1.0 { 1.0 - f64::EPSILON / 2.0 } else { x }, args.depth))
                    .collect::<golden_birkhoff::Result<Vec<_>>>()?;
                meta["depth"] = json!(args.depth);
                Series { xs, values, y }
            }
        };
        series.push(s);
    }

    let d = cfg.digits;
    let family = args.target == Target::Sfamily;
    let mut csv = String::from(if family { "x,value,y\n" } else { "x,value\n" });
    for s in &series {
        for (x, v) in s.xs.iter().zip(&s.values) {
            if family {
                let _ = writeln!(csv, "{x:.d$},{v:.d$},{:.d$}", s.y);
            } else {
                let _ = writeln!(csv, "{x:.d$},{v:.d$}");
            }
        }
    }
    cfg.emit(&csv)?;
    if let Some(path) = &cfg.output {
        meta["offsets"] = json!(offsets);
        meta["points"] = json!(args.grid + 1);
        let sidecar = json!({ "schema_version": SCHEMA_VERSION, "kind": "graph", "metadata": meta });
        write_file(&path.with_extension("json"), &serde_json::to_string_pretty(&sidecar)?)?;
    }
    Ok(())
}
