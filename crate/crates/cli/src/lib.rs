//! The `dds` command: count and enumerate solutions of TOML models, generate
//! benchmark models, and compare the two search engines.

pub mod bench;
pub mod model;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dds_core::models::{coloring_csp, erdos_renyi, saw_csp, ColoringSpec, WalkSpec};
use dds_core::search::{search, trace_dot_named};
use dds_core::{tree_expand, Count, Heuristic, SearchConfig, Strategy};

use bench::{run_bench, BenchConfig};
use model::{compile, document_from_csp, parse_model, to_toml};
use report::RunReport;

pub const DEFAULT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "dds",
    version,
    about = "Exact solution counting with decomposition during search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the solutions of a model
    Count(SolveArgs),
    /// List solutions of a model
    Enumerate {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, default_value_t = 100)]
        max_solutions: usize,
    },
    /// Write a graph coloring model for a random G(n, p) graph
    GenColoring {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a self-avoiding walk model on the square lattice
    GenSaw {
        #[arg(long)]
        length: usize,
        /// half-width of the lattice box (defaults to the length)
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare DFS and DDS on random coloring instances
    Bench {
        #[arg(long, default_value_t = 15)]
        nodes: usize,
        /// one or more edge probabilities, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.3, 0.4])]
        edge_prob: Vec<f64>,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        #[arg(long, default_value_t = 10)]
        instances: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "maxdeg-ff")]
        heuristic: Heuristic,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[arg(long)]
        no_limit: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, default_value = "dds")]
    pub engine: Strategy,
    #[arg(long, default_value = "maxdeg-ff")]
    pub heuristic: Heuristic,
    /// stop after more than this many solutions
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: u64,
    /// search exhaustively
    #[arg(long)]
    pub no_limit: bool,
    /// write the search tree as a DOT graph
    #[arg(long)]
    pub trace_dot: Option<PathBuf>,
    /// node cap of the DOT trace
    #[arg(long, default_value_t = 10_000)]
    pub trace_cap: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing output"),
    }
}

fn solve(args: &SolveArgs, max_solutions: Option<usize>, out: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.model)
        .with_context(|| format!("reading {}", args.model.display()))?;
    let doc = parse_model(&text).with_context(|| format!("in {}", args.model.display()))?;
    let compiled = compile(&doc)?;
    let state = compiled.state();

    let mut limit = (!args.no_limit).then_some(args.limit);
    if let Some(max) = max_solutions {
        limit = Some(limit.map_or(max as u64, |l| l.min(max as u64)));
    }
    let mut cfg = SearchConfig::new(args.engine, args.heuristic).with_limit(limit);
    if max_solutions.is_some() {
        cfg = cfg.with_tree();
    }
    if args.trace_dot.is_some() {
        cfg = cfg.with_trace(args.trace_cap);
    }
    let outcome = search::<Count>(&state, &cfg);

    if let (Some(path), Some(trace)) = (&args.trace_dot, &outcome.trace) {
        fs::write(path, trace_dot_named(trace, &compiled.names))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut report = RunReport::new(
        &outcome.count,
        outcome.exact,
        args.engine,
        args.heuristic,
        &outcome.stats,
    );
    if let (Some(max), Some(tree)) = (max_solutions, &outcome.tree) {
        let n = compiled.names.len();
        let sols = tree_expand(tree, max)
            .into_iter()
            .map(|a| {
                (0..n)
                    .map(|i| a.get(dds_core::VarRef(i)).expect("full assignment"))
                    .collect()
            })
            .collect();
        report.variables = Some(compiled.names.clone());
        report.solutions = Some(sols);
    }
    let text = match args.report {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json() + "\n",
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Runs one command, writing its report to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Count(args) => solve(&args, None, out),
        Command::Enumerate {
            solve: args,
            max_solutions,
        } => solve(&args, Some(max_solutions), out),
        Command::GenColoring {
            nodes,
            edge_prob,
            colors,
            seed,
            output,
        } => {
            anyhow::ensure!(
                (0.0..=1.0).contains(&edge_prob),
                "--edge-prob must lie in [0, 1]"
            );
            anyhow::ensure!(colors >= 1, "--colors must be at least 1");
            let csp = coloring_csp(&ColoringSpec::new(
                erdos_renyi(nodes, edge_prob, seed),
                colors,
            ));
            write_or_print(
                output.as_deref(),
                &to_toml(&document_from_csp(&csp, None)),
                out,
            )
        }
        Command::GenSaw {
            length,
            bound,
            output,
        } => {
            anyhow::ensure!(length >= 1, "--length must be at least 1");
            let bound = bound.unwrap_or(length as i64);
            anyhow::ensure!(
                bound >= length as i64,
                "--bound must be at least the length"
            );
            let csp = saw_csp(&WalkSpec::with_bound(length, bound));
            write_or_print(
                output.as_deref(),
                &to_toml(&document_from_csp(&csp, None)),
                out,
            )
        }
        Command::Bench {
            nodes,
            edge_prob,
            colors,
            instances,
            seed,
            heuristic,
            limit,
            no_limit,
            report,
        } => {
            anyhow::ensure!(
                edge_prob.iter().all(|p| (0.0..=1.0).contains(p)),
                "--edge-prob must lie in [0, 1]"
            );
            anyhow::ensure!(colors >= 1, "--colors must be at least 1");
            let r = run_bench(&BenchConfig {
                nodes,
                edge_probs: edge_prob,
                colors,
                instances,
                seed,
                heuristic,
                limit: (!no_limit).then_some(limit),
            });
            let text = match report {
                ReportFormat::Text => r.to_text(),
                ReportFormat::Json => serde_json::to_string_pretty(&r)? + "\n",
            };
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code; errors are reported on standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
