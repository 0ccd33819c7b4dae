use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::json;

use rowspace::families::{build, Family, FamilySpec};
use rowspace::harness::{check_size_bound, oracle_limit_from_env, run_verification, RunOptions, ORACLE_LIMIT_ENV};
use rowspace::linalg::adjacency_matrix;
use rowspace::oracle::{exhaustive_verify, ExhaustiveOptions};
use rowspace::witness::{find_witness, SearchOptions, Strategy};
use rowspace::write_graph6;

#[derive(Parser)]
#[command(name = "rowspace", version, about = "Find 0/1 vectors in the row space of a graph's adjacency matrix that are not rows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every graph in a graph6 file, one JSON record per line.
    Verify {
        /// graph6 input, one graph per line ("-" for stdin)
        #[arg(long, default_value = "-")]
        input: String,
        /// Largest order handed to the brute-force fallback
        #[arg(long, env = ORACLE_LIMIT_ENV)]
        oracle_limit: Option<usize>,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// JSONL output ("-" for stdout)
        #[arg(long, default_value = "-")]
        out: String,
        /// Comma-separated strategies to enable, in dispatch order
        #[arg(long, value_delimiter = ',')]
        strategies: Option<Vec<Strategy>>,
    },
    /// Check every connected labeled graph on n vertices.
    Exhaustive {
        #[arg(long)]
        n: usize,
        /// JSON report ("-" for stdout)
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, env = ORACLE_LIMIT_ENV)]
        oracle_limit: Option<usize>,
    },
    /// Build a named graph and describe it.
    Family {
        #[arg(long)]
        name: Family,
        /// Order or leaf count for parametric families
        #[arg(long)]
        size: Option<usize>,
        /// Print only the graph6 line
        #[arg(long)]
        emit_graph6: bool,
    },
    /// Check s >= 2n - 5 for diameter-2 graphs without a dominating vertex.
    SizeBound {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn open_input(path: &str) -> anyhow::Result<Box<dyn BufRead>> {
    Ok(match path {
        "-" => Box::new(io::stdin().lock()),
        p => Box::new(BufReader::new(File::open(p).with_context(|| format!("opening {p}"))?)),
    })
}

fn open_output(path: &str) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        "-" => Box::new(io::stdout().lock()),
        p => Box::new(BufWriter::new(
            File::create(PathBuf::from(p)).with_context(|| format!("creating {p}"))?,
        )),
    })
}

fn search_options(oracle_limit: Option<usize>, strategies: Option<Vec<Strategy>>) -> anyhow::Result<SearchOptions> {
    let oracle_limit = match oracle_limit {
        Some(l) => l,
        None => oracle_limit_from_env()?,
    };
    let mut opts = SearchOptions::with_oracle_limit(oracle_limit);
    if let Some(s) = strategies {
        if s.is_empty() {
            bail!("--strategies needs at least one strategy");
        }
        opts.enabled = s;
    }
    Ok(opts)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify {
            input,
            oracle_limit,
            jobs,
            out,
            strategies,
        } => {
            let opts = RunOptions {
                search: search_options(oracle_limit, strategies)?,
                jobs,
            };
            let mut w = open_output(&out)?;
            let summary = run_verification(open_input(&input)?, &opts, &mut w)?;
            eprintln!("{}", serde_json::to_string(&summary)?);
            Ok(summary.errors == 0)
        }
        Command::Exhaustive {
            n,
            out,
            jobs,
            oracle_limit,
        } => {
            let opts = ExhaustiveOptions {
                search: search_options(oracle_limit, None)?,
                jobs,
            };
            let report = exhaustive_verify(n, &opts)?;
            let mut w = open_output(&out)?;
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w)?;
            w.flush()?;
            eprintln!(
                "n={}: {} graphs checked, {} failures, {} size-bound violations",
                report.n,
                report.graphs_checked,
                report.failures.len(),
                report.size_bound.violations.len()
            );
            Ok(report.failures.is_empty() && report.size_bound.violations.is_empty())
        }
        Command::Family {
            name,
            size,
            emit_graph6,
        } => {
            let g = build(&FamilySpec { family: name, size })?;
            let g6 = write_graph6(&g);
            if emit_graph6 {
                println!("{g6}");
                return Ok(true);
            }
            let witness = match find_witness(&g, &SearchOptions::with_oracle_limit(oracle_limit_from_env()?)) {
                Ok(r) => r.witness.map(|w| json!({"strategy": w.strategy, "vector": w.vector_string()})),
                Err(_) => None,
            };
            let desc = json!({
                "family": name.name(),
                "graph6": g6,
                "n": g.n(),
                "edges": g.edge_count(),
                "diameter": g.diameter(),
                "rank": adjacency_matrix(&g).rank(),
                "reduced": g.is_reduced(),
                "dominating": g.dominating_vertices(),
                "witness": witness,
            });
            println!("{}", serde_json::to_string_pretty(&desc)?);
            Ok(true)
        }
        Command::SizeBound { input, out, jobs } => {
            let mut w = open_output(&out)?;
            let tally = check_size_bound(open_input(&input)?, jobs, &mut w)?;
            eprintln!("{}", serde_json::to_string(&tally)?);
            Ok(tally.errors == 0 && tally.violations == 0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
