use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rainbow_core::rainbow::{brute_force_tree_packing, partition_condition_holds};
use rainbow_core::report::{parse_result_file, CsvRow, InputDescriptor, RunRecord, CSV_HEADER};
use rainbow_core::{
    decompose, max_matching, parse_coloured_graph, verify_decomposition, ColouredGraph, Family,
    Mode, PipelineParams, Ratio, VerificationReport,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "rainbow",
    version,
    about = "Edge-disjoint rainbow spanning trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a properly coloured complete graph in .rcg format.
    Gen {
        /// one-factorization, random-proper or rainbow.
        kind: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract edge-disjoint rainbow spanning trees and write a JSON result.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-stage wall-clock timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Check a JSON result against its graph.
    Verify { graph: PathBuf, result: PathBuf },
    /// Run an exhaustive oracle on a small graph.
    Oracle {
        input: PathBuf,
        #[arg(long, value_enum)]
        which: OracleKind,
    },
    /// Verified decompositions over a grid of sizes and seeds, as CSV.
    Bench {
        #[arg(long)]
        family: Family,
        /// Sizes: a comma-separated list of values or inclusive ranges `a..b`.
        #[arg(long, default_value = "")]
        n: String,
        /// Number of seeds per size; seeds run from 0.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(clap::Args, Clone)]
struct ParamArgs {
    #[arg(long, default_value = "practical")]
    mode: Mode,
    #[arg(long)]
    alpha: Option<Ratio>,
    #[arg(long)]
    beta: Option<Ratio>,
    /// Number of trees the constructive pipeline aims for.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of trees in practical mode.
    #[arg(long)]
    limit: Option<usize>,
}

impl ParamArgs {
    fn to_params(&self) -> PipelineParams {
        let defaults = PipelineParams::default();
        PipelineParams {
            mode: self.mode,
            alpha: self.alpha.unwrap_or(defaults.alpha),
            beta: self.beta.unwrap_or(defaults.beta),
            ell: self.ell,
            limit: self.limit,
            seed: self.seed,
            ..defaults
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    PartitionCondition,
    TreePacking,
    MaxMatching,
}

/// Failures that map to exit code 1 rather than 2.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<VerificationFailed>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen { kind, n, seed, out } => {
            let g = kind.generate(n, seed)?;
            write_output(out.as_deref(), &g.to_rcg())?;
            let summary = format!(
                "{kind}: n = {n}, {} edges, {} colours",
                g.edge_count(),
                g.colour_count()
            );
            // Keep standard output clean when it carries the graph.
            if out.is_some() {
                println!("{summary}");
            } else {
                eprintln!("{summary}");
            }
            Ok(())
        }
        Command::Decompose {
            input,
            params,
            out,
            timings,
        } => {
            let g = read_graph(&input)?;
            let descriptor = InputDescriptor::File {
                path: input.display().to_string(),
            };
            let (record, report) = run_decomposition(&g, descriptor, &params.to_params(), timings)?;
            for note in &record.stats.diagnostics {
                eprintln!("note: {note}");
            }
            if let Some(f) = report.first_failure {
                bail!(VerificationFailed(f));
            }
            write_output(out.as_deref(), &record.to_json())
        }
        Command::Verify { graph, result } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&result)
                .with_context(|| format!("reading {}", result.display()))?;
            let file = parse_result_file(&text)
                .with_context(|| format!("parsing {}", result.display()))?;
            if file.n != g.vertex_count() {
                bail!(
                    "result is for n = {}, graph has n = {}",
                    file.n,
                    g.vertex_count()
                );
            }
            let report = verify_decomposition(&g, &file.trees)?;
            match report.first_failure {
                None => {
                    println!("ok: {} tree(s) verified", report.tree_count);
                    Ok(())
                }
                Some(f) => bail!(VerificationFailed(f)),
            }
        }
        Command::Oracle { input, which } => {
            let g = read_graph(&input)?;
            let view = g.view();
            match which {
                OracleKind::PartitionCondition => {
                    let check = partition_condition_holds(&view)?;
                    println!("{}", check.holds);
                    if let Some(w) = check.witness {
                        let blocks: Vec<String> = w
                            .iter()
                            .map(|b| {
                                let items: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                                format!("{{{}}}", items.join(","))
                            })
                            .collect();
                        println!("witness: {}", blocks.join(" "));
                    }
                }
                OracleKind::TreePacking => {
                    let limit = g.vertex_count().max(1);
                    println!("{}", brute_force_tree_packing(&view, limit)?);
                }
                OracleKind::MaxMatching => println!("{}", max_matching(&view).len()),
            }
            Ok(())
        }
        Command::Bench {
            family,
            n,
            seeds,
            params,
        } => {
            let sizes = parse_sizes(&n)?;
            let params = params.to_params();
            let cells: Vec<(usize, u64)> = sizes
                .iter()
                .flat_map(|&n| (0..seeds).map(move |s| (n, s)))
                .collect();
            let mut rows = cells
                .par_iter()
                .map(|&(n, seed)| bench_cell(family, n, seed, &params))
                .collect::<anyhow::Result<Vec<_>>>()?;
            rows.sort();
            println!("{CSV_HEADER}");
            for row in rows {
                println!("{row}");
            }
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<ColouredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_coloured_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Decomposes and verifies. The record is only ever built from a verified
/// result, so nothing unchecked reaches the output.
fn run_decomposition(
    g: &ColouredGraph,
    input: InputDescriptor,
    params: &PipelineParams,
    timings: bool,
) -> anyhow::Result<(RunRecord, VerificationReport)> {
    let result = decompose(g, params)?;
    let report = verify_decomposition(g, &result.tree_edges())?;
    let record = RunRecord::new(g.vertex_count(), input, &result, report.clone(), timings);
    Ok((record, report))
}

fn bench_cell(
    family: Family,
    n: usize,
    seed: u64,
    params: &PipelineParams,
) -> anyhow::Result<CsvRow> {
    let g = family.generate(n, seed)?;
    let params = PipelineParams {
        seed,
        ..params.clone()
    };
    let start = Instant::now();
    let result = decompose(&g, &params)?;
    let millis = start.elapsed().as_millis();
    let report = verify_decomposition(&g, &result.tree_edges())?;
    if let Some(f) = report.first_failure {
        bail!(VerificationFailed(format!(
            "{family} n={n} seed={seed}: {f}"
        )));
    }
    Ok(CsvRow {
        n,
        seed,
        family,
        mode: params.mode,
        branch: result.branch,
        tree_count: result.trees.len(),
        millis,
    })
}

/// `"4,6,8"`, `"4..8"` and `"4..=8"` (both inclusive), or empty.
fn parse_sizes(spec: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let a: usize = a
                .trim()
                .parse()
                .with_context(|| format!("bad size range {part:?}"))?;
            let b: usize = b
                .trim()
                .parse()
                .with_context(|| format!("bad size range {part:?}"))?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().with_context(|| format!("bad size {part:?}"))?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists() {
        assert_eq!(parse_sizes("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_sizes("8,4,6").unwrap(), vec![4, 6, 8]);
        assert_eq!(parse_sizes("4..6, 10").unwrap(), vec![4, 5, 6, 10]);
        assert_eq!(parse_sizes("4..=5").unwrap(), vec![4, 5]);
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
