//! Batch front-end: `gen`, `solve`, `verify` and `bench`.

use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::alloc_meter;
use crate::generate::{generate_instance, GenerateError};
use crate::instance::{parse_instance, Instance, InstanceError};
use crate::oracle::{naive_all_best_swap_edges, OracleError, DEFAULT_MAX_ORACLE_N};
use crate::swap::{all_best_swap_edges_with_threads, validate_instance, SolveError, SwapResult, SwapSolver};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("results line {line}: {message}")]
    Results { line: usize, message: String },
}

#[derive(Debug, Parser)]
#[command(name = "abse", version, about = "Best swap edges of tree spanners")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random 2-edge-connected instance with a BFS tree.
    Gen {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Compute a best swap edge for every tree edge.
    Solve {
        #[arg(short = 'i', long)]
        input: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        threads: u64,
    },
    /// Check solver output against exhaustive search.
    Verify {
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Check this TSV results file instead of solving afresh.
        #[arg(long)]
        results: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORACLE_N)]
        max_oracle_n: usize,
    },
    /// Time the solver on a ladder of instance sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![500, 1000, 2000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Gen { n, density, seed, output } => cmd_gen(n, density, seed)
            .and_then(|text| write_or_print(output.as_ref(), &text))
            .map(|_| EXIT_OK),
        Command::Solve { input, output, format, threads } => read(&input)
            .and_then(|text| cmd_solve(&text, format, threads as usize))
            .and_then(|text| write_or_print(output.as_ref(), &text))
            .map(|_| EXIT_OK),
        Command::Verify { input, results, max_oracle_n } => (|| {
            let text = read(&input)?;
            let results = results.as_ref().map(read).transpose()?;
            let report = cmd_verify(&text, max_oracle_n, results.as_deref())?;
            print!("{report}");
            Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
        })(),
        Command::Bench { sizes, seed, density, reps } => cmd_bench(&sizes, seed, density, reps)
            .map(|report| {
                print!("{report}");
                EXIT_OK
            }),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_INVALID
    })
}

pub fn cmd_gen(n: usize, density: f64, seed: u64) -> Result<String, CliError> {
    let inst = generate_instance(n, density, seed)?;
    Ok(format!("# abse gen -n {n} --density {density} --seed {seed}\n{}", inst.to_text()))
}

pub fn cmd_solve(text: &str, format: Format, threads: usize) -> Result<String, CliError> {
    let inst = parse_instance(text)?;
    let results =
        all_best_swap_edges_with_threads(&inst.graph, &inst.tree_edges, inst.root, threads)?;
    Ok(format_results(&inst, &results, format))
}

#[derive(Serialize)]
struct JsonRow {
    v: usize,
    swap: Option<(usize, usize)>,
    sigma: Option<u64>,
}

#[derive(Serialize)]
struct JsonReport {
    n: usize,
    m: usize,
    root: usize,
    tree_edges: usize,
    results: Vec<JsonRow>,
}

/// TSV rows `v  x  y  sigma` (or `v  none  +inf`), or a JSON document with
/// the same fields plus instance metadata.
pub fn format_results(inst: &Instance, results: &[SwapResult], format: Format) -> String {
    match format {
        Format::Tsv => {
            let mut out = String::new();
            for r in results {
                match (r.swap, r.sigma) {
                    (Some((x, y)), Some(s)) => writeln!(out, "{}\t{x}\t{y}\t{s}", r.v),
                    _ => writeln!(out, "{}\tnone\t+inf", r.v),
                }
                .unwrap();
            }
            out
        }
        Format::Json => {
            let report = JsonReport {
                n: inst.graph.n(),
                m: inst.graph.m(),
                root: inst.root,
                tree_edges: inst.tree_edges.len(),
                results: results
                    .iter()
                    .map(|r| JsonRow { v: r.v, swap: r.swap, sigma: r.sigma })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
            s.push('\n');
            s
        }
    }
}

/// Reads TSV results back; fields may be separated by any whitespace.
pub fn parse_results(text: &str) -> Result<Vec<SwapResult>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let bad = |message: &str| CliError::Results { line, message: message.to_string() };
        let toks: Vec<&str> = content.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad("expected an integer"));
        match toks.as_slice() {
            [v, "none", "+inf"] => out.push(SwapResult { v: num(v)?, swap: None, sigma: None }),
            [v, x, y, s] => out.push(SwapResult {
                v: num(v)?,
                swap: Some((num(x)?, num(y)?)),
                sigma: Some(num(s)? as u64),
            }),
            _ => return Err(bad("expected `v x y sigma` or `v none +inf`")),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub edges_checked: usize,
    pub mismatches: Vec<String>,
    /// Edges whose optimal full stretch exceeds the optimal swap-edge-only
    /// stretch (an edge inside one side of the cut dominates).
    pub divergent: Vec<usize>,
    pub instance_dump: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            writeln!(f, "PASS {} edges checked", self.edges_checked)?;
        } else {
            writeln!(f, "FAIL {} of {} edges", self.mismatches.len(), self.edges_checked)?;
            for m in &self.mismatches {
                writeln!(f, "  {m}")?;
            }
            writeln!(f, "instance:")?;
            write!(f, "{}", self.instance_dump)?;
        }
        if !self.divergent.is_empty() {
            writeln!(
                f,
                "note: full stretch above swap-edge stretch for edges below {:?}",
                self.divergent
            )?;
        }
        Ok(())
    }
}

/// Compares solver output (fresh, or `results` if given) with the
/// exhaustive oracle: `sigma` must equal the optimal swap-edge stretch and
/// the chosen edge must minimize the full post-failure stretch.
pub fn cmd_verify(
    text: &str,
    max_oracle_n: usize,
    results: Option<&str>,
) -> Result<VerifyReport, CliError> {
    let inst = parse_instance(text)?;
    let tree = validate_instance(&inst.graph, &inst.tree_edges, inst.root)?;
    let oracle = naive_all_best_swap_edges(&inst.graph, &tree, max_oracle_n)?;
    let results = match results {
        Some(r) => parse_results(r)?,
        None => SwapSolver::new(&inst.graph, &tree).solve(),
    };
    let mut report = VerifyReport { instance_dump: inst.to_text(), ..Default::default() };
    for naive in &oracle {
        report.edges_checked += 1;
        if naive.objectives_diverge() {
            report.divergent.push(naive.v);
        }
        let Some(r) = results.iter().find(|r| r.v == naive.v) else {
            report.mismatches.push(format!("edge below {}: no result", naive.v));
            continue;
        };
        let (Some((x, y)), Some(sigma)) = (r.swap, r.sigma) else {
            report.mismatches.push(format!("edge below {}: no swap edge reported", naive.v));
            continue;
        };
        if !naive.swaps.contains(&(x, y)) && !naive.swaps.contains(&(y, x)) {
            report
                .mismatches
                .push(format!("edge below {}: ({x}, {y}) is not a swap edge", naive.v));
        } else if sigma != naive.restricted_min {
            report.mismatches.push(format!(
                "edge below {}: sigma {sigma}, oracle {}",
                naive.v, naive.restricted_min
            ));
        } else if !naive.is_full_optimal(x, y) {
            report.mismatches.push(format!(
                "edge below {}: ({x}, {y}) is not a best swap edge (oracle optimum {})",
                naive.v, naive.full_min
            ));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub seconds: f64,
    /// Peak heap bytes during one solve, if the counting allocator is
    /// installed.
    pub peak_bytes: Option<usize>,
}

impl BenchRow {
    pub fn peak_words(&self) -> Option<f64> {
        self.peak_bytes.map(|b| b as f64 / 8.0)
    }
}

#[derive(Debug, Clone, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n\tm\ttime_ms\tpeak_bytes\twords_per_n2")?;
        for r in &self.rows {
            let (bytes, per) = match r.peak_words() {
                Some(w) => (r.peak_bytes.unwrap().to_string(), format!("{:.3}", w / (r.n * r.n) as f64)),
                None => ("n/a".into(), "n/a".into()),
            };
            writeln!(f, "{}\t{}\t{:.2}\t{bytes}\t{per}", r.n, r.m, r.seconds * 1e3)?;
        }
        for w in self.rows.windows(2) {
            let mem = match (w[0].peak_bytes, w[1].peak_bytes) {
                (Some(a), Some(b)) if a > 0 => format!("{:.2}", b as f64 / a as f64),
                _ => "n/a".into(),
            };
            writeln!(
                f,
                "ratio {}/{}\ttime {:.2}\tmemory {mem}",
                w[1].n,
                w[0].n,
                w[1].seconds / w[0].seconds
            )?;
        }
        Ok(())
    }
}

/// Median wall time over `reps` full solves (validation, precomputation
/// and all failing edges) and peak heap of one solve, per size.
pub fn cmd_bench(sizes: &[usize], seed: u64, density: f64, reps: usize) -> Result<BenchReport, CliError> {
    let mut report = BenchReport::default();
    for &n in sizes {
        let inst = generate_instance(n, density, seed ^ n as u64)?;
        let mut times = Vec::with_capacity(reps.max(1));
        let mut peak = None;
        for rep in 0..reps.max(1) {
            alloc_meter::reset_peak();
            let before = alloc_meter::current_bytes();
            let start = Instant::now();
            let tree = validate_instance(&inst.graph, &inst.tree_edges, inst.root)?;
            let results = SwapSolver::new(&inst.graph, &tree).solve();
            times.push(start.elapsed().as_secs_f64());
            if rep == 0 && alloc_meter::is_active() {
                peak = Some(alloc_meter::peak_bytes().saturating_sub(before));
            }
            debug_assert_eq!(results.len(), n - 1);
        }
        times.sort_by(f64::total_cmp);
        report.rows.push(BenchRow {
            n,
            m: inst.graph.m(),
            seconds: times[times.len() / 2],
            peak_bytes: peak,
        });
    }
    Ok(report)
}
