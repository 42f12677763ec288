mod markdown;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cliquespec::clique::{
    classify_regularity, edge_partition, greedy_clique_partition, min_clique_partition, CliqueCover, EXACT_PARTITION_LIMIT,
};
use cliquespec::graph::io::{parse_graph, to_graph6, Format};
use cliquespec::graph::iso::enumerate_graphs;
use cliquespec::graph::{build_named, Graph};
use cliquespec::linalg::Matrix;
use cliquespec::q2::{
    construct_complete, construct_fixed, construct_prism, construct_prism_join, verify_conjecture, FixedName,
    Q2Certificate, FIXED_NAMES,
};
use cliquespec::spectral::{scan_partitions, spectral_report};
use cliquespec::ssp::check_ssp;
use cliquespec::Tolerances;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20170;

/// Largest order for which `partition` also scans every clique partition.
const SCAN_LIMIT_N: usize = 9;
const SCAN_LIMIT_COUNT: usize = 100_000;

#[derive(Parser, Debug)]
#[command(name = "cliquespec", version, about = "Clique-partition spectra and two-eigenvalue certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Spectra, inertia, energies and the full bound suite for a graph and clique partition.
    Analyze(Common),
    /// Clique partition of the chosen mode, with a scan of all partitions for small graphs.
    Partition(Common),
    /// All graph and incidence energies.
    Energy(Common),
    /// Strong spectral property check of a symmetric matrix file or certificate.
    Ssp(Common),
    /// Build and verify a named two-eigenvalue construction.
    Certify {
        /// prism, prism_join, complete, or one of T1, K13_K3, H2_n7, bull_join, C5_join, K3_star, fig414
        construction: String,
        /// Clique size for prism and prism_join.
        #[arg(long)]
        s: Option<usize>,
        /// Order for complete and K3_star.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Certify q(K_n minus H) = 2 for every H with at most n − 3 edges.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Isomorphism classes of graphs with n vertices and m edges, as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
struct Common {
    /// Graph file (analyze, partition, energy) or matrix file (ssp).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Graph file format.
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    format: GraphFormat,
    /// Named family, e.g. `multipartite:2,2,2` or `join(cycle:5,empty:3)`.
    #[arg(long)]
    family: Option<String>,
    /// exact, greedy, edges, or file:<path> (JSON cover file).
    #[arg(long, default_value = "exact")]
    partition: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum GraphFormat {
    Graph6,
    Edgelist,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize, PartialEq)]
#[serde(rename_all = "lowercase")]
enum Emit {
    Json,
    Markdown,
}

/// Everything that determines a report.
#[derive(Serialize)]
struct RunConfig<'a> {
    command: &'static str,
    arguments: Value,
    #[serde(flatten)]
    common: &'a Common,
    tolerances: Tolerances,
}

/// Outcome of a command: the result body, and whether every check passed.
struct Outcome {
    result: Value,
    checks_pass: bool,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult<T> = std::result::Result<T, UsageError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Analyze(c) | Command::Partition(c) | Command::Energy(c) | Command::Ssp(c) => c,
        Command::Certify { common, .. } | Command::Conjecture { common, .. } | Command::Enumerate { common, .. } => common,
    }
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Analyze(_) => ("analyze", json!({})),
        Command::Partition(_) => ("partition", json!({})),
        Command::Energy(_) => ("energy", json!({})),
        Command::Ssp(_) => ("ssp", json!({})),
        Command::Certify { construction, s, n, .. } => ("certify", json!({ "construction": construction, "s": s, "n": n })),
        Command::Conjecture { n, .. } => ("conjecture", json!({ "n": n })),
        Command::Enumerate { n, m, .. } => ("enumerate", json!({ "n": n, "m": m })),
    }
}

fn resolve_tolerances(c: &Common) -> CmdResult<Tolerances> {
    let mut tol = Tolerances::default();
    for item in &c.tol {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| UsageError(format!("--tol expects name=value, got '{item}'")))?;
        tol.set(name.trim(), value.trim()).map_err(UsageError)?;
    }
    Ok(tol)
}

/// Returns whether every check passed; the report is written either way.
fn run(cmd: &Command) -> CmdResult<bool> {
    let c = common(cmd);
    let (name, arguments) = describe(cmd);
    let tol = resolve_tolerances(c)?;
    let started = Instant::now();
    let outcome = match cmd {
        Command::Analyze(_) => analyze(c, &tol)?,
        Command::Partition(_) => partition(c, &tol)?,
        Command::Energy(_) => energy(c, &tol)?,
        Command::Ssp(_) => ssp(c, &tol)?,
        Command::Certify { construction, s, n, .. } => certify(construction, *s, *n, &tol)?,
        Command::Conjecture { n, .. } => conjecture(*n, c.seed, &tol)?,
        Command::Enumerate { n, m, .. } => enumerate(*n, *m)?,
    };
    let report = json!({
        "tool": "cliquespec",
        "version": cliquespec::VERSION,
        "config": RunConfig { command: name, arguments, common: c, tolerances: tol },
        "checks_pass": outcome.checks_pass,
        "result": outcome.result,
    });
    let text = match c.emit {
        Emit::Json => serde_json::to_string_pretty(&report)? + "\n",
        Emit::Markdown => markdown::render(&report),
    };
    match &c.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
            write_metadata(path, started)?;
        }
        None => print!("{text}"),
    }
    Ok(outcome.checks_pass)
}

/// Wall-clock data lives beside the report so the report itself stays reproducible.
fn write_metadata(report: &Path, started: Instant) -> CmdResult<()> {
    let mut name = report.as_os_str().to_owned();
    name.push(".meta.json");
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let meta = json!({ "generated_unix": now, "elapsed_seconds": started.elapsed().as_secs_f64() });
    fs::write(&name, serde_json::to_string_pretty(&meta)?)?;
    Ok(())
}

fn read(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(c: &Common) -> CmdResult<Graph> {
    match (&c.input, &c.family) {
        (Some(_), Some(_)) => Err(UsageError("give either --input or --family, not both".into())),
        (None, None) => Err(UsageError("no graph given; use --input <file> or --family <spec>".into())),
        (None, Some(spec)) => Ok(build_named(spec)?),
        (Some(path), None) => {
            let format = match c.format {
                GraphFormat::Graph6 => Format::Graph6,
                GraphFormat::Edgelist => Format::EdgeList,
            };
            parse_graph(&read(path)?, format).map_err(|e| UsageError(format!("{}: {e}", path.display())))
        }
    }
}

fn load_partition(g: &Graph, c: &Common) -> CmdResult<CliqueCover> {
    match c.partition.as_str() {
        "exact" => min_clique_partition(g).map_err(|e| {
            UsageError(format!(
                "{e}; exact partitions are limited to {EXACT_PARTITION_LIMIT} vertices, try --partition greedy"
            ))
        }),
        "greedy" => Ok(greedy_clique_partition(g, c.seed)?),
        "edges" => Ok(edge_partition(g)),
        other => match other.strip_prefix("file:") {
            Some(path) => {
                let path = Path::new(path);
                CliqueCover::from_json(g, &read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
            }
            None => Err(UsageError(format!(
                "unknown partition mode '{other}'; expected exact, greedy, edges or file:<path>"
            ))),
        },
    }
}

fn graph_summary(g: &Graph) -> Value {
    json!({ "n": g.n(), "m": g.m(), "graph6": to_graph6(g) })
}

fn analyze(c: &Common, tol: &Tolerances) -> CmdResult<Outcome> {
    let g = load_graph(c)?;
    let cover = load_partition(&g, c)?;
    let report = spectral_report(&g, &cover, tol)?;
    let failed: Vec<&str> = report.failed_bounds().iter().map(|b| b.theorem_id.as_str()).collect();
    Ok(Outcome {
        checks_pass: failed.is_empty(),
        result: json!({ "graph": graph_summary(&g), "failed_bounds": failed, "report": report }),
    })
}

fn partition(c: &Common, _tol: &Tolerances) -> CmdResult<Outcome> {
    let g = load_graph(c)?;
    let cover = load_partition(&g, c)?;
    let scan = if g.n() <= SCAN_LIMIT_N { Some(scan_partitions(&g, SCAN_LIMIT_COUNT)?) } else { None };
    Ok(Outcome {
        checks_pass: true,
        result: json!({
            "graph": graph_summary(&g),
            "k": cover.k(),
            "cover": cover.to_file(),
            "t": cover.t_sorted(),
            "s": cover.s_sorted(),
            "regularity": classify_regularity(&cover),
            "scan": scan,
        }),
    })
}

fn energy(c: &Common, tol: &Tolerances) -> CmdResult<Outcome> {
    let g = load_graph(c)?;
    let cover = load_partition(&g, c)?;
    let report = spectral_report(&g, &cover, tol)?;
    Ok(Outcome {
        checks_pass: true,
        result: json!({
            "graph": graph_summary(&g),
            "partition_size": cover.k(),
            "energies": report.energies,
            "tau": report.tau,
            "t_bar": report.t_bar,
        }),
    })
}

/// A matrix file is a JSON array of rows, a certificate JSON, or whitespace
/// separated rows of numbers (`#` starts a comment).
fn load_matrix(text: &str) -> CmdResult<(Matrix, Option<Graph>)> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let cert = Q2Certificate::from_json(text)?;
        return Ok((cert.matrix(), Some(cert.target)));
    }
    if trimmed.starts_with('[') {
        let m: Matrix = serde_json::from_str(text)?;
        return Ok((m, None));
    }
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>().map_err(|e| UsageError(format!("line {}: '{s}': {e}", i + 1))))
            .collect::<CmdResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((Matrix::from_rows(&rows)?, None))
}

fn ssp(c: &Common, tol: &Tolerances) -> CmdResult<Outcome> {
    let path = c.input.as_ref().ok_or_else(|| UsageError("ssp needs --input <matrix file>".into()))?;
    let (a, target) = load_matrix(&read(path)?).map_err(|e| UsageError(format!("{}: {}", path.display(), e.0)))?;
    let result = match &target {
        Some(t) => cliquespec::ssp::check_ssp_with_pattern(&a, t, tol)?,
        None => check_ssp(&a, tol)?,
    };
    Ok(Outcome {
        checks_pass: true,
        result: json!({ "n": a.rows(), "pattern_from_certificate": target.is_some(), "ssp": result }),
    })
}

fn certify(name: &str, s: Option<usize>, n: Option<usize>, tol: &Tolerances) -> CmdResult<Outcome> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| UsageError(format!("{name} needs --{flag}")));
    let cert = match name {
        "prism" => construct_prism(need(s, "s")?, tol)?,
        "prism_join" => construct_prism_join(need(s, "s")?, tol)?,
        "complete" => construct_complete(need(n, "n")?, tol)?,
        "K3_star" | "k3_star" => construct_fixed(FixedName::K3Star(need(n, "n")?), tol)?,
        other => {
            let fixed: FixedName = other.parse().map_err(|_| {
                UsageError(format!(
                    "unknown construction '{other}'; expected prism, prism_join, complete or one of {}",
                    FIXED_NAMES.join(", ")
                ))
            })?;
            construct_fixed(fixed, tol)?
        }
    };
    Ok(Outcome {
        checks_pass: cert.is_verified(),
        result: json!({ "verified": cert.is_verified(), "has_ssp": cert.ssp.has_ssp, "certificate": cert }),
    })
}

fn conjecture(n: usize, seed: u64, tol: &Tolerances) -> CmdResult<Outcome> {
    let report = verify_conjecture(n, seed, tol)?;
    Ok(Outcome { checks_pass: report.all_certified, result: serde_json::to_value(&report)? })
}

fn enumerate(n: usize, m: usize) -> CmdResult<Outcome> {
    let graphs: Vec<String> = enumerate_graphs(n, m)?.iter().map(to_graph6).collect();
    Ok(Outcome { checks_pass: true, result: json!({ "n": n, "m": m, "count": graphs.len(), "graph6": graphs }) })
}
