use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use grinberg_core::cycle_space::{cycle_space_dimension, horton_mcb};
use grinberg_core::decision::{
    decide, oracle_hamiltonian, OracleError, Verdict, DEFAULT_ORACLE_BUDGET,
    EXHAUSTIVE_ORACLE_MAX_N,
};
use grinberg_core::grinberg::{enumerate_solutions, CyclePool, PoolKind, SolutionConfig};
use grinberg_core::{encode_graph6, Graph};
use grinberg_harness::corpus::{run_corpus, CorpusSource, CorpusSpec};
use grinberg_harness::input::load_graph;
use grinberg_harness::named_graph;
use grinberg_harness::report::{render_structured, render_text, ReportFormat};
use serde_json::json;

/// Cycle-space Hamiltonicity criterion, exact oracle and corpus audits.
///
/// Graph arguments are a graph6 or edge-list file, or `name:<entry>` for the
/// built-in catalog (k4, k5, cycle(n), wheel(n), fan(n), petersen, herschel,
/// tutte).
#[derive(Parser)]
#[command(name = "grinberg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Cycle pool: mcb, fundamental or all:<L>.
    #[arg(long, global = true)]
    pool: Option<PoolKind>,
    /// Cap on enumerated solutions.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_solutions: Option<u64>,
    /// Oracle search-node budget; by default graphs of order at most 12 are
    /// searched exhaustively.
    #[arg(long, global = true)]
    oracle_budget: Option<u64>,
    /// Overrides the seed of a gnp corpus.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// structured (JSON) or text.
    #[arg(long, global = true, default_value = "text")]
    format: ReportFormat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum cycle basis and its weight.
    Mcb { graph: String },
    /// Solutions of the Grinberg equation over the pool.
    Solve { graph: String },
    /// Run the criterion and print the verdict with its trace.
    Decide { graph: String },
    /// Exact Hamiltonicity search.
    Oracle { graph: String },
    /// Print a catalog graph.
    Named { name: String },
    /// Run a corpus described by a JSON spec file.
    Corpus { spec: PathBuf },
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl Cli {
    fn config(&self) -> SolutionConfig {
        let mut cfg = SolutionConfig::default();
        if let Some(p) = self.pool {
            cfg.pool = p;
        }
        if let Some(k) = self.max_solutions {
            cfg.max_solutions = k as usize;
        }
        cfg
    }

    fn structured(&self) -> bool {
        self.format == ReportFormat::Structured
    }
}

fn graph(arg: &str) -> Result<Graph, Failure> {
    load_graph(arg).map_err(|e| Failure::Input(e.to_string()))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn walk_text(w: &[usize]) -> String {
    w.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let invariant = |e: &dyn std::fmt::Display| Failure::Invariant(e.to_string());
    match &cli.cmd {
        Cmd::Mcb { graph: arg } => {
            let g = graph(arg)?;
            let basis = horton_mcb(&g).map_err(|e| Failure::Input(e.to_string()))?;
            if cli.structured() {
                let cycles: Vec<_> = basis.cycles().iter().map(|c| c.walk()).collect();
                Ok(pretty(&json!({
                    "n": g.n(),
                    "m": g.m(),
                    "dimension": cycle_space_dimension(&g),
                    "weight": basis.weight(&g),
                    "cycles": cycles,
                })))
            } else {
                Ok(format!(
                    "# {} cycles, weight {}\n{}",
                    basis.len(),
                    basis.weight(&g),
                    basis.to_text()
                ))
            }
        }
        Cmd::Solve { graph: arg } => {
            let g = graph(arg)?;
            let cfg = cli.config();
            let pool = CyclePool::build(&g, cfg.pool).map_err(|e| Failure::Input(e.to_string()))?;
            let set = enumerate_solutions(&pool, g.n(), &cfg).map_err(|e| invariant(&e))?;
            if cli.structured() {
                let records: Vec<_> = set
                    .solutions
                    .iter()
                    .map(|s| s.record(&pool, g.n()))
                    .collect();
                let cycles: Vec<_> = pool.cycles.iter().map(|c| c.walk()).collect();
                Ok(pretty(&json!({
                    "pool": pool.id,
                    "cycles": cycles,
                    "target": set.target,
                    "truncated": set.truncated,
                    "solutions": records,
                })))
            } else {
                let mut out = format!(
                    "pool {} ({} cycles), target {}: {} solutions{}\n",
                    pool.id,
                    pool.len(),
                    set.target,
                    set.solutions.len(),
                    if set.truncated { " (truncated)" } else { "" }
                );
                for (i, c) in pool.cycles.iter().enumerate() {
                    out.push_str(&format!("cycle {i}: {}\n", walk_text(c.walk())));
                }
                for s in &set.solutions {
                    out.push_str(&format!(
                        "solution {:?} cosolution {:?}\n",
                        s.solution, s.cosolution
                    ));
                }
                Ok(out)
            }
        }
        Cmd::Decide { graph: arg } => {
            let g = graph(arg)?;
            let d = decide(&g, &cli.config()).map_err(|e| invariant(&e))?;
            if cli.structured() {
                return Ok(pretty(&serde_json::to_value(&d).expect("json")));
            }
            let mut out = format!("verdict: {}\n", d.verdict.label());
            if let Verdict::Hamiltonian { certificate } = &d.verdict {
                out.push_str(&format!("certificate: {}\n", walk_text(&certificate.walk)));
            }
            for e in &d.trace.events {
                out.push_str(&serde_json::to_string(e).expect("json"));
                out.push('\n');
            }
            Ok(out)
        }
        Cmd::Oracle { graph: arg } => {
            let g = graph(arg)?;
            let budget = cli
                .oracle_budget
                .or((g.n() > EXHAUSTIVE_ORACLE_MAX_N).then_some(DEFAULT_ORACLE_BUDGET));
            let (answer, walk, nodes) = match oracle_hamiltonian(&g, budget) {
                Ok(Some(c)) => ("hamiltonian", Some(c.walk), None),
                Ok(None) => ("non_hamiltonian", None, None),
                Err(OracleError::BudgetExceeded { nodes }) => {
                    ("budget_exceeded", None, Some(nodes))
                }
            };
            if cli.structured() {
                return Ok(pretty(&json!({
                    "answer": answer,
                    "certificate": walk,
                    "nodes": nodes,
                })));
            }
            Ok(match (walk, nodes) {
                (Some(w), _) => format!("{answer}: {}\n", walk_text(&w)),
                (_, Some(k)) => format!("{answer} after {k} nodes\n"),
                _ => format!("{answer}\n"),
            })
        }
        Cmd::Named { name } => {
            let g = named_graph(name).map_err(|e| Failure::Input(e.to_string()))?;
            if cli.structured() {
                return Ok(pretty(&json!({
                    "name": name,
                    "n": g.n(),
                    "m": g.m(),
                    "graph6": encode_graph6(&g).map_err(|e| invariant(&e))?,
                    "edges": g.pairs(),
                })));
            }
            Ok(format!("# {name}\n{}", g.to_edge_list()))
        }
        Cmd::Corpus { spec } => {
            let text = fs::read_to_string(spec)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", spec.display())))?;
            let mut spec: CorpusSpec = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            if let Some(p) = cli.pool {
                spec.pool = p;
            }
            if let Some(k) = cli.max_solutions {
                spec.max_solutions = k as usize;
            }
            if let Some(b) = cli.oracle_budget {
                spec.oracle_budget = b;
            }
            if let (Some(s), CorpusSource::Gnp { seed, .. }) = (cli.seed, &mut spec.source) {
                *seed = s;
            }
            let report = run_corpus(&spec).map_err(|e| Failure::Input(e.to_string()))?;
            if report.certificate_failures > 0 {
                return Err(Failure::Invariant(format!(
                    "{} Hamiltonian verdicts carry an invalid certificate",
                    report.certificate_failures
                )));
            }
            Ok(match cli.format {
                ReportFormat::Structured => render_structured(&report),
                ReportFormat::Text => render_text(&report),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(3);
        }
    };
    match &cli.report {
        Some(path) => {
            if let Err(e) = fs::write(path, out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(out.as_bytes());
        }
    }
    ExitCode::SUCCESS
}
