//! Runs the criterion and the exact oracle over a corpus and tabulates how
//! often they agree.

use std::path::PathBuf;
use std::time::Instant;

use grinberg_core::decision::{
    decide_with, oracle_hamiltonian, verify_certificate, DecideOptions, OracleError, Verdict,
    DEFAULT_ORACLE_BUDGET, EXHAUSTIVE_ORACLE_MAX_N,
};
use grinberg_core::grinberg::{PoolKind, SolutionConfig};
use grinberg_core::{encode_graph6, parse_graph6, Graph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{named_graph, CatalogError};
use crate::generate::{enumerate_labeled_graphs, generate_gnp, GenerateError};
use crate::input::{read_graphs, FileFormat, InputError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusSource {
    Named {
        names: Vec<String>,
    },
    /// `count` graphs; graph `i` is `generate_gnp(n, p, seed + i)`.
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
        count: usize,
    },
    ExhaustiveLabeled {
        n: usize,
        connected_only: bool,
    },
    File {
        path: PathBuf,
        #[serde(default)]
        format: Option<FileFormat>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub source: CorpusSource,
    #[serde(default = "default_pool", with = "pool_text")]
    pub pool: PoolKind,
    #[serde(default = "default_max_solutions")]
    pub max_solutions: usize,
    /// Node budget for graphs above the exhaustive-oracle order.
    #[serde(default = "default_budget")]
    pub oracle_budget: u64,
    /// Off by default so that reports are byte-for-byte reproducible.
    #[serde(default)]
    pub record_timings: bool,
    #[serde(default)]
    pub prop32_fatal: bool,
}

fn default_pool() -> PoolKind {
    PoolKind::Mcb
}

fn default_max_solutions() -> usize {
    SolutionConfig::default().max_solutions
}

fn default_budget() -> u64 {
    DEFAULT_ORACLE_BUDGET
}

mod pool_text {
    use grinberg_core::grinberg::PoolKind;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &PoolKind, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PoolKind, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl CorpusSpec {
    pub fn new(source: CorpusSource) -> Self {
        CorpusSpec {
            source,
            pool: default_pool(),
            max_solutions: default_max_solutions(),
            oracle_budget: default_budget(),
            record_timings: false,
            prop32_fatal: false,
        }
    }

    pub fn with_pool(mut self, pool: PoolKind) -> Self {
        self.pool = pool;
        self
    }

    pub fn solution_config(&self) -> SolutionConfig {
        SolutionConfig {
            pool: self.pool,
            max_solutions: self.max_solutions,
            ..SolutionConfig::default()
        }
    }

    /// Materializes the corpus in order.
    pub fn graphs(&self) -> Result<Vec<Graph>, CorpusError> {
        Ok(match &self.source {
            CorpusSource::Named { names } => names
                .iter()
                .map(|n| named_graph(n))
                .collect::<Result<_, _>>()?,
            CorpusSource::Gnp { n, p, seed, count } => (0..*count as u64)
                .map(|i| generate_gnp(*n, *p, seed.wrapping_add(i)))
                .collect::<Result<_, _>>()?,
            CorpusSource::ExhaustiveLabeled { n, connected_only } => {
                enumerate_labeled_graphs(*n, *connected_only)?.collect()
            }
            CorpusSource::File { path, format } => read_graphs(path, *format)?,
        })
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Input(#[from] InputError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleAnswer {
    Hamiltonian,
    NonHamiltonian,
    BudgetExceeded,
}

/// Which confusion-matrix cell a row lands in. The first letter is the
/// criterion's answer, the second the oracle's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    HH,
    HN,
    NH,
    NN,
    Unverified,
    BudgetExceeded,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub decide_us: u64,
    pub oracle_us: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    /// Verdict label, e.g. `hamiltonian` or `non_hamiltonian:no_solution`.
    pub verdict: Option<String>,
    /// Hamiltonian or claimed-but-unverified.
    pub criterion_hamiltonian: Option<bool>,
    pub certificate_verified: Option<bool>,
    pub oracle: Option<OracleAnswer>,
    /// Criterion and oracle give the same yes/no; absent if either is
    /// unknown.
    pub agreement: Option<bool>,
    pub cell: Cell,
    pub solutions: Option<usize>,
    pub solutions_truncated: bool,
    pub timings: Option<Timings>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub hh: usize,
    pub hn: usize,
    pub nh: usize,
    pub nn: usize,
    pub unverified: usize,
    pub budget_exceeded: usize,
    pub failed: usize,
}

impl ConfusionMatrix {
    pub fn add(&mut self, cell: Cell) {
        let slot = match cell {
            Cell::HH => &mut self.hh,
            Cell::HN => &mut self.hn,
            Cell::NH => &mut self.nh,
            Cell::NN => &mut self.nn,
            Cell::Unverified => &mut self.unverified,
            Cell::BudgetExceeded => &mut self.budget_exceeded,
            Cell::Failed => &mut self.failed,
        };
        *slot += 1;
    }

    pub fn total(&self) -> usize {
        self.hh + self.hn + self.nh + self.nn + self.unverified + self.budget_exceeded + self.failed
    }
}

/// A row where the criterion and the oracle disagree, or where the
/// criterion's claim could not be certified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub index: usize,
    pub graph6: String,
    pub verdict: String,
    pub oracle: OracleAnswer,
}

/// Among graphs the oracle calls Hamiltonian, how many have at least one
/// solution of the equation over the configured pool.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NecessityRate {
    pub oracle_hamiltonian: usize,
    pub with_solution: usize,
    pub rate: Option<f64>,
}

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub spec: CorpusSpec,
    pub rows: Vec<ReportRow>,
    pub matrix: ConfusionMatrix,
    pub mismatches: Vec<Mismatch>,
    /// Rows with a Hamiltonian verdict whose certificate fails to verify.
    pub certificate_failures: usize,
    pub necessity: NecessityRate,
}

/// Evaluates one graph; never panics on a bad graph, failures land in the
/// row.
///
/// Verdicts can depend on edge numbering, so an unweighted graph is first
/// renumbered into graph6 edge order. The row's graph6 string then replays
/// to the same row.
pub fn run_graph(index: usize, g: &Graph, spec: &CorpusSpec) -> ReportRow {
    let graph6 = encode_graph6(g).unwrap_or_default();
    let renumbered = if g.is_unit_weight() {
        parse_graph6(&graph6).ok()
    } else {
        None
    };
    let g = renumbered.as_ref().unwrap_or(g);
    let mut row = ReportRow {
        index,
        graph6,
        n: g.n(),
        m: g.m(),
        verdict: None,
        criterion_hamiltonian: None,
        certificate_verified: None,
        oracle: None,
        agreement: None,
        cell: Cell::Failed,
        solutions: None,
        solutions_truncated: false,
        timings: None,
        error: None,
    };

    let opts = DecideOptions {
        prop32_fatal: spec.prop32_fatal,
    };
    let start = Instant::now();
    let decision = decide_with(g, &spec.solution_config(), opts);
    let decide_us = start.elapsed().as_micros() as u64;

    let budget = (g.n() > EXHAUSTIVE_ORACLE_MAX_N).then_some(spec.oracle_budget);
    let start = Instant::now();
    let oracle = match oracle_hamiltonian(g, budget) {
        Ok(Some(cert)) if verify_certificate(g, &cert) => Ok(OracleAnswer::Hamiltonian),
        Ok(Some(_)) => Err("oracle produced an invalid certificate".to_string()),
        Ok(None) => Ok(OracleAnswer::NonHamiltonian),
        Err(OracleError::BudgetExceeded { .. }) => Ok(OracleAnswer::BudgetExceeded),
    };
    let oracle_us = start.elapsed().as_micros() as u64;
    if spec.record_timings {
        row.timings = Some(Timings {
            decide_us,
            oracle_us,
        });
    }

    let decision = match decision {
        Ok(d) => d,
        Err(e) => {
            row.error = Some(e.to_string());
            row.oracle = oracle.ok();
            return row;
        }
    };
    row.verdict = Some(decision.verdict.label());
    row.solutions = decision.trace.solution_count();
    row.solutions_truncated = decision.trace.solutions_truncated();
    let claimed = !matches!(decision.verdict, Verdict::NonHamiltonian { .. });
    row.criterion_hamiltonian = Some(claimed);
    if let Verdict::Hamiltonian { certificate } = &decision.verdict {
        row.certificate_verified = Some(verify_certificate(g, certificate));
    }

    let oracle = match oracle {
        Ok(a) => a,
        Err(e) => {
            row.error = Some(e);
            return row;
        }
    };
    row.oracle = Some(oracle);
    let oracle_h = match oracle {
        OracleAnswer::Hamiltonian => Some(true),
        OracleAnswer::NonHamiltonian => Some(false),
        OracleAnswer::BudgetExceeded => None,
    };
    row.agreement = oracle_h.map(|h| h == claimed);
    row.cell = match (oracle_h, &decision.verdict) {
        (None, _) => Cell::BudgetExceeded,
        (_, Verdict::ClaimedHamiltonianUnverified) => Cell::Unverified,
        (Some(true), Verdict::Hamiltonian { .. }) => Cell::HH,
        (Some(false), Verdict::Hamiltonian { .. }) => Cell::HN,
        (Some(true), Verdict::NonHamiltonian { .. }) => Cell::NH,
        (Some(false), Verdict::NonHamiltonian { .. }) => Cell::NN,
    };
    row
}

pub fn run_corpus(spec: &CorpusSpec) -> Result<Report, CorpusError> {
    let graphs = spec.graphs()?;
    Ok(tabulate(
        spec,
        graphs
            .iter()
            .enumerate()
            .map(|(i, g)| run_graph(i, g, spec))
            .collect(),
    ))
}

/// Builds the matrix, mismatch archive and rates from finished rows.
pub fn tabulate(spec: &CorpusSpec, rows: Vec<ReportRow>) -> Report {
    let mut matrix = ConfusionMatrix::default();
    let mut mismatches = Vec::new();
    let mut necessity = NecessityRate {
        oracle_hamiltonian: 0,
        with_solution: 0,
        rate: None,
    };
    for row in &rows {
        matrix.add(row.cell);
        if matches!(row.cell, Cell::HN | Cell::NH | Cell::Unverified) {
            mismatches.push(Mismatch {
                index: row.index,
                graph6: row.graph6.clone(),
                verdict: row.verdict.clone().unwrap_or_default(),
                oracle: row.oracle.expect("classified rows carry an oracle answer"),
            });
        }
        if row.oracle == Some(OracleAnswer::Hamiltonian) && row.error.is_none() {
            necessity.oracle_hamiltonian += 1;
            if row.solutions.unwrap_or(0) > 0 {
                necessity.with_solution += 1;
            }
        }
    }
    if necessity.oracle_hamiltonian > 0 {
        necessity.rate = Some(necessity.with_solution as f64 / necessity.oracle_hamiltonian as f64);
    }
    let certificate_failures = rows
        .iter()
        .filter(|r| r.certificate_verified == Some(false))
        .count();
    Report {
        schema_version: SCHEMA_VERSION,
        spec: spec.clone(),
        rows,
        matrix,
        mismatches,
        certificate_failures,
        necessity,
    }
}
