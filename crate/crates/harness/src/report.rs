use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{OracleAnswer, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Versioned JSON.
    Structured,
    Text,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "structured" | "json" => Ok(ReportFormat::Structured),
            "text" => Ok(ReportFormat::Text),
            _ => Err(format!("unknown format {s:?}; expected structured or text")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub fn render_structured(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
    s.push('\n');
    s
}

fn oracle_label(a: OracleAnswer) -> &'static str {
    match a {
        OracleAnswer::Hamiltonian => "hamiltonian",
        OracleAnswer::NonHamiltonian => "non_hamiltonian",
        OracleAnswer::BudgetExceeded => "budget_exceeded",
    }
}

pub fn render_text(report: &Report) -> String {
    let m = &report.matrix;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "corpus: {} graphs, pool {}, max solutions {}",
        report.rows.len(),
        report.spec.pool,
        report.spec.max_solutions
    );
    let _ = writeln!(s, "\n                   oracle H  oracle non-H");
    let _ = writeln!(s, "  criterion H      {:>8}  {:>12}", m.hh, m.hn);
    let _ = writeln!(s, "  criterion non-H  {:>8}  {:>12}", m.nh, m.nn);
    let _ = writeln!(s, "\nclaimed but unverified: {}", m.unverified);
    let _ = writeln!(s, "oracle budget exceeded: {}", m.budget_exceeded);
    let _ = writeln!(s, "failed rows:            {}", m.failed);
    let _ = writeln!(s, "certificate failures:   {}", report.certificate_failures);
    let nec = &report.necessity;
    match nec.rate {
        Some(rate) => {
            let _ = writeln!(
                s,
                "oracle-Hamiltonian graphs with a solution: {} of {} ({:.1}%)",
                nec.with_solution,
                nec.oracle_hamiltonian,
                100.0 * rate
            );
        }
        None => {
            let _ = writeln!(
                s,
                "oracle-Hamiltonian graphs with a solution: none to count"
            );
        }
    }
    let _ = writeln!(s, "\nmismatches: {}", report.mismatches.len());
    for mm in &report.mismatches {
        let _ = writeln!(
            s,
            "  #{:<6} {:<12} {:<34} oracle {}",
            mm.index,
            mm.graph6,
            mm.verdict,
            oracle_label(mm.oracle)
        );
    }
    s
}

pub fn emit_report(report: &Report, path: &Path, format: ReportFormat) -> Result<(), ReportError> {
    let body = match format {
        ReportFormat::Structured => render_structured(report),
        ReportFormat::Text => render_text(report),
    };
    fs::write(path, body).map_err(|source| ReportError::Io {
        path: path.display().to_string(),
        source,
    })
}
