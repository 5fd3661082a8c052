//! Named graphs, random and exhaustive generators, corpus sweeps of the
//! cycle-space criterion against the exact oracle, and report output.

pub mod catalog;
pub mod corpus;
pub mod generate;
pub mod input;
pub mod report;

pub use catalog::{named_graph, CatalogError, CATALOG};
pub use corpus::{
    run_corpus, run_graph, ConfusionMatrix, CorpusSource, CorpusSpec, Report, ReportRow,
};
pub use generate::{enumerate_labeled_graphs, generate_gnp, GenerateError};
pub use report::{emit_report, render_structured, render_text, ReportFormat};
