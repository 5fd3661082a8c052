//! Reading graphs from catalog names, graph6 files and edge-list files.

use std::fs;
use std::path::{Path, PathBuf};

use grinberg_core::{parse_graph6, Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{named_graph, CatalogError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileFormat {
    /// One graph6 string per non-empty line.
    Graph6,
    /// Edge-list blocks (`n m` header, then `u v [w]` lines) separated by
    /// blank lines.
    EdgeList,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}, graph {index}: {source}")]
    Parse {
        path: PathBuf,
        index: usize,
        source: GraphError,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("{path} contains no graph")]
    Empty { path: PathBuf },
}

/// Graph6 if the first meaningful line is a single token, else edge list.
pub fn sniff_format(text: &str) -> FileFormat {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with(">>graph6<<") || l.split_whitespace().count() == 1 => {
            FileFormat::Graph6
        }
        _ => FileFormat::EdgeList,
    }
}

pub fn parse_graphs(text: &str, format: FileFormat, path: &Path) -> Result<Vec<Graph>, InputError> {
    let err = |index, source| InputError::Parse {
        path: path.to_path_buf(),
        index,
        source,
    };
    match format {
        FileFormat::Graph6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, l)| parse_graph6(l).map_err(|e| err(i, e)))
            .collect(),
        FileFormat::EdgeList => {
            let mut blocks = vec![String::new()];
            for line in text.lines() {
                if line.trim().is_empty() {
                    blocks.push(String::new());
                } else {
                    let b = blocks.last_mut().expect("non-empty");
                    b.push_str(line);
                    b.push('\n');
                }
            }
            blocks
                .iter()
                .filter(|b| {
                    b.lines()
                        .any(|l| !l.split('#').next().unwrap_or("").trim().is_empty())
                })
                .enumerate()
                .map(|(i, b)| Graph::from_edge_list(b).map_err(|e| err(i, e)))
                .collect()
        }
    }
}

pub fn read_graphs(path: &Path, format: Option<FileFormat>) -> Result<Vec<Graph>, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format = format.unwrap_or_else(|| sniff_format(&text));
    parse_graphs(&text, format, path)
}

/// `name:<catalog entry>` or a path to a file holding one graph.
pub fn load_graph(arg: &str) -> Result<Graph, InputError> {
    if let Some(name) = arg.strip_prefix("name:") {
        return Ok(named_graph(name)?);
    }
    let path = Path::new(arg);
    read_graphs(path, None)?
        .into_iter()
        .next()
        .ok_or_else(|| InputError::Empty {
            path: path.to_path_buf(),
        })
}
