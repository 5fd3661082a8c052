//! Simple undirected graphs with stable edge indexing.
//!
//! Edge indices are assigned in insertion order and never change, so every
//! [`EdgeSet`](crate::EdgeSet) built against a graph keeps a fixed coordinate
//! system for its lifetime.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense vertex label in `0..n`.
pub type VertexId = usize;
/// Index of an edge in [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: f64,
}

impl Edge {
    /// The endpoint opposite `x`. `x` must be an endpoint.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn key(&self) -> (VertexId, VertexId) {
        ordered(self.u, self.v)
    }
}

#[inline]
fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// An immutable simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // (neighbour, edge id), sorted by neighbour
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Graph {
    /// Builds a unit-weight graph. Edges are indexed in input order.
    pub fn new(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::with_weights(n, pairs, None)
    }

    pub fn with_weights(
        n: usize,
        pairs: &[(VertexId, VertexId)],
        weights: Option<&[f64]>,
    ) -> Result<Self, GraphError> {
        if let Some(w) = weights {
            if w.len() != pairs.len() {
                return Err(GraphError::WeightCountMismatch {
                    pairs: pairs.len(),
                    weights: w.len(),
                });
            }
        }
        let mut edges = Vec::with_capacity(pairs.len());
        let mut lookup = HashMap::with_capacity(pairs.len());
        let mut adjacency = vec![Vec::new(); n];
        for (index, &(u, v)) in pairs.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange {
                        index,
                        vertex: x,
                        n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            let weight = weights.map_or(1.0, |w| w[index]);
            if !(weight.is_finite() && weight >= 0.0) {
                return Err(GraphError::InvalidWeight { index, weight });
            }
            let key = ordered(u, v);
            if let Some(&first) = lookup.get(&key) {
                return Err(GraphError::DuplicateEdge {
                    index,
                    first,
                    u: key.0,
                    v: key.1,
                });
            }
            lookup.insert(key, index);
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
            edges.push(Edge { u, v, weight });
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
            lookup,
        })
    }

    /// Vertex count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count.
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// `(neighbour, edge)` pairs incident to `v`, ordered by neighbour id.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.lookup.get(&ordered(u, v)).copied()
    }

    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    /// True iff every vertex is reachable from vertex 0. The empty graph is
    /// connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        reached == self.n
    }

    /// Parses the edge-list text format: a header line `n m`, then `m`
    /// lines `u v [w]`. Blank lines and `#` comments are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((i + 1, body))
        });
        let (line, header) = lines.next().ok_or(GraphError::EdgeList {
            line: 0,
            message: "missing `n m` header".into(),
        })?;
        let header: Vec<&str> = header.split_whitespace().collect();
        if header.len() != 2 {
            return Err(GraphError::EdgeList {
                line,
                message: format!("expected `n m`, found {} fields", header.len()),
            });
        }
        let parse_count = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::EdgeList {
                line,
                message: format!("not a count: {s:?}"),
            })
        };
        let n = parse_count(header[0])?;
        let m = parse_count(header[1])?;

        let mut pairs = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let mut weighted = false;
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(GraphError::EdgeList {
                    line,
                    message: format!("expected `u v [w]`, found {} fields", fields.len()),
                });
            }
            let vertex = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::EdgeList {
                    line,
                    message: format!("not a vertex id: {s:?}"),
                })
            };
            pairs.push((vertex(fields[0])?, vertex(fields[1])?));
            let w = match fields.get(2) {
                Some(s) => {
                    weighted = true;
                    s.parse::<f64>().map_err(|_| GraphError::EdgeList {
                        line,
                        message: format!("not a weight: {s:?}"),
                    })?
                }
                None => 1.0,
            };
            weights.push(w);
        }
        if pairs.len() != m {
            return Err(GraphError::EdgeList {
                line: 0,
                message: format!("header declares {m} edges, found {}", pairs.len()),
            });
        }
        Graph::with_weights(n, &pairs, weighted.then_some(weights.as_slice()))
    }

    /// Writes the edge-list format. Weights are emitted only when some edge
    /// is not unit weight.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        let weighted = !self.is_unit_weight();
        for e in &self.edges {
            if weighted {
                out.push_str(&format!("{} {} {}\n", e.u, e.v, e.weight));
            } else {
                out.push_str(&format!("{} {}\n", e.u, e.v));
            }
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Graph::new(n, &pairs).unwrap()
    }

    #[test]
    fn triangle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.m(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
        assert_eq!(g.edge_between(0, 2), Some(2));
        assert_eq!(g.edge_between(2, 0), Some(2));
    }

    #[test]
    fn k5_degrees() {
        let g = complete(5);
        assert_eq!(g.m(), 10);
        assert!((0..5).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Graph::new(4, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge {
                index: 1,
                first: 0,
                u: 0,
                v: 1
            })
        ));
        assert!(matches!(
            Graph::new(4, &[(2, 2)]),
            Err(GraphError::SelfLoop {
                index: 0,
                vertex: 2
            })
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 3)]),
            Err(GraphError::VertexOutOfRange {
                index: 1,
                vertex: 3,
                n: 3
            })
        ));
        assert!(matches!(
            Graph::with_weights(2, &[(0, 1)], Some(&[-1.0])),
            Err(GraphError::InvalidWeight { .. })
        ));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::new(3, &[(0, 1), (1, 2), (2, 0)])
            .unwrap()
            .is_connected());
        assert!(!Graph::new(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::new(0, &[]).unwrap().is_connected());
        assert!(Graph::new(1, &[]).unwrap().is_connected());
        assert!(!Graph::new(2, &[]).unwrap().is_connected());
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = complete(7);
        let sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.m());
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# a weighted path\n4 3\n0 1 2.5\n1 2\n2 3 0 # zero weight\n";
        let g = Graph::from_edge_list(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.weights(), vec![2.5, 1.0, 0.0]);
        let again = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list("3 2\n0 1\n"),
            Err(GraphError::EdgeList { .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("3 1\n0 x\n"),
            Err(GraphError::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list(""),
            Err(GraphError::EdgeList { .. })
        ));
    }
}
