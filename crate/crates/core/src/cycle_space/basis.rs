use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use super::cycle::{cycle_from_edge_set, Cycle};
use super::edge_set::{EdgeSet, Gf2Basis};
use crate::error::CycleError;
use crate::graph::{EdgeId, Graph, VertexId};

/// Cyclomatic number `m - n + 1` of a connected graph.
pub fn cycle_space_dimension(g: &Graph) -> usize {
    (g.m() + 1).saturating_sub(g.n())
}

/// A breadth-first spanning tree rooted at vertex 0. Neighbours are visited
/// in increasing id order.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    pub tree_edges: EdgeSet,
    /// `(parent, edge to parent)`; `None` at the root.
    pub parent: Vec<Option<(VertexId, EdgeId)>>,
    depth: Vec<usize>,
}

impl SpanningTree {
    pub fn bfs(g: &Graph) -> Result<Self, CycleError> {
        if !g.is_connected() {
            return Err(CycleError::DisconnectedGraph);
        }
        let mut parent = vec![None; g.n()];
        let mut depth = vec![usize::MAX; g.n()];
        let mut tree_edges = EdgeSet::empty(g.m());
        if g.n() > 0 {
            depth[0] = 0;
            let mut queue = VecDeque::from([0]);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in g.incident(x) {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        parent[y] = Some((x, e));
                        tree_edges.insert(e);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(SpanningTree {
            tree_edges,
            parent,
            depth,
        })
    }

    /// Edges of the tree path between `a` and `b`.
    pub fn path(&self, mut a: VertexId, mut b: VertexId, m: usize) -> EdgeSet {
        let mut out = EdgeSet::empty(m);
        while a != b {
            let x = if self.depth[a] >= self.depth[b] {
                &mut a
            } else {
                &mut b
            };
            let (p, e) = self.parent[*x].expect("non-root vertex has a parent");
            out.insert(e);
            *x = p;
        }
        out
    }
}

/// An independent set of cycles spanning the cycle space of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleBasis {
    cycles: Vec<Cycle>,
}

impl CycleBasis {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn into_cycles(self) -> Vec<Cycle> {
        self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn weight(&self, g: &Graph) -> f64 {
        self.cycles.iter().map(|c| c.weight(g)).sum()
    }

    /// One cycle per line as a space-separated vertex walk.
    pub fn to_text(&self) -> String {
        format_cycles(&self.cycles)
    }

    /// Parses the block format written by [`CycleBasis::to_text`] and checks
    /// that the result is a basis of `g`.
    pub fn from_text(g: &Graph, text: &str) -> Result<CycleBasis, CycleError> {
        let cycles = parse_cycles(g, text)?;
        if !is_cycle_basis(g, &cycles) {
            return Err(CycleError::InvalidWalk {
                reason: "cycles do not form a basis".into(),
            });
        }
        Ok(CycleBasis { cycles })
    }
}

pub fn format_cycles(cycles: &[Cycle]) -> String {
    let mut out = String::new();
    for c in cycles {
        let walk: Vec<String> = c.walk().iter().map(|v| v.to_string()).collect();
        out.push_str(&walk.join(" "));
        out.push('\n');
    }
    out
}

/// Parses one vertex walk per line; blank lines and `#` comments are skipped.
pub fn parse_cycles(g: &Graph, text: &str) -> Result<Vec<Cycle>, CycleError> {
    let mut cycles = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let walk = body
            .split_whitespace()
            .map(|s| s.parse::<VertexId>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|err| CycleError::InvalidWalk {
                reason: format!("{body:?}: {err}"),
            })?;
        cycles.push(Cycle::from_walk(g, &walk)?);
    }
    Ok(cycles)
}

/// Chord-plus-tree-path cycles of the BFS spanning tree, one per non-tree
/// edge in edge-id order.
pub fn fundamental_basis(g: &Graph) -> Result<CycleBasis, CycleError> {
    let tree = SpanningTree::bfs(g)?;
    let cycles = (0..g.m())
        .filter(|&e| !tree.tree_edges.contains(e))
        .map(|e| {
            let edge = g.edge(e);
            let mut es = tree.path(edge.u, edge.v, g.m());
            es.insert(e);
            cycle_from_edge_set(&es, g).expect("chord closes a tree path")
        })
        .collect();
    Ok(CycleBasis { cycles })
}

/// Single-source shortest paths with ties broken by settling the lowest
/// vertex id first. Returns the parent edge of every vertex.
fn shortest_path_tree(g: &Graph, source: VertexId) -> Vec<Option<(VertexId, EdgeId)>> {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = 0.0;
    for _ in 0..n {
        let Some(x) = (0..n)
            .filter(|&v| !done[v] && dist[v].is_finite())
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)))
        else {
            break;
        };
        done[x] = true;
        for &(y, e) in g.incident(x) {
            let d = dist[x] + g.edge(e).weight;
            if !done[y] && d < dist[y] {
                dist[y] = d;
                parent[y] = Some((x, e));
            }
        }
    }
    parent
}

/// Horton candidate cycles: for every vertex `v` and edge `{x, y}`, the
/// shortest paths `v..x` and `v..y` closed by the edge. Candidates that are
/// not a single simple cycle are dropped; duplicates are merged.
pub fn horton_candidates(g: &Graph) -> Vec<Cycle> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in 0..g.n() {
        let parent = shortest_path_tree(g, v);
        // edge set of the tree path from v to each vertex, built root-down
        let mut paths: Vec<Option<EdgeSet>> = vec![None; g.n()];
        paths[v] = Some(EdgeSet::empty(g.m()));
        fn path_to(
            x: VertexId,
            parent: &[Option<(VertexId, EdgeId)>],
            paths: &mut [Option<EdgeSet>],
        ) -> EdgeSet {
            if let Some(p) = &paths[x] {
                return p.clone();
            }
            let (p, e) = parent[x].expect("connected graph");
            let mut es = path_to(p, parent, paths);
            es.insert(e);
            paths[x] = Some(es.clone());
            es
        }
        for e in 0..g.m() {
            let edge = g.edge(e);
            let (x, y) = (edge.u, edge.v);
            if parent[x].map(|(_, pe)| pe) == Some(e) || parent[y].map(|(_, pe)| pe) == Some(e) {
                continue;
            }
            let mut es = path_to(x, &parent, &mut paths);
            es.xor_unchecked(&path_to(y, &parent, &mut paths));
            es.insert(e);
            if seen.contains(&es) {
                continue;
            }
            if let Ok(c) = cycle_from_edge_set(&es, g) {
                seen.insert(es);
                out.push(c);
            }
        }
    }
    out
}

/// Sort key of the independence sieve: weight, then order, then the edge-id
/// sequence.
pub fn sieve_order(g: &Graph, a: &Cycle, b: &Cycle) -> Ordering {
    a.weight(g)
        .total_cmp(&b.weight(g))
        .then_with(|| a.cmp_canonical(b))
}

/// Greedily keeps cycles that are independent of those kept so far, in the
/// order given, until `limit` cycles are kept.
pub fn independence_sieve(g: &Graph, ordered: Vec<Cycle>, limit: usize) -> Vec<Cycle> {
    let mut basis = Gf2Basis::new(g.m());
    let mut kept = Vec::with_capacity(limit);
    for c in ordered {
        if kept.len() == limit {
            break;
        }
        if basis.insert(c.edges()).expect("same graph") {
            kept.push(c);
        }
    }
    kept
}

/// Minimum-weight cycle basis by Horton's method: generate candidates, sort
/// them with [`sieve_order`], and keep the independent ones.
pub fn horton_mcb(g: &Graph) -> Result<CycleBasis, CycleError> {
    if !g.is_connected() {
        return Err(CycleError::DisconnectedGraph);
    }
    let mut keyed: Vec<(f64, Cycle)> = horton_candidates(g)
        .into_iter()
        .map(|c| (c.weight(g), c))
        .collect();
    keyed.sort_by(|(wa, a), (wb, b)| wa.total_cmp(wb).then_with(|| a.cmp_canonical(b)));
    let sorted = keyed.into_iter().map(|(_, c)| c).collect();
    let cycles = independence_sieve(g, sorted, cycle_space_dimension(g));
    debug_assert_eq!(cycles.len(), cycle_space_dimension(g));
    Ok(CycleBasis { cycles })
}

fn components(g: &Graph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &(y, _) in g.incident(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// True iff `cycles` has exactly `m - n + c` members (`c` components) and
/// they are independent over GF(2).
pub fn is_cycle_basis(g: &Graph, cycles: &[Cycle]) -> bool {
    let dim = (g.m() + components(g)).saturating_sub(g.n());
    if cycles.len() != dim || cycles.iter().any(|c| c.edges().len() != g.m()) {
        return false;
    }
    let mut basis = Gf2Basis::new(g.m());
    cycles
        .iter()
        .all(|c| basis.insert(c.edges()).expect("dimension checked"))
}

/// True iff `es` is a GF(2) combination of the basis cycles.
pub fn span_contains(basis: &CycleBasis, es: &EdgeSet) -> Result<bool, CycleError> {
    let mut rows = Gf2Basis::new(es.len());
    for c in basis.cycles() {
        rows.insert(c.edges())?;
    }
    rows.spans(es)
}
