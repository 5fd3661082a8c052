use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use super::edge_set::EdgeSet;
use crate::error::CycleError;
use crate::graph::{Graph, VertexId};

/// A simple cycle: a connected edge set in which every touched vertex has
/// degree two.
///
/// The vertex walk starts at the cycle's lowest vertex and heads towards the
/// smaller of its two neighbours, so equal edge sets have equal walks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    edges: EdgeSet,
    walk: Vec<VertexId>,
}

impl Cycle {
    #[inline]
    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    /// Vertex sequence; the closing edge joins the last vertex to the first.
    #[inline]
    pub fn walk(&self) -> &[VertexId] {
        &self.walk
    }

    /// Number of vertices, equal to the number of edges.
    #[inline]
    pub fn order(&self) -> usize {
        self.walk.len()
    }

    pub fn weight(&self, g: &Graph) -> f64 {
        self.edges.iter().map(|e| g.edge(e).weight).sum()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.walk.contains(&v)
    }

    /// Builds a cycle from a closed vertex walk such as `[0, 1, 2]`.
    pub fn from_walk(g: &Graph, walk: &[VertexId]) -> Result<Cycle, CycleError> {
        let invalid = |reason: String| CycleError::InvalidWalk { reason };
        if walk.len() < 3 {
            return Err(invalid(format!("{} vertices, need at least 3", walk.len())));
        }
        let mut edges = EdgeSet::empty(g.m());
        for i in 0..walk.len() {
            let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
            if a >= g.n() || b >= g.n() {
                return Err(invalid(format!("vertex out of range in {a}-{b}")));
            }
            let e = g
                .edge_between(a, b)
                .ok_or_else(|| invalid(format!("{a}-{b} is not an edge")))?;
            if edges.contains(e) {
                return Err(invalid(format!("edge {a}-{b} repeated")));
            }
            edges.insert(e);
        }
        let cycle = cycle_from_edge_set(&edges, g)?;
        if cycle.order() != walk.len() {
            return Err(invalid("walk revisits a vertex".into()));
        }
        Ok(cycle)
    }

    /// Ordering by `(order, increasing edge-id sequence)`.
    pub fn cmp_canonical(&self, other: &Cycle) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.edges.cmp_lex(&other.edges))
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.walk.serialize(s)
    }
}

/// Validates that `es` is a single simple cycle of `g` and returns it.
pub fn cycle_from_edge_set(es: &EdgeSet, g: &Graph) -> Result<Cycle, CycleError> {
    if es.len() != g.m() {
        return Err(CycleError::DimensionMismatch {
            left: es.len(),
            right: g.m(),
        });
    }
    if es.is_empty() {
        return Err(CycleError::Empty);
    }
    let mut degree = vec![0usize; g.n()];
    for e in es.iter() {
        let edge = g.edge(e);
        degree[edge.u] += 1;
        degree[edge.v] += 1;
    }
    if let Some(vertex) = degree.iter().position(|&d| d != 0 && d != 2) {
        return Err(CycleError::NotTwoRegular {
            vertex,
            degree: degree[vertex],
        });
    }

    let start = degree.iter().position(|&d| d == 2).expect("non-empty");
    let walk = trace(g, es, start);
    let total = es.count();
    if walk.len() != total {
        // count the remaining components of the 2-regular edge set
        let mut seen = vec![false; g.n()];
        let mut components = 0;
        for v in 0..g.n() {
            if degree[v] == 2 && !seen[v] {
                components += 1;
                for x in trace(g, es, v) {
                    seen[x] = true;
                }
            }
        }
        return Err(CycleError::Disconnected { components });
    }
    Ok(Cycle {
        edges: es.clone(),
        walk,
    })
}

// Follows the unique cycle through `start` in a 2-regular edge set, first
// stepping to the smaller neighbour.
fn trace(g: &Graph, es: &EdgeSet, start: VertexId) -> Vec<VertexId> {
    let mut walk = vec![start];
    let mut prev = start;
    let mut cur = g
        .incident(start)
        .iter()
        .find(|(_, e)| es.contains(*e))
        .map(|&(w, _)| w)
        .expect("degree two");
    while cur != start {
        walk.push(cur);
        let next = g
            .incident(cur)
            .iter()
            .find(|&&(w, e)| es.contains(e) && w != prev)
            .map(|&(w, _)| w)
            .expect("degree two");
        prev = cur;
        cur = next;
    }
    walk
}

/// All simple cycles of `g` with at most `max_len` vertices, sorted by
/// `(order, edge-id sequence)`.
pub fn simple_cycles(g: &Graph, max_len: Option<usize>) -> Vec<Cycle> {
    let limit = max_len.unwrap_or(g.n()).min(g.n());
    let mut found = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::new();
    let mut path_edges = EdgeSet::empty(g.m());

    struct Search<'a> {
        g: &'a Graph,
        start: VertexId,
        limit: usize,
        on_path: &'a mut [bool],
        path: &'a mut Vec<VertexId>,
        path_edges: &'a mut EdgeSet,
        found: &'a mut Vec<EdgeSet>,
    }

    impl Search<'_> {
        fn extend(&mut self, v: VertexId) {
            for &(w, e) in self.g.incident(v) {
                if w == self.start {
                    // each cycle is seen in two directions; keep one
                    if self.path.len() >= 3 && self.path[1] < v {
                        let mut closed = self.path_edges.clone();
                        closed.insert(e);
                        self.found.push(closed);
                    }
                } else if w > self.start && !self.on_path[w] && self.path.len() < self.limit {
                    self.on_path[w] = true;
                    self.path.push(w);
                    self.path_edges.insert(e);
                    self.extend(w);
                    self.path_edges.remove(e);
                    self.path.pop();
                    self.on_path[w] = false;
                }
            }
        }
    }

    let mut sets = Vec::new();
    for start in 0..g.n() {
        on_path[start] = true;
        path.push(start);
        Search {
            g,
            start,
            limit,
            on_path: &mut on_path,
            path: &mut path,
            path_edges: &mut path_edges,
            found: &mut sets,
        }
        .extend(start);
        path.pop();
        on_path[start] = false;
    }
    for es in sets {
        found.push(cycle_from_edge_set(&es, g).expect("search yields simple cycles"));
    }
    found.sort_by(Cycle::cmp_canonical);
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Graph::new(n, &pairs).unwrap()
    }

    #[test]
    fn triangle_edge_set_is_a_cycle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = cycle_from_edge_set(&EdgeSet::from_edges(3, 0..3), &g).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(c.walk(), &[0, 1, 2]);
    }

    #[test]
    fn two_triangles_are_disconnected() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(
            cycle_from_edge_set(&EdgeSet::from_edges(6, 0..6), &g),
            Err(CycleError::Disconnected { components: 2 })
        );
    }

    #[test]
    fn path_is_not_two_regular() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(
            cycle_from_edge_set(&EdgeSet::from_edges(3, 0..3), &g),
            Err(CycleError::NotTwoRegular {
                vertex: 0,
                degree: 1
            })
        );
        assert_eq!(
            cycle_from_edge_set(&EdgeSet::empty(3), &g),
            Err(CycleError::Empty)
        );
    }

    #[test]
    fn walk_is_canonical() {
        let g = k(5);
        let a = Cycle::from_walk(&g, &[3, 1, 4, 0, 2]).unwrap();
        let b = Cycle::from_walk(&g, &[0, 2, 3, 1, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.walk(), &[0, 2, 3, 1, 4]);
        assert!(Cycle::from_walk(&g, &[0, 1]).is_err());
        assert!(Cycle::from_walk(&g, &[0, 1, 2, 1]).is_err());
    }

    #[test]
    fn from_walk_rejects_non_edges() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            Cycle::from_walk(&g, &[0, 1, 3]),
            Err(CycleError::InvalidWalk { .. })
        ));
    }

    // K_n has sum_{k=3..n} C(n,k) (k-1)!/2 simple cycles.
    #[test]
    fn complete_graph_cycle_counts() {
        let counts: Vec<usize> = (3..=6).map(|n| simple_cycles(&k(n), None).len()).collect();
        assert_eq!(counts, vec![1, 7, 37, 197]);
        assert_eq!(simple_cycles(&k(5), Some(3)).len(), 10);
        let cs = simple_cycles(&k(5), None);
        assert!(cs
            .windows(2)
            .all(|w| w[0].cmp_canonical(&w[1]) == Ordering::Less));
    }
}
