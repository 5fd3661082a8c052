//! The Grinberg equation over a pool of cycles.
//!
//! A *solution* is a non-empty subset `S` of the pool with
//! `Σ_{c ∈ S} (|c| - 2) = n - 2`; the rest of the pool is the co-solution.
//! This module also carries the classical planar face-sum and the counting
//! identities a Hamilton set has to satisfy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycle_space::{fundamental_basis, horton_mcb, simple_cycles, Cycle};
use crate::error::{CycleError, GrinbergError};
use crate::graph::{Graph, VertexId};

/// Face degrees on either side of a Hamilton cycle in a plane drawing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub inside_degrees: Vec<usize>,
    pub outside_degrees: Vec<usize>,
}

impl FaceSpec {
    pub fn swapped(&self) -> FaceSpec {
        FaceSpec {
            inside_degrees: self.outside_degrees.clone(),
            outside_degrees: self.inside_degrees.clone(),
        }
    }
}

/// `Σ_i (i - 2)(f'_i - f''_i)`. Zero is necessary for the face split to come
/// from a Hamilton cycle of a plane graph.
pub fn planar_criterion_sum(spec: &FaceSpec) -> Result<i64, GrinbergError> {
    let side = |degrees: &[usize]| -> Result<i64, GrinbergError> {
        degrees.iter().try_fold(0i64, |acc, &d| {
            if d < 3 {
                Err(GrinbergError::DegreeTooSmall { degree: d })
            } else {
                Ok(acc + d as i64 - 2)
            }
        })
    };
    Ok(side(&spec.inside_degrees)? - side(&spec.outside_degrees)?)
}

/// `Σ (order - 2) - (n - 2)`; zero iff the orders solve the equation for a
/// graph of order `n`.
pub fn equation_residual(cycle_orders: &[usize], n: usize) -> i64 {
    let lhs: i64 = cycle_orders.iter().map(|&k| k as i64 - 2).sum();
    lhs - (n as i64 - 2)
}

/// Which cycles the equation is solved over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoolKind {
    Mcb,
    FundamentalBasis,
    /// Every simple cycle with at most this many vertices.
    AllCyclesUpTo(usize),
}

impl fmt::Display for PoolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoolKind::Mcb => f.write_str("mcb"),
            PoolKind::FundamentalBasis => f.write_str("fundamental"),
            PoolKind::AllCyclesUpTo(l) => write!(f, "all:{l}"),
        }
    }
}

impl FromStr for PoolKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mcb" => Ok(PoolKind::Mcb),
            "fundamental" => Ok(PoolKind::FundamentalBasis),
            _ => s
                .strip_prefix("all:")
                .and_then(|l| l.parse().ok())
                .map(PoolKind::AllCyclesUpTo)
                .ok_or_else(|| format!("unknown pool {s:?}; expected mcb, fundamental or all:<L>")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionConfig {
    pub pool: PoolKind,
    pub max_solutions: usize,
    /// Enumerate over the pool sorted by `(order, edge ids)` rather than in
    /// the given order. Indices in the output always refer to the given
    /// order, so with this set the result does not depend on pool order.
    pub canonical_order: bool,
}

impl Default for SolutionConfig {
    fn default() -> Self {
        SolutionConfig {
            pool: PoolKind::Mcb,
            max_solutions: 10_000,
            canonical_order: true,
        }
    }
}

/// A named list of cycles that solutions index into.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclePool {
    pub id: String,
    pub cycles: Vec<Cycle>,
}

impl CyclePool {
    pub fn new(id: impl Into<String>, cycles: Vec<Cycle>) -> Self {
        CyclePool {
            id: id.into(),
            cycles,
        }
    }

    pub fn build(g: &Graph, kind: PoolKind) -> Result<CyclePool, CycleError> {
        let cycles = match kind {
            PoolKind::Mcb => horton_mcb(g)?.into_cycles(),
            PoolKind::FundamentalBasis => fundamental_basis(g)?.into_cycles(),
            PoolKind::AllCyclesUpTo(l) => {
                if !g.is_connected() {
                    return Err(CycleError::DisconnectedGraph);
                }
                simple_cycles(g, Some(l))
            }
        };
        Ok(CyclePool::new(kind.to_string(), cycles))
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

/// A split of a pool into the solution side and the co-solution side.
/// Both index lists are ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrinbergSolution {
    pub pool_id: String,
    pub solution: Vec<usize>,
    pub cosolution: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionSet {
    pub target: i64,
    pub solutions: Vec<GrinbergSolution>,
    /// More solutions exist than were returned.
    pub truncated: bool,
}

/// Serialized form of a solution: `(cycle index, order)` per side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub pool_id: String,
    pub target: i64,
    pub solution: Vec<(usize, usize)>,
    pub cosolution: Vec<(usize, usize)>,
}

impl GrinbergSolution {
    pub fn record(&self, pool: &CyclePool, n: usize) -> SolutionRecord {
        let side = |idx: &[usize]| idx.iter().map(|&i| (i, pool.cycles[i].order())).collect();
        SolutionRecord {
            pool_id: self.pool_id.clone(),
            target: n as i64 - 2,
            solution: side(&self.solution),
            cosolution: side(&self.cosolution),
        }
    }
}

/// Every non-empty subset of the pool solving the equation for order `n`,
/// up to `cfg.max_solutions`. The search is include-first depth-first over
/// pool indices (canonical order when configured). An empty result means no
/// solution exists.
pub fn enumerate_solutions(
    pool: &CyclePool,
    n: usize,
    cfg: &SolutionConfig,
) -> Result<SolutionSet, GrinbergError> {
    if cfg.max_solutions == 0 {
        return Err(GrinbergError::ZeroSolutionCap);
    }
    let target = n as i64 - 2;
    let mut order: Vec<usize> = (0..pool.len()).collect();
    if cfg.canonical_order {
        order.sort_by(|&a, &b| {
            pool.cycles[a]
                .cmp_canonical(&pool.cycles[b])
                .then(a.cmp(&b))
        });
    }
    let weights: Vec<i64> = order
        .iter()
        .map(|&i| pool.cycles[i].order() as i64 - 2)
        .collect();
    let mut suffix = vec![0i64; weights.len() + 1];
    for i in (0..weights.len()).rev() {
        suffix[i] = suffix[i + 1] + weights[i];
    }

    struct Search<'a> {
        weights: &'a [i64],
        suffix: &'a [i64],
        cap: usize,
        chosen: Vec<usize>,
        found: Vec<Vec<usize>>,
        truncated: bool,
    }

    impl Search<'_> {
        // returns false once the cap is exceeded
        fn run(&mut self, i: usize, remaining: i64) -> bool {
            if remaining == 0 && !self.chosen.is_empty() {
                if self.found.len() == self.cap {
                    self.truncated = true;
                    return false;
                }
                self.found.push(self.chosen.clone());
                return true;
            }
            if i == self.weights.len() || self.suffix[i] < remaining || remaining < 0 {
                return true;
            }
            if self.weights[i] <= remaining {
                self.chosen.push(i);
                let go_on = self.run(i + 1, remaining - self.weights[i]);
                self.chosen.pop();
                if !go_on {
                    return false;
                }
            }
            self.run(i + 1, remaining)
        }
    }

    let mut search = Search {
        weights: &weights,
        suffix: &suffix,
        cap: cfg.max_solutions,
        chosen: Vec::new(),
        found: Vec::new(),
        truncated: false,
    };
    if target > 0 {
        search.run(0, target);
    }

    let solutions = search
        .found
        .into_iter()
        .map(|picked| {
            let mut in_solution = vec![false; pool.len()];
            for p in picked {
                in_solution[order[p]] = true;
            }
            let (solution, cosolution): (Vec<usize>, Vec<usize>) =
                (0..pool.len()).partition(|&i| in_solution[i]);
            GrinbergSolution {
                pool_id: pool.id.clone(),
                solution,
                cosolution,
            }
        })
        .collect();
    Ok(SolutionSet {
        target,
        solutions,
        truncated: search.truncated,
    })
}

/// `Σ order - 2(count - 1) = n`, the counting identity of a Hamilton set of
/// `count` cycles glued pairwise along single edges.
pub fn verify_hamilton_set_identity(cycles: &[Cycle], n: usize) -> bool {
    if cycles.is_empty() {
        return false;
    }
    let total: i64 = cycles.iter().map(|c| c.order() as i64).sum();
    total - 2 * (cycles.len() as i64 - 1) == n as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairIntersection {
    pub a: usize,
    pub b: usize,
    pub common_vertices: usize,
    pub common_edges: usize,
    /// Exactly two common vertices joined by exactly one common edge.
    pub glued_along_edge: bool,
}

/// Inclusion-exclusion bookkeeping over the vertex sets of a cycle family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionExclusionAudit {
    /// `|∪ V_a|`.
    pub union_size: usize,
    /// `terms[r - 1] = Σ_{|T| = r} |∩_{a ∈ T} V_a|` for `r = 1..`; trailing
    /// zero terms are omitted.
    pub terms: Vec<u128>,
    /// Some term did not fit in `u128` and was saturated.
    pub saturated: bool,
    /// `terms[1]`: the full pairwise term.
    pub pairwise_term: u128,
    /// Pairwise term restricted to pairs sharing at least one edge.
    pub edge_sharing_pairwise_term: u128,
    /// Every pair that meets at all.
    pub pairs: Vec<PairIntersection>,
    /// The shape a Hamilton set is assumed to have: meeting pairs are glued
    /// along one edge, no vertex lies on three cycles, and the gluing graph
    /// connects the family.
    pub hamilton_shape: bool,
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn inclusion_exclusion_audit(cycles: &[Cycle]) -> InclusionExclusionAudit {
    let n = cycles
        .iter()
        .flat_map(|c| c.walk().iter().copied())
        .max()
        .map_or(0, |v| v + 1);
    let mut depth = vec![0u64; n];
    for c in cycles {
        for &v in c.walk() {
            depth[v] += 1;
        }
    }
    let union_size = depth.iter().filter(|&&d| d > 0).count();

    // Σ over r-subsets of |∩| = Σ_v C(depth_v, r)
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let mut saturated = false;
    let terms: Vec<u128> = (1..=max_depth)
        .map(|r| {
            depth.iter().fold(0u128, |acc, &d| {
                match binomial(d, r).and_then(|b| acc.checked_add(b)) {
                    Some(x) => x,
                    None => {
                        saturated = true;
                        u128::MAX
                    }
                }
            })
        })
        .collect();

    let vertex_sets: Vec<Vec<bool>> = cycles
        .iter()
        .map(|c| {
            let mut s = vec![false; n];
            for &v in c.walk() {
                s[v] = true;
            }
            s
        })
        .collect();
    let mut pairs = Vec::new();
    let mut pairwise_from_pairs = 0u128;
    let mut edge_sharing_pairwise_term = 0u128;
    for a in 0..cycles.len() {
        for b in a + 1..cycles.len() {
            let common_vertices = (0..n)
                .filter(|&v| vertex_sets[a][v] && vertex_sets[b][v])
                .count();
            if common_vertices == 0 {
                continue;
            }
            let common_edges = cycles[a]
                .edges()
                .intersection_count(cycles[b].edges())
                .unwrap_or(0);
            pairwise_from_pairs += common_vertices as u128;
            if common_edges > 0 {
                edge_sharing_pairwise_term += common_vertices as u128;
            }
            pairs.push(PairIntersection {
                a,
                b,
                common_vertices,
                common_edges,
                glued_along_edge: common_vertices == 2 && common_edges == 1,
            });
        }
    }
    debug_assert!(saturated || terms.get(1).copied().unwrap_or(0) == pairwise_from_pairs);

    let glued_connected = {
        let mut parent: Vec<usize> = (0..cycles.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut groups = cycles.len();
        for p in pairs.iter().filter(|p| p.glued_along_edge) {
            let (ra, rb) = (find(&mut parent, p.a), find(&mut parent, p.b));
            if ra != rb {
                parent[ra] = rb;
                groups -= 1;
            }
        }
        groups <= 1
    };
    let hamilton_shape = !cycles.is_empty()
        && pairs.iter().all(|p| p.glued_along_edge)
        && max_depth <= 2
        && glued_connected;

    InclusionExclusionAudit {
        union_size,
        pairwise_term: terms.get(1).copied().unwrap_or(0),
        terms,
        saturated,
        edge_sharing_pairwise_term,
        pairs,
        hamilton_shape,
    }
}

/// Vertices covered by a cycle family, ascending.
pub fn covered_vertices(cycles: &[Cycle]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = cycles
        .iter()
        .flat_map(|c| c.walk().iter().copied())
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}
