//! The solution/removable-cycle decision pipeline, and an exact
//! backtracking oracle used as ground truth.

use serde::Serialize;
use thiserror::Error;

use crate::cycle_space::{cycle_from_edge_set, Cycle, EdgeSet};
use crate::error::{CycleError, GrinbergError};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::grinberg::{enumerate_solutions, CyclePool, SolutionConfig};
use crate::removal::{
    edge_multiplicities, lemma31_check, prop31_witness, prop32_violation, propagate_in_place,
    EdgeStatus, RemovalReason, WorkingSet,
};

/// Default search-node limit for [`oracle_hamiltonian`].
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;
/// Graphs up to this order are searched without a node limit by callers
/// that want exact ground truth.
pub const EXHAUSTIVE_ORACLE_MAX_N: usize = 12;

/// A claimed Hamilton cycle, as a closed vertex walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub walk: Vec<VertexId>,
}

impl Certificate {
    pub fn from_cycle(c: &Cycle) -> Self {
        Certificate {
            walk: c.walk().to_vec(),
        }
    }
}

/// True iff the walk visits every vertex of `g` exactly once and each
/// consecutive pair, including last-to-first, is an edge.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> bool {
    let n = g.n();
    if n < 3 || c.walk.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in &c.walk {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.edge_between(c.walk[i], c.walk[(i + 1) % n]).is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
}

struct Oracle<'a> {
    g: &'a Graph,
    budget: Option<u64>,
    nodes: u64,
}

impl Oracle<'_> {
    fn search(&mut self, mut status: Vec<EdgeStatus>) -> Result<Option<EdgeSet>, OracleError> {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(OracleError::BudgetExceeded {
                nodes: self.nodes - 1,
            });
        }
        if propagate_in_place(self.g, &mut status).is_err() || !self.usable_connected(&status) {
            return Ok(None);
        }
        let Some(e) = self.branch_edge(&status) else {
            let required = EdgeSet::from_edges(
                status.len(),
                (0..status.len()).filter(|&e| status[e] == EdgeStatus::Required),
            );
            return Ok(Some(required));
        };
        for choice in [EdgeStatus::Required, EdgeStatus::Forbidden] {
            let mut next = status.clone();
            next[e] = choice;
            if let Some(found) = self.search(next)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn usable_connected(&self, status: &[EdgeStatus]) -> bool {
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &(y, e) in self.g.incident(x) {
                if !seen[y] && status[e] != EdgeStatus::Forbidden {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == n
    }

    // An undecided edge at the most constrained vertex: path ends (one
    // required edge) first, then fewest undecided edges.
    fn branch_edge(&self, status: &[EdgeStatus]) -> Option<EdgeId> {
        let mut best: Option<((usize, usize), EdgeId)> = None;
        for v in 0..self.g.n() {
            let (mut required, mut undecided, mut first) = (0, 0, None);
            for &(_, e) in self.g.incident(v) {
                match status[e] {
                    EdgeStatus::Required => required += 1,
                    EdgeStatus::Undecided => {
                        undecided += 1;
                        first.get_or_insert(e);
                    }
                    EdgeStatus::Forbidden => {}
                }
            }
            let Some(e) = first else { continue };
            let key = (usize::from(required != 1), undecided);
            if best.is_none_or(|(k, _)| key < k) {
                best = Some((key, e));
            }
        }
        best.map(|(_, e)| e)
    }
}

/// Exact Hamiltonicity by depth-first edge selection, propagating the three
/// construction rules at every node.
///
/// `Ok(None)` is a definitive "no"; a spent `budget` (search nodes) is an
/// error, never a "no". `budget = None` searches exhaustively.
pub fn oracle_hamiltonian(
    g: &Graph,
    budget: Option<u64>,
) -> Result<Option<Certificate>, OracleError> {
    if g.n() < 3 || !g.is_connected() {
        return Ok(None);
    }
    let mut oracle = Oracle {
        g,
        budget,
        nodes: 0,
    };
    let found = oracle.search(vec![EdgeStatus::Undecided; g.m()])?;
    Ok(found.map(|es| {
        let cycle = cycle_from_edge_set(&es, g).expect("rules leave a single cycle");
        let cert = Certificate::from_cycle(&cycle);
        assert!(
            verify_certificate(g, &cert),
            "oracle produced an invalid cycle"
        );
        cert
    }))
}

/// GF(2) sum of the cycles' edge sets.
pub fn xor_all(g: &Graph, cycles: &[Cycle]) -> Result<EdgeSet, CycleError> {
    let mut acc = EdgeSet::empty(g.m());
    for c in cycles {
        acc.xor_assign(c.edges())?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonHamiltonianReason {
    Disconnected,
    NoSolution,
    Prop31,
    Prop32,
    Lemma31,
    StuckDeletion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Verdict {
    Hamiltonian {
        certificate: Certificate,
    },
    /// Every co-solution cycle was deleted but the remaining cycles do not
    /// sum to a Hamilton cycle.
    ClaimedHamiltonianUnverified,
    NonHamiltonian {
        reason: NonHamiltonianReason,
    },
}

impl Verdict {
    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, Verdict::Hamiltonian { .. })
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Hamiltonian { .. } => "hamiltonian".into(),
            Verdict::ClaimedHamiltonianUnverified => "claimed_unverified".into(),
            Verdict::NonHamiltonian { reason } => format!("non_hamiltonian:{}", reason.as_str()),
        }
    }
}

impl NonHamiltonianReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NonHamiltonianReason::Disconnected => "disconnected",
            NonHamiltonianReason::NoSolution => "no_solution",
            NonHamiltonianReason::Prop31 => "prop31",
            NonHamiltonianReason::Prop32 => "prop32",
            NonHamiltonianReason::Lemma31 => "lemma31",
            NonHamiltonianReason::StuckDeletion => "stuck_deletion",
        }
    }
}

/// Why a co-solution cycle could not be deleted at a stuck point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Blocker {
    Irremovable {
        reason: RemovalReason,
    },
    /// Removable itself, but deleting it leaves this co-solution cycle
    /// irremovable.
    BreaksRemovabilityOf {
        cycle: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Rejected {
        reason: NonHamiltonianReason,
    },
    PoolBuilt {
        pool_id: String,
        cycles: Vec<Vec<VertexId>>,
        weight: f64,
    },
    SolutionsEnumerated {
        target: i64,
        count: usize,
        truncated: bool,
    },
    Prop31Checked {
        witness: Option<[usize; 3]>,
    },
    Prop32Checked {
        vertex: Option<VertexId>,
        fatal: bool,
    },
    Lemma31Checked {
        witness: Option<usize>,
        skipped_for_truncation: bool,
    },
    SolutionStarted {
        solution_index: usize,
        solution: Vec<usize>,
        cosolution: Vec<usize>,
    },
    Deleted {
        solution_index: usize,
        cycle: usize,
    },
    SolutionStuck {
        solution_index: usize,
        remaining: Vec<usize>,
        blockers: Vec<(usize, Blocker)>,
    },
    XorResult {
        solution_index: usize,
        edges: Vec<EdgeId>,
        hamilton_cycle: bool,
    },
}

/// Ordered record of one [`decide`] run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceLog {
    pub pool_size: usize,
    pub events: Vec<TraceEvent>,
    /// Set once the run relied on the three-check reading of removability.
    pub reconstructed_removability: bool,
    /// Cycles left after the deletion loop that finished, if one did.
    pub final_remaining: Option<Vec<usize>>,
}

impl TraceLog {
    fn new() -> Self {
        TraceLog {
            pool_size: 0,
            events: Vec::new(),
            reconstructed_removability: false,
            final_remaining: None,
        }
    }

    fn push(&mut self, e: TraceEvent) {
        self.events.push(e);
    }

    /// Re-applies the logged deletions of the solution that reached the XOR
    /// step to the full pool.
    pub fn replay(&self) -> Option<Vec<usize>> {
        let finished = self.events.iter().find_map(|e| match e {
            TraceEvent::XorResult { solution_index, .. } => Some(*solution_index),
            _ => None,
        })?;
        let mut remaining: Vec<usize> = (0..self.pool_size).collect();
        for e in &self.events {
            if let TraceEvent::Deleted {
                solution_index,
                cycle,
            } = e
            {
                if *solution_index == finished {
                    remaining.retain(|c| c != cycle);
                }
            }
        }
        Some(remaining)
    }

    pub fn solutions_truncated(&self) -> bool {
        self.events.iter().any(|e| {
            matches!(
                e,
                TraceEvent::SolutionsEnumerated {
                    truncated: true,
                    ..
                }
            )
        })
    }

    pub fn solution_count(&self) -> Option<usize> {
        self.events.iter().find_map(|e| match e {
            TraceEvent::SolutionsEnumerated { count, .. } => Some(*count),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub trace: TraceLog,
}

/// Knobs for interpretive choices in the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DecideOptions {
    /// Treat a vertex with three or more `R_1` edges over the full pool as
    /// proof of non-Hamiltonicity. Off by default: the pool is not yet a
    /// Hamilton set candidate at that point.
    pub prop32_fatal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Grinberg(#[from] GrinbergError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

pub fn decide(g: &Graph, cfg: &SolutionConfig) -> Result<Decision, DecideError> {
    decide_with(g, cfg, DecideOptions::default())
}

/// Runs the pipeline: pool, solutions, global obstructions, then per-solution
/// deletion of co-solution cycles that are removable and whose deletion keeps
/// every other remaining co-solution cycle removable.
pub fn decide_with(
    g: &Graph,
    cfg: &SolutionConfig,
    opts: DecideOptions,
) -> Result<Decision, DecideError> {
    let mut trace = TraceLog::new();
    let reject = |mut trace: TraceLog, reason| {
        trace.push(TraceEvent::Rejected { reason });
        Ok(Decision {
            verdict: Verdict::NonHamiltonian { reason },
            trace,
        })
    };

    if !g.is_connected() {
        return reject(trace, NonHamiltonianReason::Disconnected);
    }
    let pool = CyclePool::build(g, cfg.pool)?;
    trace.pool_size = pool.len();
    trace.push(TraceEvent::PoolBuilt {
        pool_id: pool.id.clone(),
        cycles: pool.cycles.iter().map(|c| c.walk().to_vec()).collect(),
        weight: pool.cycles.iter().map(|c| c.weight(g)).sum(),
    });

    let set = enumerate_solutions(&pool, g.n(), cfg)?;
    trace.push(TraceEvent::SolutionsEnumerated {
        target: set.target,
        count: set.solutions.len(),
        truncated: set.truncated,
    });
    if set.solutions.is_empty() {
        return reject(trace, NonHamiltonianReason::NoSolution);
    }

    trace.reconstructed_removability = true;
    let witness = prop31_witness(&pool.cycles, g);
    trace.push(TraceEvent::Prop31Checked { witness });
    if witness.is_some() {
        return reject(trace, NonHamiltonianReason::Prop31);
    }
    let vertex = prop32_violation(&edge_multiplicities(&pool.cycles, g), g);
    trace.push(TraceEvent::Prop32Checked {
        vertex,
        fatal: opts.prop32_fatal,
    });
    if vertex.is_some() && opts.prop32_fatal {
        return reject(trace, NonHamiltonianReason::Prop32);
    }
    let witness = if set.truncated {
        None
    } else {
        lemma31_check(&pool.cycles, &set.solutions, g)
    };
    trace.push(TraceEvent::Lemma31Checked {
        witness,
        skipped_for_truncation: set.truncated,
    });
    if witness.is_some() {
        return reject(trace, NonHamiltonianReason::Lemma31);
    }

    for (si, sol) in set.solutions.iter().enumerate() {
        trace.push(TraceEvent::SolutionStarted {
            solution_index: si,
            solution: sol.solution.clone(),
            cosolution: sol.cosolution.clone(),
        });
        let mut ws = WorkingSet::new(g, &pool.cycles);
        let mut co = sol.cosolution.clone();
        let mut stuck = false;
        while !co.is_empty() {
            match deletable(&ws, &co) {
                Some(c) => {
                    ws.remove(c);
                    co.retain(|&x| x != c);
                    trace.push(TraceEvent::Deleted {
                        solution_index: si,
                        cycle: c,
                    });
                }
                None => {
                    trace.push(TraceEvent::SolutionStuck {
                        solution_index: si,
                        remaining: co.clone(),
                        blockers: blockers(&ws, &co),
                    });
                    stuck = true;
                    break;
                }
            }
        }
        if stuck {
            continue;
        }

        let remaining = ws.active_indices();
        let cycles: Vec<Cycle> = remaining.iter().map(|&i| pool.cycles[i].clone()).collect();
        let sum = xor_all(g, &cycles)?;
        let certificate = cycle_from_edge_set(&sum, g)
            .ok()
            .map(|c| Certificate::from_cycle(&c))
            .filter(|cert| verify_certificate(g, cert));
        trace.push(TraceEvent::XorResult {
            solution_index: si,
            edges: sum.iter().collect(),
            hamilton_cycle: certificate.is_some(),
        });
        trace.final_remaining = Some(remaining);
        let verdict = match certificate {
            Some(certificate) => Verdict::Hamiltonian { certificate },
            None => Verdict::ClaimedHamiltonianUnverified,
        };
        return Ok(Decision { verdict, trace });
    }
    reject(trace, NonHamiltonianReason::StuckDeletion)
}

// Lowest-index co-solution cycle that is removable and whose deletion keeps
// every other remaining co-solution cycle removable.
fn deletable(ws: &WorkingSet<'_>, co: &[usize]) -> Option<usize> {
    co.iter().copied().find(|&c| {
        if !ws.is_removable(c) {
            return false;
        }
        let mut after = ws.clone();
        after.remove(c);
        co.iter().all(|&d| d == c || after.is_removable(d))
    })
}

fn blockers(ws: &WorkingSet<'_>, co: &[usize]) -> Vec<(usize, Blocker)> {
    co.iter()
        .map(|&c| {
            let blocker = match ws.first_reason(c) {
                Some(reason) => Blocker::Irremovable { reason },
                None => {
                    let mut after = ws.clone();
                    after.remove(c);
                    let cycle = co
                        .iter()
                        .copied()
                        .find(|&d| d != c && !after.is_removable(d))
                        .expect("a removable cycle that is not deletable breaks another");
                    Blocker::BreaksRemovabilityOf { cycle }
                }
            };
            (c, blocker)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grinberg::PoolKind;
    use crate::testing::{complete, cycle, fan, petersen, wheel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Fix vertex 0 first and try every ordering of the rest.
    fn brute_hamiltonian(g: &Graph) -> bool {
        fn go(g: &Graph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let n = g.n();
            if path.len() == n {
                return g.edge_between(path[n - 1], path[0]).is_some();
            }
            for v in 1..n {
                if !used[v] && g.edge_between(*path.last().unwrap(), v).is_some() {
                    used[v] = true;
                    path.push(v);
                    if go(g, path, used) {
                        return true;
                    }
                    path.pop();
                    used[v] = false;
                }
            }
            false
        }
        if g.n() < 3 {
            return false;
        }
        let mut used = vec![false; g.n()];
        used[0] = true;
        go(g, &mut vec![0], &mut used)
    }

    fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((i, j));
                }
            }
        }
        Graph::new(n, &pairs).unwrap()
    }

    #[test]
    fn oracle_on_small_families() {
        for n in 3..10 {
            let cert = oracle_hamiltonian(&cycle(n), None).unwrap().unwrap();
            assert!(verify_certificate(&cycle(n), &cert));
        }
        let cert = oracle_hamiltonian(&complete(4), None).unwrap().unwrap();
        assert_eq!(cert.walk.len(), 4);
        assert!(verify_certificate(&complete(4), &cert));
        assert_eq!(oracle_hamiltonian(&petersen(), None), Ok(None));
        assert!(!brute_hamiltonian(&petersen()));
    }

    #[test]
    fn oracle_matches_permutation_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..300 {
            let n = 3 + i % 6;
            let p = [0.3, 0.5, 0.8][i % 3];
            let g = random_graph(n, p, &mut rng);
            let got = oracle_hamiltonian(&g, None).unwrap();
            assert_eq!(got.is_some(), brute_hamiltonian(&g), "{:?}", g.pairs());
            if let Some(c) = got {
                assert!(verify_certificate(&g, &c));
            }
        }
    }

    #[test]
    fn oracle_budget_is_reported() {
        assert_eq!(
            oracle_hamiltonian(&petersen(), Some(1)),
            Err(OracleError::BudgetExceeded { nodes: 1 })
        );
    }

    #[test]
    fn certificate_checks() {
        let k5 = complete(5);
        let cert = oracle_hamiltonian(&k5, None).unwrap().unwrap();
        assert!(verify_certificate(&k5, &cert));
        assert!(!verify_certificate(
            &k5,
            &Certificate {
                walk: vec![0, 1, 2, 3]
            }
        ));
        let c5 = cycle(5);
        assert!(!verify_certificate(
            &c5,
            &Certificate {
                walk: vec![0, 2, 1, 3, 4]
            }
        ));
        assert!(!verify_certificate(
            &c5,
            &Certificate {
                walk: vec![0, 1, 2, 3, 3]
            }
        ));
    }

    #[test]
    fn xor_examples() {
        let g = fan(6);
        let tris: Vec<Cycle> = simple_tris(&g);
        assert_eq!(tris.len(), 4);
        let sum = xor_all(&g, &tris).unwrap();
        let outer = Cycle::from_walk(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(&sum, outer.edges());
        let c = tris[0].clone();
        assert!(xor_all(&g, &[c.clone(), c.clone()]).unwrap().is_empty());
        assert_eq!(&xor_all(&g, std::slice::from_ref(&c)).unwrap(), c.edges());
        assert!(xor_all(&g, &[]).unwrap().is_empty());
    }

    fn simple_tris(g: &Graph) -> Vec<Cycle> {
        crate::cycle_space::simple_cycles(g, Some(3))
    }

    #[test]
    fn c5_is_hamiltonian_without_deletions() {
        let g = cycle(5);
        let d = decide(&g, &SolutionConfig::default()).unwrap();
        match &d.verdict {
            Verdict::Hamiltonian { certificate } => {
                assert_eq!(certificate.walk, vec![0, 1, 2, 3, 4])
            }
            v => panic!("{v:?}"),
        }
        assert!(!d
            .trace
            .events
            .iter()
            .any(|e| matches!(e, TraceEvent::Deleted { .. })));
    }

    #[test]
    fn petersen_has_no_solution() {
        let d = decide(&petersen(), &SolutionConfig::default()).unwrap();
        assert_eq!(
            d.verdict,
            Verdict::NonHamiltonian {
                reason: NonHamiltonianReason::NoSolution
            }
        );
        assert_eq!(d.trace.solution_count(), Some(0));
    }

    #[test]
    fn wheel_deletes_one_triangle() {
        let g = wheel(5);
        let d = decide(&g, &SolutionConfig::default()).unwrap();
        let TraceEvent::PoolBuilt { cycles, .. } = &d.trace.events[0] else {
            panic!()
        };
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|c| c.len() == 3 && c[0] == 0));
        assert!(d.verdict.is_hamiltonian(), "{:?}", d.verdict);
        let deleted: Vec<_> = d
            .trace
            .events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Deleted { .. }))
            .collect();
        assert_eq!(deleted.len(), 1);
        assert_eq!(d.trace.final_remaining.as_ref().unwrap().len(), 3);
    }

    #[test]
    fn disconnected_is_rejected_first() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let d = decide(&g, &SolutionConfig::default()).unwrap();
        assert_eq!(
            d.verdict,
            Verdict::NonHamiltonian {
                reason: NonHamiltonianReason::Disconnected
            }
        );
        assert_eq!(d.trace.events.len(), 1);
    }

    #[test]
    fn prop32_is_fatal_only_on_request() {
        // the MCB puts three R_1 edges on one vertex, yet deletion succeeds
        let g = Graph::new(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
            ],
        )
        .unwrap();
        let cfg = SolutionConfig::default();
        let lax = decide(&g, &cfg).unwrap();
        assert!(lax.verdict.is_hamiltonian());
        assert!(lax.trace.events.iter().any(|e| matches!(
            e,
            TraceEvent::Prop32Checked {
                vertex: Some(_),
                fatal: false
            }
        )));
        let strict = decide_with(&g, &cfg, DecideOptions { prop32_fatal: true }).unwrap();
        assert_eq!(
            strict.verdict,
            Verdict::NonHamiltonian {
                reason: NonHamiltonianReason::Prop32
            }
        );
    }

    #[test]
    fn decide_is_deterministic_and_replayable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..60 {
            let g = random_graph(4 + i % 4, 0.6, &mut rng);
            for pool in [PoolKind::Mcb, PoolKind::AllCyclesUpTo(g.n())] {
                let cfg = SolutionConfig {
                    pool,
                    ..Default::default()
                };
                let a = decide(&g, &cfg).unwrap();
                let b = decide(&g, &cfg).unwrap();
                assert_eq!(a, b);
                if let Verdict::Hamiltonian { certificate } = &a.verdict {
                    assert!(verify_certificate(&g, certificate));
                }
                assert_eq!(a.trace.replay(), a.trace.final_remaining);
            }
        }
    }
}
