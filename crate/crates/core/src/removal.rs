//! Edge multiplicities over a working set of cycles, the three Hamilton-cycle
//! construction rules as a constraint propagator, and removable-cycle
//! analysis.
//!
//! Rules enforced by [`propagate_rules`]:
//!
//! 1. a vertex with exactly two usable edges uses both;
//! 2. required edges never close a cycle on fewer than `n` vertices;
//! 3. a vertex with two required edges forbids the rest.
//!
//! A cycle of a working set is *removable* when deleting it keeps every
//! vertex covered, leaves no vertex with three or more edges of multiplicity
//! one, and the multiplicity-one edges of what remains do not contradict the
//! rules.

use serde::Serialize;

use crate::cycle_space::{Cycle, EdgeSet};
use crate::error::RemovalError;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::grinberg::GrinbergSolution;

/// Per-edge count of working-set cycles through the edge (`R_i` means a count
/// of `i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityMap {
    counts: Vec<u32>,
}

impl MultiplicityMap {
    #[inline]
    pub fn get(&self, e: EdgeId) -> u32 {
        self.counts[e]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Edges whose count is exactly `i`.
    pub fn with_count(&self, i: u32) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.counts.len()).filter(move |&e| self.counts[e] == i)
    }

    /// Number of `R_1` edges incident to `v`.
    pub fn r1_degree(&self, g: &Graph, v: VertexId) -> usize {
        g.incident(v)
            .iter()
            .filter(|&&(_, e)| self.counts[e] == 1)
            .count()
    }
}

pub fn edge_multiplicities(working_set: &[Cycle], g: &Graph) -> MultiplicityMap {
    let mut counts = vec![0u32; g.m()];
    for c in working_set {
        for e in c.edges().iter() {
            counts[e] += 1;
        }
    }
    MultiplicityMap { counts }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexClass {
    /// Every incident working-set edge is `R_2`.
    Interior,
    /// Exactly two incident working-set edges, both `R_1`.
    Boundary,
    Mixed,
}

/// Classifies `v` by the multiplicities of its incident edges that lie on at
/// least one working-set cycle.
pub fn classify_vertex(
    v: VertexId,
    mm: &MultiplicityMap,
    g: &Graph,
) -> Result<VertexClass, RemovalError> {
    let counts: Vec<u32> = g
        .incident(v)
        .iter()
        .map(|&(_, e)| mm.get(e))
        .filter(|&c| c >= 1)
        .collect();
    if counts.is_empty() {
        return Err(RemovalError::IsolatedInSet { vertex: v });
    }
    Ok(if counts.iter().all(|&c| c == 2) {
        VertexClass::Interior
    } else if counts.len() == 2 && counts.iter().all(|&c| c == 1) {
        VertexClass::Boundary
    } else {
        VertexClass::Mixed
    })
}

/// Lowest vertex with three or more incident `R_1` edges.
pub fn prop32_violation(mm: &MultiplicityMap, g: &Graph) -> Option<VertexId> {
    (0..g.n()).find(|&v| mm.r1_degree(g, v) >= 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeStatus {
    Undecided,
    Required,
    Forbidden,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// A vertex has fewer than two usable edges.
    DegreeTwo,
    /// Required edges close a cycle missing some vertex.
    NoProperSubcycle,
    /// A vertex has more than two required edges.
    AtMostTwoRequired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Location {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Contradiction {
    pub rule: Rule,
    pub at: Location,
}

/// Per-edge decisions for a partially built Hamilton cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintState {
    status: Vec<EdgeStatus>,
}

impl ConstraintState {
    pub fn new(g: &Graph) -> Self {
        ConstraintState {
            status: vec![EdgeStatus::Undecided; g.m()],
        }
    }

    pub fn from_statuses(status: Vec<EdgeStatus>) -> Self {
        ConstraintState { status }
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> EdgeStatus {
        self.status[e]
    }

    #[inline]
    pub fn set(&mut self, e: EdgeId, s: EdgeStatus) {
        self.status[e] = s;
    }

    pub fn statuses(&self) -> &[EdgeStatus] {
        &self.status
    }

    pub fn with_status(&self, s: EdgeStatus) -> EdgeSet {
        EdgeSet::from_edges(
            self.status.len(),
            (0..self.status.len()).filter(|&e| self.status[e] == s),
        )
    }

    pub fn required(&self) -> EdgeSet {
        self.with_status(EdgeStatus::Required)
    }

    pub fn forbidden(&self) -> EdgeSet {
        self.with_status(EdgeStatus::Forbidden)
    }

    pub fn undecided_count(&self) -> usize {
        self.status
            .iter()
            .filter(|&&s| s == EdgeStatus::Undecided)
            .count()
    }
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    // Some(component size) if a and b were already joined
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Some(self.size[ra]);
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        None
    }
}

/// Applies the three rules until nothing changes. The result only adds
/// Required/Forbidden marks to the input.
pub fn propagate_rules(
    g: &Graph,
    state: &ConstraintState,
) -> Result<ConstraintState, Contradiction> {
    let mut out = state.clone();
    propagate_in_place(g, &mut out.status)?;
    Ok(out)
}

pub(crate) fn propagate_in_place(
    g: &Graph,
    status: &mut [EdgeStatus],
) -> Result<(), Contradiction> {
    use EdgeStatus::*;
    let n = g.n();
    loop {
        let mut changed = false;
        let mut dsu = Dsu::new(n);
        for (e, &s) in status.iter().enumerate() {
            if s == Required {
                let edge = g.edge(e);
                if let Some(size) = dsu.union(edge.u, edge.v) {
                    if size < n {
                        return Err(Contradiction {
                            rule: Rule::NoProperSubcycle,
                            at: Location::Edge(e),
                        });
                    }
                }
            }
        }
        for (e, s) in status.iter_mut().enumerate() {
            if *s == Undecided {
                let edge = g.edge(e);
                let (ru, rv) = (dsu.find(edge.u), dsu.find(edge.v));
                if ru == rv && dsu.size[ru] < n {
                    *s = Forbidden;
                    changed = true;
                }
            }
        }
        for v in 0..n {
            let (mut required, mut usable) = (0, 0);
            for &(_, e) in g.incident(v) {
                match status[e] {
                    Required => {
                        required += 1;
                        usable += 1;
                    }
                    Undecided => usable += 1,
                    Forbidden => {}
                }
            }
            if required > 2 {
                return Err(Contradiction {
                    rule: Rule::AtMostTwoRequired,
                    at: Location::Vertex(v),
                });
            }
            if usable < 2 {
                return Err(Contradiction {
                    rule: Rule::DegreeTwo,
                    at: Location::Vertex(v),
                });
            }
            if usable > required && (usable == 2 || required == 2) {
                let fill = if usable == 2 { Required } else { Forbidden };
                for &(_, e) in g.incident(v) {
                    if status[e] == Undecided {
                        status[e] = fill;
                    }
                }
                changed = true;
            }
        }

        if !changed {
            return Ok(());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RemovalReason {
    /// These vertices lie on no other working-set cycle.
    CoverageLoss { vertices: Vec<VertexId> },
    /// After removal this vertex has three or more `R_1` edges.
    Prop32 { vertex: VertexId },
    /// Seeding the rules with the remaining `R_1` edges fails.
    Rules(Contradiction),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovabilityReport {
    pub removable: bool,
    pub reasons: Vec<RemovalReason>,
}

/// A working set of cycles with incrementally maintained multiplicities and
/// vertex coverage. Cycles are referred to by their index in the backing
/// slice and are removed, never added.
#[derive(Debug, Clone)]
pub struct WorkingSet<'a> {
    g: &'a Graph,
    cycles: &'a [Cycle],
    active: Vec<bool>,
    mult: Vec<u32>,
    cover: Vec<u32>,
}

impl<'a> WorkingSet<'a> {
    pub fn new(g: &'a Graph, cycles: &'a [Cycle]) -> Self {
        let mut mult = vec![0u32; g.m()];
        let mut cover = vec![0u32; g.n()];
        for c in cycles {
            for e in c.edges().iter() {
                mult[e] += 1;
            }
            for &v in c.walk() {
                cover[v] += 1;
            }
        }
        WorkingSet {
            g,
            cycles,
            active: vec![true; cycles.len()],
            mult,
            cover,
        }
    }

    pub fn cycles(&self) -> &'a [Cycle] {
        self.cycles
    }

    pub fn is_active(&self, idx: usize) -> bool {
        self.active[idx]
    }

    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.cycles.len()).filter(|&i| self.active[i]).collect()
    }

    pub fn active_cycles(&self) -> Vec<Cycle> {
        self.active_indices()
            .into_iter()
            .map(|i| self.cycles[i].clone())
            .collect()
    }

    pub fn multiplicities(&self) -> MultiplicityMap {
        MultiplicityMap {
            counts: self.mult.clone(),
        }
    }

    pub fn remove(&mut self, idx: usize) {
        assert!(self.active[idx], "cycle {idx} already removed");
        self.active[idx] = false;
        let c = &self.cycles[idx];
        for e in c.edges().iter() {
            self.mult[e] -= 1;
        }
        for &v in c.walk() {
            self.cover[v] -= 1;
        }
    }

    fn mult_without(&self, idx: usize) -> Vec<u32> {
        let mut mult = self.mult.clone();
        for e in self.cycles[idx].edges().iter() {
            mult[e] -= 1;
        }
        mult
    }

    fn prop32_after(&self, mult: &[u32]) -> Option<VertexId> {
        (0..self.g.n()).find(|&v| {
            self.g
                .incident(v)
                .iter()
                .filter(|&&(_, e)| mult[e] == 1)
                .count()
                >= 3
        })
    }

    fn rules_after(&self, mult: &[u32]) -> Result<(), Contradiction> {
        let mut status: Vec<EdgeStatus> = mult
            .iter()
            .map(|&c| match c {
                0 => EdgeStatus::Forbidden,
                1 => EdgeStatus::Required,
                _ => EdgeStatus::Undecided,
            })
            .collect();
        propagate_in_place(self.g, &mut status)
    }

    /// All three removability checks for active cycle `idx`.
    pub fn report(&self, idx: usize) -> RemovabilityReport {
        assert!(self.active[idx], "cycle {idx} is not in the working set");
        let mut reasons = Vec::new();
        let lost: Vec<VertexId> = self.cycles[idx]
            .walk()
            .iter()
            .copied()
            .filter(|&v| self.cover[v] == 1)
            .collect();
        if !lost.is_empty() {
            let mut vertices = lost;
            vertices.sort_unstable();
            reasons.push(RemovalReason::CoverageLoss { vertices });
        }
        let mult = self.mult_without(idx);
        if let Some(vertex) = self.prop32_after(&mult) {
            reasons.push(RemovalReason::Prop32 { vertex });
        }
        if let Err(c) = self.rules_after(&mult) {
            reasons.push(RemovalReason::Rules(c));
        }
        RemovabilityReport {
            removable: reasons.is_empty(),
            reasons,
        }
    }

    /// Same verdict as [`WorkingSet::report`], stopping at the first failed
    /// check.
    pub fn is_removable(&self, idx: usize) -> bool {
        debug_assert!(self.active[idx]);
        if self.cycles[idx].walk().iter().any(|&v| self.cover[v] == 1) {
            return false;
        }
        let mult = self.mult_without(idx);
        self.prop32_after(&mult).is_none() && self.rules_after(&mult).is_ok()
    }

    /// First failed check for `idx`, if any.
    pub fn first_reason(&self, idx: usize) -> Option<RemovalReason> {
        self.report(idx).reasons.into_iter().next()
    }
}

fn position_of(c: &Cycle, working_set: &[Cycle]) -> Result<usize, RemovalError> {
    working_set
        .iter()
        .position(|x| x.edges() == c.edges())
        .ok_or(RemovalError::CycleNotInSet)
}

/// Whether `c` can be deleted from `working_set`, with every failed check.
pub fn is_removable(
    c: &Cycle,
    working_set: &[Cycle],
    g: &Graph,
) -> Result<RemovabilityReport, RemovalError> {
    let idx = position_of(c, working_set)?;
    Ok(WorkingSet::new(g, working_set).report(idx))
}

/// Three irremovable cycles, each carrying an `R_1` edge, that pairwise
/// share a vertex. Returns the lexicographically first such triple.
pub fn prop31_witness(working_set: &[Cycle], g: &Graph) -> Option<[usize; 3]> {
    if working_set.len() < 3 {
        return None;
    }
    let ws = WorkingSet::new(g, working_set);
    let candidates: Vec<usize> = (0..working_set.len())
        .filter(|&i| working_set[i].edges().iter().any(|e| ws.mult[e] == 1))
        .filter(|&i| !ws.is_removable(i))
        .collect();
    let words = g.n().div_ceil(64);
    let vertex_bits: Vec<Vec<u64>> = candidates
        .iter()
        .map(|&i| {
            let mut b = vec![0u64; words];
            for &v in working_set[i].walk() {
                b[v / 64] |= 1 << (v % 64);
            }
            b
        })
        .collect();
    let meet = |a: usize, b: usize| {
        vertex_bits[a]
            .iter()
            .zip(&vertex_bits[b])
            .any(|(x, y)| x & y != 0)
    };
    let k = candidates.len();
    for a in 0..k {
        for b in a + 1..k {
            if !meet(a, b) {
                continue;
            }
            for c in b + 1..k {
                if meet(a, c) && meet(b, c) {
                    return Some([candidates[a], candidates[b], candidates[c]]);
                }
            }
        }
    }
    None
}

pub fn prop31_violation(working_set: &[Cycle], g: &Graph) -> bool {
    prop31_witness(working_set, g).is_some()
}

/// With a unique solution over `working_set` and no removable cycle in it,
/// returns the lowest-index co-solution cycle all of whose edges lie on two
/// or more working-set cycles.
pub fn lemma31_check(
    working_set: &[Cycle],
    solutions: &[GrinbergSolution],
    g: &Graph,
) -> Option<usize> {
    let [only] = solutions else {
        return None;
    };
    let ws = WorkingSet::new(g, working_set);
    let witness = only
        .cosolution
        .iter()
        .copied()
        .find(|&i| working_set[i].edges().iter().all(|e| ws.mult[e] >= 2))?;
    if (0..working_set.len()).any(|i| ws.is_removable(i)) {
        return None;
    }
    Some(witness)
}
