//! Spanner verification, critical arcs, and exact/greedy solvers for the
//! problem of deleting as many arcs as possible while every finite distance
//! `d` stays within `bound_at(d)`.
//!
//! Validity is antitone in the deleted set: deleting more arcs never shortens
//! a distance, so once a set violates the bound every superset does too. Both
//! solvers rely on this to check only the sources whose distances a new
//! deletion can affect.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bound::{Rational, SpannerBound};
use crate::error::{Error, Result};
use crate::graph::{Arc, ArcSet, DirectedGraph, Distance, DistanceMatrix, Vertex};

pub const DEFAULT_MAX_CANDIDATES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest number of non-critical arcs the exact solver will search over.
    pub max_candidates: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpannerSolution {
    pub k_max: usize,
    pub witness: ArcSet,
}

/// A pair whose distance after deletion exceeds the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub source: Vertex,
    pub target: Vertex,
    pub original: u32,
    pub spanner: Distance,
    pub bound: Rational,
}

/// Precomputed distances and integer caps of one `(graph, bound)` pair.
struct Checker<'g> {
    graph: &'g DirectedGraph,
    base: DistanceMatrix,
    // cap_by_distance[d] = floor(bound_at(d)), index 0 unused
    cap_by_distance: Vec<u64>,
    // reachers[u] = sources with a finite distance to u (u itself included)
    reachers: Vec<Vec<Vertex>>,
}

struct Scratch {
    dist: Vec<Distance>,
    queue: VecDeque<Vertex>,
}

impl<'g> Checker<'g> {
    fn new(graph: &'g DirectedGraph, bound: &SpannerBound) -> Self {
        let base = graph.all_pairs_distances();
        let max_d = base.max_finite() as u64;
        let cap_by_distance = std::iter::once(0)
            .chain((1..=max_d).map(|d| bound.cap(d).expect("d >= 1")))
            .collect();
        let n = graph.vertex_count();
        let mut reachers = vec![Vec::new(); n];
        for x in 0..n {
            for (u, d) in base.row(x).iter().enumerate() {
                if d.is_finite() {
                    reachers[u].push(x);
                }
            }
        }
        Checker {
            graph,
            base,
            cap_by_distance,
            reachers,
        }
    }

    fn scratch(&self) -> Scratch {
        Scratch {
            dist: vec![Distance::Infinite; self.graph.vertex_count()],
            queue: VecDeque::new(),
        }
    }

    fn pair_ok(&self, original: Distance, now: Distance) -> bool {
        match (original, now) {
            (Distance::Infinite, _) | (Distance::Finite(0), _) => true,
            (Distance::Finite(_), Distance::Infinite) => false,
            (Distance::Finite(d), Distance::Finite(h)) => h as u64 <= self.cap_by_distance[d as usize],
        }
    }

    fn base_feasible(&self) -> bool {
        (0..self.graph.vertex_count()).all(|x| self.base.row(x).iter().all(|&d| self.pair_ok(d, d)))
    }

    fn source_ok(&self, x: Vertex, removed: &[bool], s: &mut Scratch) -> bool {
        self.graph.bfs_masked(x, Some(removed), &mut s.dist, &mut s.queue);
        self.base
            .row(x)
            .iter()
            .zip(&s.dist)
            .all(|(&orig, &now)| self.pair_ok(orig, now))
    }

    /// Checks only the sources that can reach the tail of `arc` in the
    /// original graph; all other distances are unaffected by deleting it.
    fn ok_after_deleting(&self, arc: Arc, removed: &[bool], s: &mut Scratch) -> bool {
        self.reachers[arc.tail].iter().all(|&x| self.source_ok(x, removed, s))
    }

    fn ok_all(&self, removed: &[bool], s: &mut Scratch) -> bool {
        (0..self.graph.vertex_count()).all(|x| self.source_ok(x, removed, s))
    }

    fn mask(&self, f: &ArcSet) -> Result<Vec<bool>> {
        let mut removed = vec![false; self.graph.arc_count()];
        for &a in f {
            let idx = self.graph.arc_index(a).ok_or(Error::MissingArc(a))?;
            removed[idx] = true;
        }
        Ok(removed)
    }
}

/// True iff `graph - f` keeps every finite distance `d` within `bound_at(d)`.
pub fn is_spanner(graph: &DirectedGraph, f: &ArcSet, bound: &SpannerBound) -> Result<bool> {
    let checker = Checker::new(graph, bound);
    let removed = checker.mask(f)?;
    Ok(checker.ok_all(&removed, &mut checker.scratch()))
}

/// Every pair violating the bound in `graph - f`, in `(source, target)` order.
pub fn violations(graph: &DirectedGraph, f: &ArcSet, bound: &SpannerBound) -> Result<Vec<Violation>> {
    let checker = Checker::new(graph, bound);
    let removed = checker.mask(f)?;
    let mut s = checker.scratch();
    let mut out = Vec::new();
    for x in 0..graph.vertex_count() {
        graph.bfs_masked(x, Some(&removed), &mut s.dist, &mut s.queue);
        for (y, (&orig, &now)) in checker.base.row(x).iter().zip(&s.dist).enumerate() {
            if !checker.pair_ok(orig, now) {
                let d = orig.finite().expect("only finite pairs are constrained");
                out.push(Violation {
                    source: x,
                    target: y,
                    original: d,
                    spanner: now,
                    bound: bound.bound_at(d as u64)?,
                });
            }
        }
    }
    Ok(out)
}

/// Any deleted arc `(u, v)` leaves `dist(u, v) >= 2`, so with a threshold
/// below 2 no non-empty set can be deleted.
pub fn trivial_no(bound: &SpannerBound, k: usize) -> bool {
    k >= 1 && bound.threshold() < crate::bound::int(2)
}

/// Arcs whose deletion alone already violates the bound. No valid deletion
/// set contains one.
pub fn critical_arcs(graph: &DirectedGraph, bound: &SpannerBound) -> ArcSet {
    let checker = Checker::new(graph, bound);
    critical_with(&checker)
}

fn critical_with(checker: &Checker<'_>) -> ArcSet {
    let graph = checker.graph;
    let mut removed = vec![false; graph.arc_count()];
    let mut s = checker.scratch();
    let mut critical = ArcSet::new();
    for (idx, &a) in graph.arcs().iter().enumerate() {
        removed[idx] = true;
        if !checker.ok_after_deleting(a, &removed, &mut s) {
            critical.insert(a);
        }
        removed[idx] = false;
    }
    critical
}

pub fn solve_exact(graph: &DirectedGraph, bound: &SpannerBound) -> Result<SpannerSolution> {
    solve_exact_with(graph, bound, &SolverConfig::default())
}

/// Maximum deletable arc set, searched over non-critical arcs only.
///
/// Arcs are tried in ascending order, inclusion first, so among all maximum
/// sets the lexicographically smallest is found first; branches that cannot
/// strictly beat the incumbent are cut.
pub fn solve_exact_with(graph: &DirectedGraph, bound: &SpannerBound, config: &SolverConfig) -> Result<SpannerSolution> {
    let checker = Checker::new(graph, bound);
    if !checker.base_feasible() {
        return Err(Error::Infeasible);
    }
    let critical = critical_with(&checker);
    let candidates: Vec<(Arc, usize)> = graph
        .arcs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !critical.contains(a))
        .map(|(idx, &a)| (a, idx))
        .collect();
    if candidates.len() > config.max_candidates {
        return Err(Error::Capacity {
            what: "non-critical candidate arc set",
            size: candidates.len(),
            limit: config.max_candidates,
        });
    }

    let mut search = Search {
        checker: &checker,
        candidates: &candidates,
        removed: vec![false; graph.arc_count()],
        chosen: Vec::new(),
        best: Vec::new(),
        scratch: checker.scratch(),
    };
    search.run(0);
    let witness: ArcSet = search.best.iter().copied().collect();
    Ok(SpannerSolution {
        k_max: witness.len(),
        witness,
    })
}

struct Search<'a, 'g> {
    checker: &'a Checker<'g>,
    candidates: &'a [(Arc, usize)],
    removed: Vec<bool>,
    chosen: Vec<Arc>,
    best: Vec<Arc>,
    scratch: Scratch,
}

impl Search<'_, '_> {
    fn run(&mut self, i: usize) {
        if self.chosen.len() + (self.candidates.len() - i) <= self.best.len() {
            return;
        }
        if i == self.candidates.len() {
            self.best.clone_from(&self.chosen);
            return;
        }
        let (arc, idx) = self.candidates[i];
        self.removed[idx] = true;
        if self.checker.ok_after_deleting(arc, &self.removed, &mut self.scratch) {
            self.chosen.push(arc);
            self.run(i + 1);
            self.chosen.pop();
        }
        self.removed[idx] = false;
        self.run(i + 1);
    }
}

/// Is there a valid deletion set of size at least `k`?
pub fn decide(graph: &DirectedGraph, bound: &SpannerBound, k: usize) -> Result<bool> {
    decide_with(graph, bound, k, &SolverConfig::default())
}

pub fn decide_with(graph: &DirectedGraph, bound: &SpannerBound, k: usize, config: &SolverConfig) -> Result<bool> {
    if trivial_no(bound, k) || k > graph.arc_count() {
        return Ok(false);
    }
    if k == 0 {
        return is_spanner(graph, &ArcSet::new(), bound);
    }
    match solve_exact_with(graph, bound, config) {
        Ok(sol) => Ok(sol.k_max >= k),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Deletes arcs greedily in ascending `(tail, head)` order, keeping each
/// deletion that leaves the graph a valid spanner.
pub fn solve_greedy(graph: &DirectedGraph, bound: &SpannerBound) -> Result<ArcSet> {
    let checker = Checker::new(graph, bound);
    if !checker.base_feasible() {
        return Err(Error::Infeasible);
    }
    let mut removed = vec![false; graph.arc_count()];
    let mut s = checker.scratch();
    let mut kept = ArcSet::new();
    for (idx, &a) in graph.arcs().iter().enumerate() {
        removed[idx] = true;
        if checker.ok_after_deleting(a, &removed, &mut s) {
            kept.insert(a);
        } else {
            removed[idx] = false;
        }
    }
    Ok(kept)
}
