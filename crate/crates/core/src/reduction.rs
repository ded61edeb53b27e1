//! Reduction from Dominating Set to the directed spanner problem, the two
//! witness translations, and an equivalence checker built on both exact
//! solvers.
//!
//! For `G` on vertices `v_1..v_n` the digraph `D` has a hub `w` and four
//! copies `R_l, R_c, R_r, B` of `V(G)`. Every vertex contributes the arcs
//!
//! ```text
//! w -> R_l[i], w -> R_c[i], w -> B[i], R_l[i] -> R_c[i], R_c[i] -> R_r[i], R_r[i] -> B[i]
//! ```
//!
//! and every edge `{v_i, v_j}` contributes `R_r[i] -> B[j]` and `R_r[j] -> B[i]`.
//! With `t = bound_at(1)`, the arc `R_c[i] -> R_r[i]` is contracted when
//! `floor(t) = 2`, kept when `floor(t) = 3`, and subdivided `floor(t) - 3`
//! times when `floor(t) >= 4`, so that `dist(R_c[i], R_r[i]) = floor(t) - 2`.
//! The budget is `k = 2n - l`.
//!
//! Only the arcs `w -> R_c[i]` and `w -> B[i]` are ever deletable. Deleting
//! `w -> R_c[i]` for every `v_i` outside a dominating set `X`, together with
//! all `w -> B[i]`, is a valid spanner; conversely the kept `w -> R_c[i]` arcs
//! of any valid deletion set, plus the vertices they leave undominated, form
//! a dominating set of size at most `2n - |F|`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::bound::{floor_u64, int, Rational, SpannerBound};
use crate::domset::{is_dominating, solve_exact_domset_with, DomSetConfig, DomSetWitness};
use crate::error::{Error, Result};
use crate::format::parse_graph_text;
use crate::graph::{Arc, ArcSet, DirectedGraph, Distance, UndirectedGraph, Vertex};
use crate::spanner::{is_spanner, solve_exact_with, SolverConfig};

/// Role of a vertex of the reduced digraph. Source indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Layer {
    Hub,
    Left(usize),
    Center(usize),
    Right(usize),
    /// `R_c[i]` and `R_r[i]` after contraction.
    Merged(usize),
    Bottom(usize),
    /// Interior vertex of the subdivided `R_c[i] -> R_r[i]` path, numbered
    /// from 1 on the `R_c` side.
    Subdivision {
        source: usize,
        position: usize,
    },
}

impl Layer {
    pub fn source(self) -> Option<usize> {
        match self {
            Layer::Hub => None,
            Layer::Left(i) | Layer::Center(i) | Layer::Right(i) | Layer::Merged(i) | Layer::Bottom(i) => Some(i),
            Layer::Subdivision { source, .. } => Some(source),
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Layer::Hub => f.write_str("W"),
            Layer::Left(i) => write!(f, "RL({})", i + 1),
            Layer::Center(i) => write!(f, "RC({})", i + 1),
            Layer::Right(i) => write!(f, "RR({})", i + 1),
            Layer::Merged(i) => write!(f, "RCR({})", i + 1),
            Layer::Bottom(i) => write!(f, "B({})", i + 1),
            Layer::Subdivision { source, position } => write!(f, "SUBDIV({},{})", source + 1, position),
        }
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "W" {
            return Ok(Layer::Hub);
        }
        let (name, args) = s
            .strip_suffix(')')
            .and_then(|r| r.split_once('('))
            .ok_or_else(|| format!("malformed layer label `{s}`"))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| format!("malformed layer label `{s}`"))?;
        let index = |k: usize| -> std::result::Result<usize, String> {
            if nums.len() != k || nums[0] == 0 {
                Err(format!("malformed layer label `{s}`"))
            } else {
                Ok(nums[0] - 1)
            }
        };
        Ok(match name {
            "RL" => Layer::Left(index(1)?),
            "RC" => Layer::Center(index(1)?),
            "RR" => Layer::Right(index(1)?),
            "RCR" => Layer::Merged(index(1)?),
            "B" => Layer::Bottom(index(1)?),
            "SUBDIV" => {
                let source = index(2)?;
                if nums[1] == 0 {
                    return Err(format!("subdivision positions start at 1 in `{s}`"));
                }
                Layer::Subdivision {
                    source,
                    position: nums[1],
                }
            }
            _ => return Err(format!("unknown layer `{name}`")),
        })
    }
}

/// Output of [`reduce`]: the digraph with its layer labelling and budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    graph: DirectedGraph,
    bound: SpannerBound,
    budget_k: usize,
    source_n: usize,
    labels: Vec<Layer>,
    index: LayerIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct LayerIndex {
    hub: Vertex,
    left: Vec<Vertex>,
    center: Vec<Vertex>,
    right: Vec<Vertex>,
    bottom: Vec<Vertex>,
    merged: bool,
}

fn invariant(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}

impl LayerIndex {
    fn build(labels: &[Layer]) -> Result<(usize, Self)> {
        let n = labels
            .iter()
            .filter_map(|l| l.source())
            .map(|i| i + 1)
            .max()
            .unwrap_or(0);
        let mut hub = None;
        let mut slots: [Vec<Option<Vertex>>; 5] = std::array::from_fn(|_| vec![None; n]);
        let mut subdivisions: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (v, &label) in labels.iter().enumerate() {
            let slot = match label {
                Layer::Hub => {
                    if hub.replace(v).is_some() {
                        return Err(invariant("more than one W vertex"));
                    }
                    continue;
                }
                Layer::Subdivision { source, position } => {
                    if !subdivisions.entry(source).or_default().insert(position) {
                        return Err(invariant(format!("duplicate label {label}")));
                    }
                    continue;
                }
                Layer::Left(i) => (0, i),
                Layer::Center(i) => (1, i),
                Layer::Right(i) => (2, i),
                Layer::Bottom(i) => (3, i),
                Layer::Merged(i) => (4, i),
            };
            if slots[slot.0][slot.1].replace(v).is_some() {
                return Err(invariant(format!("duplicate label {label}")));
            }
        }
        let hub = hub.ok_or_else(|| invariant("no W vertex"))?;
        let [left, center, right, bottom, merged] = slots;
        let merged_case = merged.iter().any(Option::is_some);
        let mut index = LayerIndex {
            hub,
            left: Vec::with_capacity(n),
            center: Vec::with_capacity(n),
            right: Vec::with_capacity(n),
            bottom: Vec::with_capacity(n),
            merged: merged_case,
        };
        for i in 0..n {
            let need = |slot: &Vec<Option<Vertex>>, name: &str| {
                slot[i].ok_or_else(|| invariant(format!("missing {name}({}) vertex", i + 1)))
            };
            index.left.push(need(&left, "RL")?);
            index.bottom.push(need(&bottom, "B")?);
            if merged_case {
                if center[i].is_some() || right[i].is_some() {
                    return Err(invariant("merged and unmerged R_c/R_r labels mixed"));
                }
                let m = need(&merged, "RCR")?;
                index.center.push(m);
                index.right.push(m);
            } else {
                index.center.push(need(&center, "RC")?);
                index.right.push(need(&right, "RR")?);
            }
            if let Some(positions) = subdivisions.get(&i) {
                if merged_case || positions.iter().copied().ne(1..=positions.len()) {
                    return Err(invariant(format!("malformed subdivision labels for vertex {}", i + 1)));
                }
            }
        }
        Ok((n, index))
    }
}

impl ReducedInstance {
    /// Assembles an instance from parts, validating the labelling (not the
    /// structural invariants; see [`ReducedInstance::check_structure`]).
    pub fn from_parts(graph: DirectedGraph, bound: SpannerBound, budget_k: usize, labels: Vec<Layer>) -> Result<Self> {
        if labels.len() != graph.vertex_count() {
            return Err(invariant(format!(
                "{} labels for {} vertices",
                labels.len(),
                graph.vertex_count()
            )));
        }
        let (source_n, index) = LayerIndex::build(&labels)?;
        Ok(ReducedInstance {
            graph,
            bound,
            budget_k,
            source_n,
            labels,
            index,
        })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn bound(&self) -> &SpannerBound {
        &self.bound
    }

    pub fn budget_k(&self) -> usize {
        self.budget_k
    }

    pub fn source_n(&self) -> usize {
        self.source_n
    }

    pub fn labels(&self) -> &[Layer] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> Layer {
        self.labels[v]
    }

    pub fn hub(&self) -> Vertex {
        self.index.hub
    }

    pub fn left(&self, i: usize) -> Vertex {
        self.index.left[i]
    }

    /// `R_c[i]`, which is the merged vertex in the contraction case.
    pub fn center(&self, i: usize) -> Vertex {
        self.index.center[i]
    }

    /// `R_r[i]`, which is the merged vertex in the contraction case.
    pub fn right(&self, i: usize) -> Vertex {
        self.index.right[i]
    }

    pub fn bottom(&self, i: usize) -> Vertex {
        self.index.bottom[i]
    }

    pub fn is_contracted(&self) -> bool {
        self.index.merged
    }

    pub fn threshold(&self) -> Rational {
        self.bound.threshold()
    }

    /// `w -> R_c[i]`
    pub fn center_arc(&self, i: usize) -> Arc {
        Arc::new(self.hub(), self.center(i))
    }

    /// `w -> B[i]`
    pub fn bottom_arc(&self, i: usize) -> Arc {
        Arc::new(self.hub(), self.bottom(i))
    }

    /// The `2n` arcs that may appear in a valid deletion set.
    pub fn deletable_arcs(&self) -> ArcSet {
        (0..self.source_n)
            .flat_map(|i| [self.center_arc(i), self.bottom_arc(i)])
            .collect()
    }

    /// Lengths of all directed paths from `w` to `B[i]`.
    pub fn path_lengths_to_bottom(&self, i: usize) -> BTreeSet<usize> {
        fn walk(g: &DirectedGraph, u: Vertex, target: Vertex, depth: usize, out: &mut BTreeSet<usize>) {
            if u == target {
                out.insert(depth);
                return;
            }
            for v in g.out_neighbors(u) {
                walk(g, v, target, depth + 1, out);
            }
        }
        let mut lengths = BTreeSet::new();
        walk(&self.graph, self.hub(), self.bottom(i), 0, &mut lengths);
        lengths
    }

    /// Checks every structural property of a reduced instance. Requires an
    /// acyclic graph (checked first) since path enumeration walks all paths.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.source_n;
        let t = self.threshold();
        if t < int(2) {
            return Err(invariant("threshold below 2"));
        }
        let floor_t = floor_u64(&t) as u32;
        if !self.graph.is_acyclic() {
            return Err(invariant("reduced digraph has a directed cycle"));
        }
        let limit = int(4 * n as u64) + int(n as u64) * &t + int(1);
        if int(self.graph.vertex_count() as u64) > limit {
            return Err(invariant(format!(
                "{} vertices exceed 4n + n*t + 1",
                self.graph.vertex_count()
            )));
        }
        if self.budget_k > 2 * n {
            return Err(invariant(format!("budget {} exceeds 2n = {}", self.budget_k, 2 * n)));
        }
        let expected_arcs = 6 * n;
        let vertex_arcs = (0..n)
            .flat_map(|i| {
                [
                    (self.hub(), self.left(i)),
                    (self.hub(), self.center(i)),
                    (self.hub(), self.bottom(i)),
                    (self.left(i), self.center(i)),
                    (self.right(i), self.bottom(i)),
                ]
            })
            .filter(|&(u, v)| self.graph.has_arc(Arc::new(u, v)))
            .count();
        if vertex_arcs != expected_arcs - n {
            return Err(invariant("per-vertex gadget arcs are incomplete"));
        }
        let expected_core = floor_t - 2;
        let expected_paths: BTreeSet<usize> = [1, floor_t as usize, floor_t as usize + 1].into_iter().collect();
        for i in 0..n {
            let from_hub = self.graph.bfs_distances(self.hub())?;
            if from_hub[self.bottom(i)] != Distance::Finite(1) {
                return Err(invariant(format!("dist(W, B({})) != 1", i + 1)));
            }
            let core = self.graph.bfs_distances(self.center(i))?[self.right(i)];
            if core != Distance::Finite(expected_core) {
                return Err(invariant(format!(
                    "dist(R_c({0}), R_r({0})) = {core}, expected {expected_core}",
                    i + 1
                )));
            }
            let lengths = self.path_lengths_to_bottom(i);
            if lengths != expected_paths {
                return Err(invariant(format!(
                    "path lengths from W to B({}) are {lengths:?}, expected {expected_paths:?}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Text form: the digraph format plus `c bound`, `c layer` and `c budget`
    /// comment lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c bound {}", self.bound);
        out.push_str(&crate::format::write_directed(&self.graph));
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "c layer {} {}", v + 1, label);
        }
        let _ = writeln!(out, "c budget {}", self.budget_k);
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parsed = parse_graph_text(text)?;
        let graph = parsed.to_directed()?;
        let mut bound = None;
        let mut budget = None;
        let mut labels: Vec<Option<Layer>> = vec![None; graph.vertex_count()];
        let perr = |line: usize, message: String| Error::Parse { line, message };
        for (line, body) in &parsed.comments {
            let line = *line;
            let mut parts = body.splitn(2, ' ');
            match (parts.next(), parts.next()) {
                (Some("bound"), Some(spec)) => {
                    let b: SpannerBound = spec.parse().map_err(|e: Error| perr(line, e.to_string()))?;
                    if bound.replace(b).is_some() {
                        return Err(perr(line, "duplicate bound line".into()));
                    }
                }
                (Some("budget"), Some(k)) => {
                    let k = k
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| perr(line, format!("malformed budget `{k}`")))?;
                    if budget.replace(k).is_some() {
                        return Err(perr(line, "duplicate budget line".into()));
                    }
                }
                (Some("layer"), Some(rest)) => {
                    let (v, label) = rest
                        .trim()
                        .split_once(' ')
                        .ok_or_else(|| perr(line, "expected `c layer <vertex> <LABEL>`".into()))?;
                    let v: usize = v
                        .parse()
                        .ok()
                        .filter(|&v| v >= 1 && v <= labels.len())
                        .ok_or_else(|| perr(line, format!("layer vertex `{v}` out of range")))?;
                    let label: Layer = label.trim().parse().map_err(|e| perr(line, e))?;
                    if labels[v - 1].replace(label).is_some() {
                        return Err(perr(line, format!("vertex {v} labelled twice")));
                    }
                }
                _ => {}
            }
        }
        let bound = bound.ok_or_else(|| perr(0, "missing `c bound <spec>` line".into()))?;
        let budget = budget.ok_or_else(|| perr(0, "missing `c budget <k>` line".into()))?;
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| perr(0, format!("vertex {} has no layer label", v + 1))))
            .collect::<Result<Vec<_>>>()?;
        ReducedInstance::from_parts(graph, bound, budget, labels)
    }
}

/// Builds the reduced instance for `(g, l)` under `bound`.
///
/// Besides `t >= 2`, the bound must keep every detour one arc longer than the
/// original distance: a linear bound needs `f_alpha(1) >= 1`, a general bound
/// needs `f(d) >= d + 1` on every distance that occurs in the reduced digraph.
pub fn reduce(g: &UndirectedGraph, l: usize, bound: &SpannerBound) -> Result<ReducedInstance> {
    let n = g.vertex_count();
    let t = bound.threshold();
    if t < int(2) {
        return Err(Error::ThresholdBelowTwo {
            t: crate::bound::fmt_rational(&t),
        });
    }
    if l > n || (l == 0 && n > 0) {
        return Err(Error::BudgetOutOfRange { l, n });
    }
    let floor_t = floor_u64(&t);
    check_detour_condition(bound, floor_t)?;

    let hub = 0;
    let left = |i: usize| 1 + i;
    let center = |i: usize| 1 + n + i;
    let right = |i: usize| 1 + 2 * n + i;
    let bottom = |i: usize| 1 + 3 * n + i;
    let mut labels = vec![Layer::Hub];
    labels.extend((0..n).map(Layer::Left));
    labels.extend((0..n).map(Layer::Center));
    labels.extend((0..n).map(Layer::Right));
    labels.extend((0..n).map(Layer::Bottom));

    let mut arcs = Vec::with_capacity(6 * n + 2 * g.edge_count());
    for i in 0..n {
        arcs.extend([
            Arc::new(hub, left(i)),
            Arc::new(hub, center(i)),
            Arc::new(hub, bottom(i)),
            Arc::new(left(i), center(i)),
            Arc::new(center(i), right(i)),
            Arc::new(right(i), bottom(i)),
        ]);
    }
    for &(i, j) in g.edges() {
        arcs.push(Arc::new(right(i), bottom(j)));
        arcs.push(Arc::new(right(j), bottom(i)));
    }
    let mut graph = DirectedGraph::new(4 * n + 1, arcs)?;

    let position = |labels: &[Layer], target: Layer| labels.iter().position(|&l| l == target).expect("label present");
    match floor_t {
        2 => {
            for i in 0..n {
                let arc = Arc::new(position(&labels, Layer::Center(i)), position(&labels, Layer::Right(i)));
                let contraction = graph.contract_arc(arc)?;
                let mut next = vec![Layer::Hub; contraction.graph.vertex_count()];
                for (old, &new) in contraction.vertex_map.iter().enumerate() {
                    next[new] = labels[old];
                }
                next[contraction.merged] = Layer::Merged(i);
                graph = contraction.graph;
                labels = next;
            }
        }
        3 => {}
        _ => {
            let times = (floor_t - 3) as usize;
            for i in 0..n {
                graph = graph.subdivide_arc(Arc::new(center(i), right(i)), times)?;
                labels.extend((1..=times).map(|position| Layer::Subdivision { source: i, position }));
            }
        }
    }
    ReducedInstance::from_parts(graph, bound.clone(), 2 * n - l, labels)
}

fn check_detour_condition(bound: &SpannerBound, floor_t: u64) -> Result<()> {
    match bound {
        SpannerBound::Linear { alpha, .. } => {
            if alpha.evaluate(1)? < int(1) {
                return Err(Error::UnsupportedBound(format!(
                    "{bound}: the reduction needs f_alpha(1) >= 1"
                )));
            }
        }
        SpannerBound::General(f) => {
            // longest path in the reduced digraph: w, R_l, R_c, ..., R_r, B
            for d in 1..=floor_t + 1 {
                if f.evaluate(d)? < int(d + 1) {
                    return Err(Error::UnsupportedBound(format!(
                        "{bound}: the reduction needs f(d) >= d + 1, violated at d = {d}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn check_source(inst: &ReducedInstance, g: &UndirectedGraph) -> Result<()> {
    if g.vertex_count() != inst.source_n() {
        return Err(Error::Precondition(format!(
            "graph has {} vertices but the instance was built from {}",
            g.vertex_count(),
            inst.source_n()
        )));
    }
    Ok(())
}

/// Deletion set for a dominating set `x`: every `w -> B[i]`, plus
/// `w -> R_c[i]` for every `v_i` outside `x`.
pub fn forward_witness(inst: &ReducedInstance, g: &UndirectedGraph, x: &DomSetWitness) -> Result<ArcSet> {
    check_source(inst, g)?;
    if !is_dominating(g, x)? {
        return Err(Error::NotDominating);
    }
    let n = inst.source_n();
    Ok((0..n)
        .map(|i| inst.bottom_arc(i))
        .chain((0..n).filter(|&i| !x.contains(i)).map(|i| inst.center_arc(i)))
        .collect())
}

/// Dominating set for a valid deletion set `f` with `|f| >= k`: the vertices
/// whose `w -> R_c[i]` arc is kept, plus every vertex they leave undominated.
pub fn backward_witness(inst: &ReducedInstance, g: &UndirectedGraph, f: &ArcSet) -> Result<DomSetWitness> {
    check_source(inst, g)?;
    let n = inst.source_n();
    if let Some(&a) = f.iter().find(|a| !inst.graph().has_arc(**a)) {
        return Err(Error::MissingArc(a));
    }
    let allowed = inst.deletable_arcs();
    if let Some(a) = f.iter().find(|a| !allowed.contains(a)) {
        return Err(Error::InvariantViolation(format!(
            "deleted arc {} -> {} is neither W -> RC nor W -> B",
            inst.label(a.tail),
            inst.label(a.head)
        )));
    }
    if f.len() < inst.budget_k() {
        return Err(Error::Precondition(format!(
            "deletion set has {} arcs, budget is {}",
            f.len(),
            inst.budget_k()
        )));
    }
    if !is_spanner(inst.graph(), f, inst.bound())? {
        return Err(Error::Precondition("deletion set violates the spanner bound".into()));
    }
    let x: Vec<usize> = (0..n).filter(|&i| !f.contains(&inst.center_arc(i))).collect();
    let mut dominated = vec![false; n];
    for &v in &x {
        for u in g.closed_neighborhood(v) {
            dominated[u] = true;
        }
    }
    Ok(x.into_iter().chain((0..n).filter(|&i| !dominated[i])).collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceConfig {
    pub solver: SolverConfig,
    pub domset: DomSetConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    Disagree,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "detail")]
pub enum RoundTrip {
    NotApplicable,
    Passed,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub source_n: usize,
    pub l: usize,
    pub bound: String,
    pub reduced_vertices: usize,
    pub reduced_arcs: usize,
    pub budget_k: usize,
    /// Minimum dominating set size, when the solver finished.
    pub domination_number: Option<usize>,
    /// Maximum deletion set size, when the solver finished.
    pub k_max: Option<usize>,
    pub ds_answer: Option<bool>,
    pub spanner_answer: Option<bool>,
    pub agreement: Agreement,
    pub forward: RoundTrip,
    pub backward: RoundTrip,
}

impl EquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.agreement != Agreement::Disagree
            && !matches!(self.forward, RoundTrip::Failed(_))
            && !matches!(self.backward, RoundTrip::Failed(_))
    }
}

pub fn verify_equivalence(g: &UndirectedGraph, l: usize, bound: &SpannerBound) -> Result<EquivalenceReport> {
    verify_equivalence_with(g, l, bound, &EquivalenceConfig::default())
}

/// Decides `(g, l)` and its reduced instance independently, then on Yes
/// answers maps each side's witness across and re-verifies it.
///
/// Capacity errors from either solver make the report inconclusive; other
/// errors (an excluded bound, an out-of-range `l`) are returned.
pub fn verify_equivalence_with(
    g: &UndirectedGraph,
    l: usize,
    bound: &SpannerBound,
    config: &EquivalenceConfig,
) -> Result<EquivalenceReport> {
    let inst = reduce(g, l, bound)?;
    let k = inst.budget_k();

    let ds = match solve_exact_domset_with(g, &config.domset) {
        Ok(sol) => Some(sol),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    let sp = match solve_exact_with(inst.graph(), bound, &config.solver) {
        Ok(sol) => Some(sol),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e),
    };
    let ds_answer = ds.as_ref().map(|s| s.size <= l);
    let spanner_answer = sp.as_ref().map(|s| s.k_max >= k);
    let agreement = match (ds_answer, spanner_answer) {
        (Some(a), Some(b)) if a == b => Agreement::Agree,
        (Some(_), Some(_)) => Agreement::Disagree,
        _ => Agreement::Inconclusive,
    };

    let forward = match &ds {
        Some(sol) if sol.size <= l => match forward_witness(&inst, g, &sol.witness) {
            Ok(f) => match is_spanner(inst.graph(), &f, bound) {
                Ok(true) if f.len() >= k => RoundTrip::Passed,
                Ok(true) => RoundTrip::Failed(format!("forward witness has {} < k = {k} arcs", f.len())),
                Ok(false) => RoundTrip::Failed("forward witness violates the bound".into()),
                Err(e) => RoundTrip::Failed(e.to_string()),
            },
            Err(e) => RoundTrip::Failed(e.to_string()),
        },
        _ => RoundTrip::NotApplicable,
    };
    let backward = match &sp {
        Some(sol) if sol.k_max >= k => match backward_witness(&inst, g, &sol.witness) {
            Ok(x) => match is_dominating(g, &x) {
                Ok(true) if x.len() <= l => RoundTrip::Passed,
                Ok(true) => RoundTrip::Failed(format!("backward witness has {} > l = {l} vertices", x.len())),
                Ok(false) => RoundTrip::Failed("backward witness is not dominating".into()),
                Err(e) => RoundTrip::Failed(e.to_string()),
            },
            Err(e) => RoundTrip::Failed(e.to_string()),
        },
        _ => RoundTrip::NotApplicable,
    };

    Ok(EquivalenceReport {
        source_n: g.vertex_count(),
        l,
        bound: bound.to_string(),
        reduced_vertices: inst.graph().vertex_count(),
        reduced_arcs: inst.graph().arc_count(),
        budget_k: k,
        domination_number: ds.map(|s| s.size),
        k_max: sp.map(|s| s.k_max),
        ds_answer,
        spanner_answer,
        agreement,
        forward,
        backward,
    })
}
