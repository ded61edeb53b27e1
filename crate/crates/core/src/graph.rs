//! Directed and undirected simple graphs on dense 0-based vertex ids,
//! unweighted distances, and the arc surgery used by the reduction.
//!
//! Graphs are immutable values: every surgery operation returns a new graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An ordered pair `(tail, head)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub const fn new(tail: Vertex, head: Vertex) -> Self {
        Arc { tail, head }
    }
}

impl From<(Vertex, Vertex)> for Arc {
    fn from((tail, head): (Vertex, Vertex)) -> Self {
        Arc { tail, head }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tail, self.head)
    }
}

/// A set of arcs, kept in ascending `(tail, head)` order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcSet(BTreeSet<Arc>);

impl ArcSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, arc: Arc) -> bool {
        self.0.insert(arc)
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.0.contains(arc)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.0.iter()
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &ArcSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        ArcSet(self.0.union(&other.0).copied().collect())
    }
}

impl FromIterator<Arc> for ArcSet {
    fn from_iter<I: IntoIterator<Item = Arc>>(iter: I) -> Self {
        ArcSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ArcSet {
    type Item = &'a Arc;
    type IntoIter = std::collections::btree_set::Iter<'a, Arc>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Unweighted path length with an absorbing infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Infinite => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Distance {
        self.entries[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[Distance] {
        &self.entries[u * self.n..(u + 1) * self.n]
    }

    /// Largest finite entry, or 0 for graphs without arcs.
    pub fn max_finite(&self) -> u32 {
        self.entries.iter().filter_map(|d| d.finite()).max().unwrap_or(0)
    }
}

/// Directed graph without loops or parallel arcs.
#[derive(Clone, Debug)]
pub struct DirectedGraph {
    n: usize,
    arcs: Vec<Arc>,
    // out[u] = (head, index into `arcs`)
    out: Vec<Vec<(Vertex, usize)>>,
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for DirectedGraph {}

impl DirectedGraph {
    /// Builds a graph, rejecting loops, duplicate arcs and out-of-range endpoints.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut sorted: Vec<Arc> = arcs.into_iter().collect();
        for a in &sorted {
            for vertex in [a.tail, a.head] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a.tail == a.head {
                return Err(Error::Loop(a.tail));
            }
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0]));
        }
        Ok(Self::from_sorted(n, sorted))
    }

    /// Drops loops and merges parallel arcs instead of rejecting them.
    fn new_simplified(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Self {
        let mut sorted: Vec<Arc> = arcs.into_iter().filter(|a| a.tail != a.head).collect();
        sorted.sort_unstable();
        sorted.dedup();
        Self::from_sorted(n, sorted)
    }

    fn from_sorted(n: usize, arcs: Vec<Arc>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (idx, a) in arcs.iter().enumerate() {
            out[a.tail].push((a.head, idx));
        }
        DirectedGraph { n, arcs, out }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in ascending `(tail, head)` order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_set(&self) -> ArcSet {
        self.arcs.iter().copied().collect()
    }

    pub fn has_arc(&self, arc: Arc) -> bool {
        self.arc_index(arc).is_some()
    }

    pub(crate) fn arc_index(&self, arc: Arc) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.out[u].iter().map(|&(h, _)| h)
    }

    fn check_vertex(&self, vertex: Vertex) -> Result<()> {
        if vertex < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex, n: self.n })
        }
    }

    fn check_arc(&self, arc: Arc) -> Result<()> {
        if self.has_arc(arc) {
            Ok(())
        } else {
            Err(Error::MissingArc(arc))
        }
    }

    pub fn bfs_distances(&self, source: Vertex) -> Result<Vec<Distance>> {
        self.check_vertex(source)?;
        let mut dist = vec![Distance::Infinite; self.n];
        let mut queue = VecDeque::new();
        self.bfs_masked(source, None, &mut dist, &mut queue);
        Ok(dist)
    }

    /// BFS ignoring arcs whose index is flagged in `removed`.
    pub(crate) fn bfs_masked(
        &self,
        source: Vertex,
        removed: Option<&[bool]>,
        dist: &mut [Distance],
        queue: &mut VecDeque<Vertex>,
    ) {
        dist.fill(Distance::Infinite);
        queue.clear();
        dist[source] = Distance::ZERO;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = dist[u] else { unreachable!() };
            for &(v, idx) in &self.out[u] {
                if removed.is_some_and(|r| r[idx]) {
                    continue;
                }
                if dist[v] == Distance::Infinite {
                    dist[v] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let mut entries = vec![Distance::Infinite; self.n * self.n];
        let mut queue = VecDeque::new();
        for (s, row) in entries.chunks_mut(self.n.max(1)).enumerate().take(self.n) {
            self.bfs_masked(s, None, row, &mut queue);
        }
        DistanceMatrix { n: self.n, entries }
    }

    /// Replaces `arc` by a directed path of length `times + 1`. The fresh
    /// vertices get ids `n, n + 1, ..., n + times - 1`, ordered from the tail.
    pub fn subdivide_arc(&self, arc: Arc, times: usize) -> Result<DirectedGraph> {
        self.check_arc(arc)?;
        if times == 0 {
            return Err(Error::ZeroSubdivision);
        }
        let n = self.n + times;
        let mut arcs: Vec<Arc> = self.arcs.iter().copied().filter(|&a| a != arc).collect();
        let path: Vec<Vertex> = std::iter::once(arc.tail)
            .chain(self.n..n)
            .chain(std::iter::once(arc.head))
            .collect();
        arcs.extend(path.windows(2).map(|w| Arc::new(w[0], w[1])));
        Ok(Self::new_simplified(n, arcs))
    }

    /// Merges the endpoints of `arc` into one fresh vertex. Loops that arise
    /// are dropped and parallel arcs merged.
    pub fn contract_arc(&self, arc: Arc) -> Result<Contraction> {
        self.check_arc(arc)?;
        let merged = self.n - 2;
        let mut vertex_map = vec![0; self.n];
        let mut next = 0;
        for (v, slot) in vertex_map.iter_mut().enumerate() {
            if v == arc.tail || v == arc.head {
                *slot = merged;
            } else {
                *slot = next;
                next += 1;
            }
        }
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(vertex_map[a.tail], vertex_map[a.head]));
        Ok(Contraction {
            graph: Self::new_simplified(self.n - 1, arcs),
            vertex_map,
            merged,
        })
    }

    /// `self - removed`: same vertex set, arcs of `removed` deleted.
    pub fn remove_arcs(&self, removed: &ArcSet) -> Result<DirectedGraph> {
        for &a in removed {
            self.check_arc(a)?;
        }
        let arcs = self.arcs.iter().copied().filter(|a| !removed.contains(a)).collect();
        Ok(Self::from_sorted(self.n, arcs))
    }

    /// Kahn's algorithm: acyclic iff every vertex can be peeled off.
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.n];
        for a in &self.arcs {
            indegree[a.head] += 1;
        }
        let mut stack: Vec<Vertex> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for v in self.out_neighbors(u) {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    stack.push(v);
                }
            }
        }
        seen == self.n
    }
}

/// Result of [`DirectedGraph::contract_arc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: DirectedGraph,
    /// `vertex_map[old] = new`; both endpoints of the contracted arc map to `merged`.
    pub vertex_map: Vec<Vertex>,
    /// Id of the merged vertex, always the last vertex of the new graph.
    pub merged: Vertex,
}

/// Undirected simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    // normalized so that u < v, sorted
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(UndirectedGraph { n, edges: norm, adj })
    }

    pub fn edgeless(n: usize) -> Self {
        UndirectedGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// `N[v]` in ascending order.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut nb = self.adj[v].clone();
        let pos = nb.partition_point(|&x| x < v);
        nb.insert(pos, v);
        nb
    }

    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        Self::new(self.n, self.edges.iter().copied().chain(std::iter::once((u, v))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: Distance = Distance::Infinite;
    const fn d(x: u32) -> Distance {
        Distance::Finite(x)
    }

    fn dg(n: usize, arcs: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(n, arcs.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn rejects_malformed_arcs() {
        assert_eq!(DirectedGraph::new(2, [Arc::new(0, 0)]), Err(Error::Loop(0)));
        assert_eq!(
            DirectedGraph::new(2, [Arc::new(0, 1), Arc::new(0, 1)]),
            Err(Error::DuplicateArc(Arc::new(0, 1)))
        );
        assert_eq!(
            DirectedGraph::new(2, [Arc::new(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(UndirectedGraph::new(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(
            dg(3, &[(0, 1), (1, 2)]).bfs_distances(0).unwrap(),
            vec![d(0), d(1), d(2)]
        );
        assert_eq!(dg(2, &[]).bfs_distances(0).unwrap(), vec![d(0), INF]);
        assert_eq!(
            dg(3, &[(0, 1), (1, 2), (0, 2)]).bfs_distances(0).unwrap(),
            vec![d(0), d(1), d(1)]
        );
        assert_eq!(
            dg(2, &[]).bfs_distances(2),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn all_pairs_examples() {
        let m = dg(2, &[]).all_pairs_distances();
        assert_eq!(
            (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)),
            (d(0), INF, INF, d(0))
        );
        let m = dg(2, &[(0, 1)]).all_pairs_distances();
        assert_eq!((m.get(0, 1), m.get(1, 0)), (d(1), INF));
        let m = dg(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).all_pairs_distances();
        assert_eq!(m.get(0, 2), d(2));
        for u in 0..4 {
            for v in 0..4 {
                assert!(m.get(u, v).is_finite());
            }
        }
        assert_eq!(DirectedGraph::empty(0).all_pairs_distances().vertex_count(), 0);
    }

    #[test]
    fn distance_arithmetic_absorbs_infinity() {
        assert_eq!(d(2) + d(3), d(5));
        assert_eq!(d(2) + INF, INF);
        assert_eq!(d(7).min(INF), d(7));
        assert!(d(u32::MAX - 1) < INF);
    }

    #[test]
    fn subdivide_examples() {
        let g = dg(2, &[(0, 1)]);
        let once = g.subdivide_arc(Arc::new(0, 1), 1).unwrap();
        assert_eq!(once, dg(3, &[(0, 2), (2, 1)]));
        assert_eq!(once.bfs_distances(0).unwrap()[1], d(2));
        let thrice = g.subdivide_arc(Arc::new(0, 1), 3).unwrap();
        assert_eq!(thrice.vertex_count(), 5);
        assert_eq!(thrice.bfs_distances(0).unwrap()[1], d(4));

        let g = dg(4, &[(0, 1), (1, 2), (2, 3)]);
        let s = g.subdivide_arc(Arc::new(1, 2), 2).unwrap();
        assert!(s.has_arc(Arc::new(0, 1)) && s.has_arc(Arc::new(2, 3)));
        assert!(!s.has_arc(Arc::new(1, 2)));

        assert_eq!(
            g.subdivide_arc(Arc::new(2, 1), 1),
            Err(Error::MissingArc(Arc::new(2, 1)))
        );
        assert_eq!(g.subdivide_arc(Arc::new(1, 2), 0), Err(Error::ZeroSubdivision));
    }

    #[test]
    fn contract_examples() {
        // a=0, b=1, c=2: {a->b, b->c} becomes {w->c} with c -> 0, w -> 1
        let c = dg(3, &[(0, 1), (1, 2)]).contract_arc(Arc::new(0, 1)).unwrap();
        assert_eq!(c.graph, dg(2, &[(1, 0)]));
        assert_eq!(c.vertex_map, vec![1, 1, 0]);
        assert_eq!(c.merged, 1);

        // x=0, a=1, b=2, y=3
        let c = dg(4, &[(0, 1), (1, 2), (2, 3)]).contract_arc(Arc::new(1, 2)).unwrap();
        assert_eq!(c.graph, dg(3, &[(0, 2), (2, 1)]));

        // parallel arcs (a,c) and (b,c) collapse
        let c = dg(3, &[(0, 1), (0, 2), (1, 2)]).contract_arc(Arc::new(0, 1)).unwrap();
        assert_eq!(c.graph, dg(2, &[(1, 0)]));

        // a 2-cycle produces no loop
        let c = dg(2, &[(0, 1), (1, 0)]).contract_arc(Arc::new(0, 1)).unwrap();
        assert_eq!(c.graph.arc_count(), 0);

        assert!(dg(2, &[]).contract_arc(Arc::new(0, 1)).is_err());
    }

    #[test]
    fn remove_arcs_examples() {
        let tri = dg(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(tri.remove_arcs(&ArcSet::new()).unwrap(), tri);
        assert_eq!(tri.remove_arcs(&tri.arc_set()).unwrap(), DirectedGraph::empty(3));
        let f: ArcSet = [Arc::new(0, 2)].into_iter().collect();
        assert_eq!(tri.remove_arcs(&f).unwrap(), dg(3, &[(0, 1), (1, 2)]));
        let bad: ArcSet = [Arc::new(2, 0)].into_iter().collect();
        assert_eq!(tri.remove_arcs(&bad), Err(Error::MissingArc(Arc::new(2, 0))));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(dg(3, &[(0, 1), (1, 2)]).is_acyclic());
        assert!(!dg(2, &[(0, 1), (1, 0)]).is_acyclic());
        assert!(DirectedGraph::empty(0).is_acyclic());
    }

    #[test]
    fn closed_neighborhoods() {
        let g = UndirectedGraph::new(4, [(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(g.closed_neighborhood(2), vec![0, 1, 2]);
        assert_eq!(g.closed_neighborhood(3), vec![3]);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0) && !g.has_edge(0, 1));
    }
}
