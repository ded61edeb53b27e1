//! Exact Dominating Set: verifier and exhaustive minimum solver.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, Vertex};

pub const DEFAULT_MAX_VERTICES: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DomSetWitness(BTreeSet<Vertex>);

impl DomSetWitness {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Vertex> for DomSetWitness {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        DomSetWitness(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomSetConfig {
    pub max_vertices: usize,
}

impl Default for DomSetConfig {
    fn default() -> Self {
        DomSetConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomSetSolution {
    pub size: usize,
    pub witness: DomSetWitness,
}

pub fn is_dominating(g: &UndirectedGraph, x: &DomSetWitness) -> Result<bool> {
    let n = g.vertex_count();
    if let Some(vertex) = x.iter().find(|&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex, n });
    }
    let mut dominated = vec![false; n];
    for v in x.iter() {
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    Ok(dominated.into_iter().all(|d| d))
}

pub fn solve_exact_domset(g: &UndirectedGraph) -> Result<DomSetSolution> {
    solve_exact_domset_with(g, &DomSetConfig::default())
}

/// Minimum dominating set, lexicographically smallest among the minimum ones.
///
/// Sizes are tried in increasing order; within a size, subsets are generated
/// in ascending lexicographic order, cutting a branch as soon as the lowest
/// undominated vertex has no closed neighbour left among the remaining picks.
pub fn solve_exact_domset_with(g: &UndirectedGraph, config: &DomSetConfig) -> Result<DomSetSolution> {
    let n = g.vertex_count();
    let limit = config.max_vertices.min(64);
    if n > limit {
        return Err(Error::Capacity {
            what: "dominating set instance",
            size: n,
            limit,
        });
    }
    let closed: Vec<u64> = (0..n)
        .map(|v| g.closed_neighborhood(v).into_iter().fold(0u64, |m, u| m | 1 << u))
        .collect();
    // highest-index member of each closed neighbourhood
    let last: Vec<usize> = closed.iter().map(|m| 63 - m.leading_zeros() as usize).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let search = Search {
        n,
        closed: &closed,
        last: &last,
        full,
    };
    for size in 0..=n {
        let mut picked = Vec::with_capacity(size);
        if search.run(0, size, 0, &mut picked) {
            return Ok(DomSetSolution {
                size: picked.len(),
                witness: picked.into_iter().collect(),
            });
        }
    }
    unreachable!("V(G) dominates itself")
}

struct Search<'a> {
    n: usize,
    closed: &'a [u64],
    last: &'a [usize],
    full: u64,
}

impl Search<'_> {
    fn run(&self, from: usize, remaining: usize, dominated: u64, picked: &mut Vec<Vertex>) -> bool {
        let open = !dominated & self.full;
        if open == 0 {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let lowest = open.trailing_zeros() as usize;
        if self.last[lowest] < from {
            return false;
        }
        for v in from..=(self.n - remaining) {
            if v > self.last[lowest] {
                break;
            }
            picked.push(v);
            if self.run(v + 1, remaining - 1, dominated | self.closed[v], picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
}

pub fn decide_domset(g: &UndirectedGraph, l: usize) -> Result<bool> {
    decide_domset_with(g, l, &DomSetConfig::default())
}

pub fn decide_domset_with(g: &UndirectedGraph, l: usize, config: &DomSetConfig) -> Result<bool> {
    Ok(solve_exact_domset_with(g, config)?.size <= l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ug(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn w(vs: &[usize]) -> DomSetWitness {
        vs.iter().copied().collect()
    }

    fn path3() -> UndirectedGraph {
        ug(3, &[(0, 1), (1, 2)])
    }

    fn cycle4() -> UndirectedGraph {
        ug(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn verifier_examples() {
        assert!(is_dominating(&path3(), &w(&[1])).unwrap());
        assert!(!is_dominating(&path3(), &w(&[0])).unwrap());
        let edgeless = UndirectedGraph::edgeless(3);
        assert!(is_dominating(&edgeless, &w(&[0, 1, 2])).unwrap());
        assert!(!is_dominating(&edgeless, &w(&[0, 2])).unwrap());
        assert_eq!(
            is_dominating(&path3(), &w(&[3])),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn solver_examples() {
        assert_eq!(
            solve_exact_domset(&path3()).unwrap(),
            DomSetSolution {
                size: 1,
                witness: w(&[1])
            }
        );
        let e = solve_exact_domset(&UndirectedGraph::edgeless(4)).unwrap();
        assert_eq!((e.size, e.witness), (4, w(&[0, 1, 2, 3])));
        let c = solve_exact_domset(&cycle4()).unwrap();
        assert_eq!((c.size, c.witness), (2, w(&[0, 1])));
        let empty = solve_exact_domset(&UndirectedGraph::edgeless(0)).unwrap();
        assert_eq!((empty.size, empty.witness.is_empty()), (0, true));
    }

    #[test]
    fn cycle_witness_matches_enumeration() {
        // enumerate size 1 then size 2 subsets of C4 in lexicographic order
        let g = cycle4();
        let singles: Vec<_> = (0..4).filter(|&v| is_dominating(&g, &w(&[v])).unwrap()).collect();
        assert!(singles.is_empty());
        let first_pair = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .find(|&(a, b)| is_dominating(&g, &w(&[a, b])).unwrap())
            .unwrap();
        assert_eq!(
            solve_exact_domset(&g).unwrap().witness,
            w(&[first_pair.0, first_pair.1])
        );
    }

    #[test]
    fn decide_examples() {
        assert!(decide_domset(&path3(), 1).unwrap());
        assert!(!decide_domset(&path3(), 0).unwrap());
        assert!(!decide_domset(&cycle4(), 1).unwrap());
        assert!(decide_domset(&cycle4(), 2).unwrap());
        assert!(decide_domset(&UndirectedGraph::edgeless(0), 0).unwrap());
    }

    #[test]
    fn capacity_limit() {
        let g = UndirectedGraph::edgeless(21);
        assert!(matches!(
            solve_exact_domset(&g),
            Err(Error::Capacity {
                size: 21,
                limit: 20,
                ..
            })
        ));
        let cfg = DomSetConfig { max_vertices: 30 };
        let star = UndirectedGraph::new(25, (1..25).map(|v| (0, v))).unwrap();
        assert_eq!(solve_exact_domset_with(&star, &cfg).unwrap().size, 1);
    }
}
