//! Oracles and generators shared by the integration tests. Nothing here goes
//! through the solvers or the checker in `dirspan::spanner`.

#![allow(dead_code)]

use dirspan::bound::{int, ratio, ErrorFunction, Rational};
use dirspan::{Arc, ArcSet, DirectedGraph, Distance, SpannerBound, UndirectedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// Recomputes all distances of `g` and `g - f` and compares every finite
/// pair against the exact rational bound.
pub fn brute_is_spanner(g: &DirectedGraph, f: &ArcSet, b: &SpannerBound) -> bool {
    let before = g.all_pairs_distances();
    let after = g.remove_arcs(f).unwrap().all_pairs_distances();
    let n = g.vertex_count();
    (0..n).all(|u| {
        (0..n).all(|v| match before.get(u, v) {
            Distance::Finite(d) if d >= 1 => match after.get(u, v) {
                Distance::Finite(h) => int(h as u64) <= b.bound_at(d as u64).unwrap(),
                Distance::Infinite => false,
            },
            _ => true,
        })
    })
}

/// Every subset of the arcs, largest valid size and the lexicographically
/// smallest valid subset of that size. `None` when no subset is valid.
pub fn brute_optimum(g: &DirectedGraph, b: &SpannerBound) -> Option<(usize, Vec<Arc>)> {
    let arcs = g.arcs();
    assert!(arcs.len() <= 16, "naive enumeration is for tiny graphs");
    let mut best: Option<Vec<Arc>> = None;
    for mask in 0u32..(1u32 << arcs.len()) {
        let f: Vec<Arc> = (0..arcs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| arcs[i])
            .collect();
        let better = match &best {
            None => true,
            Some(cur) => f.len() > cur.len() || (f.len() == cur.len() && f < *cur),
        };
        if better && brute_is_spanner(g, &f.iter().copied().collect(), b) {
            best = Some(f);
        }
    }
    best.map(|f| (f.len(), f))
}

/// Independent closed-neighbourhood check.
pub fn brute_dominates(g: &UndirectedGraph, x: &[usize]) -> bool {
    (0..g.vertex_count()).all(|v| x.contains(&v) || x.iter().any(|&u| g.has_edge(u, v)))
}

pub fn brute_domination_number(g: &UndirectedGraph) -> usize {
    let n = g.vertex_count();
    (0u32..(1 << n))
        .filter(|mask| {
            let x: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            brute_dominates(g, &x)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Every labelled simple graph on `n` vertices, in edge-mask order.
pub fn all_graphs(n: usize) -> Vec<UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..(1 << pairs.len()))
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            UndirectedGraph::new(n, edges).unwrap()
        })
        .collect()
}

pub fn random_digraph<R: Rng>(rng: &mut R, max_n: usize, max_arcs: usize) -> DirectedGraph {
    let n = rng.gen_range(1..=max_n);
    let mut all: Vec<Arc> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::new(u, v)))
        .collect();
    all.shuffle(rng);
    let m = rng.gen_range(0..=max_arcs.min(all.len()));
    DirectedGraph::new(n, all.into_iter().take(m)).unwrap()
}

pub fn random_undirected<R: Rng>(rng: &mut R, n: usize, p: f64) -> UndirectedGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    UndirectedGraph::new(n, edges).unwrap()
}

pub fn random_subset<R: Rng>(rng: &mut R, g: &DirectedGraph, p: f64) -> ArcSet {
    g.arcs().iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(0..30), rng.gen_range(1..6))
}

pub fn random_function<R: Rng>(rng: &mut R) -> ErrorFunction {
    match rng.gen_range(0..4) {
        0 => ErrorFunction::constant(random_rational(rng)).unwrap(),
        1 => ErrorFunction::affine(random_rational(rng), random_rational(rng)).unwrap(),
        2 => ErrorFunction::power(random_rational(rng), ratio(rng.gen_range(0..5), rng.gen_range(1..4))).unwrap(),
        _ => {
            let mut v: Vec<Rational> = (0..rng.gen_range(1..6)).map(|_| random_rational(rng)).collect();
            v.sort();
            ErrorFunction::table(v).unwrap()
        }
    }
}

pub fn random_bound<R: Rng>(rng: &mut R) -> SpannerBound {
    if rng.gen_bool(0.5) {
        SpannerBound::linear(random_function(rng), random_function(rng))
    } else {
        SpannerBound::general(random_function(rng))
    }
}

/// Bounds that never undercut the original distance: `f_alpha >= 1` for
/// linear, `f(d) >= d` for general.
pub fn random_admissible_bound<R: Rng>(rng: &mut R) -> SpannerBound {
    let beta = random_function(rng);
    if rng.gen_bool(0.5) {
        let alpha = ErrorFunction::affine(int(1), random_rational(rng)).unwrap();
        SpannerBound::linear(alpha, beta)
    } else {
        let offset = random_rational(rng);
        let slope = int(1) + random_rational(rng);
        SpannerBound::general(ErrorFunction::affine(offset, slope).unwrap())
    }
}

/// Is there a directed path from `u` to `v`? Plain DFS.
pub fn reaches(g: &DirectedGraph, u: usize, v: usize) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        if x == v {
            return true;
        }
        if std::mem::replace(&mut seen[x], true) {
            continue;
        }
        stack.extend(g.out_neighbors(x));
    }
    false
}
