use clap::ValueEnum;
use dirspan::UndirectedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    RandomGraph,
    Path,
    Cycle,
    Complete,
    Edgeless,
}

/// Erdős–Rényi graph; the same seed always yields the same graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    UndirectedGraph::new(n, edges).expect("simple by construction")
}

pub fn generate(kind: GraphKind, n: usize, p: f64, seed: u64) -> Result<UndirectedGraph, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("edge probability {p} is outside [0, 1]"));
    }
    let edges: Vec<(usize, usize)> = match kind {
        GraphKind::RandomGraph => return Ok(random_graph(n, p, seed)),
        GraphKind::Edgeless => Vec::new(),
        GraphKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        GraphKind::Cycle => {
            if n < 3 {
                return Err(format!("a simple cycle needs at least 3 vertices, got {n}"));
            }
            (0..n).map(|v| (v, (v + 1) % n)).collect()
        }
        GraphKind::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
    };
    UndirectedGraph::new(n, edges).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(generate(GraphKind::Path, 3, 0.5, 0).unwrap().edges(), &[(0, 1), (1, 2)]);
        assert_eq!(generate(GraphKind::Edgeless, 4, 0.5, 0).unwrap().edge_count(), 0);
        assert_eq!(generate(GraphKind::Complete, 5, 0.5, 0).unwrap().edge_count(), 10);
        assert_eq!(generate(GraphKind::Cycle, 4, 0.5, 0).unwrap().edge_count(), 4);
        assert!(generate(GraphKind::Cycle, 2, 0.5, 0).is_err());
        assert!(generate(GraphKind::RandomGraph, 4, 1.5, 0).is_err());
        assert_eq!(generate(GraphKind::Path, 0, 0.5, 0).unwrap().vertex_count(), 0);
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_graph(12, 0.5, 7), random_graph(12, 0.5, 7));
        assert_eq!(random_graph(6, 1.0, 3).edge_count(), 15);
        assert_eq!(random_graph(6, 0.0, 3).edge_count(), 0);
    }
}
