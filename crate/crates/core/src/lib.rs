//! Directed spanners under linear and general distance bounds, exact and
//! greedy spanner solvers, and a parameter-preserving reduction from
//! Dominating Set with witness translations in both directions.

pub mod bound;
pub mod domset;
pub mod error;
pub mod format;
pub mod graph;
pub mod reduction;
pub mod spanner;

pub use bound::{ErrorFunction, Rational, SpannerBound};
pub use domset::{decide_domset, is_dominating, solve_exact_domset, DomSetSolution, DomSetWitness};
pub use error::{Error, Result};
pub use graph::{Arc, ArcSet, DirectedGraph, Distance, DistanceMatrix, UndirectedGraph, Vertex};
pub use reduction::{
    backward_witness, forward_witness, reduce, verify_equivalence, EquivalenceReport, Layer, ReducedInstance,
};
pub use spanner::{
    critical_arcs, decide, is_spanner, solve_exact, solve_greedy, trivial_no, SolverConfig, SpannerSolution,
};
