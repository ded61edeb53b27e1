use std::time::Instant;

use dirspan::reduction::{verify_equivalence_with, Agreement, EquivalenceConfig, RoundTrip};
use dirspan::{reduce, EquivalenceReport, SpannerBound, UndirectedGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::generate::random_graph;

/// Bounds exercised when `equiv` gets no `--bound`: one per threshold case
/// (contraction, identity, subdivision), a second `t = 3` shape, the general
/// `d + 1` bound, and a non-integer threshold.
pub const DEFAULT_BOUNDS: [&str; 6] = [
    "linear(const:1;const:1)",
    "linear(const:3;const:0)",
    "linear(const:1;const:4)",
    "linear(const:2;const:1)",
    "general(affine:1:1)",
    "linear(const:1;table:3/2)",
];

/// Largest `n` enumerated exhaustively; larger orders are sampled.
pub const EXHAUSTIVE_MAX_N: usize = 5;

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub l_min: usize,
    pub l_max: Option<usize>,
    pub bounds: Vec<SpannerBound>,
    pub seed: u64,
    pub samples: usize,
    pub edge_prob: f64,
    pub timings: bool,
    pub solvers: EquivalenceConfig,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphDescriptor {
    pub n: usize,
    /// Position in edge-mask order (exhaustive) or in draw order (sampled).
    pub index: u64,
    pub sampled: bool,
    /// 1-indexed edges.
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub graph: GraphDescriptor,
    #[serde(flatten)]
    pub report: EquivalenceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u128>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub graphs: usize,
    pub agree: usize,
    pub disagree: usize,
    pub inconclusive: usize,
    pub yes: usize,
    pub no: usize,
    pub round_trip_failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub bounds: Vec<String>,
    pub summary: Summary,
    pub cases: Vec<CaseReport>,
}

impl CampaignReport {
    /// No conclusive disagreement and no failed witness translation.
    pub fn is_clean(&self) -> bool {
        self.summary.disagree == 0 && self.summary.round_trip_failures == 0
    }
}

fn labelled_graphs(n: usize) -> Vec<(u64, UndirectedGraph)> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p);
            (mask, UndirectedGraph::new(n, edges).expect("simple by construction"))
        })
        .collect()
}

fn graphs(config: &CampaignConfig) -> Vec<(GraphDescriptor, UndirectedGraph)> {
    let mut seeds = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for n in config.n_min..=config.n_max {
        let (sampled, batch) = if n <= EXHAUSTIVE_MAX_N {
            (false, labelled_graphs(n))
        } else {
            let batch = (0..config.samples as u64)
                .map(|i| {
                    let seed = rand::Rng::gen::<u64>(&mut seeds);
                    (i, random_graph(n, config.edge_prob, seed))
                })
                .collect();
            (true, batch)
        };
        out.extend(batch.into_iter().map(|(index, g)| {
            let edges = g.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect();
            (
                GraphDescriptor {
                    n,
                    index,
                    sampled,
                    edges,
                },
                g,
            )
        }));
    }
    out
}

/// Fails fast on bounds the reduction rejects regardless of the graph.
pub fn check_bounds(bounds: &[SpannerBound]) -> dirspan::Result<()> {
    let k1 = UndirectedGraph::edgeless(1);
    bounds.iter().try_for_each(|b| reduce(&k1, 1, b).map(|_| ()))
}

/// Runs every `(bound, graph, l)` case. Cases are listed by bound position,
/// then `n`, graph index and `l`, whatever order the workers finish in.
pub fn run(config: &CampaignConfig) -> dirspan::Result<CampaignReport> {
    check_bounds(&config.bounds)?;
    let graphs = graphs(config);
    let mut jobs = Vec::new();
    for bound in &config.bounds {
        for (desc, g) in &graphs {
            let l_max = config.l_max.unwrap_or(desc.n).min(desc.n);
            for l in config.l_min.max(1)..=l_max {
                jobs.push((bound, desc, g, l));
            }
        }
    }
    let cases = jobs
        .into_par_iter()
        .map(|(bound, desc, g, l)| {
            let start = Instant::now();
            let report = verify_equivalence_with(g, l, bound, &config.solvers)?;
            Ok(CaseReport {
                graph: desc.clone(),
                report,
                micros: config.timings.then(|| start.elapsed().as_micros()),
            })
        })
        .collect::<dirspan::Result<Vec<_>>>()?;

    let mut summary = Summary {
        cases: cases.len(),
        graphs: graphs.len(),
        ..Summary::default()
    };
    for c in &cases {
        match c.report.agreement {
            Agreement::Agree => summary.agree += 1,
            Agreement::Disagree => summary.disagree += 1,
            Agreement::Inconclusive => summary.inconclusive += 1,
        }
        match c.report.ds_answer {
            Some(true) => summary.yes += 1,
            Some(false) => summary.no += 1,
            None => {}
        }
        let failed = |r: &RoundTrip| matches!(r, RoundTrip::Failed(_));
        if failed(&c.report.forward) || failed(&c.report.backward) {
            summary.round_trip_failures += 1;
        }
    }
    Ok(CampaignReport {
        seed: config.seed,
        n_min: config.n_min,
        n_max: config.n_max,
        bounds: config.bounds.iter().map(|b| b.to_string()).collect(),
        summary,
        cases,
    })
}
