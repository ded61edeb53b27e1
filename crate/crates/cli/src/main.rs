//! `dirspan`: generate graphs, build reduced spanner instances, solve and
//! verify them, and run equivalence campaigns.
//!
//! Exit codes: 0 success, 1 semantic failure (violation, disagreement,
//! infeasible instance), 2 usage or input error, 3 solver capacity exceeded.

mod campaign;
mod generate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dirspan::format::{parse_arc_set, parse_graph_text, write_undirected, GraphKind as FileKind};
use dirspan::reduction::EquivalenceConfig;
use dirspan::spanner::{solve_exact_with, violations};
use dirspan::{solve_greedy, Arc, DirectedGraph, Distance, Error, ReducedInstance, SolverConfig, SpannerBound};
use serde_json::{json, Value};

use crate::campaign::{CampaignConfig, DEFAULT_BOUNDS};
use crate::generate::GraphKind;

#[derive(Parser, Debug)]
#[command(name = "dirspan", version, about = "Directed spanner toolkit")]
struct Cli {
    /// Largest number of non-critical arcs the exact spanner solver searches.
    #[arg(long, global = true, env = "DIRSPAN_MAX_CANDIDATES")]
    max_candidates: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an undirected graph in `p ug` format.
    Gen {
        #[arg(value_enum)]
        kind: GraphKind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for `random-graph`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce a Dominating Set instance `(graph, l)` to a spanner instance.
    Reduce {
        graph: PathBuf,
        #[arg(short = 'l', long = "l")]
        l: usize,
        #[arg(long)]
        bound: SpannerBound,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find a large deletion set for a digraph or reduced instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Overrides the `c bound` line of the instance file.
        #[arg(long)]
        bound: Option<SpannerBound>,
    },
    /// Check an arc set against a digraph and bound.
    Verify {
        instance: PathBuf,
        arcset: PathBuf,
        #[arg(long)]
        bound: Option<SpannerBound>,
    },
    /// Compare Dominating Set answers with answers on the reduced instances.
    Equiv {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = campaign::EXHAUSTIVE_MAX_N)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        l_min: usize,
        /// Defaults to `n` for each graph.
        #[arg(long)]
        l_max: Option<usize>,
        /// Repeatable; defaults to a fixed list covering every threshold case.
        #[arg(long)]
        bound: Vec<SpannerBound>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random graphs per order above the exhaustive range.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Record per-case wall-clock time (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print vertex and arc counts, acyclicity and the distance histogram.
    Stats { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Debug)]
enum Failure {
    Semantic(String),
    Usage(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Semantic(m) | Failure::Usage(m) | Failure::Capacity(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::Infeasible => Failure::Semantic(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn arcs_json<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> Value {
    arcs.into_iter().map(|a| json!([a.tail + 1, a.head + 1])).collect()
}

/// A digraph with its bound, plus the reduction metadata when the file is a
/// reduced instance.
struct Instance {
    graph: DirectedGraph,
    bound: SpannerBound,
    reduced: Option<ReducedInstance>,
}

fn load_instance(path: &Path, bound_flag: Option<SpannerBound>) -> CliResult<Instance> {
    let text = read(path)?;
    let parsed = parse_graph_text(&text).map_err(|e| in_file(path, e))?;
    let is_reduced = parsed.comments.iter().any(|(_, c)| c.starts_with("layer "));
    if is_reduced {
        let inst = ReducedInstance::parse(&text).map_err(|e| in_file(path, e))?;
        return Ok(Instance {
            graph: inst.graph().clone(),
            bound: bound_flag.unwrap_or_else(|| inst.bound().clone()),
            reduced: Some(inst),
        });
    }
    let graph = parsed.to_directed().map_err(|e| in_file(path, e))?;
    let from_file = parsed
        .comments
        .iter()
        .find_map(|(line, c)| c.strip_prefix("bound ").map(|spec| (*line, spec)));
    let bound = match (bound_flag, from_file) {
        (Some(b), _) => b,
        (None, Some((line, spec))) => spec
            .parse()
            .map_err(|e: Error| Failure::Usage(format!("{}: line {line}: {e}", path.display())))?,
        (None, None) => {
            return Err(Failure::Usage(format!(
                "{}: no `c bound` line; pass --bound",
                path.display()
            )))
        }
    };
    Ok(Instance {
        graph,
        bound,
        reduced: None,
    })
}

fn solver_config(max_candidates: Option<usize>) -> SolverConfig {
    max_candidates
        .map(|max_candidates| SolverConfig { max_candidates })
        .unwrap_or_default()
}

fn cmd_gen(kind: GraphKind, n: usize, seed: u64, p: f64, output: Option<&Path>) -> CliResult<()> {
    let g = generate::generate(kind, n, p, seed).map_err(Failure::Usage)?;
    emit(output, &write_undirected(&g))
}

fn cmd_reduce(graph: &Path, l: usize, bound: &SpannerBound, output: Option<&Path>) -> CliResult<()> {
    let text = read(graph)?;
    let g = dirspan::format::parse_undirected(&text).map_err(|e| in_file(graph, e))?;
    let inst = dirspan::reduce(&g, l, bound)?;
    emit(output, &inst.to_text())
}

fn cmd_solve(path: &Path, mode: Mode, bound: Option<SpannerBound>, solver: SolverConfig) -> CliResult<()> {
    let inst = load_instance(path, bound)?;
    let mut report = json!({
        "mode": match mode { Mode::Exact => "exact", Mode::Greedy => "greedy" },
        "bound": inst.bound.to_string(),
        "vertices": inst.graph.vertex_count(),
        "arcs": inst.graph.arc_count(),
    });
    let size = match mode {
        Mode::Exact => {
            let sol = solve_exact_with(&inst.graph, &inst.bound, &solver)?;
            report["k_max"] = json!(sol.k_max);
            report["witness"] = arcs_json(sol.witness.iter());
            sol.k_max
        }
        Mode::Greedy => {
            let f = solve_greedy(&inst.graph, &inst.bound)?;
            report["k_greedy"] = json!(f.len());
            report["witness"] = arcs_json(f.iter());
            f.len()
        }
    };
    if let Some(r) = &inst.reduced {
        report["budget_k"] = json!(r.budget_k());
        report["meets_budget"] = json!(size >= r.budget_k());
    }
    print_json(&report);
    Ok(())
}

fn cmd_verify(path: &Path, arcset: &Path, bound: Option<SpannerBound>) -> CliResult<()> {
    let inst = load_instance(path, bound)?;
    let f = parse_arc_set(&read(arcset)?).map_err(|e| in_file(arcset, e))?;
    let missing: Vec<String> = f
        .iter()
        .filter(|a| !inst.graph.has_arc(**a))
        .map(|a| format!("({}, {})", a.tail + 1, a.head + 1))
        .collect();
    if !missing.is_empty() {
        return Err(Failure::Usage(format!(
            "{}: arcs not in the instance: {}",
            arcset.display(),
            missing.join(", ")
        )));
    }
    let found = violations(&inst.graph, &f, &inst.bound)?;
    let listed: Vec<Value> = found
        .iter()
        .map(|v| {
            json!({
                "source": v.source + 1,
                "target": v.target + 1,
                "original": v.original,
                "spanner": v.spanner.finite(),
                "bound": v.bound.to_string(),
            })
        })
        .collect();
    let mut report = json!({
        "bound": inst.bound.to_string(),
        "deleted": f.len(),
        "valid": found.is_empty(),
        "violations": listed,
    });
    if let Some(r) = &inst.reduced {
        report["budget_k"] = json!(r.budget_k());
        report["meets_budget"] = json!(f.len() >= r.budget_k());
    }
    print_json(&report);
    if found.is_empty() {
        Ok(())
    } else {
        Err(Failure::Semantic(format!("{} pair(s) violate the bound", found.len())))
    }
}

fn cmd_equiv(config: CampaignConfig, output: Option<&Path>) -> CliResult<()> {
    let report = campaign::run(&config)?;
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    emit(output, &text)?;
    let s = &report.summary;
    eprintln!(
        "{} cases over {} graphs: {} agree, {} disagree, {} inconclusive, {} round-trip failures",
        s.cases, s.graphs, s.agree, s.disagree, s.inconclusive, s.round_trip_failures
    );
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Semantic("the campaign found disagreements".into()))
    }
}

fn cmd_stats(path: &Path) -> CliResult<()> {
    let parsed = parse_graph_text(&read(path)?).map_err(|e| in_file(path, e))?;
    let (kind, graph) = match parsed.kind {
        FileKind::Directed => ("directed", parsed.to_directed().map_err(|e| in_file(path, e))?),
        FileKind::Undirected => {
            let g = parsed.to_undirected().map_err(|e| in_file(path, e))?;
            let arcs = g.edges().iter().flat_map(|&(u, v)| [Arc::new(u, v), Arc::new(v, u)]);
            ("undirected", DirectedGraph::new(g.vertex_count(), arcs)?)
        }
    };
    let n = graph.vertex_count();
    let dist = graph.all_pairs_distances();
    let mut histogram = vec![0usize; dist.max_finite() as usize + 1];
    let mut unreachable = 0usize;
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            match dist.get(u, v) {
                Distance::Finite(d) => histogram[d as usize] += 1,
                Distance::Infinite => unreachable += 1,
            }
        }
    }
    let histogram: Vec<Value> = histogram
        .iter()
        .enumerate()
        .skip(1)
        .map(|(d, &pairs)| json!({ "distance": d, "pairs": pairs }))
        .collect();
    print_json(&json!({
        "kind": kind,
        "vertices": n,
        "arcs": graph.arc_count(),
        "acyclic": graph.is_acyclic(),
        "distance_histogram": histogram,
        "unreachable_pairs": unreachable,
    }));
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let solver = solver_config(cli.max_candidates);
    match cli.command {
        Command::Gen {
            kind,
            n,
            seed,
            p,
            output,
        } => cmd_gen(kind, n, seed, p, output.as_deref()),
        Command::Reduce {
            graph,
            l,
            bound,
            output,
        } => cmd_reduce(&graph, l, &bound, output.as_deref()),
        Command::Solve { instance, mode, bound } => cmd_solve(&instance, mode, bound, solver),
        Command::Verify {
            instance,
            arcset,
            bound,
        } => cmd_verify(&instance, &arcset, bound),
        Command::Equiv {
            n_min,
            n_max,
            l_min,
            l_max,
            bound,
            seed,
            samples,
            p,
            timings,
            output,
        } => {
            if n_min > n_max {
                return Err(Failure::Usage(format!("--n-min {n_min} exceeds --n-max {n_max}")));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage(format!("edge probability {p} is outside [0, 1]")));
            }
            let bounds = if bound.is_empty() {
                DEFAULT_BOUNDS
                    .iter()
                    .map(|b| b.parse().expect("default bounds parse"))
                    .collect()
            } else {
                bound
            };
            let config = CampaignConfig {
                n_min,
                n_max,
                l_min,
                l_max,
                bounds,
                seed,
                samples,
                edge_prob: p,
                timings,
                solvers: EquivalenceConfig {
                    solver,
                    ..EquivalenceConfig::default()
                },
            };
            cmd_equiv(config, output.as_deref())
        }
        Command::Stats { file } => cmd_stats(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dirspan: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_classes() {
        let cap = Error::Capacity {
            what: "candidates",
            size: 30,
            limit: 25,
        };
        assert_eq!(Failure::from(cap).code(), 3);
        assert_eq!(Failure::from(Error::Infeasible).code(), 1);
        assert_eq!(Failure::from(Error::Loop(0)).code(), 2);
    }
}
