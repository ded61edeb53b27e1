//! Browser demo. The view functions here build JSON documents from plain
//! text inputs and are tested natively; the `wasm` module only forwards
//! them to JavaScript.

use dirspan::format::parse_undirected;
use dirspan::reduction::verify_equivalence;
use dirspan::spanner::solve_exact;
use dirspan::{
    backward_witness, critical_arcs, forward_witness, is_spanner, reduce, solve_exact_domset, Arc, Error, Layer,
    ReducedInstance, SpannerBound, UndirectedGraph,
};
use serde_json::{json, Value};

#[cfg(target_arch = "wasm32")]
mod wasm;

type ViewResult = Result<Value, String>;

fn parse_inputs(graph_text: &str, bound: &str) -> Result<(UndirectedGraph, SpannerBound), String> {
    let g = parse_undirected(graph_text).map_err(|e| format!("graph: {e}"))?;
    let b = bound.parse().map_err(|e: Error| format!("bound: {e}"))?;
    Ok((g, b))
}

fn build(graph_text: &str, l: usize, bound: &str) -> Result<(UndirectedGraph, ReducedInstance), String> {
    let (g, b) = parse_inputs(graph_text, bound)?;
    let inst = reduce(&g, l, &b).map_err(|e| e.to_string())?;
    Ok((g, inst))
}

/// Grid position `(column, row)` of a reduced vertex: one column per source
/// vertex, one row per layer with the hub alone on top.
fn grid_position(label: Layer, n: usize, contracted: bool, subdivisions: usize) -> (f64, usize) {
    let centered = (n.max(1) - 1) as f64 / 2.0;
    let right_row = if contracted { 2 } else { 3 + subdivisions };
    match label {
        Layer::Hub => (centered, 0),
        Layer::Left(i) => (i as f64, 1),
        Layer::Center(i) | Layer::Merged(i) => (i as f64, 2),
        Layer::Subdivision { source, position } => (source as f64, 2 + position),
        Layer::Right(i) => (i as f64, right_row),
        Layer::Bottom(i) => (i as f64, right_row + 1),
    }
}

fn arc_pair(a: &Arc) -> Value {
    json!([a.tail, a.head])
}

/// The reduced digraph with a layered layout and, per arc, whether it may
/// appear in a deletion set and whether deleting it alone breaks the bound.
pub fn reduce_view(graph_text: &str, l: usize, bound: &str) -> ViewResult {
    let (_, inst) = build(graph_text, l, bound)?;
    let n = inst.source_n();
    let subdivisions = inst
        .labels()
        .iter()
        .filter_map(|l| match l {
            Layer::Subdivision { position, .. } => Some(*position),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let vertices: Vec<Value> = inst
        .labels()
        .iter()
        .enumerate()
        .map(|(v, &label)| {
            let (x, y) = grid_position(label, n, inst.is_contracted(), subdivisions);
            json!({ "id": v, "label": label.to_string(), "x": x, "y": y })
        })
        .collect();
    let deletable = inst.deletable_arcs();
    let critical = critical_arcs(inst.graph(), inst.bound());
    let arcs: Vec<Value> = inst
        .graph()
        .arcs()
        .iter()
        .map(|a| {
            json!({
                "tail": a.tail,
                "head": a.head,
                "deletable": deletable.contains(a),
                "critical": critical.contains(a),
            })
        })
        .collect();
    Ok(json!({
        "source_n": n,
        "l": l,
        "bound": inst.bound().to_string(),
        "threshold": inst.threshold().to_string(),
        "budget_k": inst.budget_k(),
        "vertices": vertices,
        "arcs": arcs,
        "text": inst.to_text(),
    }))
}

/// Both sides solved exactly, with each witness carried across the
/// reduction and re-checked.
pub fn solve_view(graph_text: &str, l: usize, bound: &str) -> ViewResult {
    let (g, inst) = build(graph_text, l, bound)?;
    let k = inst.budget_k();

    let domination = match solve_exact_domset(&g) {
        Ok(ds) => {
            let forward = if ds.size <= l {
                let f = forward_witness(&inst, &g, &ds.witness).map_err(|e| e.to_string())?;
                let valid = is_spanner(inst.graph(), &f, inst.bound()).map_err(|e| e.to_string())?;
                json!({ "arcs": f.iter().map(arc_pair).collect::<Vec<_>>(), "valid": valid })
            } else {
                Value::Null
            };
            json!({
                "size": ds.size,
                "witness": ds.witness.iter().collect::<Vec<_>>(),
                "answer": ds.size <= l,
                "forward": forward,
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };

    let spanner = match solve_exact(inst.graph(), inst.bound()) {
        Ok(sol) => {
            let backward = if sol.k_max >= k {
                let x = backward_witness(&inst, &g, &sol.witness).map_err(|e| e.to_string())?;
                json!(x.iter().collect::<Vec<_>>())
            } else {
                Value::Null
            };
            json!({
                "k_max": sol.k_max,
                "witness": sol.witness.iter().map(arc_pair).collect::<Vec<_>>(),
                "answer": sol.k_max >= k,
                "backward": backward,
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };

    Ok(json!({ "budget_k": k, "domination": domination, "spanner": spanner }))
}

/// The full equivalence report for one `(graph, l, bound)` case.
pub fn equivalence_view(graph_text: &str, l: usize, bound: &str) -> ViewResult {
    let (g, b) = parse_inputs(graph_text, bound)?;
    let report = verify_equivalence(&g, l, &b).map_err(|e| e.to_string())?;
    Ok(json!({ "clean": report.is_clean(), "report": report }))
}
