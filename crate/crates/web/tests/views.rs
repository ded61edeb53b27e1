use dirspan::ReducedInstance;
use dirspan_web::{equivalence_view, reduce_view, solve_view};
use serde_json::Value;

const C4: &str = "p ug 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n";
const P3: &str = "p ug 3 2\ne 1 2\ne 2 3\n";

fn rows(view: &Value) -> Vec<(String, u64)> {
    view["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (v["label"].as_str().unwrap().to_string(), v["y"].as_u64().unwrap()))
        .collect()
}

#[test]
fn reduce_view_layers_and_flags() {
    let view = reduce_view(P3, 1, "linear(const:3;const:0)").unwrap();
    assert_eq!(view["budget_k"], 5);
    assert_eq!(view["vertices"].as_array().unwrap().len(), 13);
    for (label, y) in rows(&view) {
        let expected = match label.split('(').next().unwrap() {
            "W" => 0,
            "RL" => 1,
            "RC" => 2,
            "RR" => 3,
            "B" => 4,
            _ => panic!("unexpected label {label}"),
        };
        assert_eq!(y, expected, "{label}");
    }
    let arcs = view["arcs"].as_array().unwrap();
    let deletable = arcs.iter().filter(|a| a["deletable"] == true).count();
    assert_eq!(deletable, 6);
    // an arc flagged critical is never among the deletable ones
    assert!(arcs.iter().all(|a| !(a["deletable"] == true && a["critical"] == true)));
    let inst = ReducedInstance::parse(view["text"].as_str().unwrap()).unwrap();
    assert_eq!(inst.graph().arc_count(), arcs.len());
}

#[test]
fn reduce_view_contracted_and_subdivided_rows() {
    let view = reduce_view(P3, 1, "linear(const:1;const:1)").unwrap();
    let bottom_rows: Vec<u64> = rows(&view)
        .into_iter()
        .filter(|(l, _)| l.starts_with("B("))
        .map(|(_, y)| y)
        .collect();
    assert_eq!(bottom_rows, vec![3, 3, 3]);

    let view = reduce_view(P3, 1, "linear(const:1;const:4)").unwrap();
    let r = rows(&view);
    assert!(r.iter().any(|(l, y)| l == "SUBDIV(1,2)" && *y == 4));
    assert!(r.iter().any(|(l, y)| l == "B(3)" && *y == 6));
}

#[test]
fn solve_view_no_case_on_c4() {
    let view = solve_view(C4, 1, "linear(const:1;const:1)").unwrap();
    assert_eq!(view["domination"]["size"], 2);
    assert_eq!(view["domination"]["answer"], false);
    assert_eq!(view["domination"]["forward"], Value::Null);
    assert_eq!(view["spanner"]["answer"], false);
    assert_eq!(view["spanner"]["backward"], Value::Null);
}

#[test]
fn solve_view_yes_case_maps_witnesses() {
    let view = solve_view(C4, 2, "linear(const:2;const:1)").unwrap();
    let k = view["budget_k"].as_u64().unwrap();
    assert_eq!(k, 6);
    let forward = &view["domination"]["forward"];
    assert_eq!(forward["valid"], true);
    assert!(forward["arcs"].as_array().unwrap().len() as u64 >= k);
    assert_eq!(view["spanner"]["answer"], true);
    assert!(view["spanner"]["backward"].as_array().unwrap().len() <= 2);
}

#[test]
fn equivalence_view_reports_agreement() {
    let view = equivalence_view(C4, 1, "general(affine:1:1)").unwrap();
    assert_eq!(view["clean"], true);
    assert_eq!(view["report"]["agreement"], "agree");
    assert_eq!(view["report"]["ds_answer"], false);
}

#[test]
fn bad_inputs_are_messages() {
    assert!(reduce_view("p ug 2 1\ne 1 3\n", 1, "linear(const:1;const:1)")
        .unwrap_err()
        .starts_with("graph:"));
    assert!(reduce_view(P3, 1, "linear(oops)").unwrap_err().starts_with("bound:"));
    assert!(solve_view(P3, 1, "linear(const:1;const:0)")
        .unwrap_err()
        .contains("below 2"));
    assert!(equivalence_view(P3, 4, "linear(const:1;const:1)").is_err());
}
