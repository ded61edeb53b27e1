use wasm_bindgen::prelude::*;

fn finish(view: Result<serde_json::Value, String>) -> Result<String, JsError> {
    view.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn reduce(graph: &str, l: usize, bound: &str) -> Result<String, JsError> {
    finish(crate::reduce_view(graph, l, bound))
}

#[wasm_bindgen]
pub fn solve(graph: &str, l: usize, bound: &str) -> Result<String, JsError> {
    finish(crate::solve_view(graph, l, bound))
}

#[wasm_bindgen]
pub fn equivalence(graph: &str, l: usize, bound: &str) -> Result<String, JsError> {
    finish(crate::equivalence_view(graph, l, bound))
}
