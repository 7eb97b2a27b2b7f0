//! Browser bindings. Every export takes and returns strings (JSON), so the
//! same functions are tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qcsp::{oracle, parse_instance, Calculus, Model, SolveOptions};

fn error(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

/// Solves an instance document and reports the verdict, the certificate's
/// off-diagonal entries and, where a realizer exists, a model.
pub fn solve_value(doc: &str) -> Value {
    let inst = match parse_instance(doc) {
        Ok(i) => i,
        Err(e) => return error(e),
    };
    let sol = match qcsp::solve(&inst, &SolveOptions::default()) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let mut out = json!({
        "sat": sol.sat,
        "width": sol.stats.width.max(0),
        "nodes": sol.nice.len(),
        "peak_record": sol.stats.peak_record,
    });
    if !sol.sat {
        return out;
    }
    let cert = match sol.certificate(&inst) {
        Ok(c) => c,
        Err(e) => return error(e),
    };
    let calc = inst.calculus();
    let name = |v| inst.name(v).to_string();
    out["certificate"] = cert
        .entries()
        .iter()
        .filter(|(t, _)| t.windows(2).all(|w| w[0] < w[1]))
        .map(|(t, r)| {
            let names: Vec<String> = t.iter().map(|&v| name(v)).collect();
            json!({ "args": names, "rel": calc.relation_name(*r) })
        })
        .collect();
    if let Ok(model) = calc.realize(&cert) {
        out["model"] = Value::String(model.describe(&name));
        let spans: Option<Vec<Value>> = match &model {
            Model::Interval(m) => Some(m.iter().map(|(v, (a, b))| json!({ "var": name(*v), "from": a, "to": b })).collect()),
            Model::Point(m) => Some(m.iter().map(|(v, x)| json!({ "var": name(*v), "from": x, "to": x })).collect()),
            _ => None,
        };
        if let Some(spans) = spans {
            out["spans"] = Value::Array(spans);
        }
    }
    out
}

/// Number of complete satisfiable networks on `m` variables.
pub fn count_value(calculus: &str, m: usize) -> Value {
    let calc = match Calculus::by_name(calculus) {
        Ok(c) => c,
        Err(e) => return error(e),
    };
    match oracle::count_complete_satisfiable(&calc, m, false) {
        Ok(n) => json!({ "calculus": calc.name(), "m": m, "count": n }),
        Err(e) => error(e),
    }
}

/// The nice decomposition used for an instance with each node's record size.
pub fn profile_value(doc: &str) -> Value {
    let inst = match parse_instance(doc) {
        Ok(i) => i,
        Err(e) => return error(e),
    };
    let opts = SolveOptions { provenance: false, ..Default::default() };
    let sol = match qcsp::solve(&inst, &opts) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let nodes: Vec<Value> = sol
        .stats
        .nodes
        .iter()
        .map(|s| {
            let node = sol.nice.node(s.node);
            json!({
                "id": s.node,
                "kind": s.kind,
                "parent": node.parent,
                "bag": node.bag.iter().map(|&v| inst.name(v)).collect::<Vec<_>>(),
                "record_size": s.record_size,
            })
        })
        .collect();
    json!({ "sat": sol.sat, "width": sol.stats.width.max(0), "nodes": nodes })
}

#[wasm_bindgen]
pub fn solve(doc: &str) -> String {
    solve_value(doc).to_string()
}

#[wasm_bindgen]
pub fn count(calculus: &str, m: usize) -> String {
    count_value(calculus, m).to_string()
}

#[wasm_bindgen]
pub fn profile(doc: &str) -> String {
    profile_value(doc).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MEETING: &str = include_str!("../../../instances/meeting.json");

    #[test]
    fn solve_reports_spans() {
        let v = solve_value(MEETING);
        assert_eq!(v["sat"], true);
        assert_eq!(v["spans"].as_array().unwrap().len(), 3);
        assert!(v["certificate"].as_array().unwrap().len() == 3);
        assert!(solve_value("{").get("error").is_some());
    }

    #[test]
    fn counts() {
        assert_eq!(count_value("pa", 4)["count"], 75);
        assert_eq!(count_value("rcc8", 2)["count"], 8);
        assert!(count_value("nope", 2).get("error").is_some());
        assert!(count_value("ia", 40).get("error").is_some());
    }

    #[test]
    fn profile_lists_every_node() {
        let v = profile_value(MEETING);
        let nodes = v["nodes"].as_array().unwrap();
        assert_eq!(nodes.first().unwrap()["kind"], "leaf");
        assert!(nodes.last().unwrap()["parent"].is_null());
        assert!(nodes.iter().all(|n| n["record_size"].as_u64().unwrap() > 0));
    }
}
