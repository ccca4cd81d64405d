//! Browser bindings for the matjac core.
//!
//! Every operation is string-in / string-out JSON so the same functions
//! compile and test natively; the `wasm-bindgen` wrappers at the bottom are
//! gated to the wasm32 target. Errors come back as `{"error": "..."}` rather
//! than exceptions, which keeps the JS side to a single JSON.parse.

use matjac::corpus;
use matjac::density::{asymptotic_check, density_formula, torus_density};
use matjac::expansion::expand;
use matjac::graph::incidence_matroid;
use matjac::io::{
    self, density_report_to_json, expansion_to_json, group_to_json, matroid_to_json, poly_to_json,
};
use matjac::jacobian::jacobian_group;
use matjac::matroid::RegularMatroid;
use matjac::psi::psi_from_bases;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// Accepts either `corpus:<id>` or raw graph/matroid JSON.
fn resolve_matroid(input: &str) -> matjac::Result<RegularMatroid> {
    let text = input.trim();
    if let Some(id) = text.strip_prefix("corpus:") {
        return corpus::corpus_matroid(id.trim());
    }
    match io::parse_input(text)? {
        io::Input::Graph(g) => incidence_matroid(&g),
        io::Input::Matroid(m) => Ok(m),
        io::Input::Poly(_) => Err(matjac::Error::Parse(
            "expected a graph or matroid, got a polynomial".into(),
        )),
    }
}

fn fail(e: matjac::Error) -> String {
    io::render(&json!({ "error": e.to_string() }))
}

/// Corpus ids with one-line descriptions, for preset menus.
pub fn corpus_list() -> String {
    let rows: Vec<Value> = corpus::ids()
        .iter()
        .map(|id| {
            json!({
                "id": id,
                "description": corpus::describe(id).unwrap_or(""),
            })
        })
        .collect();
    io::render(&json!({ "corpus": rows }))
}

/// Matroid overview: the structure, its basis polynomial, and its Jacobian
/// group, plus the irreducible component split.
pub fn overview(input: &str) -> String {
    let m = match resolve_matroid(input) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let psi = psi_from_bases(&m);
    let group = jacobian_group(&m);
    let components: Vec<Vec<&str>> = m
        .irreducible_components()
        .into_iter()
        .map(|cols| cols.into_iter().map(|c| m.ground()[c].as_str()).collect())
        .collect();
    io::render(&json!({
        "matroid": matroid_to_json(&m),
        "psi": poly_to_json(&psi),
        "basis_count": psi.terms().len(),
        "degree": psi.degree(),
        "jacobian": group_to_json(&group),
        "components": components,
    }))
}

/// Metric expansion explorer: evaluates the basis polynomial at a length map
/// and compares it against the Jacobian order of the expanded matroid. The
/// two agree for every regular matroid; the report carries both sides so the
/// page can show the identity holding live.
pub fn expansion_report(input: &str, lengths: &str) -> String {
    let m = match resolve_matroid(input) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let lam = match io::parse_length_map(lengths) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let point: Vec<BigInt> = {
        let mut pt = Vec::with_capacity(m.n());
        for label in m.ground() {
            match lam.get(label) {
                Ok(v) => pt.push(BigInt::from(v)),
                Err(e) => return fail(e),
            }
        }
        pt
    };
    let psi = psi_from_bases(&m);
    let value = match psi.evaluate(&point, None) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let (mx, eg) = match expand(&m, &lam) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let group = jacobian_group(&mx);
    io::render(&json!({
        "psi_value": value.to_string(),
        "expansion": expansion_to_json(&mx, &eg),
        "jacobian": group_to_json(&group),
        "orders_match": group.order.to_string() == value.to_string(),
    }))
}

/// Density-versus-p curve. `primes` is a JSON array like `[2,3,5,7]`. Each
/// row carries the exact density, the 1/p target, and (for irreducible
/// matroids) the asymptotic deviation bound; rows that exceed a budget or a
/// prime cap report their error in place instead of sinking the whole curve.
pub fn density_curve(input: &str, primes: &str) -> String {
    let m = match resolve_matroid(input) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let ps: Vec<u64> = match serde_json::from_str(primes) {
        Ok(v) => v,
        Err(e) => return fail(matjac::Error::Parse(format!("prime list: {e}"))),
    };
    let mut rows = Vec::new();
    for p in ps {
        let mut row = json!({ "p": p });
        match density_formula(&m, p) {
            Ok(r) => row["density"] = density_report_to_json(&r),
            Err(e) => row["error"] = json!(e.to_string()),
        }
        if let Ok(r) = torus_density(&m, p) {
            row["torus"] = density_report_to_json(&r);
        }
        if let Ok(r) = asymptotic_check(&m, p) {
            row["asymptotic"] = io::asymptotic_report_to_json(&r);
        }
        rows.push(row);
    }
    io::render(&json!({ "rows": rows }))
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn corpus_list() -> String {
        crate::corpus_list()
    }

    #[wasm_bindgen]
    pub fn overview(input: &str) -> String {
        crate::overview(input)
    }

    #[wasm_bindgen]
    pub fn expansion_report(input: &str, lengths: &str) -> String {
        crate::expansion_report(input, lengths)
    }

    #[wasm_bindgen]
    pub fn density_curve(input: &str, primes: &str) -> String {
        crate::density_curve(input, primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parsed(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn corpus_list_names_every_id() {
        let v = parsed(&corpus_list());
        let rows = v["corpus"].as_array().unwrap();
        assert_eq!(rows.len(), corpus::ids().len());
        assert!(rows.iter().any(|r| r["id"] == "diamond"));
    }

    #[test]
    fn overview_of_the_diamond() {
        let v = parsed(&overview("corpus:diamond"));
        assert_eq!(v["basis_count"], 8);
        assert_eq!(v["degree"], 2);
        assert_eq!(v["jacobian"]["order"], "8");
        assert_eq!(v["components"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn overview_accepts_pasted_graph_json() {
        let text = r#"{"vertices": 2, "edges": [["e", 0, 1], ["f", 0, 1]]}"#;
        let v = parsed(&overview(text));
        assert_eq!(v["basis_count"], 2);
        assert_eq!(v["jacobian"]["order"], "2");
    }

    #[test]
    fn overview_rejects_polynomial_input() {
        let text = r#"{"vars": ["x"], "terms": [{"support": ["x"], "coeff": "1"}]}"#;
        let v = parsed(&overview(text));
        assert!(v["error"].as_str().unwrap().contains("polynomial"));
    }

    #[test]
    fn expansion_orders_match_on_c2() {
        let v = parsed(&expansion_report("corpus:c2", r#"{"e": 2, "f": 3}"#));
        assert_eq!(v["psi_value"], "5");
        assert_eq!(v["jacobian"]["order"], "5");
        assert_eq!(v["orders_match"], true);
    }

    #[test]
    fn density_curve_rows_carry_density_and_bound() {
        let v = parsed(&density_curve("corpus:diamond", "[2, 3]"));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["density"]["num"], "16");
        assert_eq!(rows[0]["density"]["den"], "32");
        assert_eq!(rows[0]["asymptotic"]["holds"], true);
        assert_eq!(rows[0]["torus"]["num"], "1");
        assert_eq!(rows[0]["torus"]["den"], "32");
    }

    #[test]
    fn density_curve_reports_per_prime_errors_in_place() {
        let v = parsed(&density_curve("corpus:c2", "[2, 37]"));
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows[0]["density"]["num"], "2");
        assert_eq!(rows[0]["density"]["den"], "4");
        assert!(rows[1]["error"].as_str().is_some());
    }

    #[test]
    fn unknown_corpus_id_is_an_error_payload() {
        let v = parsed(&overview("corpus:not-a-thing"));
        assert!(v["error"].as_str().unwrap().contains("not-a-thing"));
    }
}
