//! JSON input parsing (auto-detected by top-level keys) and report
//! serialization. All big integers are emitted as decimal strings and
//! all maps iterate in sorted key order, so output bytes are stable
//! across runs and worker counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bounds::BoundReport;
use crate::count::CountReport;
use crate::density::{AsymptoticReport, DensityMode, DensityReport, SandwichReport};
use crate::error::{Error, Result};
use crate::expansion::{ExpandedGround, LengthMap};
use crate::graph::Graph;
use crate::jacobian::AbelianGroup;
use crate::matroid::RegularMatroid;
use crate::poly::MultilinearPoly;

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Input {
    Graph(Graph),
    Matroid(RegularMatroid),
    Poly(MultilinearPoly),
}

/// Detects the document kind from its top-level keys and parses it.
pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    let graph_keys = has("vertices") && has("edges");
    let matroid_keys = has("rank") && has("ground") && has("rows");
    let poly_keys = has("vars") && has("terms");
    match (graph_keys, matroid_keys, poly_keys) {
        (true, false, false) => Ok(Input::Graph(graph_from_value(obj)?)),
        (false, true, false) => Ok(Input::Matroid(matroid_from_value(obj)?)),
        (false, false, true) => Ok(Input::Poly(poly_from_value(obj)?)),
        (false, false, false) => Err(Error::Parse(
            "unrecognized document: expected keys for a graph (vertices, edges), \
             a matroid (rank, ground, rows), or a polynomial (vars, terms)"
                .into(),
        )),
        _ => Err(Error::Parse(
            "ambiguous document: keys match more than one schema".into(),
        )),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field '{key}'")))
}

fn graph_from_value(obj: &Map<String, Value>) -> Result<Graph> {
    let vertices = field(obj, "vertices")?
        .as_u64()
        .ok_or_else(|| Error::Parse("field 'vertices' must be a nonnegative integer".into()))?;
    let edges: Vec<(String, usize, usize)> =
        serde_json::from_value(field(obj, "edges")?.clone())
            .map_err(|e| Error::Parse(format!("field 'edges': {e}")))?;
    Graph::new(vertices as usize, edges)
}

fn matroid_from_value(obj: &Map<String, Value>) -> Result<RegularMatroid> {
    let rank = field(obj, "rank")?
        .as_u64()
        .ok_or_else(|| Error::Parse("field 'rank' must be a nonnegative integer".into()))?;
    let ground: Vec<String> = serde_json::from_value(field(obj, "ground")?.clone())
        .map_err(|e| Error::Parse(format!("field 'ground': {e}")))?;
    let rows: Vec<Vec<i64>> = serde_json::from_value(field(obj, "rows")?.clone())
        .map_err(|e| Error::Parse(format!("field 'rows': {e}")))?;
    if rows.len() as u64 != rank {
        return Err(Error::Parse(format!(
            "field 'rank' is {rank} but 'rows' has {} rows",
            rows.len()
        )));
    }
    RegularMatroid::new(rows, ground)
}

fn poly_from_value(obj: &Map<String, Value>) -> Result<MultilinearPoly> {
    let vars: Vec<String> = serde_json::from_value(field(obj, "vars")?.clone())
        .map_err(|e| Error::Parse(format!("field 'vars': {e}")))?;
    if vars.len() > crate::MAX_GROUND {
        return Err(Error::GroundTooLarge(vars.len()));
    }
    let index: BTreeMap<&str, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let terms_val = field(obj, "terms")?
        .as_array()
        .ok_or_else(|| Error::Parse("field 'terms' must be an array".into()))?;
    let mut terms: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (i, t) in terms_val.iter().enumerate() {
        let t = t
            .as_object()
            .ok_or_else(|| Error::Parse(format!("terms[{i}] must be an object")))?;
        let support: Vec<String> = serde_json::from_value(field(t, "support")?.clone())
            .map_err(|e| Error::Parse(format!("terms[{i}].support: {e}")))?;
        let mut mask = 0u64;
        for label in &support {
            let &pos = index
                .get(label.as_str())
                .ok_or_else(|| Error::Parse(format!("terms[{i}]: unknown variable '{label}'")))?;
            if mask >> pos & 1 == 1 {
                return Err(Error::Parse(format!(
                    "terms[{i}]: repeated variable '{label}'"
                )));
            }
            mask |= 1 << pos;
        }
        let coeff = match field(t, "coeff")? {
            Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("terms[{i}].coeff: {e}")))?,
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Parse(format!("terms[{i}].coeff must be an integer")))?,
            _ => {
                return Err(Error::Parse(format!(
                    "terms[{i}].coeff must be a decimal string"
                )))
            }
        };
        if terms.insert(mask, coeff).is_some() {
            return Err(Error::Parse(format!("terms[{i}]: duplicate support")));
        }
    }
    MultilinearPoly::new(vars, terms)
}

/// Parses a JSON object mapping labels to positive integer lengths.
pub fn parse_length_map(text: &str) -> Result<LengthMap> {
    let values: BTreeMap<String, u64> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("length map: {e}")))?;
    LengthMap::new(values)
}

fn big_str(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn matroid_to_json(m: &RegularMatroid) -> Value {
    json!({
        "rank": m.rank(),
        "ground": m.ground(),
        "rows": m.matrix(),
    })
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges(),
    })
}

pub fn poly_to_json(p: &MultilinearPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(&mask, coeff)| {
            let support: Vec<&str> = (0..p.var_count())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| p.vars()[i].as_str())
                .collect();
            json!({ "support": support, "coeff": coeff.to_string() })
        })
        .collect();
    json!({ "vars": p.vars(), "terms": terms })
}

pub fn group_to_json(g: &AbelianGroup) -> Value {
    let factors: Vec<Value> = g.invariant_factors.iter().map(big_str).collect();
    json!({ "invariant_factors": factors, "order": g.order.to_string() })
}

pub fn expansion_to_json(m: &RegularMatroid, eg: &ExpandedGround) -> Value {
    let classes: Vec<Value> = eg
        .groups
        .iter()
        .map(|(e, members)| json!([e, members]))
        .collect();
    json!({ "matroid": matroid_to_json(m), "classes": classes })
}

pub fn count_report_to_json(r: &CountReport) -> Value {
    json!({
        "p": r.p,
        "n_vars": r.n_vars,
        "affine_zeros": r.affine_zeros.to_string(),
        "projective_points": r.projective_points.to_string(),
        "torus_zeros": r.torus_zeros.map(|t| t.to_string()),
    })
}

fn approx(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

pub fn density_report_to_json(r: &DensityReport) -> Value {
    let mode = match r.mode {
        DensityMode::Formula => json!("formula"),
        DensityMode::Empirical(m) => json!({ "empirical": m }),
        DensityMode::Torus => json!("torus"),
    };
    let mut obj = json!({
        "p": r.p,
        "num": r.numerator.to_string(),
        "den": r.denominator.to_string(),
        "approx": approx(&r.numerator, &r.denominator),
        "mode": mode,
        "trivial": r.trivial,
    });
    if let Some(subject) = &r.subject {
        obj["subject"] = json!(subject);
    }
    obj
}

fn rational_json(x: &BigRational) -> Value {
    json!({
        "num": x.numer().to_string(),
        "den": x.denom().to_string(),
        "approx": x.to_f64().unwrap_or(f64::NAN),
    })
}

pub fn sandwich_report_to_json(r: &SandwichReport) -> Value {
    json!({
        "p": r.p,
        "m_max": r.m_max,
        "t": r.t,
        "l": r.l,
        "empirical": density_report_to_json(&r.empirical),
        "formula": density_report_to_json(&r.formula),
        "lower": rational_json(&r.lower),
        "upper": rational_json(&r.upper),
        "holds": r.holds,
        "exact": r.exact,
    })
}

pub fn asymptotic_report_to_json(r: &AsymptoticReport) -> Value {
    json!({
        "p": r.p,
        "density": rational_json(&r.density),
        "target": rational_json(&r.target),
        "deviation": rational_json(&r.deviation),
        "bound": rational_json(&r.bound),
        "big_o": r.big_o.to_string(),
        "holds": r.holds,
    })
}

pub fn bound_report_to_json(r: &BoundReport) -> Value {
    json!({
        "p": r.p,
        "n_vars": r.n_vars,
        "degree": r.degree,
        "projective_points": r.projective_points.to_string(),
        "lower": r.lower.to_string(),
        "upper": r.upper.to_string(),
        "lower_loose": r.lower_loose.to_string(),
        "upper_loose": r.upper_loose.to_string(),
        "envelope_f": r.paper_f.to_string(),
        "envelope_g": r.paper_g.to_string(),
        "big_o": r.big_o.to_string(),
        "intersection_terms": {
            "delta": r.intersection_terms.delta,
            "dim": r.intersection_terms.dim,
            "ambient": r.intersection_terms.ambient,
        },
        "hypersurface_terms": {
            "delta": r.hypersurface_terms.delta,
            "dim": r.hypersurface_terms.dim,
            "ambient": r.hypersurface_terms.ambient,
        },
        "sandwich_holds": r.sandwich_holds,
    })
}

/// Pretty-printed with a trailing newline: the one emission format.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::psi::psi_from_bases;

    #[test]
    fn detects_and_parses_each_schema() {
        let g = r#"{"vertices": 2, "edges": [["e", 0, 1], ["f", 0, 1]]}"#;
        let Input::Graph(g) = parse_input(g).unwrap() else {
            panic!("expected graph")
        };
        assert_eq!(g.edges().len(), 2);

        let m = r#"{"rank": 1, "ground": ["e", "f"], "rows": [[1, 1]]}"#;
        let Input::Matroid(m) = parse_input(m).unwrap() else {
            panic!("expected matroid")
        };
        assert_eq!(m.rank(), 1);

        let p = r#"{"vars": ["e", "f"], "terms": [{"support": ["e"], "coeff": "1"},
                     {"support": ["f"], "coeff": "1"}]}"#;
        let Input::Poly(p) = parse_input(p).unwrap() else {
            panic!("expected polynomial")
        };
        assert_eq!(p.var_count(), 2);
        assert_eq!(p.degree(), 1);
    }

    #[test]
    fn rejects_ambiguous_and_malformed_documents() {
        assert!(parse_input(r#"{"vertices": 1, "edges": [], "vars": [], "terms": []}"#).is_err());
        assert!(parse_input(r#"{"something": 1}"#).is_err());
        assert!(parse_input("[1,2,3]").is_err());
        assert!(parse_input("not json").is_err());
        // rank disagreeing with the row count
        assert!(parse_input(r#"{"rank": 2, "ground": ["e"], "rows": [[1]]}"#).is_err());
        // unknown variable in a term support
        assert!(parse_input(
            r#"{"vars": ["e"], "terms": [{"support": ["x"], "coeff": "1"}]}"#
        )
        .is_err());
    }

    #[test]
    fn poly_round_trip_is_exact() {
        for id in ["c2", "diamond", "k4", "banana10"] {
            let psi = psi_from_bases(&corpus::get(id).unwrap());
            let text = render(&poly_to_json(&psi));
            let Input::Poly(back) = parse_input(&text).unwrap() else {
                panic!("expected polynomial")
            };
            assert_eq!(back, psi, "{id}");
        }
    }

    #[test]
    fn matroid_round_trip_is_exact() {
        for (id, m) in corpus::corpus() {
            let text = render(&matroid_to_json(&m));
            let Input::Matroid(back) = parse_input(&text).unwrap() else {
                panic!("expected matroid")
            };
            assert_eq!(back.matrix(), m.matrix(), "{id}");
            assert_eq!(back.ground(), m.ground(), "{id}");
        }
    }

    #[test]
    fn length_map_parses_the_doc_example() {
        let lm = parse_length_map(r#"{"e": 2, "f": 3}"#).unwrap();
        assert_eq!(lm.get("e").unwrap(), 2);
        assert_eq!(lm.get("f").unwrap(), 3);
        assert!(parse_length_map(r#"{"e": 0}"#).is_err());
        assert!(parse_length_map(r#"{"e": -1}"#).is_err());
    }

    #[test]
    fn group_json_uses_decimal_strings() {
        let m = corpus::get("diamond").unwrap();
        let g = crate::jacobian::jacobian_group(&m);
        let v = group_to_json(&g);
        assert_eq!(v["order"], json!("8"));
        assert_eq!(v["invariant_factors"], json!(["8"]));
    }

    #[test]
    fn report_rendering_is_deterministic() {
        let psi = psi_from_bases(&corpus::get("diamond").unwrap());
        let r = crate::count::count_report(
            &psi,
            2,
            crate::count::CountMethod::Naive,
            None,
            true,
            None,
        )
        .unwrap();
        let a = render(&count_report_to_json(&r));
        let b = render(&count_report_to_json(&r));
        assert_eq!(a, b);
        assert!(a.contains("\"affine_zeros\": \"16\""));
        assert!(a.contains("\"torus_zeros\": \"1\""));
        assert!(a.ends_with('\n'));
    }
}
