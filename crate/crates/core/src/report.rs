//! Result records and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::derivation::LiePresentation;
use crate::graded::{DegreeWindow, Scalar};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rationals are always written `p/q`.
pub fn rational(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Certification {
    pub window: Option<DegreeWindow>,
    pub length_bound: Option<usize>,
    pub certified_degrees: Vec<i32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub uncertified_degrees: Vec<i32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub query: Value,
    pub answer: Value,
    pub certification: Certification,
    pub routes: Vec<String>,
    pub version: String,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<Value>,
}

impl ResultRecord {
    pub fn new(query: Value, answer: Value, certification: Certification, routes: &[&str]) -> Self {
        ResultRecord {
            query,
            answer,
            certification,
            routes: routes.iter().map(|s| s.to_string()).collect(),
            version: VERSION.to_string(),
            timing_ms: 0,
            diff: None,
        }
    }
}

/// `{"dims": {"-2": 1, …}}` keyed by degree strings.
pub fn dims_answer(dims: &BTreeMap<i32, usize>) -> Value {
    let table: serde_json::Map<String, Value> = dims.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "dims": table })
}

pub fn lie_answer(lie: &LiePresentation) -> Value {
    let constants: Vec<Value> = lie.constants().iter().map(|(i, j, k, c)| json!([i, j, k, rational(c)])).collect();
    json!({
        "algebra": lie.algebra,
        "dimension": lie.dim(),
        "abelian": lie.is_abelian(),
        "basis": lie.labels,
        "structure_constants": constants,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit(r: &ResultRecord, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        Format::Text => text(r),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(out: &mut String, rows: &[(String, String)]) {
    let mut rows = rows.to_vec();
    if rows.iter().all(|(k, _)| k.parse::<i64>().is_ok()) {
        rows.sort_by_key(|(k, _)| std::cmp::Reverse(k.parse::<i64>().unwrap_or(0)));
    }
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (k, v) in &rows {
        let pad = w - k.chars().count();
        let _ = writeln!(out, "  {k}{}  {v}", " ".repeat(pad));
    }
}

fn text(r: &ResultRecord) -> String {
    let mut out = String::new();
    let cmd = r.query.get("command").map(scalar_text).unwrap_or_default();
    let _ = writeln!(out, "{cmd}");
    if let Value::Object(map) = &r.answer {
        let mut rows = Vec::new();
        for (k, v) in map {
            match v {
                Value::Object(inner) => {
                    let _ = writeln!(out, "{k}:");
                    let sub: Vec<(String, String)> = inner.iter().map(|(a, b)| (a.clone(), scalar_text(b))).collect();
                    table(&mut out, &sub);
                }
                Value::Array(items) => {
                    let _ = writeln!(out, "{k}:");
                    let sub: Vec<(String, String)> =
                        items.iter().enumerate().map(|(i, b)| (format!("[{i}]"), scalar_text(b))).collect();
                    table(&mut out, &sub);
                }
                other => rows.push((k.clone(), scalar_text(other))),
            }
        }
        table(&mut out, &rows);
    }
    if let Some(diff) = &r.diff {
        let _ = writeln!(out, "disagreement:");
        if let Value::Object(map) = diff {
            let rows: Vec<(String, String)> = map.iter().map(|(k, v)| (k.clone(), scalar_text(v))).collect();
            table(&mut out, &rows);
        }
    }
    let c = &r.certification;
    let _ = writeln!(out, "certification:");
    let mut rows = Vec::new();
    if let Some(w) = c.window {
        rows.push(("window".to_string(), format!("{}:{}", w.lo, w.hi)));
    }
    if let Some(l) = c.length_bound {
        rows.push(("length bound".to_string(), l.to_string()));
    }
    rows.push(("certified".to_string(), format!("{:?}", c.certified_degrees)));
    if !c.uncertified_degrees.is_empty() {
        rows.push(("not certified".to_string(), format!("{:?}", c.uncertified_degrees)));
    }
    for n in &c.notes {
        rows.push(("note".to_string(), n.clone()));
    }
    if !r.routes.is_empty() {
        rows.push(("routes".to_string(), r.routes.join(", ")));
    }
    table(&mut out, &rows);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_keyed_by_strings() {
        let v = dims_answer(&BTreeMap::from([(-3, 1), (-2, 1)]));
        assert_eq!(v.to_string(), r#"{"dims":{"-2":1,"-3":1}}"#);
        assert_eq!(rational(&crate::graded::ratio(-2, 4)), "-1/2");
        assert_eq!(rational(&crate::graded::scalar(3)), "3/1");
    }

    #[test]
    fn text_has_aligned_table() {
        let r = ResultRecord::new(
            json!({"command": "aq"}),
            dims_answer(&BTreeMap::from([(-10, 0), (-2, 1)])),
            Certification::default(),
            &["der"],
        );
        let t = emit(&r, Format::Text);
        assert!(t.contains("  -2   1\n  -10  0\n"), "{t}");
    }
}
