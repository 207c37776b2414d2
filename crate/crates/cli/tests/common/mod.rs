#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

pub fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Values computed independently (sympy, mpmath) by tools/oracle_fixtures.py.
#[derive(Debug, Clone)]
pub struct OracleFixture {
    pub label: String,
    pub g: usize,
    pub q: i64,
    pub descending: Vec<i64>,
    pub slopes: Vec<String>,
    pub galois_order: usize,
    pub angle_rank: usize,
}

pub fn oracle_fixtures() -> Vec<OracleFixture> {
    let dir = workspace().join("fixtures/oracle");
    let mut out: Vec<OracleFixture> = std::fs::read_dir(&dir)
        .expect("oracle fixture directory")
        .map(|e| {
            let path = e.unwrap().path();
            let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
            OracleFixture {
                label: v["label"].as_str().unwrap().to_string(),
                g: v["g"].as_u64().unwrap() as usize,
                q: v["q"].as_i64().unwrap(),
                descending: v["coefficients_descending"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect(),
                slopes: v["slopes"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect(),
                galois_order: v["galois_order"].as_u64().unwrap() as usize,
                angle_rank: v["angle_rank"].as_u64().unwrap() as usize,
            }
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

pub fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(workspace().join("schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

pub fn schema_errors(v: &jsonschema::Validator, report: &Value) -> Vec<String> {
    v.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect()
}
