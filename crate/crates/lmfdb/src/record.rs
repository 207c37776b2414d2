use angrank_core::weil::parse_label;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{LmfdbError, Result};

/// One upstream isogeny class row, reduced to the fields we compare.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmfdbRecord {
    pub label: String,
    /// ascending, `c_0 = q^g` first
    pub poly_coeffs: Vec<i64>,
    /// as stored upstream; absent when the row has no such field
    pub angle_rank: Option<i64>,
    /// upstream Galois fields, kept verbatim
    pub galois_data: Value,
    pub retrieved_at: String,
}

/// Field names tried, in order, for each quantity.
const POLY_FIELDS: &[&str] = &["poly", "polynomial"];
const ANGLE_RANK_FIELDS: &[&str] = &["angle_rank"];
const GALOIS_FIELDS: &[&str] = &["galois_groups", "galois_n", "galois_t", "galois_group"];

/// Parses an API response body for `label`.
///
/// Coefficient order is detected from the data: ascending lists end in the
/// leading `1`, descending lists start with it.
pub fn parse_response(label: &str, body: &str, retrieved_at: &str) -> Result<LmfdbRecord> {
    let v: Value = serde_json::from_str(body).map_err(|_| LmfdbError::SchemaDrift("<body>".into()))?;
    let rows = v.get("data").and_then(Value::as_array).ok_or_else(|| LmfdbError::SchemaDrift("data".into()))?;
    let row = rows
        .iter()
        .find(|r| r.get("label").and_then(Value::as_str) == Some(label))
        .or_else(|| if rows.is_empty() { None } else { rows.first() });
    let row = row.ok_or_else(|| LmfdbError::NotFound(label.to_string()))?;
    let got = row.get("label").and_then(Value::as_str).ok_or_else(|| LmfdbError::SchemaDrift("label".into()))?;
    if got != label {
        return Err(LmfdbError::NotFound(label.to_string()));
    }
    let poly = POLY_FIELDS
        .iter()
        .find_map(|f| row.get(*f))
        .and_then(Value::as_array)
        .ok_or_else(|| LmfdbError::SchemaDrift(POLY_FIELDS[0].into()))?;
    let mut coeffs = poly
        .iter()
        .map(Value::as_i64)
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| LmfdbError::SchemaDrift(POLY_FIELDS[0].into()))?;
    if coeffs.last() != Some(&1) && coeffs.first() == Some(&1) {
        coeffs.reverse();
    }
    let angle_rank = match ANGLE_RANK_FIELDS.iter().find_map(|f| row.get(*f)) {
        None | Some(Value::Null) => None,
        Some(x) => Some(x.as_i64().ok_or_else(|| LmfdbError::SchemaDrift(ANGLE_RANK_FIELDS[0].into()))?),
    };
    let galois: serde_json::Map<String, Value> =
        GALOIS_FIELDS.iter().filter_map(|f| row.get(*f).map(|x| (f.to_string(), x.clone()))).collect();
    let rec = LmfdbRecord {
        label: label.to_string(),
        poly_coeffs: coeffs,
        angle_rank,
        galois_data: Value::Object(galois),
        retrieved_at: retrieved_at.to_string(),
    };
    rec.check_label()?;
    Ok(rec)
}

impl LmfdbRecord {
    /// The label must decode to exactly `poly_coeffs`.
    pub fn check_label(&self) -> Result<()> {
        let w = parse_label(&self.label).map_err(|_| LmfdbError::NotFound(self.label.clone()))?;
        let ours: Vec<BigInt> = self.poly_coeffs.iter().map(|&c| BigInt::from(c)).collect();
        if w.coeffs != ours {
            return Err(LmfdbError::Inconsistent {
                label: self.label.clone(),
                reason: "polynomial differs from the one encoded in the label".into(),
            });
        }
        Ok(())
    }

    /// Canonical JSON: sorted keys, two-space indent, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("record serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: LmfdbRecord = serde_json::from_str(s)?;
        rec.check_label()?;
        Ok(rec)
    }
}
