use num_bigint::BigInt;
use serde::Serialize;

use crate::{LmfdbError, LmfdbRecord, Result};

/// The locally computed quantities that have upstream counterparts.
#[derive(Debug, Clone)]
pub struct Computed {
    pub label: String,
    /// ascending
    pub coeffs: Vec<BigInt>,
    pub angle_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffKind {
    Mismatch,
    Informational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub field: String,
    pub ours: String,
    pub theirs: String,
    pub kind: DiffKind,
}

/// Field-by-field comparison; an empty list means agreement.
pub fn cross_validate(ours: &Computed, rec: &LmfdbRecord) -> Result<Vec<Diff>> {
    if ours.label != rec.label {
        return Err(LmfdbError::LabelMismatch { ours: ours.label.clone(), theirs: rec.label.clone() });
    }
    let mut out = Vec::new();
    let theirs: Vec<BigInt> = rec.poly_coeffs.iter().map(|&c| BigInt::from(c)).collect();
    if theirs != ours.coeffs {
        let show = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        out.push(Diff {
            field: "coefficients".into(),
            ours: show(&ours.coeffs),
            theirs: show(&theirs),
            kind: DiffKind::Mismatch,
        });
    }
    match rec.angle_rank {
        None => out.push(Diff {
            field: "angle_rank".into(),
            ours: ours.angle_rank.to_string(),
            theirs: "absent".into(),
            kind: DiffKind::Informational,
        }),
        Some(r) if r != ours.angle_rank as i64 => out.push(Diff {
            field: "angle_rank".into(),
            ours: ours.angle_rank.to_string(),
            theirs: r.to_string(),
            kind: DiffKind::Mismatch,
        }),
        Some(_) => {}
    }
    Ok(out)
}
