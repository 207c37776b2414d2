use std::sync::Arc;

use angrank_core::analysis::{analyze, Analysis, AnalysisConfig, StageStatus};
use angrank_core::code::PropertyReport;
use angrank_core::linalg::{Bound, IMat, QMat};
use angrank_core::newton::format_slope;
use angrank_lmfdb::{cross_validate, Client, Computed};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::{CliError, Input};

#[derive(Clone, Default)]
pub struct RunOptions {
    pub config: AnalysisConfig,
    /// include per-stage wall-clock times (makes reports run-dependent)
    pub timings: bool,
    pub lmfdb: Option<Arc<Client>>,
}

/// One row of the batch summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub label: String,
    pub g: usize,
    pub q: String,
    pub newton: String,
    pub m: Option<usize>,
    pub delta: usize,
    pub certified: bool,
    pub audit: &'static str,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub label: String,
    pub report: Value,
    pub audit_failed: bool,
    pub summary: SummaryRow,
}

/// Sorted keys, two-space indent, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's map is a BTreeMap here, so keys come out sorted
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rat(x: &BigRational) -> Value {
    Value::String(format_slope(x))
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn imat(m: &IMat) -> Value {
    Value::Array(m.iter().map(|r| ints(r)).collect())
}

fn qmat(m: &QMat) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(rat).collect())).collect())
}

fn bound(b: &Bound) -> Value {
    json!({ "exact": b.to_string(), "ceil": int(&b.ceil()) })
}

fn props(p: &PropertyReport) -> Value {
    json!({
        "degree": p.degree,
        "order": p.order,
        "transitive": p.transitive,
        "primitive": p.primitive,
        "block_witness": p.block_witness,
        "two_transitive": p.two_transitive,
        "affine": p.affine,
    })
}

fn stage(s: &StageStatus) -> Value {
    json!({ "status": s.as_str(), "reason": s.reason() })
}

pub fn run(input: &Input, opts: &RunOptions) -> Result<Outcome, CliError> {
    let poly = input.resolve()?;
    let an = analyze(&poly, &opts.config).map_err(|e| CliError::new("analysis", e))?;
    let mut report = build_report(input, &an, opts.timings);
    let label = poly.label();
    if let Some(client) = &opts.lmfdb {
        report["lmfdb"] = lmfdb_section(client, &an, &label);
    }
    let audit_failed = an.audit_failed();
    let summary = SummaryRow {
        label: label.clone(),
        g: poly.g,
        q: poly.q.to_string(),
        newton: an.newton_class.tag.as_str().to_string(),
        m: an.group.as_ref().map(|gd| gd.partition.m),
        delta: an.delta,
        certified: an.certified,
        audit: if audit_failed { "fail" } else { "pass" },
    };
    Ok(Outcome { label, report, audit_failed, summary })
}

fn lmfdb_section(client: &Client, an: &Analysis, label: &str) -> Value {
    let rec = match client.fetch_isogeny_class(label) {
        Ok(r) => r,
        Err(e) => return json!({ "status": "unavailable", "error": e.to_string() }),
    };
    let ours = Computed { label: label.to_string(), coeffs: an.poly.coeffs.clone(), angle_rank: an.delta };
    match cross_validate(&ours, &rec) {
        Ok(diffs) => json!({
            "status": if diffs.iter().any(|d| d.kind == angrank_lmfdb::DiffKind::Mismatch) { "mismatch" } else { "ok" },
            "diffs": diffs,
            "record": rec,
        }),
        Err(e) => json!({ "status": "error", "error": e.to_string() }),
    }
}

pub fn build_report(input: &Input, an: &Analysis, timings: bool) -> Value {
    let p = &an.poly;
    let v = &p.validation;
    let mut r = Map::new();
    r.insert("tool".into(), json!({ "name": "angrank", "version": env!("CARGO_PKG_VERSION") }));
    r.insert("input".into(), input.echo());
    r.insert(
        "polynomial".into(),
        json!({
            "label": p.label(),
            "g": p.g,
            "q": int(&p.q),
            "p": int(&p.p),
            "r": p.r,
            "coefficients": ints(&p.coeffs),
            "radical": ints(&p.h),
            "power": p.e,
            "g_eff": an.g_eff,
        }),
    );
    r.insert(
        "validation".into(),
        json!({
            "functional_equation": v.functional_equation_ok,
            "weil_bound": v.weil_bound_ok,
            "irreducible_power": v.irreducible_power.is_some(),
            "boundary_root": v.boundary_root_flag,
            "notes": v.notes,
        }),
    );
    r.insert(
        "newton".into(),
        json!({
            "slopes": an.slopes.slopes.iter().map(rat).collect::<Vec<_>>(),
            "class": an.newton_class.tag.as_str(),
            "witness": an.newton_class.witness,
            "bound_denominator": int(&an.bound_denominator),
        }),
    );
    r.insert("galois".into(), galois_section(an));
    r.insert("angle_rank".into(), angle_rank_section(an));
    r.insert("relations".into(), relations_section(an));
    let failed = an.audit_failed();
    r.insert(
        "audit".into(),
        json!({
            "status": if failed { "fail" } else { "pass" },
            "checks": an.audit.iter().map(|c| json!({
                "name": c.name,
                "title": c.title,
                "applicable": c.applicable,
                "status": c.status.as_str(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        }),
    );
    if timings {
        let t: Map<String, Value> = an.timings.iter().map(|(k, s)| (k.to_string(), json!(s))).collect();
        r.insert("timings".into(), Value::Object(t));
    }
    Value::Object(r)
}

fn galois_section(an: &Analysis) -> Value {
    let mut degraded = Vec::new();
    if an.galois_status != StageStatus::Ok {
        degraded.push("galois_group");
    }
    if an.engine_a_status != StageStatus::Ok {
        degraded.push("newton_hyperplane");
    }
    if !an.certified {
        degraded.push("uncertified_angle_rank");
    }
    let mut out = json!({
        "status": an.galois_status.as_str(),
        "reason": an.galois_status.reason(),
        "degraded": degraded,
    });
    if let Some(gd) = &an.group {
        let gens: Vec<Vec<i64>> = gd
            .generators
            .iter()
            .map(|g| g.iter().map(|&(i, s)| (i as i64 + 1) * s as i64).collect())
            .collect();
        let extra = json!({
            "field_degree": gd.field_degree,
            "group_order": gd.order,
            "generators": gens,
            "contains_minus_identity": gd.contains_minus_identity,
            "code_dimension": gd.code.dim,
            "code_trivial": gd.code.is_trivial(),
            "m": gd.partition.m,
            "g_prime": gd.partition.g_prime,
            "partition": gd.partition.parts,
            "partition_preserved": gd.partition_preserved,
            "quotient": props(&gd.gbar),
            "reduced": props(&gd.hbar),
            "absolutely_simple": gd.absolutely_simple,
            "unit_ratios": gd.unit_ratios.iter().map(|u| json!({
                "i": u.i, "j": u.j, "sign": u.sign, "order": u.order, "alpha_order": u.alpha_order,
            })).collect::<Vec<_>>(),
        });
        merge(&mut out, extra);
    }
    out
}

fn angle_rank_section(an: &Analysis) -> Value {
    let rel = &an.relations;
    let mut out = json!({
        "delta": an.delta,
        "certified": an.certified,
        "engine_a": stage(&an.engine_a_status),
        "engine_b": {
            "status": if rel.certified { "certified" } else { "uncertified" },
            "method": rel.method.as_str(),
            "rank": rel.rank(),
        },
        "engines_agree": an.agreement.as_ref().map(|a| a.ranks_agree && a.lattices_agree),
        "v_basis": qmat(&an.v_basis),
        "v_part_dims": an.vi_dims,
        "sign_lattice": an.sign_lattice.as_ref().map(imat),
    });
    if let Some(a) = &an.engine_a {
        merge(&mut out, json!({ "newton_vector": a.s.iter().map(rat).collect::<Vec<_>>() }));
    }
    if let Some(w) = &an.split_witness {
        merge(
            &mut out,
            json!({ "split_witness": {
                "character": w.character,
                "homomorphism": w.homomorphism,
                "splits": w.splits,
                "sign_vector": w.sign_vector,
            }}),
        );
    }
    out
}

const DISCREPANCY_NOTE: &str = "theorem form g*delta^3*(sqrt(g)*delta)^delta and kernel-bound form \
g*delta^3*(sqrt(delta)*d)^delta differ; both reported, not reconciled";

fn relations_section(an: &Analysis) -> Value {
    let rel = &an.relations;
    let max_w = rel.short_weights.iter().max().cloned().unwrap_or_default();
    let w = BigRational::from_integer(max_w.clone());
    json!({
        "rank": rel.rank(),
        "basis": imat(&rel.basis),
        "orders": rel.orders,
        "weights": ints(&rel.weights),
        "short_basis": imat(&rel.short_basis),
        "short_weights": ints(&rel.short_weights),
        "n_star": int(&rel.n_star),
        "bits": rel.bits,
        "exclusion": rel.exclusion.as_ref().map(|x| json!({
            "radius": bound(&x.radius),
            "eta": rat(&x.eta),
            "threshold": rat(&x.threshold),
            "min_gram_schmidt_norm2": rat(&x.min_gs_norm2),
            "frozen_rank": x.frozen_rank,
            "bits": x.bits,
        })),
        "bounds": {
            "h_theorem": bound(&rel.h_theorem),
            "h_lemma": bound(&rel.h_lemma),
            "h_exclusion": bound(&rel.h_excl),
            "max_short_weight": int(&max_w),
            "within_h_theorem": rel.h_theorem.admits(&w),
            "within_h_lemma": rel.h_lemma.admits(&w),
            "discrepancy": {
                "flagged": rel.h_theorem != rel.h_lemma,
                "note": DISCREPANCY_NOTE,
            },
        },
    })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}
