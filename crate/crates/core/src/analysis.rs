//! Full pipeline for one polynomial: slopes, splitting field and group,
//! code and partition, both angle-rank engines, and the theorem audit.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::audit::{self, Bundle, CheckResult};
use crate::code::{self, Code, LevelPartition, PropertyReport, ReducedSequence, SplitWitness};
use crate::error::{Error, Result};
use crate::galois::{splitting_field, GaloisOptions, SplittingField, UnitRatio};
use crate::hyperplane::{self, NewtonHyperplaneData};
use crate::lattice::{self, LatticeConfig, RelationGroup};
use crate::linalg::{self, IMat, QMat};
use crate::newton::{classify_newton, newton_slopes, NewtonClass, SlopeMultiset};
use crate::weil::WeilPolynomial;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub galois: GaloisOptions,
    pub lattice: LatticeConfig,
}

/// Outcome of a stage that may legitimately be skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StageStatus {
    Ok,
    Unsupported(String),
    OutOfScale(String),
    Skipped(String),
}

impl StageStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            StageStatus::Ok => "ok",
            StageStatus::Unsupported(_) => "unsupported",
            StageStatus::OutOfScale(_) => "out_of_scale",
            StageStatus::Skipped(_) => "skipped",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            StageStatus::Ok => None,
            StageStatus::Unsupported(s) | StageStatus::OutOfScale(s) | StageStatus::Skipped(s) => Some(s),
        }
    }

    fn from_error(e: &Error) -> Option<Self> {
        match e {
            Error::OutOfScale(s) => Some(StageStatus::OutOfScale(s.clone())),
            Error::RecombinationBudget(_) => Some(StageStatus::OutOfScale(e.to_string())),
            Error::Unsupported(s) => Some(StageStatus::Unsupported(s.clone())),
            Error::PrecisionExhausted(s) => Some(StageStatus::Unsupported(s.clone())),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub field_degree: usize,
    pub order: usize,
    pub generators: Vec<Vec<(usize, i8)>>,
    pub contains_minus_identity: bool,
    pub code: Code,
    pub partition: LevelPartition,
    pub gbar: PropertyReport,
    pub partition_preserved: bool,
    pub reduced: ReducedSequence,
    pub hbar: PropertyReport,
    pub unit_ratios: Vec<UnitRatio>,
    /// no ratio of distinct eigenvalues is a root of unity
    pub absolutely_simple: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agreement {
    pub ranks_agree: bool,
    pub lattices_agree: bool,
    pub kernel: IMat,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub poly: WeilPolynomial,
    pub g_eff: usize,
    pub slopes: SlopeMultiset,
    pub newton_class: NewtonClass,
    /// common denominator for the bounds: `lcm(2g, slope denominators)`
    pub bound_denominator: BigInt,
    pub galois_status: StageStatus,
    pub group: Option<GroupData>,
    pub engine_a_status: StageStatus,
    pub engine_a: Option<NewtonHyperplaneData>,
    pub relations: RelationGroup,
    pub delta: usize,
    pub certified: bool,
    pub agreement: Option<Agreement>,
    pub v_basis: QMat,
    pub vi_dims: Option<Vec<usize>>,
    pub split_witness: Option<SplitWitness>,
    pub sign_lattice: Option<IMat>,
    pub audit: Vec<CheckResult>,
    pub timings: Vec<(&'static str, f64)>,
}

impl Analysis {
    pub fn audit_failed(&self) -> bool {
        self.audit.iter().any(|c| c.status == audit::Status::Fail)
    }
}

pub fn analyze(poly: &WeilPolynomial, cfg: &AnalysisConfig) -> Result<Analysis> {
    if !poly.is_irreducible_power() {
        return Err(Error::Unsupported("P is not a power of an irreducible polynomial".into()));
    }
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, f64)>| {
        timings.push((name, clock.elapsed().as_secs_f64()));
        clock = Instant::now();
    };
    let h = &poly.h;
    let g = poly.g_eff();
    let slopes = newton_slopes(&poly.coeffs, &poly.p, poly.r);
    let newton_class = classify_newton(&slopes, poly.g);
    let d = BigInt::from(2 * g).lcm(&slopes.denominator_lcm());
    lap("newton", &mut timings);

    let (field, galois_status) = match splitting_field(h, &poly.q, &cfg.galois) {
        Ok(f) => (Some(f), StageStatus::Ok),
        Err(e) => match StageStatus::from_error(&e) {
            Some(s) => (None, s),
            None => return Err(e),
        },
    };
    let group = match &field {
        Some(f) => Some(group_data(f)?),
        None => None,
    };
    lap("galois", &mut timings);

    let (engine_a, engine_a_status) = match &field {
        Some(f) => match hyperplane::engine_a(f, &poly.p, poly.r) {
            Ok(a) => (Some(a), StageStatus::Ok),
            Err(e) => match StageStatus::from_error(&e) {
                Some(s) => (None, s),
                None => return Err(e),
            },
        },
        None => (None, StageStatus::Skipped("no splitting field".into())),
    };
    lap("engine_a", &mut timings);

    let relations = lattice::relation_group(h, &poly.q, field.as_ref(), &d, &cfg.lattice)?;
    let delta = relations.delta();
    let certified = relations.certified;
    lap("engine_b", &mut timings);

    let agreement = match &engine_a {
        Some(a) => {
            let kernel = lattice::integer_kernel(&a.matrix, g)?;
            Some(Agreement { ranks_agree: a.delta == delta, lattices_agree: kernel == relations.basis, kernel })
        }
        None => None,
    };
    if let Some(a) = &engine_a {
        for e in &relations.basis {
            let dot = e.iter().zip(&a.s).fold(BigRational::from_integer(0.into()), |acc, (x, y)| {
                acc + BigRational::from_integer(x.clone()) * y
            });
            if dot != BigRational::from_integer(0.into()) {
                return Err(Error::Internal("certified relation is not orthogonal to the slope vector".into()));
            }
        }
    }
    let v_basis = match &engine_a {
        Some(a) => a.v_basis.clone(),
        None => lattice::v_from_relations(&relations.basis, g),
    };

    let mut vi_dims = None;
    let mut split_witness = None;
    let mut sign_lattice = None;
    let mut v1_dim = None;
    if let Some(gd) = &group {
        let parts = &gd.partition.parts;
        let dims = hyperplane::decompose_v(&v_basis, parts, g);
        if dims.iter().sum::<usize>() != v_basis.len() {
            return Err(Error::Internal("pieces of V do not add up to V".into()));
        }
        let t1 = &parts[0];
        let gp = t1.len();
        v1_dim = Some(dims[0]);
        let piece = hyperplane::v_piece(&v_basis, t1, g);
        let line: Option<Vec<BigRational>> = if dims[0] == 1 {
            piece.first().cloned()
        } else if gp >= 2 && dims[0] + 1 == gp {
            linalg::orthogonal_complement(&piece, gp).first().map(|v| v.iter().cloned().map(BigRational::from_integer).collect())
        } else {
            None
        };
        if let Some(v) = line {
            split_witness = code::split_witness(&gd.reduced, &v);
        }
        if gp >= 2 && dims.iter().all(|&k| k + 1 == gp) {
            let mut rows = Vec::new();
            for part in parts {
                let piece = hyperplane::v_piece(&v_basis, part, g);
                for u in linalg::orthogonal_complement(&piece, part.len()) {
                    let mut row = vec![BigInt::from(0); g];
                    for (k, &j) in part.iter().enumerate() {
                        row[j] = u[k].clone();
                    }
                    rows.push(row);
                }
            }
            sign_lattice = Some(linalg::hermite_normal_form(&linalg::saturate(&rows)));
        }
        vi_dims = Some(dims);
    }

    let bundle = Bundle {
        g,
        proper_power: poly.e > 1,
        slopes: slopes.clone(),
        delta,
        certified,
        m: group.as_ref().map(|gd| gd.partition.m),
        g_prime: group.as_ref().and_then(|gd| gd.partition.g_prime),
        code_trivial: group.as_ref().map(|gd| gd.code.is_trivial()),
        gbar_primitive: group.as_ref().map(|gd| gd.gbar.primitive),
        hbar_two_transitive: group.as_ref().map(|gd| gd.hbar.two_transitive),
        hbar_affine: group.as_ref().and_then(|gd| gd.hbar.affine),
        v1_dim,
        split_ok: split_witness
            .as_ref()
            .map(|w| w.homomorphism && w.splits && w.sign_vector.is_some()),
        sign_lattice: sign_lattice.clone(),
        relation_basis: relations.basis.clone(),
        weights: relations.short_weights.clone(),
        h_theorem: relations.h_theorem.clone(),
        h_lemma: relations.h_lemma.clone(),
    };
    let audit = audit::run_checks(&bundle);
    lap("audit", &mut timings);

    Ok(Analysis {
        poly: poly.clone(),
        g_eff: g,
        slopes,
        newton_class,
        bound_denominator: d,
        galois_status,
        group,
        engine_a_status,
        engine_a,
        relations,
        delta,
        certified,
        agreement,
        v_basis,
        vi_dims,
        split_witness,
        sign_lattice,
        audit,
        timings,
    })
}

fn group_data(f: &SplittingField) -> Result<GroupData> {
    let grp = f.automorphism_group();
    let g = f.g;
    let code = code::code_of(grp);
    if !code.is_linear() || !code.words.contains(&vec![1u8; g]) {
        return Err(Error::Internal("code is not linear or misses the all-ones word".into()));
    }
    let partition = code::level_partition(&code);
    let perms = code::quotient_perms(grp);
    let gbar = code::group_properties(g, &perms)?;
    let partition_preserved = code::preserves_partition(&perms, &partition.parts);
    if !partition_preserved {
        return Err(Error::Internal("level partition is not preserved by the group".into()));
    }
    if gbar.two_transitive && !gbar.primitive || gbar.primitive && !gbar.transitive {
        return Err(Error::Internal("transitivity implications violated".into()));
    }
    let reduced = code::reduced_sequence(grp, &partition.parts[0])?;
    let hbar = code::group_properties(partition.parts[0].len(), &reduced.hbar)?;
    let unit_ratios = f.unit_ratio_pairs();
    let absolutely_simple = unit_ratios.iter().all(|u| u.alpha_order.is_none());
    Ok(GroupData {
        field_degree: f.degree(),
        order: grp.order(),
        generators: grp.generators.iter().map(|s| s.image.clone()).collect(),
        contains_minus_identity: grp.contains_minus_identity(),
        code,
        partition,
        gbar,
        partition_preserved,
        reduced,
        hbar,
        unit_ratios,
        absolutely_simple,
    })
}
