#![allow(dead_code)]

//! Randomized property suites with fixed seeds; shared by the core test
//! target and the acceptance target.

use angrank_core::linalg::{self, column_weight_w, kernel_basis, lemma_bound, smith_normal_form, IMat, QMat};
use angrank_core::newton::newton_slopes;
use angrank_core::weil::{format_label, parse_label, validate_weil, WeilPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 256;

/// (name, suite); each suite returns a description of the first failure.
pub const SUITES: &[(&str, fn() -> Result<(), String>)] = &[
    ("weil functional equation and Sturm validation", weil_validation),
    ("newton slope invariants", newton_invariants),
    ("smith normal form round trip", snf_round_trip),
    ("integer kernel against brute force", kernel_brute_force),
    ("column weight inequalities", weight_inequalities),
    ("column weight product inequality with factor N", product_inequality_as_stated),
    ("kernel weight within lemma bound", kernel_weight_bound),
];

fn runner(seed: u8) -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn z(x: i64) -> BigInt {
    BigInt::from(x)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(p, r)` pairs for the fuzzed base fields.
const FIELDS: &[(i64, u32)] = &[(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)];

fn isqrt_floor(n: i64) -> i64 {
    let mut s = (n as f64).sqrt() as i64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// `prod (T^2 - t_i T + q)`, ascending; valid iff every `t_i^2 <= 4q`.
fn from_traces(q: i64, traces: &[i64]) -> Vec<BigInt> {
    traces.iter().fold(vec![BigInt::one()], |acc, &t| mul(&acc, &[z(q), z(-t), z(1)]))
}

fn traces(margin: i64) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..FIELDS.len(), 1usize..=3).prop_flat_map(move |(f, g)| {
        let (p, r) = FIELDS[f];
        let q = p.pow(r);
        let b = isqrt_floor(4 * q) + margin;
        (Just(f), prop::collection::vec(-b..=b, g))
    })
}

pub fn weil_validation() -> Result<(), String> {
    finish(runner(1).run(&traces(3), |(f, ts)| {
        let (p, r) = FIELDS[f];
        let q = p.pow(r);
        let coeffs = from_traces(q, &ts);
        let expect_valid = ts.iter().all(|t| t * t <= 4 * q);
        let w = WeilPolynomial::from_coeffs(&z(q), coeffs.clone());
        prop_assert_eq!(w.is_ok(), expect_valid, "traces {:?} q {}", ts, q);
        if let Ok(w) = w {
            prop_assert!(w.validation.functional_equation_ok && w.validation.weil_bound_ok);
            let label = format_label(w.g, &w.q, &w.free_coeffs());
            prop_assert_eq!(&label, &w.label());
            let back = parse_label(&label).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&back.coeffs, &coeffs);
            let again = WeilPolynomial::from_free_coeffs(&z(q), &w.free_coeffs())
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&again.coeffs, &coeffs);
            // breaking the constant term breaks the functional equation
            let mut bad = coeffs.clone();
            bad[0] += 1;
            prop_assert!(WeilPolynomial::from_coeffs(&z(q), bad).is_err());
            // the middle coefficient is at most binom(2g, g) q^(g/2) in absolute value
            let g = ts.len();
            let root = isqrt_floor(q) + i64::from(isqrt_floor(q).pow(2) != q);
            let binom: i64 = (0..g as i64).fold(1, |acc, i| acc * (2 * g as i64 - i) / (i + 1));
            let delta = if g == 1 { 4 * root + 1 } else { 2 * binom * root.pow(g as u32) + 1 };
            for sign in [1i64, -1] {
                let mut moved = coeffs.clone();
                moved[g] += sign * delta;
                let rep = validate_weil(&moved, &z(q)).map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert!(rep.functional_equation_ok && !rep.weil_bound_ok, "{:?} moved by {}", ts, sign * delta);
            }
        }
        Ok(())
    }))
}

pub fn newton_invariants() -> Result<(), String> {
    finish(runner(2).run(&traces(0), |(f, ts)| {
        let (p, r) = FIELDS[f];
        let q = p.pow(r);
        let g = ts.len();
        let s = newton_slopes(&from_traces(q, &ts), &z(p), r);
        prop_assert_eq!(s.slopes.len(), 2 * g);
        let one = BigRational::one();
        let mut mirrored: Vec<BigRational> = s.slopes.iter().map(|x| &one - x).collect();
        mirrored.sort();
        let mut sorted = s.slopes.clone();
        sorted.sort();
        prop_assert_eq!(&mirrored, &sorted);
        let sum: BigRational = s.slopes.iter().sum();
        prop_assert_eq!(sum, BigRational::from_integer(z(g as i64)));
        for x in &s.slopes {
            prop_assert!(!x.is_negative() && *x <= one);
            // vertices of the polygon lie on (1/r) Z
            let mult = s.slopes.iter().filter(|y| *y == x).count() as i64;
            prop_assert!((z(r as i64) * z(mult)).is_multiple_of(x.denom()));
            if r == 1 {
                prop_assert!(z(2 * g as i64).is_multiple_of(x.denom()));
            }
        }
        Ok(())
    }))
}

fn rational_matrix(max_dim: usize) -> impl Strategy<Value = (QMat, BigInt)> {
    (1..=max_dim, 1..=max_dim, 1i64..=6).prop_flat_map(|(m, n, d)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, n), m).prop_map(move |rows| {
            let a: QMat = rows.iter().map(|r| r.iter().map(|&x| BigRational::new(z(x), z(d))).collect()).collect();
            let den = a.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            (a, den)
        })
    })
}

fn scale(a: &QMat, d: &BigInt) -> IMat {
    a.iter().map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect()).collect()
}

pub fn snf_round_trip() -> Result<(), String> {
    finish(runner(3).run(&rational_matrix(5), |(a, d)| {
        let da = scale(&a, &d);
        let snf = smith_normal_form(&da);
        prop_assert_eq!(linalg::mat_mul(&linalg::mat_mul(&snf.p, &snf.s), &snf.q), da.clone());
        prop_assert!(linalg::det(&snf.p).abs().is_one());
        prop_assert!(linalg::det(&snf.q).abs().is_one());
        prop_assert_eq!(linalg::mat_mul(&snf.q, &snf.q_inv), linalg::identity(snf.q.len()));
        let diag = snf.diagonal();
        for (i, row) in snf.s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j || i >= snf.rank {
                    prop_assert!(x.is_zero());
                }
            }
        }
        prop_assert!(diag.iter().all(|x| x.is_positive()));
        prop_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert_eq!(snf.rank, linalg::rational_rank(&a));
        Ok(())
    }))
}

/// 6x4 matrices with entries in [-3, 3] whose later columns are often small
/// combinations of earlier ones, so kernels are frequently nontrivial.
fn kernel_case() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 6),
        prop::collection::vec((0usize..3, -1i64..=1, -1i64..=1, 0usize..4, 0usize..4), 4),
    )
        .prop_map(|(mut rows, deps)| {
            for (j, &(mode, a, b, k, l)) in deps.iter().enumerate().skip(1) {
                if mode == 0 {
                    continue;
                }
                let (k, l) = (k % j, l % j);
                let col: Vec<i64> = rows.iter().map(|r| a * r[k] + b * r[l]).collect();
                if col.iter().all(|x| x.abs() <= 3) {
                    for (r, v) in rows.iter_mut().zip(col) {
                        r[j] = v;
                    }
                }
            }
            rows
        })
}

/// Whether `v` is an integer combination of the rows of `basis` (which are independent).
fn in_lattice(basis: &IMat, v: &[BigInt]) -> bool {
    let mut rows = basis.clone();
    rows.push(v.to_vec());
    let h = linalg::hermite_normal_form(&rows);
    h.len() == basis.len() && linalg::hermite_normal_form(basis) == h
}

pub fn kernel_brute_force() -> Result<(), String> {
    finish(runner(4).run(&kernel_case(), |rows| {
        let a: QMat = rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(z(x))).collect()).collect();
        let kb = kernel_basis(&a, &BigInt::one()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let rank = linalg::rational_rank(&a);
        prop_assert_eq!(kb.rank, rank);
        prop_assert_eq!(kb.vectors.len(), 4 - rank);
        let basis: IMat = kb.vectors.clone();
        for v in &basis {
            prop_assert!(rows.iter().all(|r| r.iter().zip(v).map(|(x, y)| z(*x) * y).sum::<BigInt>().is_zero()));
        }
        let box_r = 4i64;
        let mut found: IMat = Vec::new();
        let mut e = [-box_r; 4];
        loop {
            if e.iter().any(|x| *x != 0) && rows.iter().all(|r| r.iter().zip(&e).map(|(x, y)| x * y).sum::<i64>() == 0) {
                let v: Vec<BigInt> = e.iter().map(|&x| z(x)).collect();
                prop_assert!(in_lattice(&basis, &v), "kernel vector {:?} outside the computed lattice", e);
                found.push(v);
            }
            let mut k = 0;
            while k < 4 {
                e[k] += 1;
                if e[k] > box_r {
                    e[k] = -box_r;
                    k += 1;
                } else {
                    break;
                }
            }
            if k == 4 {
                break;
            }
        }
        // when the box already spans the kernel, the two lattices coincide
        if !found.is_empty() && linalg::rational_rank(&linalg::to_q(&found)) == basis.len() {
            let sat = linalg::saturate(&found);
            prop_assert_eq!(linalg::hermite_normal_form(&sat), linalg::hermite_normal_form(&basis));
        }
        Ok(())
    }))
}

fn supported(n: usize, m: usize) -> impl Strategy<Value = IMat> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, m), n).prop_map(move |rows| {
        let mut a: IMat = rows.iter().map(|r| r.iter().map(|&x| z(x)).collect()).collect();
        // every row and column gets a nonzero entry
        for i in 0..n.max(m) {
            let (r, c) = (i % n, i % m);
            if a[r].iter().all(|x| x.is_zero()) || a.iter().all(|row| row[c].is_zero()) {
                a[r][c] = BigInt::one();
            }
        }
        a
    })
}

fn col_weight(a: &IMat) -> BigInt {
    column_weight_w(a)
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

fn apply(a: &IMat, x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|r| r.iter().zip(x).map(|(u, v)| u * v).sum()).collect()
}

/// Lower estimate of `sup_{|x|_1 = 1} |Ax|_1` from the unit vectors and the samples.
fn op_norm_estimate(a: &IMat, samples: &[Vec<i64>]) -> BigRational {
    let n = a[0].len();
    let unit = (0..n).map(|j| (0..n).map(|i| if i == j { 1 } else { 0 }).collect::<Vec<i64>>());
    unit.chain(samples.iter().cloned())
        .filter(|x| x.iter().any(|v| *v != 0))
        .map(|x| {
            let x: Vec<BigInt> = x.iter().map(|&v| z(v)).collect();
            BigRational::new(l1(&apply(a, &x)), l1(&x))
        })
        .max()
        .unwrap()
}

pub fn weight_inequalities() -> Result<(), String> {
    let shapes = (1usize..=5, 1usize..=5, 1usize..=5);
    let strat = shapes.prop_flat_map(|(n, r, m)| {
        (
            supported(n, r),
            supported(n, m),
            supported(n, r),
            -6i64..=6,
            supported(n, n),
            prop::collection::vec(prop::collection::vec(-3i64..=3, n), 4),
        )
    });
    finish(runner(5).run(&strat, |(a, b, a2, c, sq, xs)| {
        let bt = linalg::transpose(&b, b[0].len());
        // (1) with M = number of columns of B
        let m = b[0].len();
        prop_assert!(col_weight(&linalg::mat_mul(&bt, &a)) <= z(m as i64) * col_weight(&a) * col_weight(&b));
        // (2) subadditivity
        let sum: IMat = a.iter().zip(&a2).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect();
        prop_assert!(col_weight(&sum) <= col_weight(&a) + col_weight(&a2));
        // (3) homogeneity
        let ca: IMat = a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        prop_assert_eq!(col_weight(&ca), z(c.abs()) * col_weight(&a));
        // (4) w(A) <= |A|_1 for square A
        prop_assert!(BigRational::from_integer(col_weight(&sq)) <= op_norm_estimate(&sq, &xs));
        Ok(())
    }))
}

/// `w(B^t A) <= N w(A) w(B)` for `A` of size `N x R` and `B` of size `N x M`.
/// False once `M > N`: `A = [1]`, `B = [1 1]` gives `2 > 1`.
pub fn product_inequality_as_stated() -> Result<(), String> {
    let strat = (1usize..=5, 1usize..=5, 1usize..=5).prop_flat_map(|(n, r, m)| (supported(n, r), supported(n, m)));
    finish(runner(7).run(&strat, |(a, b)| {
        let n = a.len();
        let bt = linalg::transpose(&b, b[0].len());
        prop_assert!(col_weight(&linalg::mat_mul(&bt, &a)) <= z(n as i64) * col_weight(&a) * col_weight(&b));
        Ok(())
    }))
}

pub fn product_counterexample() -> (BigInt, BigInt) {
    let a: IMat = vec![vec![z(1)]];
    let b: IMat = vec![vec![z(1), z(1)]];
    let lhs = col_weight(&linalg::mat_mul(&linalg::transpose(&b, 2), &a));
    (lhs, z(1) * col_weight(&a) * col_weight(&b))
}

pub fn kernel_weight_bound() -> Result<(), String> {
    let strat = (1usize..=5, 1i64..=6).prop_flat_map(|(n, d)| {
        (n..=n + 3)
            .prop_flat_map(move |m| prop::collection::vec(prop::collection::vec(-4i64..=4, n), m))
            .prop_map(move |rows| (rows, d))
    });
    finish(runner(6).run(&strat, |(rows, d)| {
        let a: QMat = rows.iter().map(|r| r.iter().map(|&x| BigRational::new(z(x), z(d))).collect()).collect();
        if a.iter().flatten().all(|x| x.is_zero()) {
            return Ok(());
        }
        let n = a[0].len();
        let kb = kernel_basis(&a, &z(d)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let max_a = a.iter().flatten().map(|x| x.abs()).max().unwrap();
        let bound = lemma_bound(n as u32, kb.rank as u32, &z(d), &max_a);
        prop_assert!(bound.admits(&BigRational::from_integer(kb.w.clone())), "w = {} > {}", kb.w, bound);
        Ok(())
    }))
}
