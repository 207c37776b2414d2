//! Exact splitting field of an irreducible Weil polynomial `h` and its
//! automorphism group as signed permutations.
//!
//! The field is built from a single resolvent.  With roots labelled
//! `alpha_0..alpha_{2g-1}` (`alpha_{j+g}` conjugate to `alpha_j`) and an integer
//! vector `c`, let `y_w = sum_j c_j alpha_{w(j)}` for `w` in the hyperoctahedral
//! group `W`, which contains the Galois group.  `R(T) = prod_w (T - y_w)` is
//! computed numerically and rounded; any irreducible factor `m` of it is the
//! minimal polynomial of a primitive element of the splitting field.  Root
//! expressions `g_j(y)` come from rounded trace interpolants, after which
//! every claim is verified exactly in `Q[y]/(m)`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factor;
use crate::arith::fixed::{Cx, Fx};
use crate::arith::ntheory::orders_with_phi_at_most;
use crate::arith::roots::{conjugate_paired_roots, RootBall};
use crate::arith::zpoly::{self, ZPoly};
use crate::error::{Error, Result};
use crate::nf::{Elt, NumberField};
use crate::signed_perm::{generate, greedy_generators, hyperoctahedral, is_group, SignedPerm};

/// Default largest accepted `[L:Q]`.
pub const DEFAULT_DEGREE_CAP: usize = 96;

/// Largest hyperoctahedral group for which the resolvent is formed.
const MAX_RESOLVENT_DEGREE: usize = 384;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisOptions {
    pub degree_cap: usize,
    pub recombination_budget: u64,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions {
            degree_cap: DEFAULT_DEGREE_CAP,
            recombination_budget: factor::DEFAULT_RECOMBINATION_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SplittingField {
    pub g: usize,
    pub h: ZPoly,
    pub q: BigInt,
    pub field: NumberField,
    /// `g_j(y)` for `j = 0..2g`
    pub roots: Vec<Elt>,
    /// `y = sum_j c_j alpha_j`
    pub c: Vec<BigInt>,
    /// numerical roots in the same labelling
    pub balls: Vec<RootBall>,
    /// largest denominator among the root expressions
    pub denominator_bound: BigInt,
    group: SignedPermGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermGroup {
    pub g: usize,
    /// sorted; identity first
    pub elements: Vec<SignedPerm>,
    pub identity_index: usize,
    /// `table[a][b]` is the index of `elements[a] * elements[b]`
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<SignedPerm>,
}

impl SignedPermGroup {
    pub fn from_elements(g: usize, elts: BTreeSet<SignedPerm>, generators: Vec<SignedPerm>) -> Result<Self> {
        if !is_group(&elts) {
            return Err(Error::Internal("element list is not a group".into()));
        }
        let elements: Vec<SignedPerm> = elts.into_iter().collect();
        let index = |x: &SignedPerm| elements.binary_search(x).expect("closed");
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index(&a.compose(b))).collect())
            .collect();
        let identity_index = index(&SignedPerm::identity(g));
        Ok(SignedPermGroup { g, elements, identity_index, table, generators })
    }

    /// The group generated by `gens`.
    pub fn generated_by(g: usize, gens: &[SignedPerm]) -> Result<Self> {
        Self::from_elements(g, generate(g, gens), gens.to_vec())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains_minus_identity(&self) -> bool {
        let minus = SignedPerm { image: (0..self.g).map(|j| (j, -1)).collect() };
        self.elements.contains(&minus)
    }

    pub fn matrices(&self) -> Vec<Vec<Vec<i64>>> {
        self.elements.iter().map(|e| e.matrix()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRatio {
    pub i: usize,
    pub j: usize,
    /// `+1` for `beta_i / beta_j`, `-1` for `beta_i * beta_j = beta_i / beta_{j+g}`
    pub sign: i8,
    /// order of `beta_i / beta_j^sign`
    pub order: u64,
    /// order of the matching ratio `alpha_i / alpha_j` or `alpha_i / alpha_{j+g}`
    pub alpha_order: Option<u64>,
}

/// Exact splitting field of the irreducible Weil polynomial `h` over `q`.
pub fn splitting_field(h: &[BigInt], q: &BigInt, opts: &GaloisOptions) -> Result<SplittingField> {
    let n = zpoly::degree(h).ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if n == 0 || n % 2 == 1 {
        return Err(Error::Unsupported("splitting field needs an even-degree polynomial".into()));
    }
    if !factor::is_irreducible(h)? {
        return Err(Error::Unsupported("splitting field needs an irreducible polynomial".into()));
    }
    let g = n / 2;
    let w_all = hyperoctahedral(g);
    if w_all.len() > MAX_RESOLVENT_DEGREE {
        return Err(Error::OutOfScale(format!("g = {g} needs a resolvent of degree {}", w_all.len())));
    }
    let probe = conjugate_paired_roots(h, 64)?;
    let c = choose_coefficients(&probe, &w_all)?;
    let c1: u64 = c.iter().map(|x| x.abs().to_u64().unwrap_or(0)).sum();
    let ymax = (c1 as f64) * q_sqrt_f64(q) + 1.0;
    let mut prec = (w_all.len() as f64 * (ymax + 1.0).log2()).ceil() as u32 + 128;
    let mut last_err = None;
    for _ in 0..4 {
        match build(h, q, g, &c, &w_all, prec, opts) {
            Ok(f) => return Ok(f),
            Err(e @ (Error::OutOfScale(_) | Error::RecombinationBudget(_))) => return Err(e),
            Err(e) => last_err = Some(e),
        }
        prec *= 2;
    }
    Err(last_err.unwrap_or_else(|| Error::PrecisionExhausted("splitting field".into())))
}

fn q_sqrt_f64(q: &BigInt) -> f64 {
    Fx::new(0).to_f64(q).sqrt()
}

/// Smallest `c` (by max norm, then lexicographic) with all `y_w` numerically distinct.
fn choose_coefficients(balls: &[RootBall], w_all: &[SignedPerm]) -> Result<Vec<BigInt>> {
    let g = balls.len() / 2;
    let fx = balls[0].fx();
    let pts: Vec<(f64, f64)> = balls.iter().map(|b| fx.cto_f64(&b.center)).collect();
    for k in 1..=8i64 {
        let mut c = vec![-k; g];
        loop {
            if c.iter().any(|x| x.abs() == k) && distinct_values(&pts, &c, w_all) {
                return Ok(c.into_iter().map(BigInt::from).collect());
            }
            // odometer over [-k, k]^g
            let mut i = 0;
            while i < g && c[i] == k {
                c[i] = -k;
                i += 1;
            }
            if i == g {
                break;
            }
            c[i] += 1;
        }
    }
    Err(Error::Internal("no separating primitive element found".into()))
}

fn distinct_values(pts: &[(f64, f64)], c: &[i64], w_all: &[SignedPerm]) -> bool {
    let vals: Vec<(f64, f64)> = w_all
        .iter()
        .map(|w| {
            let mut acc = (0.0, 0.0);
            for (j, &cj) in c.iter().enumerate() {
                let p = pts[w.on_root(j)];
                acc.0 += cj as f64 * p.0;
                acc.1 += cj as f64 * p.1;
            }
            acc
        })
        .collect();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let d = (vals[i].0 - vals[j].0).hypot(vals[i].1 - vals[j].1);
            if d < 1e-6 {
                return false;
            }
        }
    }
    true
}

fn y_value(fx: Fx, balls: &[RootBall], c: &[BigInt], w: &SignedPerm) -> Cx {
    let mut acc = Cx::default();
    for (j, cj) in c.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        acc = fx.cadd(&acc, &fx.cscale(&balls[w.on_root(j)].center, cj));
    }
    acc
}

fn build(
    h: &[BigInt],
    q: &BigInt,
    g: usize,
    c: &[BigInt],
    w_all: &[SignedPerm],
    prec: u32,
    opts: &GaloisOptions,
) -> Result<SplittingField> {
    let balls = conjugate_paired_roots(h, prec)?;
    let fx = balls[0].fx();
    let ys: Vec<Cx> = w_all.iter().map(|w| y_value(fx, &balls, c, w)).collect();

    // resolvent
    let mut acc = vec![fx.cfrom_int(&BigInt::one())];
    for y in &ys {
        let mut next = vec![Cx::default(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = fx.cadd(&next[i + 1], a);
            next[i] = fx.csub(&next[i], &fx.cmul(a, y));
        }
        acc = next;
    }
    let resolvent = round_poly(fx, &acc)?;

    let deg_h = 2 * g;
    let order_w = w_all.len();
    let cap = opts.degree_cap;
    let accept = |d: usize| d.is_multiple_of(deg_h) && order_w.is_multiple_of(d) && d <= cap;
    let m = factor::find_equal_degree_factor(&resolvent, opts.recombination_budget, 40, &accept)?
        .ok_or_else(|| Error::OutOfScale(format!("[L:Q] exceeds the degree cap {cap}")))?;
    if !factor::is_irreducible_with(&m, 40)? {
        return Err(Error::Internal("resolvent factor is reducible".into()));
    }
    let deg_m = m.len() - 1;

    // which conjugates of y are roots of m
    let dm = zpoly::derivative(&m);
    let mut members = Vec::new();
    for (i, y) in ys.iter().enumerate() {
        let ratio = fx.cdiv(&fx.ceval(&m, y), &fx.ceval(&dm, y));
        let (re, im) = fx.cto_f64(&ratio);
        if re.hypot(im) < 1e-12 {
            members.push(i);
        }
    }
    if members.len() != deg_m {
        return Err(Error::Internal("numerical root matching failed".into()));
    }
    let w0 = w_all[members[0]].clone();
    let w0_inv = w0.inverse();
    let numeric_group: BTreeSet<SignedPerm> = members.iter().map(|&i| w_all[i].compose(&w0_inv)).collect();
    if !is_group(&numeric_group) {
        return Err(Error::Internal("numerical automorphisms do not form a group".into()));
    }

    // y' = y_{w0} = sum_k c'_k alpha_k
    let mut c_prime = vec![BigInt::zero(); 2 * g];
    for (k, ck) in c.iter().enumerate() {
        c_prime[w0.on_root(k)] = ck.clone();
    }

    // trace interpolants A_j(T) = sum_s alpha_{s(j)} m(T) / (T - s(y'))
    let group_list: Vec<&SignedPerm> = numeric_group.iter().collect();
    let m_fx: Vec<Cx> = m.iter().map(|a| fx.cfrom_int(a)).collect();
    let quotients: Vec<Vec<Cx>> = group_list
        .iter()
        .map(|s| {
            let r = y_value(fx, &balls, &c_prime, s);
            synthetic_division(fx, &m_fx, &r)
        })
        .collect();
    let field = NumberField::new(m.clone())?;
    let inv_dm = field.inverse(&field.from_poly(&dm, &BigInt::one()))?;
    let mut roots = Vec::with_capacity(2 * g);
    for j in 0..2 * g {
        let mut a = vec![Cx::default(); deg_m];
        for (s, quo) in group_list.iter().zip(&quotients) {
            let alpha = &balls[s.on_root(j)].center;
            for (k, coef) in quo.iter().enumerate() {
                a[k] = fx.cadd(&a[k], &fx.cmul(alpha, coef));
            }
        }
        let a = round_poly(fx, &a)?;
        roots.push(field.mul(&field.from_poly(&a, &BigInt::one()), &inv_dm));
    }

    verify_roots(&field, h, q, g, &roots, &c_prime)?;
    let gens = greedy_generators(g, &numeric_group);
    verify_automorphisms(&field, &m, &roots, &c_prime, w_all, &gens)?;
    let group = SignedPermGroup::generated_by(g, &gens)?;
    if group.order() != deg_m || group.elements.iter().cloned().collect::<BTreeSet<_>>() != numeric_group {
        return Err(Error::Internal("verified automorphisms disagree with the numerical group".into()));
    }
    let denominator_bound = roots.iter().map(|r| r.den.clone()).max().unwrap_or_else(BigInt::one);
    Ok(SplittingField {
        g,
        h: h.to_vec(),
        q: q.clone(),
        field,
        roots,
        c: c_prime,
        balls,
        denominator_bound,
        group,
    })
}

fn round_poly(fx: Fx, p: &[Cx]) -> Result<ZPoly> {
    let quarter: BigInt = BigInt::one() << (fx.prec - 2);
    let mut out = Vec::with_capacity(p.len());
    for z in p {
        let r = fx.round_to_int(&z.re);
        if (&z.re - fx.from_int(&r)).abs() > quarter || z.im.abs() > quarter {
            return Err(Error::PrecisionExhausted("resolvent coefficients not near integers".into()));
        }
        out.push(r);
    }
    Ok(out)
}

/// Quotient of `f` (ascending, monic) by `T - r`.
fn synthetic_division(fx: Fx, f: &[Cx], r: &Cx) -> Vec<Cx> {
    let n = f.len() - 1;
    let mut out = vec![Cx::default(); n];
    let mut carry = f[n].clone();
    for k in (0..n).rev() {
        out[k] = carry.clone();
        carry = fx.cadd(&f[k], &fx.cmul(&carry, r));
    }
    out
}

fn verify_roots(field: &NumberField, h: &[BigInt], q: &BigInt, g: usize, roots: &[Elt], c: &[BigInt]) -> Result<()> {
    let prod = field.poly_from_roots(roots);
    let ok = prod.len() == h.len() && prod.iter().zip(h).all(|(a, b)| *a == field.from_int(b));
    if !ok {
        return Err(Error::Internal("root expressions do not multiply out to h".into()));
    }
    let q_elt = field.from_int(q);
    for i in 0..g {
        if field.mul(&roots[i], &roots[i + g]) != q_elt {
            return Err(Error::Internal("conjugate pairing fails".into()));
        }
    }
    if linear_combination(field, c, roots, |k| k) != field.gen() {
        return Err(Error::Internal("primitive element is not the stated combination".into()));
    }
    Ok(())
}

fn linear_combination(field: &NumberField, c: &[BigInt], roots: &[Elt], map: impl Fn(usize) -> usize) -> Elt {
    let mut acc = field.zero();
    for (k, ck) in c.iter().enumerate() {
        if !ck.is_zero() {
            acc = field.add(&acc, &field.scale(&roots[map(k)], &BigRational::from_integer(ck.clone())));
        }
    }
    acc
}

/// Each generator `s` is an automorphism sending `g_j` to `g_{s(j)}`: the
/// image `z_s` of `y` is a root of `m`, and the images of `y` under distinct
/// signed permutations are distinct, so `s` is the permutation induced by
/// `y -> z_s`.
fn verify_automorphisms(
    field: &NumberField,
    m: &[BigInt],
    roots: &[Elt],
    c: &[BigInt],
    w_all: &[SignedPerm],
    gens: &[SignedPerm],
) -> Result<()> {
    let mut seen = HashSet::with_capacity(w_all.len());
    for w in w_all {
        if !seen.insert(linear_combination(field, c, roots, |k| w.on_root(k))) {
            return Err(Error::Internal("conjugates of the primitive element collide".into()));
        }
    }
    for s in gens {
        let z = linear_combination(field, c, roots, |k| s.on_root(k));
        if !field.is_zero(&field.eval_zpoly(m, &z)) {
            return Err(Error::Internal("candidate automorphism fails exact check".into()));
        }
    }
    Ok(())
}

impl SplittingField {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn automorphism_group(&self) -> &SignedPermGroup {
        &self.group
    }

    /// Orders `n` with `phi(n) <= [L:Q]`, ascending.
    pub fn possible_orders(&self) -> Vec<u64> {
        orders_with_phi_at_most(self.degree() as u64)
    }

    /// Least `n` with `t^n = 1`, if `t` is a root of unity.
    pub fn is_root_of_unity(&self, t: &Elt) -> Result<Option<u64>> {
        if self.field.is_zero(t) {
            return Err(Error::ZeroElement);
        }
        Ok(self.field.root_of_unity_order(t, &self.possible_orders()))
    }

    /// `beta_j = alpha_j^2 / q`.
    pub fn beta(&self, j: usize) -> Elt {
        let q_inv = BigRational::new(BigInt::one(), self.q.clone());
        self.field.scale(&self.field.square(&self.roots[j]), &q_inv)
    }

    /// `prod_j beta_j^{e_j}`, using `beta_{j+g} = 1 / beta_j` for negative exponents.
    pub fn beta_power(&self, e: &[BigInt]) -> Elt {
        let mut acc = self.field.one();
        for (j, ej) in e.iter().enumerate() {
            if ej.is_zero() {
                continue;
            }
            let base = if ej.is_positive() { self.beta(j) } else { self.beta(j + self.g) };
            let p = self.field.pow(&base, &ej.abs()).expect("nonnegative exponent");
            acc = self.field.mul(&acc, &p);
        }
        acc
    }

    /// Pairs `i < j` with `beta_i / beta_j` or `beta_i * beta_j` a root of
    /// unity (the second case is the first after swapping `alpha_j` with its
    /// conjugate).
    pub fn unit_ratio_pairs(&self) -> Vec<UnitRatio> {
        let orders = self.possible_orders();
        let q2 = BigRational::new(BigInt::one(), &self.q * &self.q);
        let q1 = BigRational::new(BigInt::one(), self.q.clone());
        let mut out = Vec::new();
        for i in 0..self.g {
            for j in i + 1..self.g {
                for (sign, partner) in [(1i8, j + self.g), (-1i8, j)] {
                    // alpha_i / alpha_j = alpha_i alpha_{j+g} / q
                    let a = self.field.mul(&self.roots[i], &self.roots[partner]);
                    let ratio = self.field.scale(&self.field.square(&a), &q2);
                    if let Some(order) = self.field.root_of_unity_order(&ratio, &orders) {
                        let alpha_ratio = self.field.scale(&a, &q1);
                        let alpha_order = self.field.root_of_unity_order(&alpha_ratio, &orders);
                        out.push(UnitRatio { i, j, sign, order, alpha_order });
                        break;
                    }
                }
            }
        }
        out
    }

    /// Checks that `M(s)` permutes the root expressions as prescribed, by
    /// evaluating each root under the automorphism `y -> z_s`.
    pub fn check_action(&self, s: &SignedPerm) -> bool {
        let z = linear_combination(&self.field, &self.c, &self.roots, |k| s.on_root(k));
        (0..2 * self.g).all(|j| {
            let expr = self.field.to_qpoly(&self.roots[j]);
            let mut acc = self.field.zero();
            for coef in expr.iter().rev() {
                acc = self.field.add(&self.field.mul(&acc, &z), &self.field.from_rational(coef));
            }
            acc == self.roots[s.on_root(j)]
        })
    }
}
