//! Relation lattice `{e in Z^g : beta^e is a root of unity}`.
//!
//! Detection works on the angles `phi_j = arg(beta_j) / 2pi`: with `N*` a
//! common multiple of every possible root-of-unity order, `e` is a relation
//! iff `sum e_j N* phi_j` is an integer.  The lattice with rows
//! `(unit_j, round(C N* phi_j))` and `(0, .., 0, C)` is LLL-reduced, short
//! vectors become candidates, and each candidate is certified exactly.
//!
//! Completeness comes from an exclusion certificate: after putting the
//! certified sublattice first (frozen) and reducing the rest, every lattice
//! vector outside its span is at least as long as the smallest remaining
//! Gram-Schmidt vector.  A missing relation of weight at most `H` would give
//! a lattice vector of squared length at most `H^2 (1 + eta^2)`, so a larger
//! Gram-Schmidt minimum proves that no relation of weight `<= H` is missing,
//! and by the effective bound on generator weights, none at all.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::fixed::{Cx, Fx};
use crate::arith::ntheory::{orders_with_phi_at_most, root_of_unity_exponent};
use crate::arith::roots::{conjugate_paired_roots, RootBall};
use crate::arith::zpoly::{self, QPoly, ZPoly};
use crate::error::{Error, Result};
use crate::galois::SplittingField;
use crate::linalg::{self, Bound, IMat, QMat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedAngles {
    /// `theta_j * 2^prec`, with `theta_j = arg(alpha_j) / 2pi` in `(0, 1/2)`
    pub theta: Vec<BigInt>,
    /// common error radius in units of `2^-prec`
    pub error: BigInt,
    pub prec: u32,
    pub balls: Vec<RootBall>,
}

impl CertifiedAngles {
    pub fn theta_f64(&self) -> Vec<f64> {
        let fx = Fx::new(self.prec);
        self.theta.iter().map(|t| fx.to_f64(t)).collect()
    }
}

/// Angles of the roots of `h` in the upper half plane.  With `reference`
/// given, the roots are labelled to match those balls.
pub fn frobenius_angles(h: &[BigInt], bits: u32, reference: Option<&[RootBall]>) -> Result<CertifiedAngles> {
    let mut balls = conjugate_paired_roots(h, bits)?;
    let g = balls.len() / 2;
    if let Some(refs) = reference {
        balls = match_balls(&balls, refs)?;
    }
    let prec = balls.iter().map(|b| b.prec).min().unwrap_or(bits);
    let balls: Vec<RootBall> = balls.into_iter().map(|b| b.truncate(prec)).collect();
    let fx = Fx::new(prec);
    let two_pi = fx.pi() << 1u32;
    let mut theta = Vec::with_capacity(g);
    let mut radius = BigInt::zero();
    for b in &balls[..g] {
        let a = fx.atan2(&b.center.im, &b.center.re);
        theta.push(fx.div(&a, &two_pi));
        radius = radius.max(b.radius.clone());
    }
    // |alpha| >= sqrt 2 turns a ball of radius r into an angle error below r / pi
    let error = radius + 16;
    Ok(CertifiedAngles { theta, error, prec, balls })
}

fn match_balls(balls: &[RootBall], refs: &[RootBall]) -> Result<Vec<RootBall>> {
    let fb = balls[0].fx();
    let fr = refs[0].fx();
    let pts: Vec<(f64, f64)> = balls.iter().map(|b| fb.cto_f64(&b.center)).collect();
    let mut out = Vec::with_capacity(refs.len());
    let mut used = vec![false; balls.len()];
    for r in refs {
        let (x, y) = fr.cto_f64(&r.center);
        let best = (0..pts.len())
            .filter(|&i| !used[i])
            .min_by(|&i, &j| {
                let di = (pts[i].0 - x).hypot(pts[i].1 - y);
                let dj = (pts[j].0 - x).hypot(pts[j].1 - y);
                di.total_cmp(&dj)
            })
            .ok_or_else(|| Error::Internal("root matching ran out of balls".into()))?;
        used[best] = true;
        out.push(balls[best].clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CertificationMethod {
    /// exact order check in the splitting field
    SplittingField,
    /// annihilating polynomial of `beta^e` reduced against `T^n - 1`
    CyclotomicFallback,
    /// only numerically supported
    Uncertified,
}

impl CertificationMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificationMethod::SplittingField => "splitting_field",
            CertificationMethod::CyclotomicFallback => "cyclotomic_fallback",
            CertificationMethod::Uncertified => "uncertified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionCertificate {
    pub radius: Bound,
    pub eta: BigRational,
    /// `H^2 (1 + eta^2)`
    pub threshold: BigRational,
    /// smallest Gram-Schmidt squared length beyond the certified part
    pub min_gs_norm2: BigRational,
    pub frozen_rank: usize,
    pub bits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationGroup {
    pub g: usize,
    /// Hermite normal form, saturated
    pub basis: IMat,
    pub orders: Vec<Option<u64>>,
    pub weights: Vec<BigInt>,
    /// a generating set reduced for 1-norm
    pub short_basis: IMat,
    pub short_weights: Vec<BigInt>,
    pub h_theorem: Bound,
    pub h_lemma: Bound,
    pub h_excl: Bound,
    pub exclusion: Option<ExclusionCertificate>,
    pub method: CertificationMethod,
    pub certified: bool,
    pub n_star: BigInt,
    pub bits: u32,
}

impl RelationGroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn delta(&self) -> usize {
        self.g - self.rank()
    }

    pub fn max_weight(&self) -> BigInt {
        self.short_weights.iter().max().cloned().unwrap_or_else(BigInt::zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    pub precision_start: u32,
    pub max_bits: u32,
    pub fallback_cap: usize,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig { precision_start: 256, max_bits: 1 << 14, fallback_cap: 4096 }
    }
}

/// Bound on generator weights used as the exclusion radius:
/// `g * g^3 * (sqrt(g) d)^g`.
pub fn exclusion_radius(g: usize, d: &BigInt) -> Bound {
    linalg::lemma_bound(g as u32, g as u32, d, &BigRational::one())
}

/// Detect, certify and prove complete the relation lattice of `h`.
/// `d` is the common denominator used in the bounds.
pub fn relation_group(
    h: &[BigInt],
    q: &BigInt,
    field: Option<&SplittingField>,
    d: &BigInt,
    cfg: &LatticeConfig,
) -> Result<RelationGroup> {
    let g = (h.len() - 1) / 2;
    let degree_bound = match field {
        Some(f) => f.degree() as u64,
        None => (1u64 << g) * (1..=g as u64).product::<u64>(),
    };
    let n_star = root_of_unity_exponent(degree_bound);
    let h_excl = exclusion_radius(g, d);
    let h_excl_int = h_excl.ceil();
    let excl2 = &h_excl.coeff * &h_excl.coeff * BigRational::from_integer(h_excl.radicand.clone());
    let reference = field.map(|f| f.balls.as_slice());
    let mut bits = cfg.precision_start.max(n_star.bits() as u32 + 64);
    let fallback = field.is_none().then(|| beta_polynomial(h, q));
    loop {
        if bits > cfg.max_bits {
            return Err(Error::PrecisionExhausted(format!(
                "relation lattice not settled below {} bits",
                cfg.max_bits
            )));
        }
        let angles = frobenius_angles(h, bits, reference)?;
        let setup = LatticeSetup::new(&angles, &n_star);

        // detection
        let mut reduced = setup.basis();
        linalg::lll_reduce(&mut reduced, 0);
        let mut found: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
        let mut method = match field {
            Some(_) => CertificationMethod::SplittingField,
            None => CertificationMethod::CyclotomicFallback,
        };
        for v in &reduced {
            let e = v[..g].to_vec();
            let w = linalg::one_norm(&e);
            if w.is_zero() || w > h_excl_int {
                continue;
            }
            let last = BigRational::from_integer(v[g].clone());
            if last.abs() > BigRational::from_integer(w.clone()) * &setup.eta {
                continue;
            }
            let k = setup.k_of(&e, &v[g]);
            if let Some((_, m)) = certify(field, fallback.as_ref(), &angles, &e, &k, &n_star, cfg) {
                method = method.max(m);
                found.push((e, k));
            }
        }
        let rows: IMat = found.iter().map(|(e, _)| e.clone()).collect();
        let basis = if rows.is_empty() { Vec::new() } else { linalg::hermite_normal_form(&linalg::saturate(&rows)) };

        // exclusion
        if let Some(cert) = setup.exclude(&basis, &excl2, &h_excl, bits) {
            let mut orders = Vec::with_capacity(basis.len());
            for e in &basis {
                let k = setup.exact_k(e)?;
                let o = certify(field, fallback.as_ref(), &angles, e, &k, &n_star, cfg);
                match o {
                    Some((n, m)) => {
                        method = method.max(m);
                        orders.push(n);
                    }
                    None => {
                        if field.is_some() {
                            return Err(Error::Internal("saturated relation fails certification".into()));
                        }
                        method = CertificationMethod::Uncertified;
                        orders.push(None);
                    }
                }
            }
            let weights: Vec<BigInt> = basis.iter().map(|e| linalg::one_norm(e)).collect();
            let short_basis = if basis.is_empty() { Vec::new() } else { linalg::reduce_one_norms(basis.clone()) };
            let short_weights: Vec<BigInt> = short_basis.iter().map(|e| linalg::one_norm(e)).collect();
            let delta = (g - basis.len()) as u32;
            return Ok(RelationGroup {
                g,
                basis,
                orders,
                weights,
                short_basis,
                short_weights,
                h_theorem: linalg::zarhin_h(g as u32, delta),
                h_lemma: lemma_form(g, delta, d),
                h_excl,
                exclusion: Some(cert),
                certified: method != CertificationMethod::Uncertified,
                method,
                n_star,
                bits,
            });
        }
        bits *= 2;
    }
}

/// Lemma-form bound `g delta^3 (sqrt(delta) d)^delta`, and 0 for `delta = 0`.
pub fn lemma_form(g: usize, delta: u32, d: &BigInt) -> Bound {
    if delta == 0 {
        return Bound::zero();
    }
    linalg::lemma_bound(g as u32, delta, d, &BigRational::one())
}

struct LatticeSetup {
    g: usize,
    /// `round(C N* phi_j)`
    a: Vec<BigInt>,
    c: BigInt,
    eta: BigRational,
    /// `N* phi_j * 2^prec`
    scaled: Vec<BigInt>,
    scaled_err: BigInt,
    prec: u32,
}

impl LatticeSetup {
    fn new(angles: &CertifiedAngles, n_star: &BigInt) -> Self {
        let prec = angles.prec;
        let shift = prec - 10 - n_star.bits() as u32;
        let c = BigInt::one() << shift;
        let scaled: Vec<BigInt> = angles.theta.iter().map(|t| (t << 1u32) * n_star).collect();
        let scaled_err = (&angles.error << 1u32) * n_star;
        let drop = prec - shift;
        let half = BigInt::one() << (drop - 1);
        let a = scaled.iter().map(|s| (s + &half) >> drop).collect();
        let eta = BigRational::new(scaled_err.clone(), BigInt::one() << drop) + BigRational::new(1.into(), 2.into());
        LatticeSetup { g: angles.theta.len(), a, c, eta, scaled, scaled_err, prec }
    }

    fn basis(&self) -> IMat {
        let g = self.g;
        let mut rows: IMat = (0..g)
            .map(|j| {
                let mut r = vec![BigInt::zero(); g + 1];
                r[j] = BigInt::one();
                r[g] = self.a[j].clone();
                r
            })
            .collect();
        let mut last = vec![BigInt::zero(); g + 1];
        last[g] = self.c.clone();
        rows.push(last);
        rows
    }

    fn dot_a(&self, e: &[BigInt]) -> BigInt {
        e.iter().zip(&self.a).map(|(x, y)| x * y).sum()
    }

    /// Integer `k` of the lattice vector `(e, last)`.
    fn k_of(&self, e: &[BigInt], last: &BigInt) -> BigInt {
        (self.dot_a(e) - last) / &self.c
    }

    /// The integer `sum e_j N* phi_j` for a certified relation.
    fn exact_k(&self, e: &[BigInt]) -> Result<BigInt> {
        let s: BigInt = e.iter().zip(&self.scaled).map(|(x, y)| x * y).sum();
        let err = linalg::one_norm(e) * &self.scaled_err;
        let k = crate::arith::fixed::round_div(&s, &(BigInt::one() << self.prec));
        let off = (&s - (&k << self.prec)).abs();
        if off + err >= BigInt::one() << (self.prec - 1) {
            return Err(Error::Internal("relation value not resolved at this precision".into()));
        }
        Ok(k)
    }

    fn exclude(&self, basis: &IMat, excl2: &BigRational, radius: &Bound, bits: u32) -> Option<ExclusionCertificate> {
        let g = self.g;
        let r = basis.len();
        // coefficient vectors (e, k) of the certified part, then a unimodular completion
        let mut coeffs: IMat = Vec::with_capacity(g + 1);
        if r == 0 {
            coeffs = linalg::identity(g + 1);
        } else {
            let mut u: IMat = Vec::with_capacity(r);
            for e in basis {
                let k = self.exact_k(e).ok()?;
                let mut row = e.clone();
                row.push(k);
                u.push(row);
            }
            let snf = linalg::smith_normal_form(&u);
            if snf.rank != r || !snf.diagonal().iter().all(|x| x.abs().is_one()) {
                return None;
            }
            coeffs.extend(snf.q.iter().cloned());
        }
        let mut lat: IMat = coeffs
            .iter()
            .map(|ek| {
                let e = &ek[..g];
                let mut v = e.to_vec();
                v.push(self.dot_a(e) - &ek[g] * &self.c);
                v
            })
            .collect();
        let d = linalg::lll_reduce(&mut lat, r);
        let one = BigRational::one();
        let threshold = excl2 * (&one + &self.eta * &self.eta);
        let mut min_gs: Option<BigRational> = None;
        for t in r..=g {
            let gs = BigRational::new(d[t + 1].clone(), d[t].clone());
            if min_gs.as_ref().is_none_or(|m| &gs < m) {
                min_gs = Some(gs);
            }
        }
        let min_gs = min_gs?;
        (min_gs > threshold).then(|| ExclusionCertificate {
            radius: radius.clone(),
            eta: self.eta.clone(),
            threshold,
            min_gs_norm2: min_gs,
            frozen_rank: r,
            bits,
        })
    }
}

/// Order of `beta^e` and how it was proved, given the numerically detected
/// value `k = sum e_j N* phi_j`.
fn certify(
    field: Option<&SplittingField>,
    fallback: Option<&QPoly>,
    angles: &CertifiedAngles,
    e: &[BigInt],
    k: &BigInt,
    n_star: &BigInt,
    cfg: &LatticeConfig,
) -> Option<(Option<u64>, CertificationMethod)> {
    let n = (n_star / n_star.gcd(k)).to_u64()?;
    match field {
        Some(f) => {
            let x = f.beta_power(e);
            f.field.has_order(&x, n).then_some((Some(n), CertificationMethod::SplittingField))
        }
        None => {
            let b = fallback?;
            match cyclotomic_certificate(b, angles, e, n, cfg.fallback_cap) {
                Some(true) => Some((Some(n), CertificationMethod::CyclotomicFallback)),
                Some(false) => None,
                None => Some((None, CertificationMethod::Uncertified)),
            }
        }
    }
}

/// Monic polynomial with roots `beta_j = alpha_j^2 / q` over all `2g` roots.
pub fn beta_polynomial(h: &[BigInt], q: &BigInt) -> QPoly {
    let sq = zpoly::root_power(&zpoly::to_q(h), 2);
    let n = sq.len() - 1;
    let qq = BigRational::from_integer(q.clone());
    // B(T) = q^-n A(q T)
    let mut scale = BigRational::one();
    let mut out = Vec::with_capacity(n + 1);
    for c in &sq {
        out.push(c * &scale);
        scale *= &qq;
    }
    let lead = out[n].clone();
    out.into_iter().map(|c| c / &lead).collect()
}

/// Polynomial whose roots are all products `prod_j gamma_j^{e_j}` with each
/// `gamma_j` a root of `b`; `None` above `cap`.
pub fn composed_power_polynomial(b: &[BigRational], e: &[BigInt], cap: usize) -> Option<QPoly> {
    let n = b.len() - 1;
    let support: Vec<u64> = e.iter().filter(|x| !x.is_zero()).map(|x| x.abs().to_u64()).collect::<Option<_>>()?;
    let mut deg = 1usize;
    for _ in &support {
        deg = deg.checked_mul(n)?;
        if deg > cap {
            return None;
        }
    }
    let top = *support.iter().max().unwrap_or(&1) as usize;
    // the roots of b are closed under inversion, so p_{-m} = p_m
    let ps = zpoly::power_sums(b, deg * top);
    let sums: Vec<BigRational> = (1..=deg)
        .map(|k| support.iter().map(|&m| ps[k * m as usize - 1].clone()).product())
        .collect();
    Some(zpoly::from_power_sums(deg, &sums))
}

/// `Some(true)` when `beta^e` is proved to satisfy `x^n = 1`, `Some(false)`
/// when the proof fails, `None` when the annihilating polynomial is over the cap.
pub fn cyclotomic_certificate(b: &[BigRational], angles: &CertifiedAngles, e: &[BigInt], n: u64, cap: usize) -> Option<bool> {
    let f = composed_power_polynomial(b, e, cap)?;
    // strip every root of T^n - 1 from f
    let mut rest = f;
    loop {
        let r = q_pow_x_mod(n, &rest);
        let mut r1 = r;
        if r1.is_empty() {
            r1.push(BigRational::zero());
        }
        r1[0] -= BigRational::one();
        zpoly::trim(&mut r1);
        let gcd = if r1.is_empty() { rest.clone() } else { zpoly::q_gcd(&rest, &r1) };
        if gcd.len() <= 1 {
            break;
        }
        rest = zpoly::q_divrem(&rest, &gcd).0;
        if rest.len() <= 1 {
            return Some(true);
        }
    }
    let rest_z = zpoly::q_to_primitive_z(&rest);
    Some(nonvanishing_at_beta_power(&rest_z, angles, e))
}

/// `T^n mod f` over Q.
fn q_pow_x_mod(n: u64, f: &[BigRational]) -> QPoly {
    let mut acc: QPoly = vec![BigRational::one()];
    let mut base: QPoly = zpoly::q_divrem(&[BigRational::zero(), BigRational::one()], f).1;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = zpoly::q_divrem(&zpoly::q_mul(&acc, &base), f).1;
        }
        base = zpoly::q_divrem(&zpoly::q_mul(&base, &base), f).1;
        e >>= 1;
    }
    acc
}

/// Certifies `p(beta^e) != 0` from the root balls.
fn nonvanishing_at_beta_power(p: &ZPoly, angles: &CertifiedAngles, e: &[BigInt]) -> bool {
    let g = e.len();
    let fx = Fx::new(angles.prec);
    let qn = {
        // |alpha|^2 = q for every root
        let b = &angles.balls[0];
        let z = fx.cmul(&b.center, &b.center.conj());
        fx.round_to_int(&z.re)
    };
    let mut z = fx.cfrom_int(&BigInt::one());
    let mut steps = 0u64;
    for (j, ej) in e.iter().enumerate() {
        let Some(m) = ej.abs().to_u64() else { return false };
        if m == 0 {
            continue;
        }
        let ball = if ej.is_positive() { &angles.balls[j] } else { &angles.balls[j + g] };
        let a2 = fx.cmul(&ball.center, &ball.center);
        let beta = Cx::new(&a2.re / &qn, &a2.im / &qn);
        z = fx.cmul(&z, &fx.cpow(&beta, m));
        steps += 2 * m;
    }
    // each beta_j is within 3r + 2 ulps; products of unit-size factors add errors
    let radius = angles.balls.iter().map(|b| b.radius.clone()).max().unwrap_or_default();
    let z_err = BigInt::from(2 * steps + 2) * (radius * 3 + 4);
    let deriv: BigInt = p.iter().enumerate().map(|(k, c)| BigInt::from(k) * c.abs()).sum::<BigInt>() * 2;
    let eval_err = BigInt::from(8 * p.len() as u64);
    let err = z_err * deriv + eval_err;
    let v = fx.ceval(p, &z);
    &v.re * &v.re + &v.im * &v.im > &err * &err
}

/// Rational basis of the orthogonal complement of the relations.
pub fn v_from_relations(basis: &IMat, g: usize) -> QMat {
    if basis.is_empty() {
        return linalg::to_q(&linalg::identity(g));
    }
    let comp = linalg::orthogonal_complement(&linalg::to_q(basis), g);
    linalg::rref(&linalg::to_q(&comp)).0
}

/// Saturated integer kernel of `matrix` in Hermite normal form.
pub fn integer_kernel(matrix: &QMat, g: usize) -> Result<IMat> {
    let d = matrix.iter().flatten().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let k = linalg::kernel_basis(matrix, &d)?;
    let rows: IMat = k.vectors.into_iter().filter(|v| v.len() == g).collect();
    if rows.is_empty() {
        return Ok(rows);
    }
    Ok(linalg::hermite_normal_form(&linalg::saturate(&rows)))
}

/// Orders `n` with `phi(n)` at most the degree bound.
pub fn candidate_orders(degree_bound: u64) -> Vec<u64> {
    orders_with_phi_at_most(degree_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;
    use crate::galois::{splitting_field, GaloisOptions};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn run(c: &[i64], with_field: bool) -> RelationGroup {
        let two = BigInt::from(2);
        let h = from_i64(c);
        let g = (h.len() - 1) / 2;
        let field = with_field.then(|| splitting_field(&h, &two, &GaloisOptions::default()).unwrap());
        relation_group(&h, &two, field.as_ref(), &BigInt::from(2 * g), &LatticeConfig::default()).unwrap()
    }

    #[test]
    fn elliptic() {
        let r = run(&[2, -1, 1], true);
        assert_eq!(r.delta(), 1);
        assert!(r.exclusion.is_some() && r.certified);
        let r = run(&[2, 0, 1], true);
        assert_eq!(r.basis, vec![ints(&[1])]);
        assert_eq!(r.orders, vec![Some(2)]);
        assert_eq!(r.delta(), 0);
    }

    #[test]
    fn angles_of_i_sqrt2() {
        let a = frobenius_angles(&from_i64(&[2, 0, 1]), 128, None).unwrap();
        let quarter = BigInt::one() << (a.prec - 2);
        assert!((&a.theta[0] - quarter).abs() <= a.error);
    }

    #[test]
    fn paper_sextics() {
        let r = run(&[8, 0, -2, -2, -1, 0, 1], true);
        assert_eq!(r.delta(), 2);
        assert!(r.short_weights.iter().all(|w| w <= &BigInt::from(288)));
        let r = run(&[8, 0, 0, -2, 0, 0, 1], true);
        assert_eq!(r.delta(), 1);
        assert_eq!(r.rank(), 2);
        assert!(r.orders.iter().all(|o| o.is_some()));
    }

    #[test]
    fn fallback_matches_field() {
        let a = run(&[8, 0, 0, -2, 0, 0, 1], false);
        let b = run(&[8, 0, 0, -2, 0, 0, 1], true);
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.method, CertificationMethod::CyclotomicFallback);
        let a = run(&[2, 0, 1], false);
        assert_eq!(a.basis, vec![ints(&[1])]);
    }

    #[test]
    fn complements() {
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(v_from_relations(&Vec::new(), 3).len(), 3);
        let r = vec![ints(&[1, -1, 0]), ints(&[0, 1, -1])];
        assert_eq!(v_from_relations(&r, 3), vec![vec![q(1), q(1), q(1)]]);
        let r = vec![ints(&[1, 1, 1, 1])];
        assert_eq!(v_from_relations(&r, 4).len(), 3);
    }
}
