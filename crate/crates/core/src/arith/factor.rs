//! Factorization of integer polynomials by the Zassenhaus method:
//! factor modulo a good prime, Hensel-lift to beyond the coefficient bound,
//! and recombine lifted factors by exhaustive subset search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, FpPoly};
use super::ntheory::primes_from;
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Default cap on recombination subsets tried per factorization.
pub const DEFAULT_RECOMBINATION_BUDGET: u64 = 2_000_000;

const MAX_PRIMES_SCANNED: usize = 4000;

/// Irreducible factorization of a monic integer polynomial, with multiplicities.
/// Factors are monic and sorted by degree, then coefficients.
pub fn factor_monic(f: &[BigInt]) -> Result<Vec<(ZPoly, u32)>> {
    if !zpoly::is_monic(f) {
        return Err(Error::InvalidPolynomial("factorization expects a monic polynomial".into()));
    }
    let mut out = Vec::new();
    for (part, mult) in zpoly::squarefree_decomposition(f) {
        for g in factor_squarefree(&part, DEFAULT_RECOMBINATION_BUDGET)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Irreducible factors of a monic squarefree integer polynomial.
pub fn factor_squarefree(f: &[BigInt], budget: u64) -> Result<Vec<ZPoly>> {
    let n = zpoly::degree(f).unwrap_or(0);
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let mut factors = Vec::new();
    let mut rest = f.to_vec();
    // peel rational roots at zero
    while rest[0].is_zero() {
        factors.push(zpoly::from_i64(&[0, 1]));
        rest.remove(0);
    }
    if zpoly::degree(&rest).unwrap_or(0) >= 1 {
        let lifted = LiftedFactorization::new(&rest, 5)?;
        factors.extend(lifted.recombine(&rest, budget, &|_| true, false)?);
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(factors)
}

/// Finds one irreducible factor whose degree passes `accept`, searching
/// subsets in increasing size.  All irreducible factors of `f` are assumed to
/// share a common degree divisible by every modular factor degree (true for
/// Galois resolvents with free orbits), which prunes the search further.
pub fn find_equal_degree_factor(
    f: &[BigInt],
    budget: u64,
    primes_to_try: usize,
    accept: &dyn Fn(usize) -> bool,
) -> Result<Option<ZPoly>> {
    let lifted = LiftedFactorization::new(f, primes_to_try)?;
    let step = lifted
        .degree_patterns
        .iter()
        .flatten()
        .fold(1usize, |a, &d| a.lcm(&d));
    let found = lifted.recombine(f, budget, &|d| d % step == 0 && accept(d), true)?;
    Ok(found.into_iter().next())
}

pub(crate) struct LiftedFactorization {
    pub modulus: BigInt,
    pub factors: Vec<ZPoly>,
    /// degrees of the modular factors for every prime tried
    pub degree_patterns: Vec<Vec<usize>>,
}

impl LiftedFactorization {
    pub fn new(f: &[BigInt], primes_to_try: usize) -> Result<Self> {
        let n = zpoly::degree(f).unwrap();
        let mut best: Option<(u64, Vec<FpPoly>)> = None;
        let mut patterns = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut tried = 0;
        for (scanned, ell) in primes_from(3).enumerate() {
            if tried >= primes_to_try || scanned >= MAX_PRIMES_SCANNED {
                break;
            }
            let fp = Fp::new(ell);
            let fbar = fp.reduce_poly(f);
            if fbar.len() != n + 1 || !fp.is_squarefree(&fbar) {
                continue;
            }
            tried += 1;
            let modular = fp.factor_squarefree(&fbar, &mut rng);
            patterns.push(modular.iter().map(|g| g.len() - 1).collect());
            if best.as_ref().is_none_or(|(_, b)| modular.len() < b.len()) {
                best = Some((ell, modular));
            }
            if modular_count_is_one(&best) {
                break;
            }
        }
        let (ell, modular) = best.ok_or_else(|| Error::Internal("no good prime found".into()))?;
        let bound = coefficient_bound(f);
        let ell_big = BigInt::from(ell);
        let mut modulus = ell_big.clone();
        while modulus <= &bound * 2 {
            modulus *= &ell_big;
        }
        let factors = if modular.len() == 1 {
            vec![f.to_vec()]
        } else {
            let lifted = hensel_lift_all(f, &modular, ell, &modulus);
            lifted.into_iter().map(|g| symmetric(&g, &modulus)).collect()
        };
        Ok(LiftedFactorization { modulus, factors, degree_patterns: patterns })
    }

    /// Exhaustive recombination. With `first_only`, returns after the first
    /// factor accepted by `accept`.
    pub fn recombine(
        &self,
        f: &[BigInt],
        budget: u64,
        accept: &dyn Fn(usize) -> bool,
        first_only: bool,
    ) -> Result<Vec<ZPoly>> {
        if self.factors.len() == 1 {
            let d = zpoly::degree(f).unwrap();
            return Ok(if !first_only || accept(d) { vec![f.to_vec()] } else { vec![] });
        }
        let mut remaining: Vec<usize> = (0..self.factors.len()).collect();
        let mut cur = f.to_vec();
        let mut out = Vec::new();
        let mut size = 1;
        let mut tried: u64 = 0;
        let half_modulus = &self.modulus / 2;
        while 2 * size <= remaining.len() {
            let mut found = None;
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                tried += 1;
                if tried > budget {
                    return Err(Error::RecombinationBudget(budget));
                }
                let picked: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
                let deg: usize = picked.iter().map(|&i| self.factors[i].len() - 1).sum();
                if accept(deg) && self.constant_term_test(&picked, &cur, &half_modulus) {
                    let g = self.product(&picked);
                    if let Some(q) = zpoly::div_exact(&cur, &g) {
                        found = Some((combo.clone(), g, q));
                        break;
                    }
                }
                if !next_combination(&mut combo, remaining.len()) {
                    break;
                }
            }
            match found {
                Some((combo, g, q)) => {
                    out.push(g);
                    if first_only {
                        return Ok(out);
                    }
                    cur = q;
                    for &i in combo.iter().rev() {
                        remaining.remove(i);
                    }
                }
                None => size += 1,
            }
        }
        let d = zpoly::degree(&cur).unwrap_or(0);
        if d > 0 && (!first_only || accept(d)) {
            out.push(cur);
        }
        Ok(out)
    }

    fn constant_term_test(&self, picked: &[usize], f: &[BigInt], half: &BigInt) -> bool {
        if f[0].is_zero() {
            return true;
        }
        let mut c = BigInt::one();
        for &i in picked {
            c = (c * &self.factors[i][0]).mod_floor(&self.modulus);
        }
        if &c > half {
            c -= &self.modulus;
        }
        !c.is_zero() && (&f[0] % &c).is_zero()
    }

    fn product(&self, picked: &[usize]) -> ZPoly {
        let mut acc = vec![BigInt::one()];
        for &i in picked {
            acc = reduce_mod(&zpoly::mul(&acc, &self.factors[i]), &self.modulus);
        }
        symmetric(&acc, &self.modulus)
    }
}

fn modular_count_is_one(best: &Option<(u64, Vec<FpPoly>)>) -> bool {
    best.as_ref().is_some_and(|(_, b)| b.len() == 1)
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Bound on the coefficients of any monic factor of `f`: `2^n * ||f||_2`.
pub fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    (BigInt::one() << n) * norm
}

fn reduce_mod(p: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|c| c.mod_floor(m)).collect();
    zpoly::trim(&mut out);
    out
}

fn symmetric(p: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    zpoly::trim(&mut out);
    out
}

fn lift_fp(p: &[u64]) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|&c| BigInt::from(c)).collect();
    zpoly::trim(&mut out);
    out
}

fn divrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let (q, r) = zpoly::divrem_monic(&reduce_mod(a, m), &reduce_mod(b, m));
    (reduce_mod(&q, m), reduce_mod(&r, m))
}

/// Lifts every modular factor of monic `f` to monic factors modulo `target`.
fn hensel_lift_all(f: &[BigInt], modular: &[FpPoly], ell: u64, target: &BigInt) -> Vec<ZPoly> {
    if modular.len() == 1 {
        return vec![reduce_mod(f, target)];
    }
    let fp = Fp::new(ell);
    let mid = modular.len() / 2;
    let (left, right) = modular.split_at(mid);
    let g0 = left.iter().fold(vec![1u64], |acc, u| fp.mul(&acc, u));
    let h0 = right.iter().fold(vec![1u64], |acc, u| fp.mul(&acc, u));
    let (_, s0, t0) = fp.xgcd(&g0, &h0);
    let (g, h) = hensel_pair(f, lift_fp(&g0), lift_fp(&h0), lift_fp(&s0), lift_fp(&t0), ell, target);
    let mut out = hensel_lift_all(&g, left, ell, target);
    out.extend(hensel_lift_all(&h, right, ell, target));
    out
}

/// Quadratic Hensel lifting of `f = g h` (both monic) from `ell` to at least `target`.
fn hensel_pair(
    f: &[BigInt],
    mut g: ZPoly,
    mut h: ZPoly,
    mut s: ZPoly,
    mut t: ZPoly,
    ell: u64,
    target: &BigInt,
) -> (ZPoly, ZPoly) {
    let mut m = BigInt::from(ell);
    while &m < target {
        let m2 = &m * &m;
        let e = reduce_mod(&zpoly::sub(f, &zpoly::mul(&g, &h)), &m2);
        let (q, r) = divrem_monic_mod(&zpoly::mul(&s, &e), &h, &m2);
        let g_new = reduce_mod(&zpoly::add(&zpoly::add(&g, &zpoly::mul(&t, &e)), &zpoly::mul(&q, &g)), &m2);
        let h_new = reduce_mod(&zpoly::add(&h, &r), &m2);
        let b = reduce_mod(
            &zpoly::sub(&zpoly::add(&zpoly::mul(&s, &g_new), &zpoly::mul(&t, &h_new)), &[BigInt::one()]),
            &m2,
        );
        let (c, d) = divrem_monic_mod(&zpoly::mul(&s, &b), &h_new, &m2);
        s = reduce_mod(&zpoly::sub(&s, &d), &m2);
        t = reduce_mod(&zpoly::sub(&zpoly::sub(&t, &zpoly::mul(&t, &b)), &zpoly::mul(&c, &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (reduce_mod(&g, target), reduce_mod(&h, target))
}

/// `true` when `f` (monic, nonconstant) is irreducible over Q.
pub fn is_irreducible(f: &[BigInt]) -> Result<bool> {
    is_irreducible_with(f, 5)
}

/// Irreducibility test that factors modulo `primes_to_try` primes, lifts the
/// one with fewest factors and only tries subset degrees compatible with
/// every modular degree pattern.
pub fn is_irreducible_with(f: &[BigInt], primes_to_try: usize) -> Result<bool> {
    let n = match zpoly::degree(f) {
        Some(n) if n >= 1 => n,
        _ => return Ok(false),
    };
    if n == 1 {
        return Ok(true);
    }
    if f[0].is_zero() || !zpoly::is_squarefree(f) {
        return Ok(false);
    }
    let lifted = LiftedFactorization::new(f, primes_to_try)?;
    let mut possible = vec![true; n + 1];
    for pattern in &lifted.degree_patterns {
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in pattern {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (p, s) in possible.iter_mut().zip(sums) {
            *p &= s;
        }
    }
    if (1..n).all(|d| !possible[d]) {
        return Ok(true);
    }
    let found = lifted.recombine(f, DEFAULT_RECOMBINATION_BUDGET, &|d| d < n && possible[d], true)?;
    Ok(found.is_empty())
}

pub fn is_negative_lead(p: &[BigInt]) -> bool {
    p.last().is_some_and(|c| c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits into quadratics or linears mod every prime
        let f = from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f, 1000).unwrap(), vec![f.clone()]);
    }

    #[test]
    fn splits_products() {
        let a = from_i64(&[2, 0, 1]); // x^2 + 2
        let b = from_i64(&[2, -1, 1]); // x^2 - x + 2
        let c = from_i64(&[-3, 1]);
        let f = zpoly::mul(&zpoly::mul(&a, &b), &c);
        let got = factor_squarefree(&f, 1000).unwrap();
        assert_eq!(got, vec![c.clone(), b.clone(), a.clone()]);
        let g = zpoly::mul(&zpoly::mul(&a, &a), &b);
        assert_eq!(factor_monic(&g).unwrap(), vec![(b, 1), (a, 2)]);
    }

    #[test]
    fn weil_sextic_irreducible() {
        assert!(is_irreducible(&from_i64(&[8, 0, -2, -2, -1, 0, 1])).unwrap());
        assert!(is_irreducible(&from_i64(&[8, 0, 0, -2, 0, 0, 1])).unwrap());
        // (x^2+2)(x^2-x+2) reducible
        assert!(!is_irreducible(&from_i64(&[4, -2, 4, -1, 1])).unwrap());
    }

    #[test]
    fn cyclotomic_high_degree() {
        // x^24 - 1 has 8 cyclotomic factors
        let mut f = vec![BigInt::zero(); 25];
        f[0] = BigInt::from(-1);
        f[24] = BigInt::one();
        let got = factor_squarefree(&f, 100_000).unwrap();
        assert_eq!(got.len(), 8);
        let prod = got.iter().fold(vec![BigInt::one()], |acc, g| zpoly::mul(&acc, g));
        assert_eq!(prod, f);
    }
}
