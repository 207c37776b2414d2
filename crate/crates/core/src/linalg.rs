//! Exact integer and rational linear algebra: Smith and Hermite normal forms,
//! integer kernels, saturation, LLL reduction and the explicit weight bounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::fixed::round_div;
use crate::error::{Error, Result};

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant by fraction-free elimination.
pub fn det(a: &IMat) -> BigInt {
    let n = a.len();
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub p: IMat,
    pub s: IMat,
    pub q: IMat,
    /// `q^{-1}`
    pub q_inv: IMat,
    pub rank: usize,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[i][i].clone()).collect()
    }
}

/// `A = P S Q` with `P`, `Q` unimodular and `S` diagonal with `s_1 | s_2 | ...`.
pub fn smith_normal_form(a: &IMat) -> SnfResult {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut s = a.clone();
    let mut p = identity(m);
    let mut q = identity(n);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(&s, t) else {
            break;
        };
        row_swap(&mut s, &mut p, t, pi);
        col_swap(&mut s, &mut q, &mut v, t, pj);
        loop {
            for i in t + 1..m {
                if !s[i][t].is_zero() {
                    let c = -(&s[i][t] / &s[t][t]);
                    row_add(&mut s, &mut p, i, t, &c);
                }
            }
            for j in t + 1..n {
                if !s[t][j].is_zero() {
                    let c = -(&s[t][j] / &s[t][t]);
                    col_add(&mut s, &mut q, &mut v, j, t, &c);
                }
            }
            let dirty = (t + 1..m).any(|i| !s[i][t].is_zero()) || (t + 1..n).any(|j| !s[t][j].is_zero());
            if dirty {
                let (pi, pj) = smallest_entry(&s, t).expect("nonzero entries remain");
                row_swap(&mut s, &mut p, t, pi);
                col_swap(&mut s, &mut q, &mut v, t, pj);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&s[i][j] % &s[t][t]).is_zero()));
            match bad {
                Some(i) => row_add(&mut s, &mut p, t, i, &BigInt::one()),
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            for row in p.iter_mut() {
                row[t] = -&row[t];
            }
        }
        t += 1;
    }
    SnfResult { p, s, q, q_inv: v, rank: t }
}

fn smallest_entry(s: &IMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in s.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.as_ref().is_none_or(|b| x.abs() < b.2) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

// row_i += c row_k on S; P <- P E^{-1}
fn row_add(s: &mut IMat, p: &mut IMat, i: usize, k: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let rk = s[k].clone();
    for (x, y) in s[i].iter_mut().zip(&rk) {
        *x += c * y;
    }
    for row in p.iter_mut() {
        let d = c * &row[i];
        row[k] -= d;
    }
}

fn row_swap(s: &mut IMat, p: &mut IMat, i: usize, k: usize) {
    if i == k {
        return;
    }
    s.swap(i, k);
    for row in p.iter_mut() {
        row.swap(i, k);
    }
}

// col_j += c col_k on S; V <- V F; Q <- F^{-1} Q
fn col_add(s: &mut IMat, q: &mut IMat, v: &mut IMat, j: usize, k: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for row in s.iter_mut() {
        let d = c * &row[k];
        row[j] += d;
    }
    for row in v.iter_mut() {
        let d = c * &row[k];
        row[j] += d;
    }
    let qj = q[j].clone();
    for (x, y) in q[k].iter_mut().zip(&qj) {
        *x -= c * y;
    }
}

fn col_swap(s: &mut IMat, q: &mut IMat, v: &mut IMat, i: usize, k: usize) {
    if i == k {
        return;
    }
    for row in s.iter_mut() {
        row.swap(i, k);
    }
    for row in v.iter_mut() {
        row.swap(i, k);
    }
    q.swap(i, k);
}

/// Row-style Hermite normal form: positive pivots, rows sorted by pivot
/// column, entries above each pivot reduced into `[0, pivot)`; zero rows dropped.
pub fn hermite_normal_form(rows: &IMat) -> IMat {
    let mut a = rows.clone();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..n {
        if r == a.len() {
            break;
        }
        loop {
            let piv = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(piv) = piv else { break };
            a.swap(r, piv);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let c = a[i][col].div_floor(&a[r][col]);
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &c * y;
                }
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < a.len() && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -&*x);
            }
            let pr = a[r].clone();
            for i in 0..r {
                let c = a[i][col].div_floor(&pr[col]);
                if !c.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= &c * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

/// `Z^n` intersected with the rational span of `rows`, as a basis (rows).
pub fn saturate(rows: &IMat) -> IMat {
    if rows.is_empty() {
        return Vec::new();
    }
    let snf = smith_normal_form(rows);
    snf.q[..snf.rank].to_vec()
}

/// Columns of the integer kernel of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    /// kernel generators, one per entry
    pub vectors: Vec<Vec<BigInt>>,
    pub w: BigInt,
    pub rank: usize,
}

impl KernelBasis {
    /// The `N x R` matrix with the generators as columns.
    pub fn matrix(&self, n: usize) -> IMat {
        transpose(&self.vectors, n)
    }
}

/// Integer kernel of `A` (denominators dividing `d`) from the Smith form of
/// `dA`, followed by LLL and pairwise 1-norm reduction.
pub fn kernel_basis(a: &QMat, d: &BigInt) -> Result<KernelBasis> {
    let n = a.first().map_or(0, |r| r.len());
    let mut scaled: IMat = Vec::with_capacity(a.len());
    for row in a {
        let mut out = Vec::with_capacity(n);
        for x in row {
            let y = x * BigRational::from_integer(d.clone());
            if !y.is_integer() {
                return Err(Error::Internal("denominator does not divide d".into()));
            }
            out.push(y.to_integer());
        }
        scaled.push(out);
    }
    let (vectors, rank) = if scaled.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        (identity(n), 0)
    } else {
        let snf = smith_normal_form(&scaled);
        let v = &snf.q_inv;
        let vecs: IMat = (snf.rank..n).map(|j| (0..n).map(|i| v[i][j].clone()).collect()).collect();
        (vecs, snf.rank)
    };
    let vectors = reduce_one_norms(vectors);
    for v in &vectors {
        for row in &scaled {
            let dot: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
            if !dot.is_zero() {
                return Err(Error::Internal("kernel vector fails A b = 0".into()));
            }
        }
    }
    let w = vectors.iter().map(|v| one_norm(v)).max().unwrap_or_else(BigInt::zero);
    Ok(KernelBasis { vectors, w, rank })
}

pub fn one_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).sum()
}

/// LLL followed by greedy pairwise `b_i <- b_i +- b_j` sweeps that shrink 1-norms.
pub fn reduce_one_norms(mut basis: IMat) -> IMat {
    if basis.len() > 1 {
        lll_reduce(&mut basis, 0);
    }
    loop {
        let mut improved = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i32, -1] {
                    let cand: Vec<BigInt> =
                        basis[i].iter().zip(&basis[j]).map(|(x, y)| x + y * BigInt::from(sign)).collect();
                    if one_norm(&cand) < one_norm(&basis[i]) {
                        basis[i] = cand;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    for v in basis.iter_mut() {
        // sign normalization: first nonzero entry positive
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    basis
}

/// Maximum column 1-norm of `B` (columns are the generators).
pub fn column_weight_w(b: &IMat) -> BigInt {
    let cols = b.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| b.iter().map(|r| r[j].abs()).sum::<BigInt>())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Integral LLL (parameter 3/4) on the rows of `basis`, which must be
/// linearly independent.  The first `frozen` rows are never swapped past,
/// so their span is preserved.  Returns `d_0..d_n` with `d_i` the Gram
/// determinant of the first `i` rows; `|b*_i|^2 = d_{i+1} / d_i`.
pub fn lll_reduce(basis: &mut IMat, frozen: usize) -> Vec<BigInt> {
    let n = basis.len();
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    if n == 0 {
        return d;
    }
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // 1-based indexing below follows the textbook presentation
    let mut b: Vec<Vec<BigInt>> = std::iter::once(Vec::new()).chain(basis.iter().cloned()).collect();
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[1] = dot(&b[1], &b[1]);
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k] = u;
                }
            }
            assert!(!d[k].is_zero(), "LLL input rows are dependent");
        }
        red(&mut b, &mut lam, &d, k, k - 1);
        let lovasz_fails = BigInt::from(4) * &d[k] * &d[k - 2]
            < BigInt::from(3) * &d[k - 1] * &d[k - 1] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if k - 1 > frozen && lovasz_fails {
            b.swap(k, k - 1);
            for j in 1..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
            }
            d[k - 1] = bb;
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    for (dst, src) in basis.iter_mut().zip(b.into_iter().skip(1)) {
        *dst = src;
    }
    d
}

fn red(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if BigInt::from(2) * lam[k][l].abs() <= d[l] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l]);
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l];
    for i in 1..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(a: &QMat) -> (QMat, Vec<usize>) {
    let mut m = a.clone();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        m[r].iter_mut().for_each(|x| *x = &*x * &inv);
        let pr = m[r].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rational_rank(a: &QMat) -> usize {
    rref(a).1.len()
}

pub fn to_q(a: &IMat) -> QMat {
    a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Primitive integer basis of the rational orthogonal complement of the rows.
pub fn orthogonal_complement(rows: &QMat, n: usize) -> IMat {
    let (r, pivots) = rref(rows);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        out.push(primitive(&v));
    }
    out
}

/// Integer primitive multiple of a rational vector.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// A nonnegative real of the form `coeff * sqrt(radicand)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub coeff: BigRational,
    pub radicand: BigInt,
}

impl Bound {
    pub fn zero() -> Self {
        Bound { coeff: BigRational::zero(), radicand: BigInt::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one() || self.coeff.is_zero()
    }

    /// `true` when `x <= self`, exactly.
    pub fn admits(&self, x: &BigRational) -> bool {
        if x.is_negative() {
            return true;
        }
        let lhs = x * x;
        let rhs = &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone());
        lhs <= rhs
    }

    /// Least integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        let sq = &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone());
        let approx = (sq.numer() / sq.denom()).sqrt();
        let mut c = approx;
        while sq > BigRational::from_integer(&c * &c) {
            c += 1;
        }
        c
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::INFINITY) * self.radicand.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.coeff.is_integer() {
            self.coeff.numer().to_string()
        } else {
            format!("{}/{}", self.coeff.numer(), self.coeff.denom())
        };
        if self.is_rational() {
            f.write_str(&c)
        } else {
            write!(f, "{c}*sqrt({})", self.radicand)
        }
    }
}

/// `(sqrt(r))^r` as `(integer, radicand)`.
fn sqrt_power(r: u32) -> (BigInt, BigInt) {
    let rb = BigInt::from(r);
    let whole = rb.pow(r / 2);
    if r.is_multiple_of(2) {
        (whole, BigInt::one())
    } else {
        (whole, rb)
    }
}

/// `N r^3 (sqrt(r) d |A|)^r`.
pub fn lemma_bound(n: u32, r: u32, d: &BigInt, max_a: &BigRational) -> Bound {
    let (whole, radicand) = sqrt_power(r);
    let rb = BigInt::from(r);
    let base = BigRational::from_integer(d.clone()) * max_a;
    let coeff = BigRational::from_integer(BigInt::from(n) * rb.pow(3) * whole) * pow_q(&base, r);
    Bound { coeff, radicand }
}

/// `g delta^3 (sqrt(g) delta)^delta`, and 0 for `delta = 0`.
pub fn zarhin_h(g: u32, delta: u32) -> Bound {
    if delta == 0 {
        return Bound::zero();
    }
    let gb = BigInt::from(g);
    let db = BigInt::from(delta);
    let whole = gb.pow(delta / 2);
    let radicand = if delta.is_multiple_of(2) { BigInt::one() } else { gb.clone() };
    let coeff = BigRational::from_integer(&gb * db.pow(3) * db.pow(delta) * whole);
    Bound { coeff, radicand }
}

fn pow_q(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |a, _| a * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IMat) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(mat_mul(&mat_mul(&r.p, &r.s), &r.q), *a);
        assert_eq!(det(&r.p).abs(), BigInt::one());
        assert_eq!(det(&r.q).abs(), BigInt::one());
        assert_eq!(mat_mul(&r.q, &r.q_inv), identity(r.q.len()));
        let diag = r.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        r
    }

    #[test]
    fn snf_examples() {
        let r = check_snf(&from_i64(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        let r = check_snf(&identity(3));
        assert_eq!(r.p, identity(3));
        assert_eq!(r.q, identity(3));
        let r = check_snf(&from_i64(&[vec![1, 1], vec![1, 1]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.diagonal(), vec![BigInt::one()]);
        check_snf(&from_i64(&[vec![0, 6, 10], vec![15, 0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        let k = kernel_basis(&a, &BigInt::one()).unwrap();
        assert_eq!(k.vectors, vec![vec![BigInt::from(1), BigInt::from(-1)]]);
        assert_eq!(k.w, BigInt::from(2));
        let a = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        let k = kernel_basis(&a, &BigInt::one()).unwrap();
        assert!(k.vectors.is_empty());
        assert_eq!(k.w, BigInt::zero());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(column_weight_w(&from_i64(&[vec![1, -2], vec![3, 0]])), BigInt::from(4));
        assert_eq!(column_weight_w(&identity(4)), BigInt::one());
        assert_eq!(column_weight_w(&from_i64(&[vec![0, 0]])), BigInt::zero());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(zarhin_h(3, 2).to_string(), "288");
        assert_eq!(zarhin_h(1, 1).to_string(), "1");
        assert_eq!(zarhin_h(3, 0).to_string(), "0");
        let one = BigRational::one();
        assert_eq!(lemma_bound(2, 1, &BigInt::one(), &one).to_string(), "2");
        assert_eq!(lemma_bound(3, 2, &BigInt::from(6), &one).to_string(), "1728");
        // odd exponent keeps a square root: 3 * 27 * (sqrt(3) * 6)^3 = 52488 sqrt(3)
        let b = lemma_bound(3, 3, &BigInt::from(6), &one);
        assert_eq!(b.to_string(), "52488*sqrt(3)");
        assert_eq!(b.ceil(), BigInt::from(90912));
        assert!(b.admits(&BigRational::from_integer(BigInt::from(90911))));
        assert!(!b.admits(&BigRational::from_integer(BigInt::from(90912))));
    }

    #[test]
    fn hnf_and_saturation() {
        let rows = from_i64(&[vec![2, -2, 0], vec![0, 3, -3]]);
        let sat = saturate(&rows);
        assert_eq!(
            hermite_normal_form(&sat),
            from_i64(&[vec![1, 0, -1], vec![0, 1, -1]])
        );
        assert_eq!(hermite_normal_form(&from_i64(&[vec![-1, 1]])), from_i64(&[vec![1, -1]]));
    }

    #[test]
    fn lll_gram_determinants() {
        let mut b = from_i64(&[vec![1, 0, 0, 1345], vec![0, 1, 0, 35], vec![0, 0, 1, 154]]);
        let d = lll_reduce(&mut b, 0);
        // Gram determinant of the full lattice is basis independent
        assert_eq!(d[3], BigInt::from(1 + 1345 * 1345 + 35 * 35 + 154 * 154));
        assert!(b.iter().all(|r| r.iter().map(|x| x * x).sum::<BigInt>() < BigInt::from(1000)));
    }

    #[test]
    fn complement() {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let r = vec![vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]];
        assert_eq!(orthogonal_complement(&r, 3), from_i64(&[vec![1, 1, 1]]));
    }
}
