//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from Aberth iteration (first in `f64` on a rescaled
//! polynomial, then in fixed point at doubling precision).  Each approximation
//! `z` is then certified exactly: with `z` a dyadic Gaussian rational the values
//! `f(z)` and `f'(z)` are computed without rounding, and the disc of radius
//! `n |f(z)| / |f'(z)|` contains a root.  When these discs are pairwise
//! disjoint each of them holds exactly one root.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fixed::{ceil_sqrt, Cx, Fx};
use super::zpoly;
use crate::error::{Error, Result};

/// Highest working precision tried before giving up.
pub const MAX_PREC: u32 = 1 << 16;

/// Disc `|z - center| <= radius * 2^-prec` known to contain exactly one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBall {
    pub center: Cx,
    /// radius in units of `2^-prec`, rounded up
    pub radius: BigInt,
    pub prec: u32,
}

impl RootBall {
    pub fn fx(&self) -> Fx {
        Fx::new(self.prec)
    }

    /// Same ball described at a lower precision (radius enlarged accordingly).
    pub fn truncate(&self, prec: u32) -> RootBall {
        assert!(prec <= self.prec);
        let shift = self.prec - prec;
        RootBall {
            center: Cx::new(&self.center.re >> shift, &self.center.im >> shift),
            radius: (&self.radius >> shift) + 2,
            prec,
        }
    }

    pub fn conj(&self) -> RootBall {
        RootBall { center: self.center.conj(), radius: self.radius.clone(), prec: self.prec }
    }
}

/// Certified balls around all roots of the squarefree polynomial `f`, each of
/// radius below `2^-(prec - 8)`.
pub fn isolate_roots(f: &[BigInt], prec: u32) -> Result<Vec<RootBall>> {
    let n = zpoly::degree(f).ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if !zpoly::is_squarefree(f) {
        return Err(Error::InvalidPolynomial("root isolation needs a squarefree polynomial".into()));
    }
    let scale_bits = root_scale_bits(f);
    let start = aberth_f64(f, scale_bits);
    let mut p = 64u32;
    let mut fx = Fx::new(p);
    let mut z: Vec<Cx> = start
        .iter()
        .map(|&(re, im)| Cx::new(fx.from_f64(re), fx.from_f64(im)))
        .collect();
    let target = prec.max(64) + 8;
    loop {
        // conjugate-symmetric approximations cannot separate clustered real
        // roots, so break the symmetry with a small real shift per root
        for (i, c) in z.iter_mut().enumerate() {
            c.re += BigInt::from(i as u64 + 1) << (p / 2);
        }
        aberth_fixed(f, &mut z, fx, 200);
        if p >= target {
            if let Some(balls) = certify(f, &z, p) {
                if balls.iter().all(|b| b.radius.bits() <= (p - target + 1) as u64 + 8) {
                    return Ok(balls);
                }
            }
        }
        let next = if p >= target { p * 2 } else { (p * 2).min(target) };
        if next > MAX_PREC {
            return Err(Error::PrecisionExhausted(format!(
                "root isolation did not certify below {MAX_PREC} bits"
            )));
        }
        let nfx = Fx::new(next);
        z = z.iter().map(|c| Cx::new(fx.rescale(&c.re, nfx), fx.rescale(&c.im, nfx))).collect();
        p = next;
        fx = nfx;
    }
}

/// Roots of a polynomial without real roots, labelled `alpha_0..alpha_{2g-1}`:
/// the first `g` lie in the upper half plane sorted by argument, and
/// `alpha_{j+g}` is the conjugate ball of `alpha_j`.
pub fn conjugate_paired_roots(f: &[BigInt], prec: u32) -> Result<Vec<RootBall>> {
    let balls = isolate_roots(f, prec)?;
    let mut upper: Vec<RootBall> = Vec::new();
    for b in balls {
        if b.center.im.abs() <= b.radius {
            return Err(Error::Unsupported("polynomial has a root on or near the real axis".into()));
        }
        if b.center.im.is_positive() {
            upper.push(b);
        }
    }
    if 2 * upper.len() != f.len() - 1 {
        return Err(Error::Unsupported("roots are not conjugate-paired".into()));
    }
    let fx = upper.first().map(|b| b.fx()).unwrap_or(Fx::new(prec));
    let arg = |b: &RootBall| {
        let (re, im) = fx.cto_f64(&b.center);
        im.atan2(re)
    };
    upper.sort_by(|a, b| arg(a).total_cmp(&arg(b)));
    let lower: Vec<RootBall> = upper.iter().map(|b| b.conj()).collect();
    upper.extend(lower);
    Ok(upper)
}

/// `k` with all roots of `f` bounded by `2^k` (Fujiwara's bound).
fn root_scale_bits(f: &[BigInt]) -> i64 {
    let n = f.len() - 1;
    let lead_bits = f[n].bits() as i64;
    let mut best = 0i64;
    for k in 1..=n {
        let c = &f[n - k];
        if c.is_zero() {
            continue;
        }
        let b = c.bits() as i64 - lead_bits + 1;
        best = best.max((b + k as i64 - 1).div_euclid(k as i64));
    }
    best + 1
}

type C64 = (f64, f64);

fn c_mul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_div(a: C64, b: C64) -> C64 {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn c_sub(a: C64, b: C64) -> C64 {
    (a.0 - b.0, a.1 - b.1)
}

/// Aberth iteration in double precision on `f(2^k z)`; returns unscaled roots.
fn aberth_f64(f: &[BigInt], k: i64) -> Vec<C64> {
    let n = f.len() - 1;
    // coefficients of f(2^k z) / 2^(k n), normalized by the leading one
    let coeffs: Vec<f64> = f
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let shift = k * (n as i64 - i as i64);
            let lead = f64_of(&f[n]);
            f64_ratio(c, shift) / lead
        })
        .collect();
    let dcoeffs: Vec<f64> = (1..=n).map(|i| coeffs[i] * i as f64).collect();
    let eval = |p: &[f64], z: C64| -> C64 {
        let mut acc = (0.0, 0.0);
        for &c in p.iter().rev() {
            acc = c_mul(acc, z);
            acc.0 += c;
        }
        acc
    };
    let modulus = {
        let c0 = coeffs[0].abs();
        if c0 > 0.0 {
            c0.powf(1.0 / n as f64).min(1.0)
        } else {
            0.5
        }
    };
    let mut z: Vec<C64> = (0..n)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4;
            (modulus * t.cos(), modulus * t.sin())
        })
        .collect();
    for _ in 0..800 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let ratio = c_div(eval(&coeffs, z[i]), eval(&dcoeffs, z[i]));
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let inv = c_div((1.0, 0.0), c_sub(z[i], z[j]));
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let denom = c_sub((1.0, 0.0), c_mul(ratio, s));
            let w = c_div(ratio, denom);
            if w.0.is_finite() && w.1.is_finite() {
                z[i] = c_sub(z[i], w);
                worst = worst.max(w.0.abs() + w.1.abs());
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    let scale = 2f64.powi(k as i32);
    z.into_iter().map(|(a, b)| (a * scale, b * scale)).collect()
}

fn f64_of(c: &BigInt) -> f64 {
    f64_ratio(c, 0)
}

/// `c / 2^shift` as a double.
fn f64_ratio(c: &BigInt, shift: i64) -> f64 {
    if shift >= 0 {
        Fx::new(shift as u32).to_f64(c)
    } else {
        Fx::new(0).to_f64(c) * 2f64.powi((-shift) as i32)
    }
}

fn aberth_fixed(f: &[BigInt], z: &mut [Cx], fx: Fx, max_iter: usize) {
    let n = z.len();
    let df = zpoly::derivative(f);
    let one = fx.cfrom_int(&BigInt::one());
    let tol = BigInt::one() << 4;
    for _ in 0..max_iter {
        let mut worst = BigInt::zero();
        for i in 0..n {
            let fv = fx.ceval(f, &z[i]);
            let dv = fx.ceval(&df, &z[i]);
            if dv.re.is_zero() && dv.im.is_zero() {
                continue;
            }
            let ratio = fx.cdiv(&fv, &dv);
            let mut s = Cx::default();
            for j in 0..n {
                if j != i {
                    let d = fx.csub(&z[i], &z[j]);
                    if d.re.is_zero() && d.im.is_zero() {
                        continue;
                    }
                    s = fx.cadd(&s, &fx.cdiv(&one, &d));
                }
            }
            let denom = fx.csub(&one, &fx.cmul(&ratio, &s));
            if denom.re.is_zero() && denom.im.is_zero() {
                continue;
            }
            let w = fx.cdiv(&ratio, &denom);
            let size = w.re.abs() + w.im.abs();
            if size > worst {
                worst = size;
            }
            z[i] = fx.csub(&z[i], &w);
        }
        if worst <= tol {
            break;
        }
    }
}

/// Exact disc certification at precision `p`; `None` if the discs overlap.
fn certify(f: &[BigInt], z: &[Cx], p: u32) -> Option<Vec<RootBall>> {
    let n = f.len() - 1;
    let df = zpoly::derivative(f);
    let mut balls = Vec::with_capacity(z.len());
    for c in z {
        let fv = homogeneous_eval(f, c, p);
        let dv = homogeneous_eval(&df, c, p);
        let fv2 = &fv.re * &fv.re + &fv.im * &fv.im;
        let dv2 = &dv.re * &dv.re + &dv.im * &dv.im;
        if dv2.is_zero() {
            return None;
        }
        // radius * 2^p = n |F| / |F'| with F = 2^{pn} f(z), F' = 2^{p(n-1)} f'(z)
        let num = fv2 * BigInt::from((n * n) as u64);
        let q = (&num + &dv2 - 1u32) / &dv2;
        let radius = ceil_sqrt(&q) + 1;
        balls.push(RootBall { center: c.clone(), radius, prec: p });
    }
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let dre = &balls[i].center.re - &balls[j].center.re;
            let dim = &balls[i].center.im - &balls[j].center.im;
            let dist2 = &dre * &dre + &dim * &dim;
            let rr = &balls[i].radius + &balls[j].radius;
            if dist2 <= &rr * &rr {
                return None;
            }
        }
    }
    Some(balls)
}

/// `2^{p d} f(z)` for the dyadic point `z = c / 2^p`, computed exactly.
fn homogeneous_eval(f: &[BigInt], c: &Cx, p: u32) -> Cx {
    let d = f.len() - 1;
    let mut re = f[d].clone();
    let mut im = BigInt::zero();
    for k in (0..d).rev() {
        let nre = &re * &c.re - &im * &c.im;
        let nim = &re * &c.im + &im * &c.re;
        re = nre + (&f[k] << (p as usize * (d - k)));
        im = nim;
    }
    Cx::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;

    #[test]
    fn gaussian_roots() {
        let balls = isolate_roots(&from_i64(&[2, 0, 1]), 100).unwrap();
        assert_eq!(balls.len(), 2);
        let fx = balls[0].fx();
        for b in &balls {
            let (re, im) = fx.cto_f64(&b.center);
            assert!(re.abs() < 1e-20);
            assert!((im.abs() - 2f64.sqrt()).abs() < 1e-15);
            assert!(b.radius.bits() < 16);
        }
    }

    #[test]
    fn weil_sextic_roots_have_modulus_sqrt_q() {
        let f = from_i64(&[8, 0, -2, -2, -1, 0, 1]);
        let balls = isolate_roots(&f, 200).unwrap();
        assert_eq!(balls.len(), 6);
        for b in &balls {
            let fx = b.fx();
            let m = fx.to_f64(&fx.cabs2(&b.center));
            assert!((m - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn clustered_roots_need_more_bits() {
        // (x - 1)(x - 1 - 2^-40) scaled to integers
        let e: BigInt = BigInt::one() << 40u32;
        let a: BigInt = &e + 1u32;
        let b: BigInt = BigInt::from(-1) - &e * BigInt::from(2);
        let f: Vec<BigInt> = vec![a, b, e.clone()];
        let balls = isolate_roots(&f, 64).unwrap();
        assert_eq!(balls.len(), 2);
    }
}
