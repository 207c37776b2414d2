//! Dense univariate polynomials over Z and Q, coefficients in ascending order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn from_i64(coeffs: &[i64]) -> ZPoly {
    let mut p: ZPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    trim(&mut p);
    p
}

pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn is_monic(p: &[BigInt]) -> bool {
    p.last().is_some_and(|c| c.is_one())
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[BigInt]) -> ZPoly {
    let mut out: ZPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    trim(&mut out);
    out
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_part(p: &[BigInt]) -> ZPoly {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// Division by a monic polynomial over Z.
pub fn divrem_monic(a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly) {
    assert!(is_monic(b), "divisor must be monic");
    let db = b.len() - 1;
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Exact division over Z; `None` if `b` does not divide `a` in Z[x].
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = degree(b)?;
    let lead = &b[db];
    let mut r: ZPoly = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() <= db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    trim(&mut r);
    if !r.is_empty() {
        return None;
    }
    trim(&mut q);
    Some(q)
}

pub fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Clears denominators and returns the primitive integer multiple.
pub fn q_to_primitive_z(p: &[BigRational]) -> ZPoly {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let z: ZPoly = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    primitive_part(&z)
}

pub fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv_lead = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] * &inv_lead;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let t = &c * bj;
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn q_monic(p: &[BigRational]) -> QPoly {
    match p.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = l.recip();
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

pub fn q_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = q_divrem(&x, &y);
        // keep numbers small by normalising every remainder
        x = y;
        y = q_monic(&r);
    }
    q_monic(&x)
}

/// Extended Euclid over Q: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn q_xgcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s2 = q_sub(&s0, &q_mul(&q, &s1));
        let t2 = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lead = r0.last().cloned().unwrap_or_else(BigRational::one).recip();
    let norm = |p: QPoly| -> QPoly { p.into_iter().map(|c| c * &lead).collect() };
    (norm(r0), norm(s0), norm(t0))
}

/// Gcd over Q of integer polynomials, returned primitive with positive lead.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    q_to_primitive_z(&q_gcd(&to_q(a), &to_q(b)))
}

/// Squarefree decomposition (Yun) of a primitive integer polynomial:
/// returns `[(f_1, 1), (f_2, 2), ...]` with `p = c * prod f_i^i`, skipping trivial `f_i`.
pub fn squarefree_decomposition(p: &[BigInt]) -> Vec<(ZPoly, u32)> {
    let f = to_q(p);
    let df = q_deriv(&f);
    let mut out = Vec::new();
    let mut a = q_gcd(&f, &df);
    let mut b = q_divrem(&f, &a).0;
    let mut c = q_divrem(&df, &a).0;
    let mut d = q_sub(&c, &q_deriv(&b));
    let mut i = 1;
    loop {
        a = q_gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((q_to_primitive_z(&a), i));
        }
        b = q_divrem(&b, &a).0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = q_divrem(&d, &a).0;
        d = q_sub(&c, &q_deriv(&b));
        i += 1;
    }
    out
}

pub fn q_deriv(p: &[BigRational]) -> QPoly {
    let mut out: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

pub fn is_squarefree(p: &[BigInt]) -> bool {
    degree(&gcd(p, &derivative(p))).unwrap_or(0) == 0
}

/// Coefficients of `prod (x - r_i)` from the power sums `p_k = sum r_i^k`, `k = 1..=n`.
pub fn from_power_sums(n: usize, power_sums: &[BigRational]) -> QPoly {
    // Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    // prod (x - r_i) = sum (-1)^k e_k x^{n-k}
    let mut poly = vec![BigRational::zero(); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        poly[n - k] = if k % 2 == 0 { ek } else { -ek };
    }
    poly
}

/// Power sums `p_1..=p_count` of the roots of a monic polynomial over Q.
pub fn power_sums(p: &[BigRational], count: usize) -> Vec<BigRational> {
    let n = p.len() - 1;
    // e_k = (-1)^k c_{n-k}
    let e: Vec<BigRational> = (0..=n)
        .map(|k| {
            let c = p[n - k].clone();
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let mut ps: Vec<BigRational> = Vec::with_capacity(count);
    for k in 1..=count {
        // p_k = sum_{i=1}^{min(k-1,n)} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k [k<=n]
        let mut acc = BigRational::zero();
        for i in 1..k.min(n + 1) {
            let term = &e[i] * &ps[k - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if k <= n {
            let term = &e[k] * BigRational::from_integer(BigInt::from(k));
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        ps.push(acc);
    }
    ps
}

/// Polynomial whose roots are the `r`-th powers of the roots of monic `p`.
pub fn root_power(p: &[BigRational], r: usize) -> QPoly {
    let n = p.len() - 1;
    let ps = power_sums(p, n * r);
    let picked: Vec<BigRational> = (1..=n).map(|k| ps[k * r - 1].clone()).collect();
    from_power_sums(n, &picked)
}

pub fn format(p: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let body = match (i, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "T".to_string(),
            (1, false) => format!("{mag}*T"),
            (_, true) => format!("T^{i}"),
            (_, false) => format!("{mag}*T^{i}"),
        };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (sign, body)) in terms.into_iter().enumerate() {
        if k == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(if sign == "-" { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_and_gcd() {
        let a = from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = from_i64(&[1, 1]);
        assert_eq!(div_exact(&a, &b), Some(from_i64(&[-1, 1])));
        assert_eq!(div_exact(&a, &from_i64(&[1, 2])), None);
        assert_eq!(gcd(&a, &from_i64(&[2, 2])), from_i64(&[1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x+1)^2 (x-2)^3 x
        let f = mul(
            &mul(&mul(&from_i64(&[1, 1]), &from_i64(&[1, 1])), &from_i64(&[0, 1])),
            &mul(&mul(&from_i64(&[-2, 1]), &from_i64(&[-2, 1])), &from_i64(&[-2, 1])),
        );
        let d = squarefree_decomposition(&f);
        assert_eq!(
            d,
            vec![(from_i64(&[0, 1]), 1), (from_i64(&[1, 1]), 2), (from_i64(&[-2, 1]), 3)]
        );
    }

    #[test]
    fn power_sum_round_trip() {
        // roots 1, 2, 3
        let p = to_q(&from_i64(&[-6, 11, -6, 1]));
        let ps = power_sums(&p, 3);
        let ints: Vec<BigRational> =
            [6, 14, 36].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        assert_eq!(ps, ints);
        assert_eq!(from_power_sums(3, &ps), p);
        // squares: 1, 4, 9
        assert_eq!(root_power(&p, 2), to_q(&from_i64(&[-36, 49, -14, 1])));
    }

    #[test]
    fn formatting() {
        assert_eq!(format(&from_i64(&[8, 0, -2, -2, -1, 0, 1])), "T^6 - T^4 - 2*T^3 - 2*T^2 + 8");
    }
}
