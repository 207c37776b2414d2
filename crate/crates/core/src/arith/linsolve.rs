//! Exact solution of nonsingular integer linear systems by Chinese remaindering
//! over word-sized primes, with the Hadamard bound deciding when to stop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ntheory::{is_prime_u64, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Solves `M x = b` for square nonsingular `M`; returns `(num, den)` with
/// `x = num / den`, `den = |det M| / gcd` normalized positive.
pub fn solve(m: &[Vec<BigInt>], b: &[BigInt]) -> Result<(Vec<BigInt>, BigInt)> {
    let n = m.len();
    if n == 0 {
        return Ok((Vec::new(), BigInt::one()));
    }
    // Hadamard bound on det and on every Cramer numerator
    let b_norm2: BigInt = b.iter().map(|x| x * x).sum();
    let mut log_bound = 0u64;
    for j in 0..n {
        let col2: BigInt = (0..n).map(|i| &m[i][j] * &m[i][j]).sum();
        let c = if col2 > b_norm2 { col2 } else { b_norm2.clone() };
        log_bound += c.bits().div_ceil(2) + 1;
    }
    let needed_bits = log_bound + 2;

    let mut modulus = BigInt::one();
    let mut det_acc = BigInt::zero();
    let mut num_acc = vec![BigInt::zero(); n];
    let mut p: u64 = (1u64 << 62) - 1;
    while modulus.bits() < needed_bits {
        while !is_prime_u64(p) {
            p -= 2;
        }
        let prime = p;
        p -= 2;
        let Some((det, adj_b)) = solve_mod(m, b, prime) else {
            continue;
        };
        // incremental CRT
        let pb = BigInt::from(prime);
        let m_mod = (&modulus % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
        let inv = pow_mod(m_mod, prime - 2, prime);
        let lift = |acc: &BigInt, r: u64| -> BigInt {
            let acc_mod = acc.mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0);
            let diff = (r + prime - acc_mod) % prime;
            let t = mul_mod(diff, inv, prime);
            acc + &modulus * BigInt::from(t)
        };
        det_acc = lift(&det_acc, det);
        for (acc, r) in num_acc.iter_mut().zip(&adj_b) {
            *acc = lift(acc, *r);
        }
        modulus *= &pb;
    }
    let half = &modulus >> 1u32;
    let sym = |x: &BigInt| if x > &half { x - &modulus } else { x.clone() };
    let mut den = sym(&det_acc);
    if den.is_zero() {
        return Err(Error::Internal("singular system".into()));
    }
    let mut num: Vec<BigInt> = num_acc.iter().map(sym).collect();
    if den.is_negative() {
        den = -den;
        num.iter_mut().for_each(|x| *x = -&*x);
    }
    let g = num.iter().fold(den.clone(), |a, x| a.gcd(x));
    if !g.is_one() {
        num.iter_mut().for_each(|x| *x /= &g);
        den /= &g;
    }
    Ok((num, den))
}

/// `(det M, det M * M^{-1} b)` modulo `p`, or `None` if `p` divides the determinant.
fn solve_mod(m: &[Vec<BigInt>], b: &[BigInt], p: u64) -> Option<(u64, Vec<u64>)> {
    let n = m.len();
    let pb = BigInt::from(p);
    let red = |x: &BigInt| x.mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0);
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = m[i].iter().map(red).collect();
            row.push(red(&b[i]));
            row
        })
        .collect();
    let mut det: u64 = 1;
    for k in 0..n {
        let piv = (k..n).find(|&i| a[i][k] != 0)?;
        if piv != k {
            a.swap(piv, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = pow_mod(a[k][k], p - 2, p);
        for v in a[k].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k] == 0 {
                continue;
            }
            let f = row[k];
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(k) {
                *v = (*v + p - mul_mod(f, *pv, p)) % p;
            }
        }
    }
    let x: Vec<u64> = a.iter().map(|row| mul_mod(row[n], det, p)).collect();
    Some((det, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_system() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        let b = vec![BigInt::from(1), BigInt::from(0)];
        let (num, den) = solve(&m, &b).unwrap();
        // inverse first column is (3, -1) / 5
        assert_eq!(den, BigInt::from(5));
        assert_eq!(num, vec![BigInt::from(3), BigInt::from(-1)]);
    }

    #[test]
    fn large_entries() {
        let big: BigInt = BigInt::from(3).pow(200u32);
        let m = vec![vec![big.clone(), BigInt::from(1)], vec![BigInt::from(1), -&big]];
        let b = vec![BigInt::from(1), BigInt::from(1)];
        let (num, den) = solve(&m, &b).unwrap();
        for i in 0..2 {
            let lhs: BigInt = (0..2).map(|j| &m[i][j] * &num[j]).sum();
            assert_eq!(lhs, &b[i] * &den);
        }
    }
}
