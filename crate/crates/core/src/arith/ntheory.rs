//! Elementary number theory on machine and big integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (d, s) = odd_part(n - 1);
    // deterministic for all 64-bit inputs
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn odd_part(mut n: u64) -> (u64, u32) {
    let mut s = 0;
    while n.is_multiple_of(2) {
        n /= 2;
        s += 1;
    }
    (n, s)
}

/// Miller-Rabin with the first 40 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude().clone();
    let one = BigUint::one();
    let n_minus_1 = &n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut bases = Vec::new();
    let mut c = 2u64;
    while bases.len() < 40 {
        if is_prime_u64(c) {
            bases.push(c);
        }
        c += 1;
    }
    'witness: for a in bases {
        let a = BigUint::from(a);
        if (&a % &n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, &n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(p, a)` with `q = p^a` and `p` prime, or `None`.
pub fn prime_power(q: &BigInt) -> Option<(BigInt, u32)> {
    if q <= &BigInt::one() {
        return None;
    }
    let bits = q.bits() as u32;
    for k in (1..=bits).rev() {
        let r = q.nth_root(k);
        if num_traits::pow(r.clone(), k as usize) == *q && is_probable_prime(&r) {
            return Some((r, k));
        }
    }
    None
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Largest `n` with `phi(n) <= bound`; phi(n) >= sqrt(n/2) bounds the search.
pub fn max_n_with_phi_at_most(bound: u64) -> u64 {
    let limit = 2 * bound * bound + 2;
    (1..=limit).rev().find(|&n| euler_phi(n) <= bound).unwrap_or(1)
}

/// All `n` with `phi(n) <= bound`, ascending.
pub fn orders_with_phi_at_most(bound: u64) -> Vec<u64> {
    let top = max_n_with_phi_at_most(bound);
    (1..=top).filter(|&n| euler_phi(n) <= bound).collect()
}

/// `lcm { n : phi(n) <= bound }`: every root of unity of degree at most
/// `bound` has order dividing it.
pub fn root_of_unity_exponent(bound: u64) -> BigInt {
    orders_with_phi_at_most(bound)
        .into_iter()
        .fold(BigInt::one(), |acc, n| acc.lcm(&BigInt::from(n)))
}

/// Primes in ascending order starting from `from`.
pub fn primes_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(2)..).filter(|&n| is_prime_u64(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}
