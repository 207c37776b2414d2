//! Polynomials over a prime field F_l and their factorization
//! (distinct-degree followed by Cantor-Zassenhaus equal-degree splitting).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ntheory::{mul_mod, pow_mod};

pub type FpPoly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub modulus: u64,
}

impl Fp {
    pub fn new(modulus: u64) -> Self {
        Fp { modulus }
    }

    pub fn reduce_big(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap()
    }

    pub fn reduce_poly(&self, p: &[BigInt]) -> FpPoly {
        let mut out: FpPoly = p.iter().map(|c| self.reduce_big(c)).collect();
        trim(&mut out);
        out
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.modulus), "inverse of zero mod {}", self.modulus);
        pow_mod(a, self.modulus - 2, self.modulus)
    }

    fn add_c(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    fn sub_c(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.add_c(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0));
        }
        trim(&mut out);
        out
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.sub_c(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0));
        }
        trim(&mut out);
        out
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let m = self.modulus as u128;
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % m;
            }
        }
        let mut out: FpPoly = acc.into_iter().map(|c| c as u64).collect();
        trim(&mut out);
        out
    }

    pub fn scale(&self, a: &[u64], c: u64) -> FpPoly {
        let mut out: FpPoly = a.iter().map(|&x| mul_mod(x, c, self.modulus)).collect();
        trim(&mut out);
        out
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let inv = self.inv(b[db]);
        let mut q = vec![0; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = mul_mod(r[i], inv, self.modulus);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i - db + j] = self.sub_c(r[i - db + j], mul_mod(c, bj, self.modulus));
            }
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn xgcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().unwrap());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], f: &[u64]) -> FpPoly {
        self.rem(&self.mul(a, b), f)
    }

    pub fn powmod(&self, base: &[u64], mut exp: u64, f: &[u64]) -> FpPoly {
        let mut acc: FpPoly = vec![1];
        let mut b = self.rem(base, f);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mulmod(&acc, &b, f);
            }
            b = self.mulmod(&b, &b, f);
            exp >>= 1;
        }
        self.rem(&acc, f)
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        let mut out: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.modulus, self.modulus))
            .collect();
        trim(&mut out);
        out
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.derivative(f);
        !d.is_empty() && self.gcd(f, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree `f`:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x: FpPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest.clone(), deg));
                break;
            }
            h = self.powmod(&h, self.modulus, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d` (odd modulus).
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let exp = (num_traits::pow(BigInt::from(self.modulus), d) - 1) / 2;
        loop {
            let a: FpPoly = {
                let mut v: FpPoly = (0..n).map(|_| rng.gen_range(0..self.modulus)).collect();
                trim(&mut v);
                v
            };
            if a.len() < 2 {
                continue;
            }
            let g = self.gcd(&a, f);
            let g = if g.len() > 1 {
                g
            } else {
                let b = self.powmod_big(&a, &exp, f);
                self.gcd(&self.sub(&b, &[1]), f)
            };
            if g.len() > 1 && g.len() < f.len() {
                let other = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    fn powmod_big(&self, base: &[u64], exp: &BigInt, f: &[u64]) -> FpPoly {
        let mut acc: FpPoly = vec![1];
        let b = self.rem(base, f);
        for bit in (0..exp.bits()).rev() {
            acc = self.mulmod(&acc, &acc, f);
            if exp.bit(bit) {
                acc = self.mulmod(&acc, &b, f);
            }
        }
        acc
    }

    /// Complete factorization of a monic squarefree polynomial, sorted by degree.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }
}

pub fn trim(p: &mut FpPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}
