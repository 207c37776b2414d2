//! Arithmetic in `Q[y]/(m)` for a monic irreducible integer polynomial `m`.
//!
//! Elements are stored as `num / den` with `num` an integer polynomial of
//! degree below `deg m`, `den > 0` and `gcd(content(num), den) = 1`, so that
//! equal elements have equal representations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

#[derive(Debug, Clone)]
pub struct NumberField {
    pub m: ZPoly,
    pub n: usize,
    /// `y^{n+k} mod m` for `k = 0..n-1`
    high_powers: Vec<Vec<BigInt>>,
    /// `Tr(y^k)` for `k = 0..n-1`
    traces: Vec<BigInt>,
}

impl NumberField {
    pub fn new(m: ZPoly) -> Result<Self> {
        if !zpoly::is_monic(&m) || zpoly::degree(&m).unwrap_or(0) == 0 {
            return Err(Error::InvalidPolynomial("field modulus must be monic of positive degree".into()));
        }
        let n = m.len() - 1;
        let mut high_powers: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        // y^n = -(m_0 + ... + m_{n-1} y^{n-1})
        let mut cur: Vec<BigInt> = m[..n].iter().map(|c| -c).collect();
        for _ in 0..n {
            high_powers.push(cur.clone());
            // multiply by y
            let top = cur[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..n {
                next[i] -= &top * &m[i];
            }
            cur = next;
        }
        let ps = zpoly::power_sums(&zpoly::to_q(&m), n.saturating_sub(1));
        let mut traces = vec![BigInt::from(n)];
        traces.extend(ps.into_iter().map(|r| r.to_integer()));
        Ok(NumberField { m, n, high_powers, traces })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    fn normalize(&self, mut num: Vec<BigInt>, mut den: BigInt) -> Elt {
        zpoly::trim(&mut num);
        if num.is_empty() {
            return self.zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let g = num.iter().fold(den.clone(), |a, c| a.gcd(c));
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        Elt { num, den }
    }

    /// Reduces an integer polynomial of degree below `2n - 1` modulo `m`.
    fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.n;
        if p.len() > n {
            let high: Vec<BigInt> = p.drain(n..).collect();
            p.resize(n, BigInt::zero());
            for (k, c) in high.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let row = if k < n { self.high_powers[k].clone() } else { self.power_of_y(n + k) };
                for (i, r) in row.iter().enumerate() {
                    p[i] += c * r;
                }
            }
        }
        p
    }

    fn power_of_y(&self, e: usize) -> Vec<BigInt> {
        let mut x = vec![BigInt::zero(); e + 1];
        x[e] = BigInt::one();
        zpoly::divrem_monic(&x, &self.m).1
    }

    pub fn zero(&self) -> Elt {
        Elt { num: Vec::new(), den: BigInt::one() }
    }

    pub fn one(&self) -> Elt {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, c: &BigInt) -> Elt {
        self.normalize(vec![c.clone()], BigInt::one())
    }

    pub fn from_rational(&self, r: &BigRational) -> Elt {
        self.normalize(vec![r.numer().clone()], r.denom().clone())
    }

    /// The class of `y`.
    pub fn gen(&self) -> Elt {
        if self.n == 1 {
            return self.from_int(&(-&self.m[0]));
        }
        self.normalize(vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    /// Image of an arbitrary integer polynomial in `y`, divided by `den`.
    pub fn from_poly(&self, p: &[BigInt], den: &BigInt) -> Elt {
        let r = zpoly::divrem_monic(p, &self.m).1;
        self.normalize(r, den.clone())
    }

    /// Image of a rational polynomial in `y`.
    pub fn from_qpoly(&self, p: &[BigRational]) -> Elt {
        let den = p.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let num: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        self.from_poly(&num, &den)
    }

    pub fn to_qpoly(&self, a: &Elt) -> Vec<BigRational> {
        a.num.iter().map(|c| BigRational::new(c.clone(), a.den.clone())).collect()
    }

    pub fn is_zero(&self, a: &Elt) -> bool {
        a.num.is_empty()
    }

    pub fn is_one(&self, a: &Elt) -> bool {
        a.num.len() == 1 && a.num[0].is_one() && a.den.is_one()
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den;
        let len = a.num.len().max(b.num.len());
        let mut out = vec![BigInt::zero(); len];
        for (i, c) in a.num.iter().enumerate() {
            out[i] += c * &fa;
        }
        for (i, c) in b.num.iter().enumerate() {
            out[i] += c * &fb;
        }
        self.normalize(out, l)
    }

    pub fn neg(&self, a: &Elt) -> Elt {
        Elt { num: a.num.iter().map(|c| -c).collect(), den: a.den.clone() }
    }

    pub fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Elt, c: &BigRational) -> Elt {
        let num = a.num.iter().map(|x| x * c.numer()).collect();
        self.normalize(num, &a.den * c.denom())
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        if a.num.is_empty() || b.num.is_empty() {
            return self.zero();
        }
        let prod = zpoly::mul(&a.num, &b.num);
        self.normalize(self.reduce(prod), &a.den * &b.den)
    }

    pub fn square(&self, a: &Elt) -> Elt {
        self.mul(a, a)
    }

    /// `a^e` for `e >= 0`; negative exponents go through `inverse`.
    pub fn pow(&self, a: &Elt, e: &BigInt) -> Result<Elt> {
        if e.is_negative() {
            return self.pow(&self.inverse(a)?, &(-e));
        }
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        Ok(acc)
    }

    pub fn pow_u64(&self, a: &Elt, e: u64) -> Elt {
        self.pow(a, &BigInt::from(e)).expect("nonnegative exponent")
    }

    /// Inverse by solving `a x = 1` in the power basis.
    pub fn inverse(&self, a: &Elt) -> Result<Elt> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        let n = self.n;
        // column k holds the coordinates of num(a) * y^k
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut cur = a.num.clone();
        cur.resize(n, BigInt::zero());
        for _ in 0..n {
            cols.push(cur.clone());
            let mut shifted = vec![BigInt::zero()];
            shifted.extend(cur.iter().cloned());
            cur = self.reduce(shifted);
        }
        let mat: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|k| cols[k][i].clone()).collect()).collect();
        let mut rhs = vec![BigInt::zero(); n];
        rhs[0] = a.den.clone();
        let (num, den) = crate::arith::linsolve::solve(&mat, &rhs)
            .map_err(|_| Error::Internal("field modulus is reducible".into()))?;
        Ok(self.normalize(num, den))
    }

    pub fn div(&self, a: &Elt, b: &Elt) -> Result<Elt> {
        Ok(self.mul(a, &self.inverse(b)?))
    }

    /// Evaluates an integer polynomial at `z` by Horner's rule.
    pub fn eval_zpoly(&self, p: &[BigInt], z: &Elt) -> Elt {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, z), &self.from_int(c));
        }
        acc
    }

    /// Evaluates a polynomial with coefficients in the field at `z`.
    pub fn eval_poly(&self, p: &[Elt], z: &Elt) -> Elt {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, z), c);
        }
        acc
    }

    /// Product of `(T - r)` over the given roots, ascending coefficients.
    pub fn poly_from_roots(&self, roots: &[Elt]) -> Vec<Elt> {
        let mut acc = vec![self.one()];
        for r in roots {
            let mut next = vec![self.zero(); acc.len() + 1];
            for (i, c) in acc.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], c);
                next[i] = self.sub(&next[i], &self.mul(c, r));
            }
            acc = next;
        }
        acc
    }

    /// Rational value of `a`, if it lies in Q.
    pub fn as_rational(&self, a: &Elt) -> Option<BigRational> {
        match a.num.len() {
            0 => Some(BigRational::zero()),
            1 => Some(BigRational::new(a.num[0].clone(), a.den.clone())),
            _ => None,
        }
    }

    pub fn trace(&self, a: &Elt) -> BigRational {
        let s: BigInt = a.num.iter().zip(&self.traces).map(|(c, t)| c * t).sum();
        BigRational::new(s, a.den.clone())
    }

    /// Characteristic polynomial of multiplication by `a`, via power-sum traces.
    pub fn charpoly(&self, a: &Elt) -> Vec<BigRational> {
        let mut ps = Vec::with_capacity(self.n);
        let mut x = a.clone();
        for k in 1..=self.n {
            ps.push(self.trace(&x));
            if k < self.n {
                x = self.mul(&x, a);
            }
        }
        zpoly::from_power_sums(self.n, &ps)
    }

    /// Least `n > 0` with `a^n = 1` among `orders`, which must be ascending.
    /// Powers are built incrementally, so the cost is `max(orders)` products.
    pub fn root_of_unity_order(&self, a: &Elt, orders: &[u64]) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let max = *orders.last()?;
        let mut x = a.clone();
        let mut k = 1u64;
        let mut idx = 0;
        while k <= max {
            while idx < orders.len() && orders[idx] < k {
                idx += 1;
            }
            if idx < orders.len() && orders[idx] == k && self.is_one(&x) {
                return Some(k);
            }
            // a root of unity is an algebraic integer; bail out once the
            // denominator shows otherwise
            if !x.den.is_one() && !self.trace(&x).is_integer() {
                return None;
            }
            x = self.mul(&x, a);
            k += 1;
        }
        None
    }

    /// Exact check that `a` has multiplicative order exactly `n`.
    pub fn has_order(&self, a: &Elt, n: u64) -> bool {
        if n == 0 || !self.is_one(&self.pow_u64(a, n)) {
            return false;
        }
        crate::arith::ntheory::factor_u64(n)
            .iter()
            .all(|&(p, _)| !self.is_one(&self.pow_u64(a, n / p)))
    }

    pub fn format(&self, a: &Elt) -> String {
        let p = zpoly::format(&a.num);
        if a.den.is_one() {
            p
        } else {
            format!("({p})/{}", a.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;

    #[test]
    fn gaussian_integers() {
        let k = NumberField::new(from_i64(&[1, 0, 1])).unwrap();
        let i = k.gen();
        assert_eq!(k.mul(&i, &i), k.from_int(&BigInt::from(-1)));
        assert_eq!(k.root_of_unity_order(&i, &[1, 2, 3, 4, 6]), Some(4));
        assert!(k.has_order(&i, 4));
        assert!(!k.has_order(&i, 2));
        let one_plus_i = k.add(&k.one(), &i);
        let inv = k.inverse(&one_plus_i).unwrap();
        assert!(k.is_one(&k.mul(&inv, &one_plus_i)));
        assert_eq!(k.root_of_unity_order(&one_plus_i, &[1, 2, 3, 4, 6]), None);
        assert_eq!(k.trace(&one_plus_i), BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn charpoly_of_generator_is_modulus() {
        let m = from_i64(&[8, 0, -2, -2, -1, 0, 1]);
        let k = NumberField::new(m.clone()).unwrap();
        let cp = k.charpoly(&k.gen());
        assert_eq!(cp, zpoly::to_q(&m));
        let y2 = k.mul(&k.gen(), &k.gen());
        let y8 = k.pow_u64(&k.gen(), 8);
        assert_eq!(k.pow_u64(&y2, 4), y8);
    }

    #[test]
    fn weil_ratio_is_not_root_of_unity() {
        // alpha^2 / 2 for alpha a root of T^2 - T + 2 has absolute value 1
        // at both places but is not a root of unity
        let k = NumberField::new(from_i64(&[2, -1, 1])).unwrap();
        let a = k.gen();
        let b = k.scale(&k.mul(&a, &a), &BigRational::new(BigInt::one(), BigInt::from(2)));
        let orders = crate::arith::ntheory::orders_with_phi_at_most(2);
        assert_eq!(k.root_of_unity_order(&b, &orders), None);
        // alpha^2 / 2 for alpha = sqrt(-2) is -1
        let k = NumberField::new(from_i64(&[2, 0, 1])).unwrap();
        let a = k.gen();
        let b = k.scale(&k.mul(&a, &a), &BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(k.root_of_unity_order(&b, &orders), Some(2));
    }
}
