//! Binary fixed-point reals and complex numbers on top of `BigInt`.
//!
//! A value `x` at precision `prec` is stored as the integer `round(x * 2^prec)`.
//! Every elementary operation below is accurate to a few units in the last
//! place; callers keep explicit guard bits and never rely on exact rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fx {
    pub prec: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Cx {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Cx { re, im }
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: -&self.im }
    }
}

impl Fx {
    pub fn new(prec: u32) -> Self {
        Fx { prec }
    }

    pub fn one(&self) -> BigInt {
        BigInt::one() << self.prec
    }

    pub fn from_int(&self, n: &BigInt) -> BigInt {
        n << self.prec
    }

    pub fn from_rational(&self, r: &BigRational) -> BigInt {
        round_div(&(r.numer() << self.prec), r.denom())
    }

    pub fn from_f64(&self, x: f64) -> BigInt {
        if x == 0.0 || !x.is_finite() {
            return BigInt::zero();
        }
        let (mant, exp) = frexp(x);
        let m = BigInt::from((mant * (1u64 << 53) as f64) as i64);
        let shift = exp as i64 - 53 + self.prec as i64;
        if shift >= 0 {
            m << shift as usize
        } else {
            m >> (-shift) as usize
        }
    }

    pub fn to_f64(&self, a: &BigInt) -> f64 {
        let bits = a.bits();
        if bits <= 60 {
            return a.to_i64().unwrap() as f64 / 2f64.powi(self.prec as i32);
        }
        let drop = bits - 60;
        let top = (a >> drop).to_i64().unwrap() as f64;
        top * 2f64.powi(drop as i32 - self.prec as i32)
    }

    /// Changes the scale of `a` from this precision to `to`.
    pub fn rescale(&self, a: &BigInt, to: Fx) -> BigInt {
        if to.prec >= self.prec {
            a << (to.prec - self.prec)
        } else {
            a >> (self.prec - to.prec)
        }
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.prec
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.prec).div_floor(b)
    }

    pub fn sqrt(&self, a: &BigInt) -> BigInt {
        assert!(!a.is_negative(), "square root of a negative number");
        (a << self.prec).sqrt()
    }

    pub fn round_to_int(&self, a: &BigInt) -> BigInt {
        let half = BigInt::one() << (self.prec - 1);
        (a + half) >> self.prec
    }

    pub fn pi(&self) -> BigInt {
        let inner = Fx::new(self.prec + GUARD);
        let a5 = inner.atan_inv_int(5);
        let a239 = inner.atan_inv_int(239);
        let pi = a5 * 16 - a239 * 4;
        inner.rescale(&pi, *self)
    }

    /// `atan(1/n)` by the alternating series.
    fn atan_inv_int(&self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        let n2 = &n * &n;
        let mut power = self.one() / &n;
        let mut sum = power.clone();
        let mut k = 1u64;
        while !power.is_zero() {
            power = &power / &n2;
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        sum
    }

    /// Arctangent of `x` with `|x| <= 1`.
    pub fn atan(&self, x: &BigInt) -> BigInt {
        let inner = Fx::new(self.prec + GUARD);
        let one = inner.one();
        let mut t = self.rescale(x, inner);
        const HALVINGS: u32 = 8;
        for _ in 0..HALVINGS {
            // atan t = 2 atan(t / (1 + sqrt(1 + t^2)))
            let r = inner.sqrt(&(&one + inner.mul(&t, &t)));
            t = inner.div(&t, &(&one + r));
        }
        let t2 = inner.mul(&t, &t);
        let mut power = t.clone();
        let mut sum = t;
        let mut k = 1u64;
        while !power.is_zero() {
            power = -inner.mul(&power, &t2);
            sum += &power / BigInt::from(2 * k + 1);
            k += 1;
        }
        inner.rescale(&(sum << HALVINGS), *self)
    }

    /// Argument of `x + iy` in `(-pi, pi]`; `(0, 0)` maps to 0.
    pub fn atan2(&self, y: &BigInt, x: &BigInt) -> BigInt {
        if x.is_zero() && y.is_zero() {
            return BigInt::zero();
        }
        let pi = self.pi();
        if y.abs() <= x.abs() {
            let a = self.atan(&self.div(y, x));
            if x.is_positive() {
                a
            } else if y.is_negative() {
                a - pi
            } else {
                a + pi
            }
        } else {
            let half_pi: BigInt = &pi >> 1u32;
            let a = self.atan(&self.div(x, y));
            if y.is_positive() {
                half_pi - a
            } else {
                -half_pi - a
            }
        }
    }

    pub fn cadd(&self, a: &Cx, b: &Cx) -> Cx {
        Cx::new(&a.re + &b.re, &a.im + &b.im)
    }

    pub fn csub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx::new(&a.re - &b.re, &a.im - &b.im)
    }

    pub fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        let re = &a.re * &b.re - &a.im * &b.im;
        let im = &a.re * &b.im + &a.im * &b.re;
        Cx::new(re >> self.prec, im >> self.prec)
    }

    pub fn cscale(&self, a: &Cx, c: &BigInt) -> Cx {
        Cx::new(&a.re * c, &a.im * c)
    }

    /// `|a|^2` at this precision.
    pub fn cabs2(&self, a: &Cx) -> BigInt {
        (&a.re * &a.re + &a.im * &a.im) >> self.prec
    }

    pub fn cdiv(&self, a: &Cx, b: &Cx) -> Cx {
        let den = &b.re * &b.re + &b.im * &b.im;
        let re = (&a.re * &b.re + &a.im * &b.im) << self.prec;
        let im = (&a.im * &b.re - &a.re * &b.im) << self.prec;
        Cx::new(re.div_floor(&den), im.div_floor(&den))
    }

    pub fn cfrom_int(&self, n: &BigInt) -> Cx {
        Cx::new(self.from_int(n), BigInt::zero())
    }

    /// Evaluates an integer polynomial (ascending coefficients) at `z`.
    pub fn ceval(&self, p: &[BigInt], z: &Cx) -> Cx {
        let mut acc = Cx::default();
        for c in p.iter().rev() {
            acc = self.cmul(&acc, z);
            acc.re += self.from_int(c);
        }
        acc
    }

    pub fn cpow(&self, z: &Cx, mut e: u64) -> Cx {
        let mut acc = self.cfrom_int(&BigInt::one());
        let mut b = z.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.cmul(&acc, &b);
            }
            b = self.cmul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn cto_f64(&self, z: &Cx) -> (f64, f64) {
        (self.to_f64(&z.re), self.to_f64(&z.im))
    }
}

/// `round(a / b)` for `b > 0`.
pub fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a: BigInt = a << 1u32;
    (two_a + b).div_floor(&(b << 1u32))
}

/// `ceil(sqrt(n))` for `n >= 0`.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}

fn frexp(x: f64) -> (f64, i32) {
    let bits = x.abs().log2().floor() as i32 + 1;
    let mant = x / 2f64.powi(bits);
    (mant, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let fx = Fx::new(200);
        let pi = fx.pi();
        let digits: BigInt = (pi * BigInt::from(10).pow(50u32)) >> 200u32;
        assert_eq!(digits.to_string(), "314159265358979323846264338327950288419716939937510");
    }

    #[test]
    fn atan2_quadrants() {
        let fx = Fx::new(80);
        let one = fx.one();
        let quarter = fx.atan2(&one, &one);
        let pi = fx.pi();
        assert!((&quarter * 4u32 - &pi).abs() < BigInt::from(64));
        let back = fx.atan2(&BigInt::zero(), &(-&one));
        assert!((back - &pi).abs() < BigInt::from(64));
        let neg = fx.atan2(&(-&one), &BigInt::zero());
        assert!((neg * 2u32 + &pi).abs() < BigInt::from(64));
        let v = fx.to_f64(&fx.atan2(&fx.from_f64(7f64.sqrt()), &one));
        assert!((v - 7f64.sqrt().atan()).abs() < 1e-14);
    }

    #[test]
    fn complex_division_round_trip() {
        let fx = Fx::new(100);
        let a = Cx::new(fx.from_f64(1.5), fx.from_f64(-2.25));
        let b = Cx::new(fx.from_f64(0.5), fx.from_f64(3.0));
        let c = fx.cmul(&fx.cdiv(&a, &b), &b);
        assert!((c.re - a.re).abs() < BigInt::from(16));
        assert!((c.im - a.im).abs() < BigInt::from(16));
    }
}
