//! Newton polygons at `p`, normalized so that `v(q) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::ntheory::valuation;

/// Root valuations of `P`, with multiplicity, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeMultiset {
    pub slopes: Vec<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NewtonTag {
    Ordinary,
    AlmostOrdinary,
    Supersingular,
    GeneralizedLz,
    Complementary,
    Other,
}

impl NewtonTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            NewtonTag::Ordinary => "ordinary",
            NewtonTag::AlmostOrdinary => "almost_ordinary",
            NewtonTag::Supersingular => "supersingular",
            NewtonTag::GeneralizedLz => "generalized_LZ",
            NewtonTag::Complementary => "complementary",
            NewtonTag::Other => "other",
        }
    }
}

impl fmt::Display for NewtonTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonClass {
    pub tag: NewtonTag,
    pub witness: String,
}

impl SlopeMultiset {
    pub fn multiplicity(&self, s: &BigRational) -> usize {
        self.slopes.iter().filter(|x| *x == s).count()
    }

    /// Distinct slopes with multiplicities, ascending.
    pub fn grouped(&self) -> Vec<(BigRational, usize)> {
        let mut out: Vec<(BigRational, usize)> = Vec::new();
        for s in &self.slopes {
            match out.last_mut() {
                Some((t, k)) if t == s => *k += 1,
                _ => out.push((s.clone(), 1)),
            }
        }
        out
    }

    pub fn sum(&self) -> BigRational {
        self.slopes.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Least common multiple of the slope denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.slopes.iter().fold(BigInt::one(), |a, s| a.lcm(s.denom()))
    }

    pub fn is_symmetric(&self) -> bool {
        let one = BigRational::one();
        self.grouped().iter().all(|(s, k)| self.multiplicity(&(&one - s)) == *k)
    }
}

/// Lower convex hull of `(k, v_p(c_k))`; slopes are `(v_i - v_j) / (j - i)`
/// per segment, divided by `r` where `q = p^r`.
pub fn newton_slopes(coeffs: &[BigInt], p: &BigInt, r: u32) -> SlopeMultiset {
    let points: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64, valuation(c, p) as i64))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above segment a-pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes = Vec::new();
    // hull starts at the lowest-index nonzero coefficient; roots at zero get +infinity,
    // which cannot happen for Weil polynomials (c_0 = q^g)
    for w in hull.windows(2) {
        let ((i, vi), (j, vj)) = (w[0], w[1]);
        let s = BigRational::new(BigInt::from(vi - vj), BigInt::from((j - i) * r as i64));
        for _ in 0..(j - i) {
            slopes.push(s.clone());
        }
    }
    slopes.sort();
    SlopeMultiset { slopes }
}

/// First matching tag in the order supersingular, ordinary, almost ordinary,
/// complementary, generalized LZ, other.
pub fn classify_newton(s: &SlopeMultiset, g: usize) -> NewtonClass {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let m0 = s.multiplicity(&zero);
    let m1 = s.multiplicity(&one);
    let mh = s.multiplicity(&half);
    let n = s.slopes.len();
    let (tag, witness) = if mh == n {
        (NewtonTag::Supersingular, "all slopes 1/2".to_string())
    } else if m0 + m1 == n {
        (NewtonTag::Ordinary, "slopes 0 and 1 only".to_string())
    } else if g >= 1 && m0 == g - 1 && m1 == g - 1 && mh == 2 {
        (NewtonTag::AlmostOrdinary, format!("0 and 1 with multiplicity {}, 1/2 twice", g - 1))
    } else if g >= 1 && m0 == 1 && m1 == 1 && mh == 2 * (g - 1) {
        (NewtonTag::Complementary, format!("0 and 1 once, 1/2 with multiplicity {}", 2 * (g - 1)))
    } else if mh == 2 && s.slopes.iter().filter(|x| **x != half).all(|x| x.denom().is_odd()) {
        (NewtonTag::GeneralizedLz, "1/2 twice, all other slopes 2-integral".to_string())
    } else {
        (NewtonTag::Other, "no named shape".to_string())
    };
    NewtonClass { tag, witness }
}

pub fn format_slope(s: &BigRational) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ms(v: &[(i64, i64)]) -> SlopeMultiset {
        let mut slopes: Vec<BigRational> = v.iter().map(|&(n, d)| rat(n, d)).collect();
        slopes.sort();
        SlopeMultiset { slopes }
    }

    #[test]
    fn paper_polynomials() {
        let two = BigInt::from(2);
        let s = newton_slopes(&from_i64(&[8, 0, 0, -2, 0, 0, 1]), &two, 1);
        assert_eq!(s, ms(&[(1, 3), (1, 3), (1, 3), (2, 3), (2, 3), (2, 3)]));
        let s = newton_slopes(&from_i64(&[8, 0, -2, -2, -1, 0, 1]), &two, 1);
        assert_eq!(s, ms(&[(0, 1), (0, 1), (1, 2), (1, 2), (1, 1), (1, 1)]));
        assert_eq!(classify_newton(&s, 3).tag, NewtonTag::AlmostOrdinary);
        let s = newton_slopes(&from_i64(&[2, 0, 1]), &two, 1);
        assert_eq!(s, ms(&[(1, 2), (1, 2)]));
        assert_eq!(classify_newton(&s, 1).tag, NewtonTag::Supersingular);
    }

    #[test]
    fn normalization_by_r() {
        // T^2 + 2T + 4 over q = 4: slopes 1/2, 1/2
        let s = newton_slopes(&from_i64(&[4, 2, 1]), &BigInt::from(2), 2);
        assert_eq!(s, ms(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn classification_precedence() {
        let glz = ms(&[(1, 3), (1, 3), (1, 3), (1, 2), (1, 2), (2, 3), (2, 3), (2, 3)]);
        assert_eq!(classify_newton(&glz, 4).tag, NewtonTag::GeneralizedLz);
        let comp = ms(&[(0, 1), (1, 2), (1, 2), (1, 2), (1, 2), (1, 1)]);
        assert_eq!(classify_newton(&comp, 3).tag, NewtonTag::Complementary);
        let ord = ms(&[(0, 1), (0, 1), (1, 1), (1, 1)]);
        assert_eq!(classify_newton(&ord, 2).tag, NewtonTag::Ordinary);
        // g = 2: almost ordinary and complementary coincide, almost ordinary wins
        let ao = ms(&[(0, 1), (1, 2), (1, 2), (1, 1)]);
        assert_eq!(classify_newton(&ao, 2).tag, NewtonTag::AlmostOrdinary);
        let other = ms(&[(1, 4), (1, 4), (1, 4), (1, 4), (3, 4), (3, 4), (3, 4), (3, 4)]);
        assert_eq!(classify_newton(&other, 4).tag, NewtonTag::Other);
    }
}
