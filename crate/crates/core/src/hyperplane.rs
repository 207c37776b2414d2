//! Newton hyperplane data from the exact splitting field.
//!
//! The valuations `v(sigma alpha_j)` at one fixed place over `p` are read off
//! a single global element: with `D` the lcm of the slope denominators and
//! `B = D + 1`, the element `x = prod_{j<g} alpha_j^{B^j}` satisfies
//! `D v(sigma x) = sum_j B^j (D v(sigma alpha_j))` with every digit in
//! `[0, D]`, so the Newton polygon of the characteristic polynomial of `x`
//! lists the whole orbit of valuation vectors, decoded in base `B`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::galois::{SignedPermGroup, SplittingField};
use crate::linalg::{self, QMat};
use crate::newton::newton_slopes;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonHyperplaneData {
    /// `s_j = 2 v_0(alpha_j) - 1`
    pub s: Vec<BigRational>,
    /// rows `M(h) s` in group element order
    pub matrix: QMat,
    pub delta: usize,
    pub v_basis: QMat,
}

/// Base slope vector for the place whose valuation vector is lexicographically
/// smallest, together with the multiset of all valuation vectors in the orbit.
pub fn local_slope_vector(
    field: &SplittingField,
    p: &BigInt,
    r: u32,
) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let g = field.g;
    let slopes = newton_slopes(&field.h, p, r);
    let d = slopes.denominator_lcm();
    let base = &d + 1u32;
    let k = &field.field;
    let mut x = k.one();
    let mut e = BigInt::one();
    for j in 0..g {
        x = k.mul(&x, &k.pow(&field.roots[j], &e)?);
        e *= &base;
    }
    let cp = k.charpoly(&x);
    if !cp.iter().all(|c| c.is_integer()) {
        return Err(Error::Internal("valuation probe is not integral".into()));
    }
    let cp: Vec<BigInt> = cp.into_iter().map(|c| c.to_integer()).collect();
    let vals = newton_slopes(&cp, p, r);
    let d_q = BigRational::from_integer(d.clone());
    let mut decoded = Vec::with_capacity(vals.slopes.len());
    for v in &vals.slopes {
        let scaled = v * &d_q;
        if !scaled.is_integer() {
            return Err(Error::Internal("probe valuation has unexpected denominator".into()));
        }
        let mut n = scaled.to_integer();
        let mut vec = Vec::with_capacity(g);
        for _ in 0..g {
            let (q, digit) = n.div_mod_floor(&base);
            if digit > d {
                return Err(Error::Internal("probe digit out of range".into()));
            }
            vec.push(BigRational::new(digit, d.clone()));
            n = q;
        }
        if !n.is_zero() {
            return Err(Error::Internal("probe valuation out of range".into()));
        }
        decoded.push(vec);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let to_s = |v: &Vec<BigRational>| -> Vec<BigRational> { v.iter().map(|x| &two * x - BigRational::one()).collect() };
    let rows: Vec<Vec<BigRational>> = decoded.iter().map(to_s).collect();
    let s = rows.iter().min().cloned().ok_or_else(|| Error::Internal("empty orbit".into()))?;
    Ok((s, rows))
}

/// Rows `M(h) s` for `h` in group element order.
pub fn hyperplane_matrix(s: &[BigRational], group: &SignedPermGroup) -> QMat {
    group.elements.iter().map(|h| h.apply(s)).collect()
}

pub fn angle_rank_slopes(matrix: &QMat) -> usize {
    linalg::rational_rank(matrix)
}

/// Full Engine A computation; checks that the decoded orbit equals the row multiset.
pub fn engine_a(field: &SplittingField, p: &BigInt, r: u32) -> Result<NewtonHyperplaneData> {
    let (s, orbit) = local_slope_vector(field, p, r)?;
    let matrix = hyperplane_matrix(&s, field.automorphism_group());
    let count = |rows: &[Vec<BigRational>]| {
        let mut m: BTreeMap<Vec<BigRational>, usize> = BTreeMap::new();
        for row in rows {
            *m.entry(row.clone()).or_default() += 1;
        }
        m
    };
    if count(&matrix) != count(&orbit) {
        return Err(Error::Internal("hyperplane rows disagree with the decoded valuation orbit".into()));
    }
    let (v_basis, _) = linalg::rref(&matrix);
    let delta = v_basis.len();
    Ok(NewtonHyperplaneData { s, matrix, delta, v_basis })
}

/// `dim (V intersected with the coordinate subspace on each part)`.
pub fn decompose_v(v_basis: &QMat, parts: &[Vec<usize>], g: usize) -> Vec<usize> {
    let dim_v = v_basis.len();
    parts
        .iter()
        .map(|part| {
            let w: QMat = part
                .iter()
                .map(|&i| (0..g).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
                .collect();
            let mut sum = v_basis.clone();
            sum.extend(w);
            dim_v + part.len() - linalg::rational_rank(&sum)
        })
        .collect()
}

/// Basis of `V` intersected with the coordinates on `part`, restricted to those coordinates.
pub fn v_piece(v_basis: &QMat, part: &[usize], g: usize) -> QMat {
    // vectors of V vanishing off `part`: kernel of the projection to the complement
    let off: Vec<usize> = (0..g).filter(|i| !part.contains(i)).collect();
    let k = v_basis.len();
    if k == 0 {
        return Vec::new();
    }
    // coefficient vectors c with sum_i c_i v_i zero on `off`
    let constraints: QMat = off.iter().map(|&j| (0..k).map(|i| v_basis[i][j].clone()).collect()).collect();
    let coeffs = if constraints.is_empty() {
        linalg::to_q(&linalg::identity(k))
    } else {
        linalg::to_q(&linalg::orthogonal_complement(&constraints, k))
    };
    let vecs: QMat = coeffs
        .iter()
        .map(|c| {
            part.iter()
                .map(|&j| (0..k).fold(BigRational::zero(), |a, i| a + &c[i] * &v_basis[i][j]))
                .collect()
        })
        .collect();
    linalg::rref(&vecs).0
}

pub fn entries_within_unit_interval(matrix: &QMat) -> bool {
    matrix.iter().flatten().all(|x| x.abs() <= BigRational::one())
}

/// Largest entry denominator of the matrix.
pub fn denominator_lcm(matrix: &QMat) -> BigInt {
    matrix.iter().flatten().fold(BigInt::one(), |a, x| a.lcm(x.denom()))
}

pub fn small(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;
    use crate::galois::{splitting_field, GaloisOptions};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn run(c: &[i64]) -> NewtonHyperplaneData {
        let two = BigInt::from(2);
        let f = splitting_field(&from_i64(c), &two, &GaloisOptions::default()).unwrap();
        engine_a(&f, &two, 1).unwrap()
    }

    #[test]
    fn elliptic_vectors() {
        let a = run(&[2, -1, 1]);
        assert_eq!(a.s, vec![rat(-1, 1)]);
        assert_eq!(a.matrix.len(), 2);
        assert_eq!(a.delta, 1);
        let a = run(&[2, 0, 1]);
        assert_eq!(a.s, vec![rat(0, 1)]);
        assert_eq!(a.delta, 0);
    }

    #[test]
    fn paper_sextics() {
        let a = run(&[8, 0, -2, -2, -1, 0, 1]);
        assert_eq!(a.delta, 2);
        assert_eq!(a.matrix.len(), 12);
        let a = run(&[8, 0, 0, -2, 0, 0, 1]);
        assert_eq!(a.delta, 1);
        assert!(a.s.iter().all(|x| x.abs() == rat(1, 3)));
    }

    #[test]
    fn v_decomposition() {
        let q = |n: i64| rat(n, 1);
        // V spanned by (1,1,0,0) and (0,0,1,-1)
        let v = vec![vec![q(1), q(1), q(0), q(0)], vec![q(0), q(0), q(1), q(-1)]];
        let parts = vec![vec![0, 1], vec![2, 3]];
        assert_eq!(decompose_v(&v, &parts, 4), vec![1, 1]);
        assert_eq!(v_piece(&v, &parts[1], 4), vec![vec![q(1), q(-1)]]);
        assert_eq!(decompose_v(&v, &[vec![0, 1, 2, 3]], 4), vec![2]);
    }
}
