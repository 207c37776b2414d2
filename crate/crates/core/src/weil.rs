//! q-Weil polynomials: construction from isogeny-class labels or coefficient
//! lists, exact validation, and base change.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factor;
use crate::arith::ntheory::{is_square, prime_power};
use crate::arith::zpoly::{self, QPoly, ZPoly};
use crate::error::{Error, Result};

/// Inputs with a coefficient longer than this many decimal digits are refused.
pub const MAX_COEFF_DIGITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPolynomial {
    pub g: usize,
    pub q: BigInt,
    pub p: BigInt,
    /// `q = p^r`
    pub r: u32,
    /// `c_0..=c_{2g}`, ascending
    pub coeffs: ZPoly,
    /// irreducible radical, `P = h^e`
    pub h: ZPoly,
    pub e: u32,
    pub validation: ValidationReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub functional_equation_ok: bool,
    pub weil_bound_ok: bool,
    /// `(h, e)` with `P = h^e` and `h` irreducible, when such a pair exists
    pub irreducible_power: Option<(ZPoly, u32)>,
    pub boundary_root_flag: bool,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.functional_equation_ok && self.weil_bound_ok
    }
}

impl WeilPolynomial {
    /// Builds and validates from ascending coefficients; invalid input is an error.
    pub fn from_coeffs(q: &BigInt, coeffs: ZPoly) -> Result<Self> {
        check_digits(coeffs.iter().chain(std::iter::once(q)))?;
        let (p, r) = prime_power(q).ok_or_else(|| Error::NotPrimePower(q.clone()))?;
        let report = validate_weil(&coeffs, q)?;
        if !report.is_valid() {
            return Err(Error::NotWeil(report.notes.join("; ")));
        }
        let (h, e) = match squarefree_power(&coeffs) {
            Some((h, e)) => (h, e),
            None => (coeffs.clone(), 1),
        };
        Ok(WeilPolynomial { g: (coeffs.len() - 1) / 2, q: q.clone(), p, r, coeffs, h, e, validation: report })
    }

    /// From the `g` free coefficients `a_1..a_g` (`P = T^2g + a_1 T^(2g-1) + ...`).
    pub fn from_free_coeffs(q: &BigInt, a: &[BigInt]) -> Result<Self> {
        check_digits(a.iter().chain(std::iter::once(q)))?;
        if prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q.clone()));
        }
        Self::from_coeffs(q, complete_coefficients(a.len(), q, a))
    }

    /// `g_eff = deg(h) / 2`.
    pub fn g_eff(&self) -> usize {
        (self.h.len() - 1) / 2
    }

    pub fn is_irreducible_power(&self) -> bool {
        self.validation.irreducible_power.is_some()
    }

    pub fn label(&self) -> String {
        format_label(self.g, &self.q, &self.free_coeffs())
    }

    pub fn free_coeffs(&self) -> Vec<BigInt> {
        (1..=self.g).map(|i| self.coeffs[2 * self.g - i].clone()).collect()
    }

    pub fn display(&self) -> String {
        zpoly::format(&self.coeffs)
    }
}

fn check_digits<'a>(it: impl Iterator<Item = &'a BigInt>) -> Result<()> {
    for c in it {
        if c.abs().to_string().len() > MAX_COEFF_DIGITS {
            return Err(Error::CoefficientTooLarge { max_digits: MAX_COEFF_DIGITS });
        }
    }
    Ok(())
}

/// `Some((h, e))` when `P` is the `e`-th power of a squarefree polynomial `h`.
fn squarefree_power(p: &[BigInt]) -> Option<(ZPoly, u32)> {
    let parts = zpoly::squarefree_decomposition(p);
    match parts.as_slice() {
        [(h, e)] => Some((h.clone(), *e)),
        _ => None,
    }
}

/// Completes `(a_1..a_g)` to `c_0..c_2g` by the functional equation.
pub fn complete_coefficients(g: usize, q: &BigInt, a: &[BigInt]) -> ZPoly {
    assert_eq!(a.len(), g, "expected {g} free coefficients");
    let mut c = vec![BigInt::zero(); 2 * g + 1];
    c[2 * g] = BigInt::one();
    for i in 1..=g {
        c[2 * g - i] = a[i - 1].clone();
    }
    let mut qi = BigInt::one();
    for i in 1..=g {
        qi *= q;
        c[g - i] = &qi * &c[g + i];
    }
    c
}

/// Parses `g.q.c_1_..._c_g` with base-26 letter digits.
pub fn parse_label(label: &str) -> Result<WeilPolynomial> {
    let bad = |reason: &str| Error::MalformedLabel { label: label.to_string(), reason: reason.to_string() };
    let parts: Vec<&str> = label.split('.').collect();
    if parts.len() != 3 {
        return Err(bad("expected three dot-separated fields"));
    }
    let g: usize = parts[0].parse().map_err(|_| bad("dimension is not a positive integer"))?;
    if g == 0 || parts[0].starts_with('0') {
        return Err(bad("dimension is not a positive integer"));
    }
    if parts[1].starts_with('0') || parts[1].is_empty() || !parts[1].bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("q is not a positive integer"));
    }
    let q: BigInt = parts[1].parse().map_err(|_| bad("q is not a positive integer"))?;
    check_digits(std::iter::once(&q))?;
    let words: Vec<&str> = parts[2].split('_').collect();
    if words.len() != g {
        return Err(bad(&format!("expected {g} coefficients, found {}", words.len())));
    }
    let a: Vec<BigInt> = words.iter().map(|w| decode_base26(w).ok_or_else(|| bad(&format!("bad coefficient {w:?}")))).collect::<Result<_>>()?;
    if prime_power(&q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    WeilPolynomial::from_free_coeffs(&q, &a)
}

pub fn format_label(g: usize, q: &BigInt, a: &[BigInt]) -> String {
    let words: Vec<String> = a.iter().map(encode_base26).collect();
    format!("{g}.{q}.{}", words.join("_"))
}

/// `a`..`z` digits; a leading `a` on a longer word marks a negative number.
pub fn decode_base26(word: &str) -> Option<BigInt> {
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return None;
    }
    if word == "a" {
        return Some(BigInt::zero());
    }
    let (neg, digits) = match word.strip_prefix('a') {
        Some(rest) => (true, rest),
        None => (false, word),
    };
    if digits.starts_with('a') {
        return None;
    }
    let mut n = BigInt::zero();
    for b in digits.bytes() {
        n = n * 26u32 + (b - b'a') as u32;
    }
    Some(if neg { -n } else { n })
}

pub fn encode_base26(n: &BigInt) -> String {
    if n.is_zero() {
        return "a".into();
    }
    let mut m = n.abs();
    let mut digits = Vec::new();
    let base = BigInt::from(26);
    while !m.is_zero() {
        let (q, r) = m.div_rem(&base);
        digits.push(b'a' + r.to_u8().unwrap());
        m = q;
    }
    if n.is_negative() {
        digits.push(b'a');
    }
    digits.reverse();
    String::from_utf8(digits).unwrap()
}

/// Exact validation: functional equation, roots on the circle of radius `sqrt q`
/// (via the real polynomial and Sturm sequences), and the irreducible-power test.
pub fn validate_weil(coeffs: &[BigInt], q: &BigInt) -> Result<ValidationReport> {
    let n = zpoly::degree(coeffs).ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if !zpoly::is_monic(coeffs) || coeffs.len() != n + 1 {
        return Err(Error::InvalidPolynomial("polynomial is not monic".into()));
    }
    if n % 2 == 1 || n == 0 {
        return Err(Error::InvalidPolynomial(format!("degree {n} is not a positive even number")));
    }
    let mut notes = Vec::new();
    let functional_equation_ok = functional_equation_holds(coeffs, q);
    if !functional_equation_ok {
        notes.push("functional equation c_{g-i} = q^i c_{g+i} fails".into());
    }
    let mut boundary = false;
    let weil_bound_ok = if functional_equation_ok {
        let hr = real_polynomial(coeffs, q);
        let (ok, hit) = real_roots_in_weil_interval(&hr, q);
        boundary = hit;
        if !ok {
            notes.push("some root does not have absolute value sqrt(q)".into());
        }
        ok
    } else {
        false
    };
    if boundary {
        notes.push("real root +-sqrt(q): boundary case".into());
    }
    let irreducible_power = match squarefree_power(coeffs) {
        Some((h, e)) if factor::is_irreducible(&h)? => Some((h, e)),
        _ => {
            notes.push("not a power of an irreducible polynomial".into());
            None
        }
    };
    Ok(ValidationReport { functional_equation_ok, weil_bound_ok, irreducible_power, boundary_root_flag: boundary, notes })
}

pub fn functional_equation_holds(coeffs: &[BigInt], q: &BigInt) -> bool {
    let g = (coeffs.len() - 1) / 2;
    let mut qi = BigInt::one();
    for i in 0..=g {
        if coeffs[g - i] != &qi * &coeffs[g + i] {
            return false;
        }
        qi *= q;
    }
    true
}

/// `h_real` with `P(T) = T^g h_real(T + q/T)`; assumes the functional equation.
pub fn real_polynomial(coeffs: &[BigInt], q: &BigInt) -> ZPoly {
    let g = (coeffs.len() - 1) / 2;
    // Dickson-type polynomials D_i(T + q/T) = T^i + (q/T)^i
    let mut d_prev: ZPoly = vec![BigInt::from(2)];
    let mut d_cur: ZPoly = vec![BigInt::zero(), BigInt::one()];
    let mut out: ZPoly = vec![coeffs[g].clone()];
    for i in 1..=g {
        out = zpoly::add(&out, &zpoly::scale(&d_cur, &coeffs[g + i]));
        let next = zpoly::sub(&zpoly::mul(&d_cur, &[BigInt::zero(), BigInt::one()]), &zpoly::scale(&d_prev, q));
        d_prev = std::mem::replace(&mut d_cur, next);
    }
    out
}

/// `(all roots real in [-2 sqrt q, 2 sqrt q], some root equals +-2 sqrt q)`.
pub fn real_roots_in_weil_interval(hr: &[BigInt], q: &BigInt) -> (bool, bool) {
    let four_q = q * 4u32;
    let mut boundary = false;
    for (part, _) in zpoly::squarefree_decomposition(hr) {
        let mut f = part;
        // strip roots at the endpoints exactly
        if is_square(&four_q) {
            let s = four_q.sqrt();
            for r in [s.clone(), -s] {
                let lin = vec![-r, BigInt::one()];
                if let Some(quo) = zpoly::div_exact(&f, &lin) {
                    f = quo;
                    boundary = true;
                }
            }
        } else {
            let quad = vec![-four_q.clone(), BigInt::zero(), BigInt::one()];
            if let Some(quo) = zpoly::div_exact(&f, &quad) {
                f = quo;
                boundary = true;
            }
        }
        let d = zpoly::degree(&f).unwrap_or(0);
        if d == 0 {
            continue;
        }
        if sturm_count_open_interval(&f, &four_q) != d {
            return (false, boundary);
        }
    }
    (true, boundary)
}

/// Distinct real roots of squarefree `f` in `(-sqrt D, sqrt D)`, endpoints not roots.
pub fn sturm_count_open_interval(f: &[BigInt], d: &BigInt) -> usize {
    let seq = sturm_sequence(&zpoly::to_q(f));
    let changes = |sign: i32| -> usize {
        let signs: Vec<i32> = seq.iter().map(|s| sign_at_sqrt(s, d, sign)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(-1) - changes(1)
}

fn sturm_sequence(f: &[BigRational]) -> Vec<QPoly> {
    let mut seq = vec![f.to_vec(), zpoly::q_deriv(f)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = zpoly::q_divrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

/// Sign of `s(sigma sqrt D)` for `sigma = +-1`, decided exactly.
fn sign_at_sqrt(s: &[BigRational], d: &BigInt, sigma: i32) -> i32 {
    let dq = BigRational::from_integer(d.clone());
    // s(x) = E(x^2) + x O(x^2)
    let mut even = BigRational::zero();
    let mut odd = BigRational::zero();
    let mut pw = BigRational::one();
    for (k, c) in s.iter().enumerate() {
        if k % 2 == 0 {
            even += c * &pw;
        } else {
            odd += c * &pw;
            pw *= &dq;
        }
    }
    if sigma < 0 {
        odd = -odd;
    }
    sign_a_plus_b_sqrt(&even, &odd, d)
}

/// Sign of `a + b sqrt(d)` with `d >= 0`.
pub fn sign_a_plus_b_sqrt(a: &BigRational, b: &BigRational, d: &BigInt) -> i32 {
    let sa = signum(a);
    let sb = if d.is_zero() { 0 } else { signum(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * BigRational::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

fn signum(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Polynomial whose roots are the `r`-th powers of the roots of `P`, over `q^r`.
pub fn base_change(p: &WeilPolynomial, r: usize) -> Result<WeilPolynomial> {
    assert!(r >= 1, "base change degree must be positive");
    let qp = zpoly::root_power(&zpoly::to_q(&p.coeffs), r);
    let coeffs: ZPoly = qp
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Internal("non-integral base change coefficient".into()))
            }
        })
        .collect::<Result<_>>()?;
    let q = num_traits::pow(p.q.clone(), r);
    WeilPolynomial::from_coeffs(&q, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zpoly::from_i64;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn label_decoding() {
        let p = parse_label("3.2.a_ab_ac").unwrap();
        assert_eq!(p.coeffs, from_i64(&[8, 0, -2, -2, -1, 0, 1]));
        assert_eq!(p.g, 3);
        let p = parse_label("3.2.a_a_ac").unwrap();
        assert_eq!(p.coeffs, from_i64(&[8, 0, 0, -2, 0, 0, 1]));
        let p = parse_label("1.2.a").unwrap();
        assert_eq!(p.coeffs, from_i64(&[2, 0, 1]));
        assert_eq!(decode_base26("ba"), Some(big(26)));
        assert_eq!(decode_base26("aba"), Some(big(-26)));
        assert_eq!(decode_base26("aab"), None);
        assert_eq!(encode_base26(&big(-27)), "abb");
    }

    #[test]
    fn label_errors() {
        assert!(matches!(parse_label("3.2.a_ab"), Err(Error::MalformedLabel { .. })));
        assert!(matches!(parse_label("1.6.a"), Err(Error::NotPrimePower(_))));
        assert!(matches!(parse_label("x.2.a"), Err(Error::MalformedLabel { .. })));
        // T^2 - 3T + 2 fails the bound
        assert!(matches!(parse_label("1.2.ad"), Err(Error::NotWeil(_))));
    }

    #[test]
    fn completion() {
        assert_eq!(complete_coefficients(1, &big(2), &[big(-1)]), from_i64(&[2, -1, 1]));
        assert_eq!(complete_coefficients(3, &big(2), &[big(0), big(-1), big(-2)]), from_i64(&[8, 0, -2, -2, -1, 0, 1]));
        assert_eq!(complete_coefficients(2, &big(3), &[big(0), big(0)]), from_i64(&[9, 0, 0, 0, 1]));
    }

    #[test]
    fn validation_examples() {
        let r = validate_weil(&from_i64(&[2, -1, 1]), &big(2)).unwrap();
        assert!(r.is_valid());
        assert_eq!(real_polynomial(&from_i64(&[2, -1, 1]), &big(2)), from_i64(&[-1, 1]));
        let r = validate_weil(&from_i64(&[2, -3, 1]), &big(2)).unwrap();
        assert!(!r.weil_bound_ok);
        let r = validate_weil(&from_i64(&[2, 0, 1]), &big(2)).unwrap();
        assert!(r.is_valid() && !r.boundary_root_flag);
        assert_eq!(r.irreducible_power.as_ref().unwrap().1, 1);
        // (T - sqrt 4)^2 over q = 4 is a boundary case
        let r = validate_weil(&from_i64(&[4, -4, 1]), &big(4)).unwrap();
        assert!(r.is_valid() && r.boundary_root_flag);
        assert!(validate_weil(&from_i64(&[2, 0, 2]), &big(2)).is_err());
        assert!(validate_weil(&from_i64(&[2, 1]), &big(2)).is_err());
    }

    #[test]
    fn base_change_examples() {
        let p = WeilPolynomial::from_coeffs(&big(2), from_i64(&[2, -1, 1])).unwrap();
        assert_eq!(base_change(&p, 1).unwrap().coeffs, p.coeffs);
        assert_eq!(base_change(&p, 2).unwrap().coeffs, from_i64(&[4, 3, 1]));
        let s = WeilPolynomial::from_coeffs(&big(2), from_i64(&[2, 0, 1])).unwrap();
        let s2 = base_change(&s, 2).unwrap();
        assert_eq!(s2.coeffs, from_i64(&[4, 4, 1]));
        assert_eq!(s2.q, big(4));
        assert_eq!((s2.h.clone(), s2.e), (from_i64(&[2, 1]), 2));
    }
}
