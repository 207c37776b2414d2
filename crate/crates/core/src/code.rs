//! The code `C = ker(G -> Gbar)` in `F_2^g`, its level-set partition, and the
//! permutation-group properties of `Gbar` and of the reduced group on one part.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::galois::SignedPermGroup;
use crate::signed_perm::SignedPerm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    pub g: usize,
    pub words: BTreeSet<Vec<u8>>,
    pub dim: usize,
}

impl Code {
    pub fn is_trivial(&self) -> bool {
        self.dim <= 1
    }

    pub fn is_linear(&self) -> bool {
        self.words.iter().all(|a| {
            self.words
                .iter()
                .all(|b| self.words.contains(&a.iter().zip(b).map(|(x, y)| x ^ y).collect::<Vec<u8>>()))
        })
    }
}

pub fn code_of(group: &SignedPermGroup) -> Code {
    let g = group.g;
    let words: BTreeSet<Vec<u8>> = group
        .elements
        .iter()
        .filter(|h| h.perm().iter().enumerate().all(|(j, &i)| i == j))
        .map(|h| h.signs().iter().map(|&s| u8::from(s < 0)).collect())
        .collect();
    let dim = words.len().trailing_zeros() as usize;
    Code { g, words, dim }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPartition {
    pub parts: Vec<Vec<usize>>,
    pub m: usize,
    /// common part size, when all parts have the same size
    pub g_prime: Option<usize>,
}

pub fn level_partition(code: &Code) -> LevelPartition {
    // i ~ j iff the columns agree on every codeword
    let mut classes: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for i in 0..code.g {
        let col: Vec<u8> = code.words.iter().map(|w| w[i]).collect();
        classes.entry(col).or_default().push(i);
    }
    let mut parts: Vec<Vec<usize>> = classes.into_values().collect();
    parts.sort();
    let m = parts.len();
    let g_prime = if parts.iter().all(|p| p.len() == parts[0].len()) { Some(parts[0].len()) } else { None };
    LevelPartition { parts, m, g_prime }
}

/// Distinct underlying permutations of the group elements.
pub fn quotient_perms(group: &SignedPermGroup) -> Vec<Vec<usize>> {
    let set: BTreeSet<Vec<usize>> = group.elements.iter().map(|h| h.perm()).collect();
    set.into_iter().collect()
}

/// `true` if every permutation maps each part onto a part.
pub fn preserves_partition(perms: &[Vec<usize>], parts: &[Vec<usize>]) -> bool {
    let sets: BTreeSet<BTreeSet<usize>> = parts.iter().map(|p| p.iter().copied().collect()).collect();
    perms
        .iter()
        .all(|s| sets.iter().all(|p| sets.contains(&p.iter().map(|&i| s[i]).collect::<BTreeSet<usize>>())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub degree: usize,
    pub order: usize,
    pub transitive: bool,
    pub primitive: bool,
    /// a nontrivial block, when the group is transitive but imprimitive
    pub block_witness: Option<Vec<usize>>,
    pub two_transitive: bool,
    /// containment in some `Z/n x| (Z/n)^*`; computed only for `n <= 8`
    pub affine: Option<bool>,
}

pub fn group_properties(n: usize, perms: &[Vec<usize>]) -> Result<PropertyReport> {
    if perms.is_empty() {
        return Err(Error::InvalidInput("empty permutation group".into()));
    }
    if perms.iter().any(|s| s.len() != n) {
        return Err(Error::InvalidInput("permutation of wrong degree".into()));
    }
    let transitive = orbit(0, perms).len() == n;
    let mut primitive = transitive;
    let mut block_witness = None;
    if transitive {
        for x in 1..n {
            let b = minimal_block(n, x, perms);
            if b.len() < n {
                primitive = false;
                block_witness = Some(b);
                break;
            }
        }
    }
    let two_transitive = transitive && n >= 2 && {
        let start = (0usize, 1usize);
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((a, b)) = queue.pop_front() {
            for s in perms {
                let next = (s[a], s[b]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen.len() == n * (n - 1)
    };
    let affine = if n <= 8 { Some(is_affine(n, perms)) } else { None };
    Ok(PropertyReport { degree: n, order: perms.len(), transitive, primitive, block_witness, two_transitive, affine })
}

fn orbit(x: usize, perms: &[Vec<usize>]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut stack = vec![x];
    while let Some(a) = stack.pop() {
        for s in perms {
            if seen.insert(s[a]) {
                stack.push(s[a]);
            }
        }
    }
    seen
}

/// Smallest block containing `0` and `x`, by merging classes under the action.
fn minimal_block(n: usize, x: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut queue = VecDeque::new();
    parent[x] = 0;
    queue.push_back((0, x));
    while let Some((a, b)) = queue.pop_front() {
        for s in perms {
            let ra = find(&mut parent, s[a]);
            let rb = find(&mut parent, s[b]);
            if ra != rb {
                parent[rb] = ra;
                queue.push_back((ra, rb));
            }
        }
    }
    let r0 = find(&mut parent, 0);
    (0..n).filter(|&i| find(&mut parent, i) == r0).collect()
}

/// Some bijection `phi: {0..n-1} -> Z/n` conjugates every permutation into
/// an affine map `x -> a x + b` with `a` a unit.
fn is_affine(n: usize, perms: &[Vec<usize>]) -> bool {
    if n <= 2 {
        return true;
    }
    let gens = perm_generators(perms);
    let mut phi: Vec<usize> = (0..n).collect();
    loop {
        let mut inv = vec![0usize; n];
        for (i, &v) in phi.iter().enumerate() {
            inv[v] = i;
        }
        let ok = gens.iter().all(|s| {
            // t = phi s phi^{-1} on Z/n
            let t = |x: usize| phi[s[inv[x]]];
            let b = t(0);
            let a = (t(1) + n - b) % n;
            num_integer::Integer::gcd(&a, &n) == 1 && (0..n).all(|x| t(x) == (a * x + b) % n)
        });
        if ok {
            return true;
        }
        if !next_permutation(&mut phi) {
            return false;
        }
    }
}

/// A small generating set of a permutation group given by all its elements.
fn perm_generators(perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span: BTreeSet<Vec<usize>> = BTreeSet::new();
    if let Some(p) = perms.first() {
        span.insert((0..p.len()).collect());
    }
    for p in perms {
        if span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let mut frontier: Vec<Vec<usize>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y: Vec<usize> = x.iter().map(|&i| s[i]).collect();
                if span.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        if span.len() == perms.len() {
            break;
        }
    }
    gens
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSequence {
    pub part: Vec<usize>,
    /// signed permutations of the part, indexed locally
    pub h: Vec<SignedPerm>,
    pub hbar: Vec<Vec<usize>>,
    pub c_h: Vec<SignedPerm>,
}

pub fn reduced_sequence(group: &SignedPermGroup, part: &[usize]) -> Result<ReducedSequence> {
    let local: BTreeMap<usize, usize> = part.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let mut h = BTreeSet::new();
    for s in &group.elements {
        if !part.iter().all(|&j| local.contains_key(&s.image[j].0)) {
            continue;
        }
        let image = part.iter().map(|&j| (local[&s.image[j].0], s.image[j].1)).collect();
        h.insert(SignedPerm { image });
    }
    let h: Vec<SignedPerm> = h.into_iter().collect();
    let hbar: BTreeSet<Vec<usize>> = h.iter().map(|x| x.perm()).collect();
    let c_h: Vec<SignedPerm> = h.iter().filter(|x| x.perm().iter().enumerate().all(|(a, &b)| a == b)).cloned().collect();
    if c_h.len() != 2 {
        return Err(Error::Internal(format!("reduced code has order {}, expected 2", c_h.len())));
    }
    Ok(ReducedSequence { part: part.to_vec(), h, hbar: hbar.into_iter().collect(), c_h })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    /// `f(h)` with `h v = f(h) v`, in the order of `ReducedSequence::h`
    pub character: Vec<i8>,
    pub homomorphism: bool,
    /// `f(-I) = -1`, so `ker f` is a complement to the reduced code
    pub splits: bool,
    /// generator of the line with all entries `+-1`, if one exists
    pub sign_vector: Option<Vec<i8>>,
}

/// For a line spanned by `v` (coordinates on the part), checks stability and
/// extracts the sign character. `None` if the line is not `H`-stable.
pub fn split_witness(rs: &ReducedSequence, v: &[BigRational]) -> Option<SplitWitness> {
    let first = v.iter().find(|x| !x.is_zero())?;
    let neg: Vec<BigRational> = v.iter().map(|x| -x).collect();
    let mut character = Vec::with_capacity(rs.h.len());
    for h in &rs.h {
        let w = h.apply(v);
        if w == v {
            character.push(1i8);
        } else if w == neg {
            character.push(-1);
        } else {
            return None;
        }
    }
    let index: BTreeMap<&SignedPerm, usize> = rs.h.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let homomorphism = rs.h.iter().enumerate().all(|(i, a)| {
        rs.h.iter()
            .enumerate()
            .all(|(j, b)| index.get(&a.compose(b)).is_some_and(|&k| character[k] == character[i] * character[j]))
    });
    let minus = rs.c_h.iter().find(|x| !x.is_identity())?;
    let splits = character[index[minus]] == -1;
    let scale = first.abs();
    let sign_vector = v
        .iter()
        .map(|x| {
            let y = x / &scale;
            if y.is_integer() && y.abs() == num_traits::One::one() {
                Some(if y.is_positive() { 1i8 } else { -1 })
            } else {
                None
            }
        })
        .collect();
    Some(SplitWitness { character, homomorphism, splits, sign_vector })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(image: &[(usize, i8)]) -> SignedPerm {
        SignedPerm { image: image.to_vec() }
    }

    fn minus(g: usize) -> SignedPerm {
        SignedPerm { image: (0..g).map(|j| (j, -1)).collect() }
    }

    #[test]
    fn codes_and_partitions() {
        let g = SignedPermGroup::generated_by(4, &[minus(4)]).unwrap();
        let c = code_of(&g);
        assert_eq!(c.dim, 1);
        assert!(c.words.contains(&vec![1, 1, 1, 1]));
        assert_eq!(level_partition(&c).m, 1);

        let d = sp(&[(0, -1), (1, -1), (2, 1), (3, 1)]);
        let g = SignedPermGroup::generated_by(4, &[minus(4), d]).unwrap();
        let c = code_of(&g);
        assert_eq!(c.dim, 2);
        assert!(c.is_linear());
        let expected: BTreeSet<Vec<u8>> =
            [vec![0, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![1, 1, 1, 1]].into_iter().collect();
        assert_eq!(c.words, expected);
        let lp = level_partition(&c);
        assert_eq!(lp.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(lp.g_prime, Some(2));

        let gens: Vec<SignedPerm> = (0..3)
            .map(|i| SignedPerm { image: (0..3).map(|j| (j, if i == j { -1 } else { 1 })).collect() })
            .collect();
        let g = SignedPermGroup::generated_by(3, &gens).unwrap();
        assert_eq!(level_partition(&code_of(&g)).m, 3);
    }

    #[test]
    fn properties() {
        let cyc = vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1], vec![3, 0, 1, 2]];
        let r = group_properties(4, &cyc).unwrap();
        assert!(r.transitive && !r.primitive && !r.two_transitive);
        assert_eq!(r.block_witness, Some(vec![0, 2]));
        assert_eq!(r.affine, Some(true));

        let s3 = vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]];
        let r = group_properties(3, &s3).unwrap();
        assert!(r.transitive && r.primitive && r.two_transitive);

        let c5 = vec![vec![0, 1, 2, 3, 4], vec![1, 2, 3, 4, 0]];
        let r = group_properties(5, &c5).unwrap();
        assert!(r.primitive && !r.two_transitive);

        // S_4 is not affine on 4 points
        let mut s4 = Vec::new();
        let mut p = vec![0, 1, 2, 3];
        loop {
            s4.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(group_properties(4, &s4).unwrap().affine, Some(false));
        assert!(group_properties(0, &[]).is_err());
    }

    #[test]
    fn reduced_and_split() {
        let g = SignedPermGroup::generated_by(1, &[minus(1)]).unwrap();
        let rs = reduced_sequence(&g, &[0]).unwrap();
        assert_eq!(rs.h.len(), 2);
        assert_eq!(rs.hbar.len(), 1);

        // signed 3-cycle: alpha_0 -> alpha_1 -> alpha_2 -> conj(alpha_0)
        let c = sp(&[(1, 1), (2, 1), (0, -1)]);
        let g = SignedPermGroup::generated_by(3, &[c]).unwrap();
        assert_eq!(g.order(), 6);
        let rs = reduced_sequence(&g, &[0, 1, 2]).unwrap();
        let q = |n: i64| BigRational::from_integer(n.into());
        let w = split_witness(&rs, &[q(1), q(1), q(-1)]);
        // not stable: the 3-cycle maps (1,1,-1) to (1,1,1)
        assert!(w.is_none());
        let w = split_witness(&rs, &[q(2), q(-2), q(2)]).unwrap();
        assert!(w.homomorphism && w.splits);
        assert_eq!(w.sign_vector, Some(vec![1, -1, 1]));
    }
}
