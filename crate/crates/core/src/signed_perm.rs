//! Signed permutations of `{0..g-1}`, i.e. elements of the hyperoctahedral
//! group, acting on the roots `alpha_0..alpha_{2g-1}` of a Weil polynomial
//! labelled so that `alpha_{j+g}` is the complex conjugate of `alpha_j`.

use std::collections::BTreeSet;

/// `image[j] = (i, s)` means `alpha_j -> alpha_i` for `s = +1` and
/// `alpha_j -> conj(alpha_i)` for `s = -1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub image: Vec<(usize, i8)>,
}

impl SignedPerm {
    pub fn identity(g: usize) -> Self {
        SignedPerm { image: (0..g).map(|j| (j, 1)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Action on root indices `0..2g`.
    pub fn on_root(&self, k: usize) -> usize {
        let g = self.degree();
        let (j, conj) = if k < g { (k, false) } else { (k - g, true) };
        let (i, s) = self.image[j];
        if (s < 0) != conj {
            i + g
        } else {
            i
        }
    }

    /// Root permutation `0..2g -> 0..2g`.
    pub fn root_permutation(&self) -> Vec<usize> {
        (0..2 * self.degree()).map(|k| self.on_root(k)).collect()
    }

    /// Inverse of `root_permutation`, if it preserves conjugate pairs.
    pub fn from_root_permutation(p: &[usize]) -> Option<Self> {
        let g = p.len() / 2;
        let mut image = Vec::with_capacity(g);
        for j in 0..g {
            let a = p[j];
            let b = p[j + g];
            if (a + g) % (2 * g) != b {
                return None;
            }
            image.push(if a < g { (a, 1) } else { (a - g, -1) });
        }
        Some(SignedPerm { image })
    }

    /// `(self * other)(j) = self(other(j))`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let image = other
            .image
            .iter()
            .map(|&(i, s)| {
                let (k, t) = self.image[i];
                (k, s * t)
            })
            .collect();
        SignedPerm { image }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut image = vec![(0usize, 1i8); self.degree()];
        for (j, &(i, s)) in self.image.iter().enumerate() {
            image[i] = (j, s);
        }
        SignedPerm { image }
    }

    /// Underlying permutation of `{0..g-1}`.
    pub fn perm(&self) -> Vec<usize> {
        self.image.iter().map(|&(i, _)| i).collect()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.image.iter().map(|&(_, s)| s).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &(i, s))| i == j && s == 1)
    }

    /// The matrix with entry `+1` at `(i, j)` when `alpha_j -> alpha_i`
    /// and `-1` when `alpha_j -> conj(alpha_i)`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let g = self.degree();
        let mut m = vec![vec![0i64; g]; g];
        for (j, &(i, s)) in self.image.iter().enumerate() {
            m[i][j] = s as i64;
        }
        m
    }

    /// `M v` for the signed permutation matrix `M`.
    pub fn apply<T: Clone + std::ops::Neg<Output = T>>(&self, v: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; v.len()];
        for (j, &(i, s)) in self.image.iter().enumerate() {
            out[i] = Some(if s > 0 { v[j].clone() } else { -v[j].clone() });
        }
        out.into_iter().map(|x| x.expect("permutation")).collect()
    }
}

/// All `2^g g!` signed permutations, in a fixed order.
pub fn hyperoctahedral(g: usize) -> Vec<SignedPerm> {
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..g).collect();
    permutations(&mut p, 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << g);
    for p in perms {
        for mask in 0u32..(1 << g) {
            let image = p
                .iter()
                .enumerate()
                .map(|(j, &i)| (i, if mask >> j & 1 == 1 { -1 } else { 1 }))
                .collect();
            out.push(SignedPerm { image });
        }
    }
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

/// Closure of `gens` under composition.
pub fn generate(g: usize, gens: &[SignedPerm]) -> BTreeSet<SignedPerm> {
    let mut set = BTreeSet::new();
    set.insert(SignedPerm::identity(g));
    let mut frontier = vec![SignedPerm::identity(g)];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = s.compose(&x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// `true` when `elts` is closed under composition and contains the identity.
pub fn is_group(elts: &BTreeSet<SignedPerm>) -> bool {
    let Some(first) = elts.iter().next() else {
        return false;
    };
    if !elts.contains(&SignedPerm::identity(first.degree())) {
        return false;
    }
    elts.iter().all(|a| elts.iter().all(|b| elts.contains(&a.compose(b))))
}

/// A small generating set, chosen greedily in iteration order.
pub fn greedy_generators(g: usize, elts: &BTreeSet<SignedPerm>) -> Vec<SignedPerm> {
    let mut gens = Vec::new();
    let mut span = generate(g, &gens);
    for x in elts {
        if !span.contains(x) {
            gens.push(x.clone());
            span = generate(g, &gens);
        }
        if span.len() == elts.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let all = hyperoctahedral(3);
        assert_eq!(all.len(), 48);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert!(is_group(&set));
        for a in all.iter().take(10) {
            assert!(a.compose(&a.inverse()).is_identity());
            for b in all.iter().skip(20).take(10) {
                let ab = a.compose(b);
                for k in 0..6 {
                    assert_eq!(ab.on_root(k), a.on_root(b.on_root(k)));
                }
                // matrices multiply like the group
                let v = vec![1i64, 10, 100];
                assert_eq!(ab.apply(&v), a.apply(&b.apply(&v)));
            }
            assert_eq!(SignedPerm::from_root_permutation(&a.root_permutation()).as_ref(), Some(a));
        }
        assert_eq!(generate(3, &greedy_generators(3, &set)).len(), 48);
    }

    #[test]
    fn matrix_convention() {
        // alpha_0 -> conj(alpha_1), alpha_1 -> alpha_0
        let s = SignedPerm { image: vec![(1, -1), (0, 1)] };
        assert_eq!(s.matrix(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(s.on_root(0), 3);
        assert_eq!(s.on_root(2), 1);
        assert_eq!(s.apply(&[5i64, 7]), vec![7, -5]);
    }
}
