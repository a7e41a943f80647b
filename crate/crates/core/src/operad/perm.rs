//! Permutations of `{1, …, n}` acting on the right.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("{0:?} is not a permutation of 1..={}", .0.len())]
    NotAPermutation(Vec<usize>),
    #[error("slot {slot} out of range for a permutation of {n} letters")]
    SlotOutOfRange { slot: usize, n: usize },
}

/// `σ ∈ Σ_n` stored as its image list `(σ(1), …, σ(n))`.
///
/// Right action on tuples: `(xσ)_k = x_{σ(k)}`. The product `στ` is the
/// composite `k ↦ σ(τ(k))`, so that `(xσ)τ = x(στ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotAPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n).collect())
    }

    /// Transposition of `a` and `b` in Σ_n.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(a - 1, b - 1);
        Permutation(v)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
        let mut v: Vec<usize> = (1..=n).collect();
        v.shuffle(rng);
        Permutation(v)
    }

    /// All of Σ_n in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(v.clone()));
            // next lexicographic permutation
            let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
                break;
            };
            let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
            v.swap(i - 1, j);
            v[i..].reverse();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `σ(k)` for `1 ≤ k ≤ n`.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (k, &s) in self.0.iter().enumerate() {
            v[s - 1] = k + 1;
        }
        Permutation(v)
    }

    /// The product `στ : k ↦ σ(τ(k))`.
    pub fn then(&self, tau: &Permutation) -> Permutation {
        assert_eq!(self.len(), tau.len());
        Permutation(tau.0.iter().map(|&t| self.0[t - 1]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Right action on a tuple: `(xσ)_k = x_{σ(k)}`.
    pub fn act<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(self.len(), xs.len());
        self.0.iter().map(|&s| xs[s - 1].clone()).collect()
    }

    /// Block permutation `σ ∘_i τ ∈ Σ_{m+n−1}`: σ permutes the `m` blocks,
    /// all singletons except block `i`, which has `n` elements permuted by τ.
    ///
    /// With the right action above this is the permutation for which
    /// `(xσ) ∘_i (yτ) = (x ∘_{σ(i)} y)(σ ∘_i τ)`.
    pub fn block_compose(&self, i: usize, tau: &Permutation) -> Result<Permutation, PermError> {
        let m = self.len();
        let n = tau.len();
        if i == 0 || i > m {
            return Err(PermError::SlotOutOfRange { slot: i, n: m });
        }
        let si = self.apply(i);
        let mut v = Vec::with_capacity(m + n - 1);
        for k in 1..=m {
            if k == i {
                for r in 1..=n {
                    v.push(si + tau.apply(r) - 1);
                }
            } else {
                let a = self.apply(k);
                v.push(if a < si { a } else { a + n - 1 });
            }
        }
        Ok(Permutation(v))
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Permutation, PermError> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Inserts a block `y` at slot `i` of `x`: the operad-of-tuples composite.
    fn insert_block(x: &[u32], i: usize, y: &[u32]) -> Vec<u32> {
        let mut v = x[..i - 1].to_vec();
        v.extend_from_slice(y);
        v.extend_from_slice(&x[i..]);
        v
    }

    #[test]
    fn counts_and_inverse() {
        assert_eq!(Permutation::all(4).len(), 24);
        for p in Permutation::all(4) {
            assert!(p.then(&p.inverse()).is_identity());
            assert!(p.inverse().then(&p).is_identity());
        }
    }

    #[test]
    fn right_action_is_an_action() {
        let xs = ['a', 'b', 'c', 'd'];
        for s in Permutation::all(4) {
            for t in Permutation::all(4) {
                assert_eq!(t.act(&s.act(&xs)), s.then(&t).act(&xs));
            }
        }
    }

    #[test]
    fn block_permutation_matches_tuple_insertion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..5);
            let n = rng.gen_range(0..4);
            let i = rng.gen_range(1..=m);
            let x: Vec<u32> = (0..m as u32).map(|k| 10 + k).collect();
            let y: Vec<u32> = (0..n as u32).map(|k| 100 + k).collect();
            let s = Permutation::random(m, &mut rng);
            let t = Permutation::random(n, &mut rng);
            let lhs = insert_block(&s.act(&x), i, &t.act(&y));
            let rhs = s
                .block_compose(i, &t)
                .unwrap()
                .act(&insert_block(&x, s.apply(i), &y));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn block_with_identities_is_identity() {
        let s = Permutation::identity(3);
        let t = Permutation::identity(2);
        assert!(s.block_compose(2, &t).unwrap().is_identity());
        assert_eq!(
            s.block_compose(4, &t),
            Err(PermError::SlotOutOfRange { slot: 4, n: 3 })
        );
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![2, 3, 1]).is_ok());
    }
}
