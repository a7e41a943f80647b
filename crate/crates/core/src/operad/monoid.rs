//! The operad M̲ of a monoid: `M̲(n) = Mⁿ`.

use std::fmt::Debug;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;
use super::traits::{check_slot, Cyclic, Operad, OperadError, Symmetric, WithMultiplication};
use crate::geometry::Rat;

pub trait Monoid {
    type Item: Clone + PartialEq + Debug;

    fn one(&self) -> Self::Item;
    fn mul(&self, a: &Self::Item, b: &Self::Item) -> Self::Item;
    fn inv(&self, a: &Self::Item) -> Option<Self::Item>;
    /// Ok when every element is invertible.
    fn check_group(&self) -> Result<(), OperadError>;
    /// All elements, when the monoid is finite.
    fn elements(&self) -> Option<Vec<Self::Item>>;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Item;
}

/// A finite monoid given by its multiplication table on `0 … n−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    one: usize,
}

impl FiniteMonoid {
    /// Checks the table is square, closed, associative and unital.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteMonoid, OperadError> {
        let n = table.len();
        if n == 0 {
            return Err(OperadError::BadTable("empty".into()));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(OperadError::BadTable(format!("not a closed {n}×{n} table")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(OperadError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(OperadError::NoUnit)?;
        Ok(FiniteMonoid { table, one })
    }

    /// ℤ/n under addition.
    pub fn cyclic_group(n: usize) -> FiniteMonoid {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteMonoid::from_table(table).expect("ℤ/n is a group")
    }

    /// Σ_n with elements indexed as in [`Permutation::all`] and product στ.
    pub fn symmetric_group(n: usize) -> FiniteMonoid {
        let perms = Permutation::all(n);
        let idx = |p: &Permutation| perms.iter().position(|x| x == p).expect("closed");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| idx(&s.then(t))).collect())
            .collect();
        FiniteMonoid::from_table(table).expect("Σ_n is a group")
    }

    /// `{1, 0}` under multiplication; `0` is absorbing, so not a group.
    pub fn boolean() -> FiniteMonoid {
        FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]]).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl Monoid for FiniteMonoid {
    type Item = usize;

    fn one(&self) -> usize {
        self.one
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.table[*a][b] == self.one && self.table[b][*a] == self.one)
    }

    fn check_group(&self) -> Result<(), OperadError> {
        match (0..self.order()).find(|a| self.inv(a).is_none()) {
            Some(a) => Err(OperadError::NotAGroup(a)),
            None => Ok(()),
        }
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order()).collect())
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.order())
    }
}

/// ℚ under addition.
#[derive(Clone, Copy, Debug, Default)]
pub struct AdditiveRationals;

impl Monoid for AdditiveRationals {
    type Item = Rat;

    fn one(&self) -> Rat {
        Rat::zero()
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        Some(-a.clone())
    }

    fn check_group(&self) -> Result<(), OperadError> {
        Ok(())
    }

    fn elements(&self) -> Option<Vec<Rat>> {
        None
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Rat {
        Rat::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
    }
}

/// `(x₁,…,x_m) ∘_i (y₁,…,y_n) = (x₁,…,x_{i−1}, x_i y₁,…,x_i y_n, x_{i+1},…,x_m)`,
/// with `m_p = (1,…,1)`.
#[derive(Clone, Debug)]
pub struct MonoidOperad<M> {
    monoid: M,
    cyclic: bool,
}

impl<M: Monoid> MonoidOperad<M> {
    pub fn new(monoid: M) -> MonoidOperad<M> {
        MonoidOperad {
            monoid,
            cyclic: false,
        }
    }

    /// With `t_n(g₁,…,g_n) = (g₁⁻¹g₂, …, g₁⁻¹g_n, g₁⁻¹)`; needs a group.
    pub fn cyclic(monoid: M) -> Result<MonoidOperad<M>, OperadError> {
        monoid.check_group()?;
        Ok(MonoidOperad {
            monoid,
            cyclic: true,
        })
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }
}

impl<M: Monoid> Operad for MonoidOperad<M> {
    type Elem = Vec<M::Item>;

    fn arity(&self, x: &Self::Elem) -> usize {
        x.len()
    }

    fn unit(&self) -> Self::Elem {
        vec![self.monoid.one()]
    }

    fn compose(&self, x: &Self::Elem, i: usize, y: &Self::Elem) -> Result<Self::Elem, OperadError> {
        check_slot(i, x.len())?;
        let xi = &x[i - 1];
        let mut out = Vec::with_capacity(x.len() + y.len() - 1);
        out.extend_from_slice(&x[..i - 1]);
        out.extend(y.iter().map(|b| self.monoid.mul(xi, b)));
        out.extend_from_slice(&x[i..]);
        Ok(out)
    }
}

impl<M: Monoid> Symmetric for MonoidOperad<M> {
    fn act(&self, x: &Self::Elem, sigma: &Permutation) -> Result<Self::Elem, OperadError> {
        if sigma.len() != x.len() {
            return Err(OperadError::ArityMismatch {
                inputs: sigma.len(),
                label: x.len(),
            });
        }
        Ok(sigma.act(x))
    }
}

impl<M: Monoid> WithMultiplication for MonoidOperad<M> {
    fn basepoint(&self, p: usize) -> Self::Elem {
        vec![self.monoid.one(); p]
    }
}

impl<M: Monoid> Cyclic for MonoidOperad<M> {
    fn rotate(&self, x: &Self::Elem) -> Result<Self::Elem, OperadError> {
        if !self.cyclic {
            return Err(OperadError::NoCyclicStructure);
        }
        let Some(g1) = x.first() else {
            return Ok(Vec::new());
        };
        let inv = self.monoid.inv(g1).ok_or(OperadError::NoCyclicStructure)?;
        let mut out: Vec<M::Item> = x[1..].iter().map(|g| self.monoid.mul(&inv, g)).collect();
        out.push(inv);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tables() {
        assert_eq!(FiniteMonoid::cyclic_group(3).order(), 3);
        let s3 = FiniteMonoid::symmetric_group(3);
        assert_eq!(s3.order(), 6);
        assert!(s3.check_group().is_ok());
        assert_eq!(
            FiniteMonoid::boolean().check_group(),
            Err(OperadError::NotAGroup(1))
        );
        assert!(matches!(
            FiniteMonoid::from_table(vec![vec![1, 0], vec![0, 0]]),
            Err(OperadError::NotAssociative(..)) | Err(OperadError::NoUnit)
        ));
        assert_eq!(
            FiniteMonoid::from_table(vec![vec![0, 0], vec![0, 0]]),
            Err(OperadError::NoUnit)
        );
    }

    #[test]
    fn composition_formula() {
        let o = MonoidOperad::new(FiniteMonoid::cyclic_group(3));
        // (1,1) ∘₂ (x₁,…,x_k) = (1, x₁,…,x_k) with 1 the unit 0
        assert_eq!(
            o.compose(&vec![0, 0], 2, &vec![2, 1]).unwrap(),
            vec![0, 2, 1]
        );
        assert_eq!(
            o.compose(&vec![1, 2], 1, &vec![2, 2]).unwrap(),
            vec![0, 0, 2]
        );
        assert!(o.compose(&vec![1], 2, &vec![]).is_err());
    }

    #[test]
    fn rotation_has_order_n_plus_one() {
        let o = MonoidOperad::cyclic(FiniteMonoid::symmetric_group(3)).unwrap();
        assert_eq!(o.rotate(&o.mult()).unwrap(), o.mult());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..6 {
            for _ in 0..20 {
                let x: Vec<usize> = (0..n).map(|_| o.monoid().random(&mut rng)).collect();
                let mut y = x.clone();
                for _ in 0..=n {
                    y = o.rotate(&y).unwrap();
                }
                assert_eq!(y, x, "n={n}");
            }
        }
    }

    #[test]
    fn non_group_has_no_rotation() {
        assert!(MonoidOperad::cyclic(FiniteMonoid::boolean()).is_err());
        let o = MonoidOperad::new(FiniteMonoid::boolean());
        assert_eq!(o.rotate(&vec![0]), Err(OperadError::NoCyclicStructure));
    }
}
