//! Cosimplicial and cocyclic objects `O•` generated by an operad with
//! multiplication, and the Δ and Λ relation suites.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::operad::axioms::{check_multiplication, for_each_tuple, Budget, Sampler, SuiteReport};
use crate::operad::{Cyclic, OperadError, WithMultiplication};

/// A deliberately wrong operator, for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// `d⁰(x) = m ∘₁ x` instead of `m ∘₂ x`.
    OuterCoface,
}

/// The cosimplicial object `O•`: `d^i`, `s^i` built from `∘`, `m` and `u`.
#[derive(Clone, Debug)]
pub struct Cosimplicial<'a, O> {
    operad: &'a O,
    corruption: Option<Corruption>,
}

/// Builds `O•`, after checking the multiplication laws.
pub fn build_cosimplicial<O: WithMultiplication>(
    o: &O,
) -> Result<Cosimplicial<'_, O>, OperadError> {
    if !check_multiplication(o, &Budget::default()).passed() {
        return Err(OperadError::NoMultiplication);
    }
    Ok(Cosimplicial {
        operad: o,
        corruption: None,
    })
}

/// Builds `O•` with its cyclic operators `t_k`; needs `t₂(m) = m`.
pub fn build_cocyclic<O: WithMultiplication + Cyclic>(
    o: &O,
) -> Result<Cosimplicial<'_, O>, OperadError> {
    let c = build_cosimplicial(o)?;
    let m = o.mult();
    if o.rotate(&m)? != m {
        return Err(OperadError::MultiplicationNotCyclic);
    }
    Ok(c)
}

impl<'a, O: WithMultiplication> Cosimplicial<'a, O> {
    pub fn operad(&self) -> &'a O {
        self.operad
    }

    pub fn corrupted(mut self, c: Corruption) -> Self {
        self.corruption = Some(c);
        self
    }

    pub fn degree(&self, x: &O::Elem) -> usize {
        self.operad.arity(x)
    }

    /// `d^i : O(k) → O(k+1)`, `0 ≤ i ≤ k+1`.
    pub fn coface(&self, i: usize, x: &O::Elem) -> Result<O::Elem, OperadError> {
        let o = self.operad;
        let k = o.arity(x);
        let m = o.mult();
        if i == 0 {
            let slot = if self.corruption == Some(Corruption::OuterCoface) {
                1
            } else {
                2
            };
            o.compose(&m, slot, x)
        } else if i <= k {
            o.compose(x, i, &m)
        } else if i == k + 1 {
            o.compose(&m, 1, x)
        } else {
            Err(OperadError::SlotOutOfRange {
                slot: i,
                arity: k + 1,
            })
        }
    }

    /// `s^i : O(k) → O(k−1)`, `0 ≤ i ≤ k−1`.
    pub fn codegeneracy(&self, i: usize, x: &O::Elem) -> Result<O::Elem, OperadError> {
        self.operad.compose(x, i + 1, &self.operad.mult_unit())
    }
}

impl<'a, O: WithMultiplication + Cyclic> Cosimplicial<'a, O> {
    /// `t_k : O(k) → O(k)`.
    pub fn cyclic(&self, x: &O::Elem) -> Result<O::Elem, OperadError> {
        self.operad.rotate(x)
    }
}

type R<E> = Result<E, OperadError>;
type Op<'a, E> = &'a dyn Fn(&E) -> R<E>;

fn chain<E>(x: &E, ops: &[Op<'_, E>]) -> R<E>
where
    E: Clone,
{
    let mut y = x.clone();
    for op in ops.iter().rev() {
        y = op(&y)?;
    }
    Ok(y)
}

/// The cosimplicial identities on elements of degree `0 ..= max_degree`.
/// Operators compose right to left, as maps.
pub fn relation_suite<O, S>(c: &Cosimplicial<'_, O>, sampler: &S, budget: &Budget) -> SuiteReport
where
    O: WithMultiplication,
    S: Sampler<Elem = O::Elem>,
{
    let mut report = SuiteReport::new("cosimplicial");
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0xde17a);
    for k in 0..=budget.max_arity {
        for_each_tuple(sampler, &[k], budget, &mut rng, &mut report, |t, r| {
            let x = t[0];
            let show = || format!("x = {x:?}");
            let d = |i: usize| move |y: &O::Elem| c.coface(i, y);
            let s = |i: usize| move |y: &O::Elem| c.codegeneracy(i, y);
            for i in 0..=k + 1 {
                for j in i + 1..=k + 2 {
                    r.compare(
                        &format!("d^{j} d^{i} = d^{i} d^{} on O({k})", j - 1),
                        &show,
                        chain(x, &[&d(j), &d(i)]),
                        chain(x, &[&d(i), &d(j - 1)]),
                    );
                }
            }
            if k >= 2 {
                for j in 0..=k - 2 {
                    for i in 0..=j {
                        r.compare(
                            &format!("s^{j} s^{i} = s^{i} s^{} on O({k})", j + 1),
                            &show,
                            chain(x, &[&s(j), &s(i)]),
                            chain(x, &[&s(i), &s(j + 1)]),
                        );
                    }
                }
            }
            for j in 0..=k {
                for i in 0..=k + 1 {
                    let name = format!("s^{j} d^{i} on O({k})");
                    let lhs = chain(x, &[&s(j), &d(i)]);
                    if i < j {
                        r.compare(
                            &format!("{name} = d^{i} s^{}", j - 1),
                            &show,
                            lhs,
                            chain(x, &[&d(i), &s(j - 1)]),
                        );
                    } else if i == j || i == j + 1 {
                        r.compare(&format!("{name} = id"), &show, lhs, Ok(x.clone()));
                    } else {
                        r.compare(
                            &format!("{name} = d^{} s^{j}", i - 1),
                            &show,
                            lhs,
                            chain(x, &[&d(i - 1), &s(j)]),
                        );
                    }
                }
            }
        });
    }
    report
}

/// The Λ relations: order of `t_n`, its commutation with `d^i` and `s^i`,
/// and the two consequences `t_n d⁰ = d^n`, `t_n s⁰ = s^n t_{n+1}²`.
pub fn cyclic_relation_suite<O, S>(
    c: &Cosimplicial<'_, O>,
    sampler: &S,
    budget: &Budget,
) -> SuiteReport
where
    O: WithMultiplication + Cyclic,
    S: Sampler<Elem = O::Elem>,
{
    let mut report = SuiteReport::new("cocyclic");
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x1a3bda);
    for k in 0..=budget.max_arity {
        for_each_tuple(sampler, &[k], budget, &mut rng, &mut report, |t, r| {
            let x = t[0];
            let show = || format!("x = {x:?}");
            let d = |i: usize| move |y: &O::Elem| c.coface(i, y);
            let s = |i: usize| move |y: &O::Elem| c.codegeneracy(i, y);
            let tt = |y: &O::Elem| c.cyclic(y);
            let powers: Vec<Op<'_, O::Elem>> = vec![&tt; k + 1];
            r.compare(
                &format!("t_{k}^{} = id", k + 1),
                &show,
                chain(x, &powers),
                Ok(x.clone()),
            );
            // x ∈ O(k) = O(n−1) with n = k+1
            let n = k + 1;
            for i in 1..=n {
                r.compare(
                    &format!("t_{n} d^{i} = d^{} t_{k}", i - 1),
                    &show,
                    chain(x, &[&tt, &d(i)]),
                    chain(x, &[&d(i - 1), &tt]),
                );
            }
            r.compare(
                &format!("t_{n} d^0 = d^{n}"),
                &show,
                chain(x, &[&tt, &d(0)]),
                chain(x, &[&d(n)]),
            );
            // x ∈ O(k) = O(n+1) with n = k−1
            if k >= 1 {
                let n = k - 1;
                for i in 1..=n {
                    r.compare(
                        &format!("t_{n} s^{i} = s^{} t_{k}", i - 1),
                        &show,
                        chain(x, &[&tt, &s(i)]),
                        chain(x, &[&s(i - 1), &tt]),
                    );
                }
                r.compare(
                    &format!("t_{n} s^0 = s^{n} t_{k}²"),
                    &show,
                    chain(x, &[&tt, &s(0)]),
                    chain(x, &[&s(n), &tt, &tt]),
                );
            }
        });
    }
    report
}
