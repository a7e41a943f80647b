//! The operad interface and its optional structures.

use std::fmt::Debug;

use thiserror::Error;

use super::perm::{PermError, Permutation};
use crate::cacti::CactiError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    /// Partial composition outside its domain. Not a failure for partial
    /// operads.
    #[error("composition undefined: {0}")]
    Undefined(String),
    #[error("vertex with {inputs} inputs carries a label of arity {label}")]
    ArityMismatch { inputs: usize, label: usize },
    #[error("no cyclic structure")]
    NoCyclicStructure,
    #[error("no multiplication")]
    NoMultiplication,
    #[error("t₂(m₂) ≠ m₂")]
    MultiplicationNotCyclic,
    #[error("monoid table is not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("monoid table has no two-sided unit")]
    NoUnit,
    #[error("element {0} has no inverse")]
    NotAGroup(usize),
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("malformed term: {0}")]
    Malformed(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Cacti(#[from] CactiError),
}

pub(crate) fn check_slot(i: usize, arity: usize) -> Result<(), OperadError> {
    if i == 0 || i > arity {
        Err(OperadError::SlotOutOfRange { slot: i, arity })
    } else {
        Ok(())
    }
}

/// Non-symmetric operad with partial compositions `x ∘_i y`, slots 1-based.
pub trait Operad {
    type Elem: Clone + PartialEq + Debug;

    fn arity(&self, x: &Self::Elem) -> usize;

    fn unit(&self) -> Self::Elem;

    /// `Err(Undefined)` signals a composition outside the defined locus of a
    /// partial operad.
    fn compose(&self, x: &Self::Elem, i: usize, y: &Self::Elem) -> Result<Self::Elem, OperadError>;
}

/// Right action of Σ_n on arity-n elements.
pub trait Symmetric: Operad {
    fn act(&self, x: &Self::Elem, sigma: &Permutation) -> Result<Self::Elem, OperadError>;
}

/// Operad receiving a map from Ass: basepoints `m_p`, with `m_2 = m`,
/// `m_0 = u`, `m_1 = ι`.
pub trait WithMultiplication: Operad {
    fn basepoint(&self, p: usize) -> Self::Elem;

    fn mult(&self) -> Self::Elem {
        self.basepoint(2)
    }

    fn mult_unit(&self) -> Self::Elem {
        self.basepoint(0)
    }
}

/// ℤ_{n+1}-actions `t_n` on arity-n elements. The generator makes the first
/// input the new output.
pub trait Cyclic: Operad {
    fn rotate(&self, x: &Self::Elem) -> Result<Self::Elem, OperadError>;

    fn rotate_by(&self, x: &Self::Elem, q: usize) -> Result<Self::Elem, OperadError> {
        let steps = q % (self.arity(x) + 1);
        let mut y = x.clone();
        for _ in 0..steps {
            y = self.rotate(&y)?;
        }
        Ok(y)
    }
}
