//! The associative operad and the cacti operads as operad instances.

use super::perm::Permutation;
use super::traits::{check_slot, Cyclic, Operad, OperadError, Symmetric, WithMultiplication};
use crate::cacti::FmsElement;

/// `Ass(n)` is a point; an element is just its arity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Ass;

impl Operad for Ass {
    type Elem = usize;

    fn arity(&self, x: &usize) -> usize {
        *x
    }

    fn unit(&self) -> usize {
        1
    }

    fn compose(&self, x: &usize, i: usize, y: &usize) -> Result<usize, OperadError> {
        check_slot(i, *x)?;
        Ok(x + y - 1)
    }
}

impl Symmetric for Ass {
    fn act(&self, x: &usize, sigma: &Permutation) -> Result<usize, OperadError> {
        if sigma.len() != *x {
            return Err(OperadError::ArityMismatch {
                inputs: sigma.len(),
                label: *x,
            });
        }
        Ok(*x)
    }
}

impl WithMultiplication for Ass {
    fn basepoint(&self, p: usize) -> usize {
        p
    }
}

impl Cyclic for Ass {
    fn rotate(&self, x: &usize) -> Result<usize, OperadError> {
        Ok(*x)
    }
}

/// fMS, with MS as the elements whose offsets vanish.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Fms;

impl Operad for Fms {
    type Elem = FmsElement;

    fn arity(&self, x: &FmsElement) -> usize {
        x.arity()
    }

    fn unit(&self) -> FmsElement {
        FmsElement::unit()
    }

    fn compose(&self, x: &FmsElement, i: usize, y: &FmsElement) -> Result<FmsElement, OperadError> {
        Ok(x.compose(i, y)?)
    }
}

impl Symmetric for Fms {
    fn act(&self, x: &FmsElement, sigma: &Permutation) -> Result<FmsElement, OperadError> {
        Ok(x.act(sigma)?)
    }
}
