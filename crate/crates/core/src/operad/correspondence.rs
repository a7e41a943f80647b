//! The free-loop correspondence operad lX on a finite set X.
//!
//! `lX(n) = X^{n+1}`, composition is defined only where the glued
//! coordinates agree. The basepoints are thin diagonals, which are not single
//! tuples, so they are kept as their own kind of element.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::traits::{check_slot, Cyclic, Operad, OperadError, WithMultiplication};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LxElem {
    /// `(x₀, …, x_n)`, arity `n`.
    Tuple(Vec<usize>),
    /// The thin diagonal `{(x, …, x)} ⊂ X^{p+1}`, arity `p`.
    Diagonal(usize),
}

impl fmt::Display for LxElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LxElem::Tuple(v) => {
                let parts: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            LxElem::Diagonal(p) => write!(f, "Δ{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Correspondence {
    size: usize,
}

impl Correspondence {
    pub fn new(size: usize) -> Result<Correspondence, OperadError> {
        if size == 0 {
            return Err(OperadError::BadTable("X must be nonempty".into()));
        }
        Ok(Correspondence { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Every tuple of arity `n`, followed by the diagonal.
    pub fn elements(&self, n: usize) -> Vec<LxElem> {
        let mut out = Vec::new();
        let total = self.size.pow(n as u32 + 1);
        for mut code in 0..total {
            let mut v = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                v.push(code % self.size);
                code /= self.size;
            }
            out.push(LxElem::Tuple(v));
        }
        out.push(LxElem::Diagonal(n));
        out
    }
}

impl Operad for Correspondence {
    type Elem = LxElem;

    fn arity(&self, x: &LxElem) -> usize {
        match x {
            LxElem::Tuple(v) => v.len() - 1,
            LxElem::Diagonal(p) => *p,
        }
    }

    fn unit(&self) -> LxElem {
        LxElem::Diagonal(1)
    }

    fn compose(&self, x: &LxElem, i: usize, y: &LxElem) -> Result<LxElem, OperadError> {
        check_slot(i, self.arity(x))?;
        Ok(match (x, y) {
            (LxElem::Tuple(a), LxElem::Tuple(b)) => {
                if a[i] != b[0] {
                    return Err(OperadError::Undefined(format!(
                        "x_{i} = {} but y_0 = {}",
                        a[i], b[0]
                    )));
                }
                let mut v = a[..i].to_vec();
                v.extend_from_slice(&b[1..]);
                v.extend_from_slice(&a[i + 1..]);
                LxElem::Tuple(v)
            }
            (LxElem::Tuple(a), LxElem::Diagonal(q)) => {
                let mut v = a[..i].to_vec();
                v.extend(std::iter::repeat_n(a[i], *q));
                v.extend_from_slice(&a[i + 1..]);
                LxElem::Tuple(v)
            }
            (LxElem::Diagonal(p), LxElem::Tuple(b)) => {
                let z = b[0];
                let mut v = vec![z; i];
                v.extend_from_slice(&b[1..]);
                v.extend(std::iter::repeat_n(z, p - i));
                LxElem::Tuple(v)
            }
            (LxElem::Diagonal(p), LxElem::Diagonal(q)) => LxElem::Diagonal(p + q - 1),
        })
    }
}

impl WithMultiplication for Correspondence {
    fn basepoint(&self, p: usize) -> LxElem {
        LxElem::Diagonal(p)
    }
}

impl Cyclic for Correspondence {
    /// `t_n(x₀, …, x_n) = (x₁, …, x_n, x₀)`; diagonals are fixed.
    fn rotate(&self, x: &LxElem) -> Result<LxElem, OperadError> {
        Ok(match x {
            LxElem::Tuple(v) => {
                let mut w = v[1..].to_vec();
                w.push(v[0]);
                LxElem::Tuple(w)
            }
            d => d.clone(),
        })
    }
}
