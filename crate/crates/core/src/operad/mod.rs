//! Operads, planar trees and free operads.

pub mod axioms;
pub mod compose;
pub mod correspondence;
pub mod free;
pub mod instances;
pub mod monoid;
pub mod perm;
pub mod traits;
pub mod tree;

pub use compose::{compose_along_tree, compose_along_tree_random};
pub use correspondence::{Correspondence, LxElem};
pub use free::{FreeOperad, FreeTerm, Label, Payload};
pub use instances::{Ass, Fms};
pub use monoid::{AdditiveRationals, FiniteMonoid, Monoid, MonoidOperad};
pub use perm::Permutation;
pub use traits::{Cyclic, Operad, OperadError, Symmetric, WithMultiplication};
pub use tree::Tree;
