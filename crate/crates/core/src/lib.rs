//! Exact models of spineless and framed cacti, their cell complexes, and
//! their action on totalizations of (co)cyclic objects built from operads
//! with multiplication.

pub mod action;
pub mod cacti;
pub mod cells;
pub mod cosimplicial;
pub mod geometry;
pub mod operad;
pub mod suites;

pub use geometry::{q, CirclePoint, DeltaPoint, LambdaPoint, PlCircleMap, PlMonotoneMap, Rat};
