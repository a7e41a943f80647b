//! Exact rationals, circle points, PL monotone maps and simplex points.

pub mod pl;
pub mod rational;
pub mod simplex;

use thiserror::Error;

pub use pl::{compose_pl, PlCircleMap, PlMap, PlMonotoneMap};
pub use rational::{q, CirclePoint, Rat};
pub use simplex::{apply_reparam, lambda_join, lambda_split, DeltaPoint, LambdaPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("a PL map needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoints must start at 0 and end at 1")]
    DomainNotUnitInterval,
    #[error("breakpoint abscissae must be strictly increasing")]
    BreakpointsNotIncreasing,
    #[error("values must be weakly increasing")]
    NotMonotone,
    #[error("interval map must fix 0 and 1")]
    EndpointsNotFixed,
    #[error("circle lift must satisfy lift(1) = lift(0) + 1")]
    DegreeNotOne,
    #[error("cannot precompose an interval map with a circle map")]
    KindMismatch,
    #[error("coordinate outside [0, 1]")]
    OutOfUnitInterval,
    #[error("points are not weakly cyclically ordered")]
    CyclicOrderViolation,
    #[error("a cyclic simplex point needs at least x0")]
    EmptyLambdaPoint,
}
