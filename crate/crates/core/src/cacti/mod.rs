//! Spineless and framed cacti as PL maps `S¹ → (S¹)ⁿ`.

pub mod fms;
pub mod lobes;
pub mod partition;
pub mod sample;

use thiserror::Error;

use crate::geometry::{GeometryError, Rat};

pub use fms::{symmetric_action, FmsElement};
pub use lobes::{
    associated_tree, lobe_geometry, metric_distance, CactusTree, CactusVertex, LobeGeometry,
    PointClass,
};
pub use partition::{validate, validate_labels, LabeledPartition, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CactiError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("a partition needs at least one label")]
    EmptyPartition,
    #[error("{breaks} breakpoints do not fit {labels} labels")]
    BreaksLabelsMismatch { breaks: usize, labels: usize },
    #[error("breakpoints must increase strictly from 0 to 1")]
    BadBreaks,
    #[error("label {label} outside 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("invalid partition: {0}")]
    Invalid(Violation),
    #[error("expected an equal-length partition")]
    NotEqualLength,
    #[error("expected {expected} offsets, got {got}")]
    OffsetCount { expected: usize, got: usize },
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("several coordinates vary on [{from}, {to}]")]
    SeveralVarying { from: Box<Rat>, to: Box<Rat> },
}
