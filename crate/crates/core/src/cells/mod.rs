//! The CW complex F_m(n): cells, boundary, homology.

pub mod boundary;
pub mod enumerate;
pub mod homology;
pub mod poset;
pub mod snf;

use thiserror::Error;

pub use boundary::{boundary, ChainComplex, SparseMatrix};
pub use enumerate::{enumerate_cells, enumerate_cells_limited, is_cell, Cell};
pub use homology::{configuration_space_betti, homology, homology_of, HomologyReport};
pub use poset::poset_oracle_homology;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("need n >= 1 and m >= 1, got n = {n}, m = {m}")]
    BadParameters { n: usize, m: usize },
    #[error("more than {limit} cells; the complex is too large")]
    TooManyCells { limit: usize },
    #[error("{0} is not a cell")]
    NotACell(Cell),
    #[error("face {0} is not a cell")]
    FaceNotACell(Cell),
    #[error("boundary of boundary is nonzero on {dim}-cell {cell}")]
    BoundarySquareNonzero { dim: usize, cell: Cell },
    #[error("torsion coefficient does not fit in 64 bits")]
    TorsionOverflow,
    #[error("Euler characteristic of cells and of Betti numbers disagree")]
    EulerMismatch,
}
