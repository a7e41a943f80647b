//! Cellular boundary of F_m(n) and the resulting chain complex.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::enumerate::{enumerate_cells_limited, is_cell, Cell};
use super::CellError;

/// `∂X` as a list of `(face, ±1)`, one term per deletable entry.
///
/// Entry `i` is deletable when its label occurs elsewhere. Deleting an
/// interior entry whose neighbours agree would merge two arcs; that face lies
/// in codimension two and contributes nothing. The sign is
/// `(−1)^{(r−1) + Σ_{j′<X_i} d(j′)}` with `r` the occurrence rank of `X_i`
/// at position `i`.
pub fn boundary(cell: &Cell, n: usize, m: usize) -> Result<Vec<(Cell, i64)>, CellError> {
    let x = cell.labels();
    if !is_cell(x, n, m) {
        return Err(CellError::NotACell(cell.clone()));
    }
    let k = x.len();
    let d: Vec<usize> = (0..=n)
        .map(|j| if j == 0 { 0 } else { cell.multiplicity(j) })
        .collect();
    let mut rank = vec![0usize; n + 1];
    let mut out = Vec::new();
    for i in 0..k {
        let l = x[i];
        rank[l] += 1;
        if d[l] == 0 {
            continue;
        }
        if i > 0 && i + 1 < k && x[i - 1] == x[i + 1] {
            continue;
        }
        let exponent = (rank[l] - 1) + d[1..l].iter().sum::<usize>();
        let sign = if exponent.is_multiple_of(2) { 1 } else { -1 };
        let mut face = x.to_vec();
        face.remove(i);
        out.push((Cell::new(face), sign));
    }
    Ok(out)
}

/// Sparse integer matrix stored by columns; column `c` lists `(row, value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    /// Nonzero entries as `(row, col, value)` triplets.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
            .collect()
    }
}

/// Cellular chain complex: cells by dimension and `∂_d : C_d → C_{d−1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub n: usize,
    pub m: usize,
    pub cells: Vec<Vec<Cell>>,
    /// `boundaries[d]` is `∂_d`; `boundaries[0]` is the zero map to nothing.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn build(n: usize, m: usize, limit: usize) -> Result<ChainComplex, CellError> {
        let cells = enumerate_cells_limited(n, m, limit)?;
        let index: Vec<HashMap<&Cell, usize>> = cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let boundaries = (0..cells.len())
            .into_par_iter()
            .map(|d| {
                let rows = if d == 0 { 0 } else { cells[d - 1].len() };
                let columns = cells[d]
                    .iter()
                    .map(|c| {
                        let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                        for (face, s) in boundary(c, n, m)? {
                            let r = *index[d - 1]
                                .get(&face)
                                .ok_or_else(|| CellError::FaceNotACell(face.clone()))?;
                            *col.entry(r).or_default() += s;
                        }
                        Ok(col.into_iter().filter(|&(_, v)| v != 0).collect())
                    })
                    .collect::<Result<Vec<_>, CellError>>()?;
                Ok(SparseMatrix {
                    rows,
                    cols: cells[d].len(),
                    columns,
                })
            })
            .collect::<Result<Vec<_>, CellError>>()?;
        Ok(ChainComplex {
            n,
            m,
            cells,
            boundaries,
        })
    }

    pub fn fvector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Checks `∂_{d−1} ∂_d = 0` exactly, reporting the first offending cell.
    pub fn check_square_zero(&self) -> Result<(), CellError> {
        for d in 2..self.boundaries.len() {
            let outer = &self.boundaries[d - 1];
            for (c, col) in self.boundaries[d].columns.iter().enumerate() {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(r, v) in col {
                    for &(r2, w) in &outer.columns[r] {
                        *acc.entry(r2).or_default() += v * w;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(CellError::BoundarySquareNonzero {
                        dim: d,
                        cell: self.cells[d][c].clone(),
                    });
                }
            }
        }
        Ok(())
    }
}
