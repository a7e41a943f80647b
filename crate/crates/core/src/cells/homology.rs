//! Integral homology of F_m(n).

use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::boundary::ChainComplex;
use super::snf::invariant_factors;
use super::CellError;

/// Cell budget used by [`homology`].
pub const DEFAULT_CELL_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub n: usize,
    pub m: usize,
    pub fvector: Vec<usize>,
    pub betti: Vec<usize>,
    /// Torsion coefficients of `H_d` (invariant factors above 1).
    pub torsion: Vec<Vec<u64>>,
    pub euler: i64,
}

/// Homology of a built chain complex. Fails if `∂∂ ≠ 0`.
pub fn homology_of(cx: &ChainComplex) -> Result<HomologyReport, CellError> {
    cx.check_square_zero()?;
    let top = cx.cells.len();
    let factors: Vec<Vec<num_bigint::BigInt>> =
        cx.boundaries.par_iter().map(invariant_factors).collect();
    let rank = |d: usize| if d < top { factors[d].len() } else { 0 };
    let fvector = cx.fvector();
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for d in 0..top {
        betti.push(fvector[d] - rank(d) - rank(d + 1));
        let t = if d + 1 < top {
            factors[d + 1]
                .iter()
                .filter(|f| !f.is_one())
                .map(|f| f.to_u64().ok_or(CellError::TorsionOverflow))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            Vec::new()
        };
        torsion.push(t);
    }
    let alt = |v: &[usize]| -> i64 {
        v.iter()
            .enumerate()
            .map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    };
    let euler = alt(&fvector);
    if euler != alt(&betti) {
        return Err(CellError::EulerMismatch);
    }
    Ok(HomologyReport {
        n: cx.n,
        m: cx.m,
        fvector,
        betti,
        torsion,
        euler,
    })
}

/// Homology of F_m(n) within the default cell budget.
pub fn homology(n: usize, m: usize) -> Result<HomologyReport, CellError> {
    homology_of(&ChainComplex::build(n, m, DEFAULT_CELL_LIMIT)?)
}

/// Coefficients of `∏_{i=1}^{n−1} (1 + i t^{m−1})`, the Poincaré polynomial
/// of the ordered configuration space of `n` points in `ℝ^m`.
pub fn configuration_space_betti(n: usize, m: usize) -> Vec<usize> {
    let step = m - 1;
    let mut poly = vec![1usize];
    for i in 1..n {
        let mut next = vec![0usize; poly.len() + step];
        for (d, &c) in poly.iter().enumerate() {
            next[d] += c;
            next[d + step] += i * c;
        }
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle() {
        let h = homology(2, 2).unwrap();
        assert_eq!(h.fvector, vec![2, 2]);
        assert_eq!(h.betti, vec![1, 1]);
        assert_eq!(h.torsion, vec![Vec::<u64>::new(), vec![]]);
        assert_eq!(h.euler, 0);
    }

    #[test]
    fn product_formula() {
        assert_eq!(configuration_space_betti(4, 2), vec![1, 6, 11, 6]);
        assert_eq!(configuration_space_betti(2, 4), vec![1, 0, 0, 1]);
        assert_eq!(configuration_space_betti(3, 3), vec![1, 0, 3, 0, 2]);
        assert_eq!(configuration_space_betti(1, 2), vec![1]);
    }

    #[test]
    fn three_points() {
        assert_eq!(homology(3, 2).unwrap().betti, vec![1, 3, 2]);
        assert_eq!(homology(2, 4).unwrap().betti, vec![1, 0, 0, 1]);
    }
}
