//! Sign-free cross-check: homology of the order complex of the face poset.
//!
//! For a regular CW complex the order complex of the face poset is a
//! triangulation, so its homology agrees with the cellular one. Ranks are
//! computed modulo two large primes and the larger value is kept.

use std::collections::HashMap;

use super::enumerate::{enumerate_cells_limited, Cell};
use super::CellError;

const PRIMES: [u64; 2] = [1_000_000_007, 998_244_353];

/// Cells obtained by letting one interval of `x` shrink to a point: delete a
/// repeated entry, merging its neighbours if they agree.
pub fn facets(x: &Cell) -> Vec<Cell> {
    let v = x.labels();
    let k = v.len();
    let mut out = Vec::new();
    for i in 0..k {
        if v.iter().filter(|&&l| l == v[i]).count() < 2 {
            continue;
        }
        let mut f = v.to_vec();
        if i > 0 && i + 1 < k && v[i - 1] == v[i + 1] {
            f.drain(i..=i + 1);
        } else {
            f.remove(i);
        }
        let f = Cell::new(f);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Rank of a sparse matrix (columns of `(row, value)`) over `F_p`, by column
/// reduction with pivots on the largest row index.
fn rank_mod_p(columns: &[Vec<(usize, i64)>], p: u64) -> usize {
    let reduce = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let inv = |a: u64| -> u64 {
        // Fermat
        let (mut b, mut e, mut r) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * b as u128) % p as u128) as u64;
            }
            b = ((b as u128 * b as u128) % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    let mut rank = 0;
    for col in columns {
        let mut v: Vec<(usize, u64)> = col
            .iter()
            .map(|&(r, x)| (r, reduce(x)))
            .filter(|e| e.1 != 0)
            .collect();
        v.sort_by_key(|e| e.0);
        while let Some(&(low, a)) = v.last() {
            match pivots.get(&low) {
                None => {
                    // normalize so the pivot entry is 1
                    let ia = inv(a);
                    for e in v.iter_mut() {
                        e.1 = ((e.1 as u128 * ia as u128) % p as u128) as u64;
                    }
                    pivots.insert(low, v);
                    rank += 1;
                    break;
                }
                Some(piv) => {
                    // v -= a * piv
                    let mut out = Vec::with_capacity(v.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < v.len() || j < piv.len() {
                        if j >= piv.len() || (i < v.len() && v[i].0 < piv[j].0) {
                            out.push(v[i]);
                            i += 1;
                        } else if i >= v.len() || piv[j].0 < v[i].0 {
                            let s = ((a as u128 * piv[j].1 as u128) % p as u128) as u64;
                            out.push((piv[j].0, (p - s) % p));
                            j += 1;
                        } else {
                            let s = ((a as u128 * piv[j].1 as u128) % p as u128) as u64;
                            let x = (v[i].1 + p - s) % p;
                            if x != 0 {
                                out.push((v[i].0, x));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    v = out;
                }
            }
        }
    }
    rank
}

/// Betti numbers of F₂(n) from the order complex of its face poset.
/// `chain_limit` bounds the number of simplices.
pub fn poset_oracle_homology(n: usize, chain_limit: usize) -> Result<Vec<usize>, CellError> {
    let cells: Vec<Cell> = enumerate_cells_limited(n, 2, chain_limit)?.concat();
    let index: HashMap<&Cell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    // strict lower sets, computed in order of increasing length
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| cells[i].len());
    for &i in &order {
        let mut acc: Vec<usize> = Vec::new();
        for f in facets(&cells[i]) {
            let fi = *index
                .get(&f)
                .ok_or_else(|| CellError::FaceNotACell(f.clone()))?;
            acc.push(fi);
            acc.extend_from_slice(&below[fi]);
        }
        acc.sort_unstable();
        acc.dedup();
        below[i] = acc;
    }

    // chains c_0 < c_1 < … < c_p, stored top-down
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..cells.len()).map(|i| vec![i]).collect();
    let mut total = 0usize;
    while let Some(chain) = stack.pop() {
        let d = chain.len() - 1;
        if simplices.len() <= d {
            simplices.resize(d + 1, Vec::new());
        }
        total += 1;
        if total > chain_limit {
            return Err(CellError::TooManyCells { limit: chain_limit });
        }
        let last = *chain.last().unwrap();
        for &f in &below[last] {
            let mut next = chain.clone();
            next.push(f);
            stack.push(next);
        }
        simplices[d].push(chain);
    }
    let idx: Vec<HashMap<&Vec<usize>, usize>> = simplices
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut ranks = vec![0usize; simplices.len() + 1];
    for d in 1..simplices.len() {
        let columns: Vec<Vec<(usize, i64)>> = simplices[d]
            .iter()
            .map(|chain| {
                (0..chain.len())
                    .map(|i| {
                        let mut face = chain.clone();
                        face.remove(i);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        (idx[d - 1][&face], sign)
                    })
                    .collect()
            })
            .collect();
        ranks[d] = PRIMES
            .iter()
            .map(|&p| rank_mod_p(&columns, p))
            .max()
            .unwrap();
    }
    let mut betti: Vec<usize> = (0..simplices.len())
        .map(|d| simplices[d].len() - ranks[d] - ranks[d + 1])
        .collect();
    while betti.len() > 1 && betti.last() == Some(&0) {
        betti.pop();
    }
    Ok(betti)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_posets() {
        assert_eq!(poset_oracle_homology(1, 1000).unwrap(), vec![1]);
        assert_eq!(poset_oracle_homology(2, 1000).unwrap(), vec![1, 1]);
        assert_eq!(poset_oracle_homology(3, 100_000).unwrap(), vec![1, 3, 2]);
    }

    #[test]
    fn rank_over_prime_field() {
        let cols = vec![vec![(0, 2), (1, 4)], vec![(0, 1), (1, 2)]];
        assert_eq!(rank_mod_p(&cols, 1_000_000_007), 1);
        assert_eq!(rank_mod_p(&cols, 2), 1);
    }
}
