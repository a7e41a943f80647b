//! Smith normal form over ℤ for sparse boundary matrices.
//!
//! A sparse elimination on ±1 pivots removes most of the matrix; the
//! remaining block is diagonalized densely over arbitrary-precision integers
//! and the diagonal is normalized into invariant factors.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::boundary::SparseMatrix;

type Row = Vec<(usize, BigInt)>;

/// `row ← row − f · pivot_row`, both sorted by column.
fn axpy(row: &Row, f: &BigInt, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(f * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - f * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn is_unit(v: &BigInt) -> bool {
    v.abs().is_one()
}

/// Nonzero invariant factors `d₁ | d₂ | …` of the matrix; their number is
/// the rank.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<Row> = vec![Vec::new(); m.rows];
    for (c, col) in m.columns.iter().enumerate() {
        for &(r, v) in col {
            if v != 0 {
                rows[r].push((c, BigInt::from(v)));
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_by_key(|e| e.0);
    }
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut alive = vec![true; m.rows];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| Reverse((row.len(), r)))
        .collect();
    let mut units = 0usize;

    while let Some(Reverse((len, r))) = heap.pop() {
        if !alive[r] || rows[r].len() != len || len == 0 {
            continue;
        }
        let Some(&(c, ref u)) = rows[r]
            .iter()
            .filter(|(_, v)| is_unit(v))
            .min_by_key(|(c, _)| col_rows[*c].len())
        else {
            continue;
        };
        let u = u.clone();
        let pivot = std::mem::take(&mut rows[r]);
        alive[r] = false;
        for (cc, _) in &pivot {
            col_rows[*cc].remove(&r);
        }
        let others: Vec<usize> = col_rows[c].iter().copied().collect();
        for r2 in others {
            let a = rows[r2]
                .iter()
                .find(|e| e.0 == c)
                .map(|e| e.1.clone())
                .expect("column index is consistent");
            let f = &a * &u;
            let old: HashSet<usize> = rows[r2].iter().map(|e| e.0).collect();
            let new_row = axpy(&rows[r2], &f, &pivot);
            let new: HashSet<usize> = new_row.iter().map(|e| e.0).collect();
            for cc in old.difference(&new) {
                col_rows[*cc].remove(&r2);
            }
            for cc in new.difference(&old) {
                col_rows[*cc].insert(r2);
            }
            rows[r2] = new_row;
            heap.push(Reverse((rows[r2].len(), r2)));
        }
        units += 1;
    }

    // residual block
    let live_rows: Vec<usize> = (0..m.rows)
        .filter(|&r| alive[r] && !rows[r].is_empty())
        .collect();
    let mut live_cols: Vec<usize> = live_rows
        .iter()
        .flat_map(|&r| rows[r].iter().map(|e| e.0))
        .collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            let j = live_cols.binary_search(c).unwrap();
            dense[i][j] = v.clone();
        }
    }
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_diagonal(dense));
    normalize(factors)
}

/// Diagonalizes a dense matrix by unimodular row and column operations and
/// returns the nonzero diagonal entries (not yet divisibility-ordered).
pub fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest nonzero of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Turns any diagonal into the invariant-factor chain `d₁ | d₂ | …`.
pub fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.retain(|v| !v.is_zero());
    for v in d.iter_mut() {
        *v = v.abs();
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
