//! Cells of F_m(n): label sequences avoiding long alternations.

use std::fmt;

use serde::{Serialize, Serializer};

use super::CellError;

/// A cell of F_m(n), indexed by its label sequence `X₁ … X_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(Vec<usize>);

impl Cell {
    /// No validation; see [`is_cell`].
    pub fn new(labels: Vec<usize>) -> Cell {
        Cell(labels)
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `k − n`, the sum of the multiplicities `d(j)`.
    pub fn dim(&self, n: usize) -> usize {
        self.0.len() - n
    }

    /// `d(j)`: occurrences of `j` minus one.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.0.iter().filter(|&&l| l == j).count().saturating_sub(1)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The cell predicate: every label present, adjacent labels distinct, no
/// alternating subsequence of length `m + 2`.
pub fn is_cell(labels: &[usize], n: usize, m: usize) -> bool {
    crate::cacti::validate_labels(labels, n, m).is_ok()
}

/// Incremental alternation state: `alt[a][b]` is the length of the greedy
/// alternating subsequence `a, b, a, …` of the current prefix.
#[derive(Clone)]
struct AltState {
    n: usize,
    alt: Vec<u32>,
}

impl AltState {
    fn new(n: usize) -> AltState {
        AltState {
            n,
            alt: vec![0; (n + 1) * (n + 1)],
        }
    }

    /// Appends `l`; returns false if some alternation reaches `limit`.
    fn push(&mut self, l: usize, limit: u32) -> bool {
        let n = self.n;
        for o in 1..=n {
            if o == l {
                continue;
            }
            // pair (l, o): wants l at even lengths
            let a = &mut self.alt[l * (n + 1) + o];
            if (*a).is_multiple_of(2) {
                *a += 1;
                if *a >= limit {
                    return false;
                }
            }
            // pair (o, l): wants l at odd lengths
            let b = &mut self.alt[o * (n + 1) + l];
            if *b % 2 == 1 {
                *b += 1;
                if *b >= limit {
                    return false;
                }
            }
        }
        true
    }
}

/// All cells of F_m(n) in lexicographic order of label sequences, grouped by
/// dimension. Fails once more than `limit` cells have been produced.
pub fn enumerate_cells_limited(
    n: usize,
    m: usize,
    limit: usize,
) -> Result<Vec<Vec<Cell>>, CellError> {
    if n == 0 || m == 0 {
        return Err(CellError::BadParameters { n, m });
    }
    let mut out: Vec<Vec<Cell>> = Vec::new();
    let mut seq = Vec::new();
    let mut count = 0usize;
    dfs(
        n,
        (m + 2) as u32,
        &mut seq,
        &AltState::new(n),
        &mut out,
        &mut count,
        limit,
    )?;
    Ok(out)
}

/// [`enumerate_cells_limited`] with a budget of one million cells.
pub fn enumerate_cells(n: usize, m: usize) -> Result<Vec<Vec<Cell>>, CellError> {
    enumerate_cells_limited(n, m, 1_000_000)
}

fn dfs(
    n: usize,
    limit: u32,
    seq: &mut Vec<usize>,
    state: &AltState,
    out: &mut Vec<Vec<Cell>>,
    count: &mut usize,
    budget: usize,
) -> Result<(), CellError> {
    if seq.len() >= n {
        let mut present = vec![false; n + 1];
        seq.iter().for_each(|&l| present[l] = true);
        if present[1..].iter().all(|&p| p) {
            let d = seq.len() - n;
            if out.len() <= d {
                out.resize(d + 1, Vec::new());
            }
            out[d].push(Cell(seq.clone()));
            *count += 1;
            if *count > budget {
                return Err(CellError::TooManyCells { limit: budget });
            }
        }
    }
    for l in 1..=n {
        if seq.last() == Some(&l) {
            continue;
        }
        let mut next = state.clone();
        if !next.push(l, limit) {
            continue;
        }
        seq.push(l);
        dfs(n, limit, seq, &next, out, count, budget)?;
        seq.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fvec(n: usize, m: usize) -> Vec<usize> {
        enumerate_cells(n, m)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect()
    }

    #[test]
    fn small_complexes() {
        assert_eq!(
            enumerate_cells(1, 2).unwrap(),
            vec![vec![Cell::new(vec![1])]]
        );
        let c = enumerate_cells(2, 2).unwrap();
        assert_eq!(c[0], vec![Cell::new(vec![1, 2]), Cell::new(vec![2, 1])]);
        assert_eq!(
            c[1],
            vec![Cell::new(vec![1, 2, 1]), Cell::new(vec![2, 1, 2])]
        );
        assert_eq!(c.len(), 2);
        assert_eq!(fvec(3, 1), vec![6]);
    }

    #[test]
    fn f_vectors() {
        assert_eq!(fvec(3, 2), vec![6, 18, 12]);
        assert_eq!(fvec(4, 2), vec![24, 144, 240, 120]);
        assert_eq!(fvec(3, 3), vec![6, 18, 42, 54, 36, 6]);
        assert_eq!(fvec(2, 5), vec![2; 5]);
    }

    #[test]
    fn every_enumerated_sequence_is_a_cell() {
        for (n, m) in [(3, 2), (3, 3), (4, 2)] {
            for cell in enumerate_cells(n, m).unwrap().concat() {
                assert!(is_cell(cell.labels(), n, m));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            enumerate_cells_limited(4, 2, 100),
            Err(CellError::TooManyCells { limit: 100 })
        );
    }
}
