//! Labeled partitions of the circle into closed 1-manifolds.

use std::fmt;

use serde::Serialize;

use super::CactiError;
use crate::geometry::{PlCircleMap, Rat};

/// Breakpoints `0 = t₀ < t₁ < … < t_N = 1` and labels `X₁ … X_N`, the arc
/// `[t_{i−1}, t_i]` carrying label `X_i ∈ {1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledPartition {
    n: usize,
    breaks: Vec<Rat>,
    labels: Vec<usize>,
    equal_length: bool,
}

/// The first reason a partition fails [`validate`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `X_i = X_{i+1}` (1-based `i`).
    AdjacentEqual {
        position: usize,
        label: usize,
    },
    MissingLabel {
        label: usize,
    },
    /// Alternating subsequence `a, b, a, …` of forbidden length, located at
    /// the given 1-based positions.
    Alternation {
        a: usize,
        b: usize,
        positions: Vec<usize>,
    },
    UnequalLength {
        label: usize,
        length: Rat,
    },
    EmptyLabel {
        label: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AdjacentEqual { position, label } => {
                write!(f, "labels {position} and {} are both {label}", position + 1)
            }
            Violation::MissingLabel { label } => write!(f, "label {label} does not occur"),
            Violation::Alternation { a, b, positions } => {
                write!(
                    f,
                    "alternating {a},{b} subsequence at positions {positions:?}"
                )
            }
            Violation::UnequalLength { label, length } => {
                write!(f, "label {label} has total length {length}")
            }
            Violation::EmptyLabel { label } => write!(f, "label {label} has zero length"),
        }
    }
}

impl LabeledPartition {
    /// Builds an equal-length partition (an element of F(n) or F_m(n)).
    /// Only structural well-formedness is checked here; see [`validate`].
    pub fn new(
        n: usize,
        breaks: Vec<Rat>,
        labels: Vec<usize>,
    ) -> Result<LabeledPartition, CactiError> {
        LabeledPartition::build(n, breaks, labels, true)
    }

    /// Builds a partition whose labels may have arbitrary positive weights.
    pub fn weighted(
        n: usize,
        breaks: Vec<Rat>,
        labels: Vec<usize>,
    ) -> Result<LabeledPartition, CactiError> {
        LabeledPartition::build(n, breaks, labels, false)
    }

    fn build(
        n: usize,
        breaks: Vec<Rat>,
        labels: Vec<usize>,
        equal_length: bool,
    ) -> Result<LabeledPartition, CactiError> {
        if n == 0 {
            return Err(CactiError::EmptyPartition);
        }
        if breaks.len() != labels.len() + 1 || labels.is_empty() {
            return Err(CactiError::BreaksLabelsMismatch {
                breaks: breaks.len(),
                labels: labels.len(),
            });
        }
        if !breaks[0].is_zero() || breaks[breaks.len() - 1] != Rat::one() {
            return Err(CactiError::BadBreaks);
        }
        if breaks.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CactiError::BadBreaks);
        }
        if let Some(&label) = labels.iter().find(|&&l| l == 0 || l > n) {
            return Err(CactiError::LabelOutOfRange { label, n });
        }
        Ok(LabeledPartition {
            n,
            breaks,
            labels,
            equal_length,
        })
    }

    /// The single-arc partition of F(1).
    pub fn trivial() -> LabeledPartition {
        LabeledPartition {
            n: 1,
            breaks: vec![Rat::zero(), Rat::one()],
            labels: vec![1],
            equal_length: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn breaks(&self) -> &[Rat] {
        &self.breaks
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_equal_length(&self) -> bool {
        self.equal_length
    }

    /// Number of arcs N.
    pub fn arc_count(&self) -> usize {
        self.labels.len()
    }

    /// Total length of the arcs labeled `j`.
    pub fn label_length(&self, j: usize) -> Rat {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == j)
            .map(|(i, _)| &self.breaks[i + 1] - &self.breaks[i])
            .sum()
    }

    /// Label of the arc containing `t` in its interior or as left endpoint.
    pub fn label_at(&self, t: &Rat) -> usize {
        let idx = self.breaks.partition_point(|b| b <= t);
        self.labels[idx.clamp(1, self.labels.len()) - 1]
    }

    /// Per-label coordinate π_j: collapse everything off label `j` and
    /// rescale the rest to a full circle.
    pub fn coordinate_map(&self, j: usize) -> Result<PlCircleMap, CactiError> {
        if j == 0 || j > self.n {
            return Err(CactiError::LabelOutOfRange {
                label: j,
                n: self.n,
            });
        }
        let total = self.label_length(j);
        if total.is_zero() {
            return Err(CactiError::Invalid(Violation::MissingLabel { label: j }));
        }
        let mut acc = Rat::zero();
        let mut pts = vec![(Rat::zero(), Rat::zero())];
        for (i, &l) in self.labels.iter().enumerate() {
            if l == j {
                acc = acc + (&self.breaks[i + 1] - &self.breaks[i]) / &total;
            }
            pts.push((self.breaks[i + 1].clone(), acc.clone()));
        }
        Ok(PlCircleMap::new(pts)?)
    }

    /// Applies a relabeling `old label ↦ new label`.
    pub(crate) fn relabeled(&self, new_label: impl Fn(usize) -> usize) -> LabeledPartition {
        LabeledPartition {
            n: self.n,
            breaks: self.breaks.clone(),
            labels: self.labels.iter().map(|&l| new_label(l)).collect(),
            equal_length: self.equal_length,
        }
    }
}

/// Longest alternating subsequence `a, b, a, …` of `labels`, greedily, as
/// 1-based positions. Greedy left-most matching is optimal here.
fn alternating_positions(labels: &[usize], a: usize, b: usize, limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut want = a;
    for (i, &l) in labels.iter().enumerate() {
        if l == want {
            out.push(i + 1);
            if out.len() == limit {
                break;
            }
            want = if want == a { b } else { a };
        }
    }
    out
}

/// First forbidden alternation of length `m + 2` in a label sequence, if any.
/// Among all offending pairs, reports the one that completes earliest.
pub fn find_alternation(labels: &[usize], n: usize, m: usize) -> Option<Violation> {
    let len = m + 2;
    let mut best: Option<Violation> = None;
    let mut best_end = usize::MAX;
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            let pos = alternating_positions(labels, a, b, len);
            if pos.len() == len && pos[len - 1] < best_end {
                best_end = pos[len - 1];
                best = Some(Violation::Alternation {
                    a,
                    b,
                    positions: pos,
                });
            }
        }
    }
    best
}

/// Checks every partition invariant with alternation order `m ≥ 1`.
/// Returns the first violation, checking adjacency, label coverage,
/// alternation and lengths in that order.
pub fn validate(p: &LabeledPartition, m: usize) -> Result<(), Violation> {
    validate_labels(p.labels(), p.n(), m)?;
    let n = Rat::from_int(p.n() as i64);
    for j in 1..=p.n() {
        let length = p.label_length(j);
        if p.is_equal_length() {
            if &length * &n != Rat::one() {
                return Err(Violation::UnequalLength { label: j, length });
            }
        } else if !length.is_positive() {
            return Err(Violation::EmptyLabel { label: j });
        }
    }
    Ok(())
}

/// The label-sequence part of [`validate`]; this is the cell condition.
pub fn validate_labels(labels: &[usize], n: usize, m: usize) -> Result<(), Violation> {
    if let Some(i) = labels.windows(2).position(|w| w[0] == w[1]) {
        return Err(Violation::AdjacentEqual {
            position: i + 1,
            label: labels[i],
        });
    }
    let mut present = vec![false; n + 1];
    for &l in labels {
        if l <= n {
            present[l] = true;
        }
    }
    if let Some(label) = (1..=n).find(|&j| !present[j]) {
        return Err(Violation::MissingLabel { label });
    }
    match find_alternation(labels, n, m) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;

    fn part(breaks: &[(i64, i64)], labels: &[usize]) -> LabeledPartition {
        let n = *labels.iter().max().unwrap();
        LabeledPartition::new(
            n,
            breaks.iter().map(|&(a, b)| q(a, b)).collect(),
            labels.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn circle_of_two_lobes_is_valid() {
        let p = part(&[(0, 1), (1, 2), (1, 1)], &[1, 2]);
        for m in 1..5 {
            assert_eq!(validate(&p, m), Ok(()));
        }
        assert_eq!(validate(&LabeledPartition::trivial(), 2), Ok(()));
    }

    #[test]
    fn abab_is_order_dependent() {
        let p = part(&[(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)], &[1, 2, 1, 2]);
        assert_eq!(
            validate(&p, 2),
            Err(Violation::Alternation {
                a: 1,
                b: 2,
                positions: vec![1, 2, 3, 4]
            })
        );
        assert_eq!(validate(&p, 3), Ok(()));
    }

    #[test]
    fn one_alternation_forbids_returns() {
        assert!(validate_labels(&[1, 2, 3], 3, 1).is_ok());
        assert!(matches!(
            validate_labels(&[1, 2, 1], 2, 1),
            Err(Violation::Alternation { .. })
        ));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            validate_labels(&[1, 1, 2], 2, 2),
            Err(Violation::AdjacentEqual {
                position: 1,
                label: 1
            })
        ));
        assert_eq!(
            validate_labels(&[1, 3], 3, 2),
            Err(Violation::MissingLabel { label: 2 })
        );
        let p = part(&[(0, 1), (1, 3), (1, 1)], &[1, 2]);
        assert!(matches!(
            validate(&p, 2),
            Err(Violation::UnequalLength { label: 1, .. })
        ));
        let w = LabeledPartition::weighted(2, vec![q(0, 1), q(1, 3), q(1, 1)], vec![1, 2]).unwrap();
        assert_eq!(validate(&w, 2), Ok(()));
    }

    #[test]
    fn coordinate_maps() {
        let p = part(&[(0, 1), (1, 2), (1, 1)], &[1, 2]);
        let c1 = p.coordinate_map(1).unwrap();
        assert_eq!(
            c1.lift_points(),
            &[(q(0, 1), q(0, 1)), (q(1, 2), q(1, 1)), (q(1, 1), q(1, 1))]
        );
        let p = part(&[(0, 1), (1, 4), (3, 4), (1, 1)], &[1, 2, 1]);
        let c1 = p.coordinate_map(1).unwrap();
        assert_eq!(
            c1.lift_points(),
            &[
                (q(0, 1), q(0, 1)),
                (q(1, 4), q(1, 2)),
                (q(3, 4), q(1, 2)),
                (q(1, 1), q(1, 1))
            ]
        );
        let id = LabeledPartition::trivial().coordinate_map(1).unwrap();
        assert_eq!(id, PlCircleMap::identity());
        assert!(p.coordinate_map(3).is_err());
    }
}
