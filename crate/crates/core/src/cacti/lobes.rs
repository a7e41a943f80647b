//! Lobes, intersection points and the associated planar tree of a cactus.

use std::collections::BTreeSet;

use serde::Serialize;

use super::partition::{validate, LabeledPartition};
use super::CactiError;
use crate::geometry::{CirclePoint, PlCircleMap, Rat};
use crate::operad::tree::Tree;

/// A point of the cactus hit by one or more breakpoints.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PointClass {
    /// Breakpoint indices `a` (for `t_a`, with `t_N` identified with `t_0`).
    pub breakpoints: Vec<usize>,
    /// Lobes through the point, ascending.
    pub lobes: BTreeSet<usize>,
}

impl PointClass {
    pub fn is_intersection(&self) -> bool {
        self.lobes.len() >= 2
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LobeGeometry {
    /// Image of `t_a` under the cactus map, for `a = 0 … N − 1`.
    pub images: Vec<Vec<CirclePoint>>,
    /// Breakpoint classes of equal image, ordered by first breakpoint.
    pub classes: Vec<PointClass>,
    /// Index into `classes` of the class containing `t₀`.
    pub basepoint_class: usize,
}

impl LobeGeometry {
    pub fn intersections(&self) -> impl Iterator<Item = &PointClass> {
        self.classes.iter().filter(|c| c.is_intersection())
    }

    pub fn basepoint_is_intersection(&self) -> bool {
        self.classes[self.basepoint_class].is_intersection()
    }

    /// Class of breakpoint `a`.
    pub fn class_of(&self, a: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.breakpoints.contains(&a))
            .expect("every breakpoint has a class")
    }
}

/// Groups breakpoints by exact equality of their image under the cactus map
/// `(π₁, …, π_n)` (shifted by `offsets` when given).
pub fn lobe_geometry(
    p: &LabeledPartition,
    offsets: Option<&[CirclePoint]>,
) -> Result<LobeGeometry, CactiError> {
    let n = p.n();
    let coords: Vec<PlCircleMap> = (1..=n)
        .map(|j| {
            let c = p.coordinate_map(j)?;
            Ok(match offsets {
                Some(z) => PlCircleMap::rotation(z[j - 1].coordinate()).compose(&c),
                None => c,
            })
        })
        .collect::<Result<_, CactiError>>()?;
    let big_n = p.arc_count();
    let labels = p.labels();
    let images: Vec<Vec<CirclePoint>> = p.breaks()[..big_n]
        .iter()
        .map(|t| coords.iter().map(|c| c.eval(t)).collect())
        .collect();
    let mut classes: Vec<PointClass> = Vec::new();
    for a in 0..big_n {
        // arcs meeting at t_a: arc a (ending there, cyclically) and arc a+1
        let before = if a == 0 {
            labels[big_n - 1]
        } else {
            labels[a - 1]
        };
        let after = labels[a];
        match classes
            .iter_mut()
            .find(|c| images[c.breakpoints[0]] == images[a])
        {
            Some(c) => {
                c.breakpoints.push(a);
                c.lobes.insert(before);
                c.lobes.insert(after);
            }
            None => classes.push(PointClass {
                breakpoints: vec![a],
                lobes: [before, after].into_iter().collect(),
            }),
        }
    }
    Ok(LobeGeometry {
        images,
        classes,
        basepoint_class: 0,
    })
}

/// Vertex of the associated tree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CactusVertex {
    Lobe {
        label: usize,
    },
    /// An intersection point, identified by the breakpoints mapping to it.
    Intersection {
        breakpoints: Vec<usize>,
    },
}

pub type CactusTree = Tree<CactusVertex>;

/// Mutable arena used while scanning.
struct Scan {
    tags: Vec<CactusVertex>,
    children: Vec<Vec<usize>>,
}

impl Scan {
    fn add(&mut self, tag: CactusVertex) -> usize {
        self.tags.push(tag);
        self.children.push(Vec::new());
        self.tags.len() - 1
    }

    fn build(&self, v: usize) -> CactusTree {
        Tree::node(
            self.tags[v].clone(),
            self.children[v].iter().map(|&c| self.build(c)).collect(),
        )
    }

    fn add_breakpoint(&mut self, v: usize, a: usize) {
        if let CactusVertex::Intersection { breakpoints } = &mut self.tags[v] {
            breakpoints.push(a);
        }
    }
}

/// The planar tree of lobes and intersection points, read off the labels by
/// one left-to-right scan. Children are in counterclockwise order starting
/// after the edge towards the root.
pub fn associated_tree(p: &LabeledPartition) -> Result<CactusTree, CactiError> {
    validate(p, 2)?;
    let labels = p.labels();
    let big_n = labels.len();
    let mut last = vec![0usize; p.n() + 1];
    for (i, &l) in labels.iter().enumerate() {
        last[l] = i;
    }
    let mut scan = Scan {
        tags: Vec::new(),
        children: Vec::new(),
    };
    let mut seen = vec![false; p.n() + 1];
    // stack of (lobe label, lobe vertex, vertex it hangs from)
    let mut stack: Vec<(usize, usize, Option<usize>)> = Vec::new();

    let first = labels[0];
    let root = if first != labels[big_n - 1] {
        let r = scan.add(CactusVertex::Intersection {
            breakpoints: vec![0],
        });
        let lv = scan.add(CactusVertex::Lobe { label: first });
        scan.children[r].push(lv);
        stack.push((first, lv, Some(r)));
        r
    } else {
        let lv = scan.add(CactusVertex::Lobe { label: first });
        stack.push((first, lv, None));
        lv
    };
    seen[first] = true;

    for i in 0..big_n - 1 {
        let (cur, next) = (labels[i], labels[i + 1]);
        let a = i + 1; // breakpoint between arcs i and i+1 (0-based arcs)
        let (top_label, top_vertex, hang) = *stack.last().expect("scan stack is never empty");
        debug_assert_eq!(top_label, cur);
        if i == last[cur] {
            stack.pop();
            let at = hang
                .expect("only the root lobe has no attachment point, and it never closes early");
            scan.add_breakpoint(at, a);
            if !seen[next] {
                let lv = scan.add(CactusVertex::Lobe { label: next });
                scan.children[at].push(lv);
                stack.push((next, lv, Some(at)));
                seen[next] = true;
            } else {
                debug_assert_eq!(stack.last().map(|s| s.0), Some(next));
            }
        } else {
            debug_assert!(!seen[next]);
            let w = scan.add(CactusVertex::Intersection {
                breakpoints: vec![a],
            });
            scan.children[top_vertex].push(w);
            let lv = scan.add(CactusVertex::Lobe { label: next });
            scan.children[w].push(lv);
            stack.push((next, lv, Some(w)));
            seen[next] = true;
        }
    }
    Ok(scan.build(root))
}

/// `d(x, y) = Σ_j l(I_j(x) \ I_j(y))`: the measure of the set where the two
/// partitions disagree.
pub fn metric_distance(x: &LabeledPartition, y: &LabeledPartition) -> Result<Rat, CactiError> {
    if x.n() != y.n() {
        return Err(CactiError::SizeMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    let mut pts: Vec<Rat> = x.breaks().iter().chain(y.breaks()).cloned().collect();
    pts.sort();
    pts.dedup();
    let mut d = Rat::zero();
    for w in pts.windows(2) {
        if x.label_at(&w[0]) != y.label_at(&w[0]) {
            d = d + (&w[1] - &w[0]);
        }
    }
    Ok(d)
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

    fn lobe(j: usize, children: Vec<CactusTree>) -> CactusTree {
        Tree::node(CactusVertex::Lobe { label: j }, children)
    }

    fn inter(bps: &[usize], children: Vec<CactusTree>) -> CactusTree {
        Tree::node(
            CactusVertex::Intersection {
                breakpoints: bps.to_vec(),
            },
            children,
        )
    }

    #[test]
    fn nested_lobe_geometry() {
        let p = part(&[(0, 1), (1, 4), (3, 4), (1, 1)], &[1, 2, 1]);
        let g = lobe_geometry(&p, None).unwrap();
        let inters: Vec<_> = g.intersections().collect();
        assert_eq!(inters.len(), 1);
        assert_eq!(inters[0].breakpoints, vec![1, 2]);
        assert_eq!(inters[0].lobes, [1, 2].into_iter().collect());
        assert!(!g.basepoint_is_intersection());
    }

    #[test]
    fn two_lobes_meet_once() {
        let p = part(&[(0, 1), (1, 2), (1, 1)], &[1, 2]);
        let g = lobe_geometry(&p, None).unwrap();
        assert_eq!(g.classes.len(), 1);
        assert_eq!(g.classes[0].breakpoints, vec![0, 1]);
        assert!(g.basepoint_is_intersection());
    }

    #[test]
    fn single_lobe_has_no_intersections() {
        let g = lobe_geometry(&LabeledPartition::trivial(), None).unwrap();
        assert_eq!(g.intersections().count(), 0);
    }

    #[test]
    fn small_trees() {
        assert_eq!(
            associated_tree(&LabeledPartition::trivial()).unwrap(),
            lobe(1, vec![])
        );
        let p = part(&[(0, 1), (1, 4), (3, 4), (1, 1)], &[1, 2, 1]);
        assert_eq!(
            associated_tree(&p).unwrap(),
            lobe(1, vec![inter(&[1, 2], vec![lobe(2, vec![])])])
        );
        let p = part(&[(0, 1), (1, 2), (1, 1)], &[1, 2]);
        assert_eq!(
            associated_tree(&p).unwrap(),
            inter(&[0, 1], vec![lobe(1, vec![]), lobe(2, vec![])])
        );
    }

    #[test]
    fn distances() {
        let x = part(&[(0, 1), (1, 2), (1, 1)], &[1, 2]);
        let y = part(&[(0, 1), (1, 2), (1, 1)], &[2, 1]);
        assert_eq!(metric_distance(&x, &x).unwrap(), q(0, 1));
        assert_eq!(metric_distance(&x, &y).unwrap(), q(1, 1));
        let z = part(&[(0, 1), (1, 4), (3, 4), (1, 1)], &[1, 2, 1]);
        assert_eq!(metric_distance(&x, &z).unwrap(), q(1, 2));
    }
}
