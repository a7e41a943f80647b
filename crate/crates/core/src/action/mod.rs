//! The action of spineless cacti on `Tot(O•)` and of framed cacti on
//! `Tot(O•)` for cyclic `O`.
//!
//! A cactus and a point `(x₀ ≤ … ≤ x_k)` give a planar tree: lobe vertices,
//! one vertex per intersection or special point `γ(x_i)`, and a leaf per
//! `x_i`. Lobes are labelled by the input family evaluated at the pulled
//! back positions of the points on that lobe, all other vertices by
//! basepoints `m_p`; composing along the tree gives `a^k(x)`.

pub mod verify;

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cacti::{CactiError, FmsElement, LabeledPartition};
use crate::geometry::{
    lambda_join, CirclePoint, DeltaPoint, GeometryError, LambdaPoint, PlCircleMap, Rat,
};
use crate::operad::free::{FreeTerm, Payload};
use crate::operad::tree::Tree;
use crate::operad::{compose_along_tree, OperadError, WithMultiplication};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Cacti(#[from] CactiError),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("expected {expected} inputs, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("plain mode needs a spineless cactus")]
    Framed,
    #[error("inconsistent cactus scan: {0}")]
    Scan(String),
}

impl From<ActionError> for OperadError {
    fn from(e: ActionError) -> OperadError {
        match e {
            ActionError::Operad(o) => o,
            other => OperadError::Malformed(other.to_string()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ActionVertex {
    /// Lobe `label`, to be evaluated at `payload`.
    Lobe { label: usize, payload: Payload },
    /// A point of the cactus; `points` lists the `i` with `γ(x_i)` here.
    Point {
        intersection: bool,
        points: Vec<usize>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionTree {
    /// Leaves are numbered by the index `i` of `x_i`, `1 ≤ i ≤ k`.
    pub tree: Tree<ActionVertex>,
    pub degree: usize,
    /// Number of lobes (the arity of the cactus).
    pub lobes: usize,
    pub cyclic: bool,
}

/// Which point of `H_j` sits in slot 0 of a cyclic-mode lobe payload.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SlotConvention {
    /// The point where the lobe meets the path to the root.
    #[default]
    ExitPoint,
    /// The first point after the lobe's own basepoint. Wrong; kept as a
    /// negative control.
    LobeBasepoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalPoint {
    Plain(DeltaPoint),
    Cyclic(LambdaPoint),
}

impl EvalPoint {
    pub fn degree(&self) -> usize {
        match self {
            EvalPoint::Plain(p) => p.degree(),
            EvalPoint::Cyclic(p) => p.degree(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, EvalPoint::Cyclic(_))
    }

    /// The point a lobe payload denotes.
    pub fn from_payload(p: &Payload) -> Result<EvalPoint, ActionError> {
        match p {
            Payload::Delta(y) => Ok(EvalPoint::Plain(y.clone())),
            Payload::Lambda(y) => Ok(EvalPoint::Cyclic(y.clone())),
            Payload::None => Err(ActionError::Operad(OperadError::Malformed(
                "lobe without a point".into(),
            ))),
        }
    }
}

struct Group {
    image: Vec<CirclePoint>,
    times: Vec<Rat>,
    lobes: BTreeSet<usize>,
    specials: Vec<usize>,
}

impl Group {
    fn kept(&self) -> bool {
        self.lobes.len() >= 2 || !self.specials.is_empty()
    }
}

struct Scan<'a> {
    p: &'a LabeledPartition,
    s: &'a [Rat],
    groups: Vec<Group>,
    visited_lobes: Vec<bool>,
    visited_groups: Vec<bool>,
}

fn lobes_at(p: &LabeledPartition, t: &Rat) -> BTreeSet<usize> {
    let labels = p.labels();
    let n = labels.len();
    match p.breaks().iter().position(|b| b == t) {
        Some(a) if a == 0 || a == n => [labels[0], labels[n - 1]].into_iter().collect(),
        Some(a) => [labels[a - 1], labels[a]].into_iter().collect(),
        None => [p.label_at(t)].into_iter().collect(),
    }
}

impl<'a> Scan<'a> {
    fn new(p: &'a LabeledPartition, s: &'a [Rat]) -> Result<Scan<'a>, ActionError> {
        let coords: Vec<PlCircleMap> = (1..=p.n())
            .map(|j| p.coordinate_map(j))
            .collect::<Result<_, _>>()?;
        let mut groups: Vec<Group> = Vec::new();
        let candidates = p
            .breaks()
            .iter()
            .map(|t| (t, None))
            .chain(s.iter().enumerate().map(|(i, t)| (t, Some(i))));
        for (t, special) in candidates {
            let image: Vec<CirclePoint> = coords.iter().map(|c| c.eval(t)).collect();
            let g = match groups.iter().position(|g| g.image == image) {
                Some(g) => g,
                None => {
                    groups.push(Group {
                        image,
                        times: Vec::new(),
                        lobes: BTreeSet::new(),
                        specials: Vec::new(),
                    });
                    groups.len() - 1
                }
            };
            let g = &mut groups[g];
            if !g.times.contains(t) {
                g.times.push(t.clone());
                g.lobes.extend(lobes_at(p, t));
            }
            if let Some(i) = special {
                g.specials.push(i);
            }
        }
        for g in &mut groups {
            g.times.sort();
            g.specials.sort();
        }
        let (nl, ng) = (p.n(), groups.len());
        Ok(Scan {
            p,
            s,
            groups,
            visited_lobes: vec![false; nl + 1],
            visited_groups: vec![false; ng],
        })
    }

    fn coordinate(&self, g: usize, j: usize) -> &Rat {
        self.groups[g].image[j - 1].coordinate()
    }

    fn point(
        &mut self,
        g: usize,
        parent: Option<usize>,
    ) -> Result<Tree<ActionVertex>, ActionError> {
        if std::mem::replace(&mut self.visited_groups[g], true) {
            return Err(ActionError::Scan(format!("point {g} reached twice")));
        }
        let times = self.groups[g].times.clone();
        let last = times.len() - 1;
        let mut children = Vec::new();
        for (q, t) in times.iter().enumerate() {
            for &i in &self.groups[g].specials {
                if i > 0 && self.s[i] == *t {
                    children.push(Tree::Leaf(i));
                }
            }
            if *t == Rat::one() {
                continue;
            }
            let dep = self.p.label_at(t);
            if Some(dep) == parent {
                if q != last {
                    return Err(ActionError::Scan(format!(
                        "curve returns to the parent lobe {dep} early"
                    )));
                }
                continue;
            }
            if q == last && parent.is_some() {
                return Err(ActionError::Scan(format!(
                    "last passage leaves into lobe {dep}"
                )));
            }
            children.push(self.lobe(dep, g)?);
        }
        let grp = &self.groups[g];
        Ok(Tree::node(
            ActionVertex::Point {
                intersection: grp.lobes.len() >= 2,
                points: grp.specials.clone(),
            },
            children,
        ))
    }

    fn lobe(&mut self, j: usize, parent: usize) -> Result<Tree<ActionVertex>, ActionError> {
        if std::mem::replace(&mut self.visited_lobes[j], true) {
            return Err(ActionError::Scan(format!("lobe {j} entered twice")));
        }
        if !self.coordinate(parent, j).is_zero() {
            return Err(ActionError::Scan(format!(
                "lobe {j} is not entered at its basepoint"
            )));
        }
        let mut on: Vec<(Rat, usize)> = (0..self.groups.len())
            .filter(|&g| g != parent && self.groups[g].kept() && self.groups[g].lobes.contains(&j))
            .map(|g| (self.coordinate(g, j).clone(), g))
            .collect();
        on.sort();
        if on.iter().any(|(c, _)| c.is_zero()) || on.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ActionError::Scan(format!(
                "points on lobe {j} are not distinct"
            )));
        }
        let y = DeltaPoint::new(on.iter().map(|(c, _)| c.clone()).collect())?;
        let children = on
            .iter()
            .map(|&(_, g)| self.point(g, Some(j)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tree::node(
            ActionVertex::Lobe {
                label: j,
                payload: Payload::Delta(y),
            },
            children,
        ))
    }
}

/// The tree for curve times `s₀ = 0 ≤ s₁ ≤ … ≤ s_k ≤ 1` on a partition whose
/// lobe basepoints sit where the curve first enters each lobe.
fn scan_tree(p: &LabeledPartition, s: &[Rat]) -> Result<Tree<ActionVertex>, ActionError> {
    let mut scan = Scan::new(p, s)?;
    let root = scan
        .groups
        .iter()
        .position(|g| g.specials.contains(&0))
        .expect("s₀ is a candidate");
    let tree = scan.point(root, None)?;
    if let Some(j) = (1..=p.n()).find(|&j| !scan.visited_lobes[j]) {
        return Err(ActionError::Scan(format!("lobe {j} unreachable")));
    }
    if let Some(g) =
        (0..scan.groups.len()).find(|&g| scan.groups[g].kept() && !scan.visited_groups[g])
    {
        return Err(ActionError::Scan(format!("point {g} unreachable")));
    }
    let leaves = tree.leaves();
    if leaves.iter().enumerate().any(|(r, &i)| i != r + 1) || leaves.len() + 1 != s.len() {
        return Err(ActionError::Scan(format!("leaves {leaves:?} out of order")));
    }
    Ok(tree)
}

fn corolla_tree(k: usize, cyclic: bool) -> ActionTree {
    ActionTree {
        tree: Tree::node(
            ActionVertex::Point {
                intersection: false,
                points: (0..=k).collect(),
            },
            (1..=k).map(Tree::Leaf).collect(),
        ),
        degree: k,
        lobes: 0,
        cyclic,
    }
}

/// Plain mode: `e` spineless, `p ∈ Δᵏ`.
pub fn build_action_tree(e: &FmsElement, p: &DeltaPoint) -> Result<ActionTree, ActionError> {
    if !e.is_spineless() {
        return Err(ActionError::Framed);
    }
    let Some(part) = e.partition() else {
        return Ok(corolla_tree(p.degree(), false));
    };
    let f = e.reparam();
    let mut s = vec![Rat::zero()];
    s.extend(p.coords().iter().map(|x| f.eval(x)));
    Ok(ActionTree {
        tree: scan_tree(part, &s)?,
        degree: p.degree(),
        lobes: e.arity(),
        cyclic: false,
    })
}

/// The same labelled partition read from time `t0` on.
fn rotate_partition(p: &LabeledPartition, t0: &Rat) -> Result<LabeledPartition, CactiError> {
    if t0.is_zero() {
        return Ok(p.clone());
    }
    let mut breaks: Vec<Rat> = p.breaks().iter().map(|t| (t - t0).frac()).collect();
    breaks.push(Rat::zero());
    breaks.push(Rat::one());
    breaks.sort();
    breaks.dedup();
    let labels = breaks[..breaks.len() - 1]
        .iter()
        .map(|b| p.label_at(&(b + t0).frac()))
        .collect();
    LabeledPartition::new(p.n(), breaks, labels)
}

/// Cyclic mode: `e` framed, `p ∈ Λᵏ`; `γ(x₀)` is the root.
pub fn build_action_tree_cyclic(
    e: &FmsElement,
    p: &LambdaPoint,
    convention: SlotConvention,
) -> Result<ActionTree, ActionError> {
    let Some(part) = e.partition() else {
        return Ok(corolla_tree(p.degree(), true));
    };
    let f = e.reparam();
    let lift = |x: &Rat| x.floor() + f.eval(&x.frac());
    let x = p.lifts();
    let f0 = lift(&x[0]);
    let t0 = f0.frac();
    let s: Vec<Rat> = x.iter().map(|xi| lift(xi) - &f0).collect();
    let rotated = rotate_partition(part, &t0)?;
    let tree = scan_tree(&rotated, &s)?;
    let mut shift = Vec::with_capacity(e.arity());
    for j in 1..=e.arity() {
        let pj = part.coordinate_map(j)?;
        shift.push(CirclePoint::new(
            e.offsets()[j - 1].coordinate() + pj.eval(&t0).coordinate(),
        ));
    }
    let tree = relabel_cyclic(tree, &shift, convention)?;
    Ok(ActionTree {
        tree,
        degree: p.degree(),
        lobes: e.arity(),
        cyclic: true,
    })
}

fn relabel_cyclic(
    t: Tree<ActionVertex>,
    shift: &[CirclePoint],
    convention: SlotConvention,
) -> Result<Tree<ActionVertex>, ActionError> {
    match t {
        Tree::Leaf(i) => Ok(Tree::Leaf(i)),
        Tree::Node { label, children } => {
            let children = children
                .into_iter()
                .map(|c| relabel_cyclic(c, shift, convention))
                .collect::<Result<Vec<_>, _>>()?;
            let label = match label {
                ActionVertex::Lobe {
                    label,
                    payload: Payload::Delta(y),
                } => {
                    let c = &shift[label - 1];
                    let lam = match convention {
                        SlotConvention::ExitPoint => lambda_join(&y, c),
                        SlotConvention::LobeBasepoint => {
                            let mut pts: Vec<CirclePoint> = std::iter::once(c.clone())
                                .chain(y.coords().iter().map(|v| c.shifted(v)))
                                .collect();
                            pts.sort_by(|a, b| a.coordinate().cmp(b.coordinate()));
                            LambdaPoint::from_circle(&pts)?
                        }
                    };
                    ActionVertex::Lobe {
                        label,
                        payload: Payload::Lambda(lam),
                    }
                }
                other => other,
            };
            Ok(Tree::node(label, children))
        }
    }
}

pub fn action_tree(
    e: &FmsElement,
    p: &EvalPoint,
    convention: SlotConvention,
) -> Result<ActionTree, ActionError> {
    match p {
        EvalPoint::Plain(p) => build_action_tree(e, p),
        EvalPoint::Cyclic(p) => build_action_tree_cyclic(e, p, convention),
    }
}

/// An input `a_j`: a map from points of Δˡ (or Λˡ) to `O(l)`.
pub type Family<'a, E> = Box<dyn Fn(&Payload) -> Result<E, OperadError> + 'a>;

/// The formal input `a⟨y⟩` of the free operad.
pub fn symbol<'a>(name: &str) -> Family<'a, FreeTerm> {
    let name = name.to_string();
    Box::new(move |p| FreeTerm::evaluation(&name, p.clone()))
}

/// Formal inputs `a1, …, am`.
pub fn symbols<'a>(m: usize) -> Vec<Family<'a, FreeTerm>> {
    (1..=m).map(|j| symbol(&format!("a{j}"))).collect()
}

/// Composes the labelled tree.
pub fn theta<O: WithMultiplication>(
    o: &O,
    t: &ActionTree,
    inputs: &[Family<'_, O::Elem>],
) -> Result<O::Elem, ActionError> {
    if inputs.len() != t.lobes {
        return Err(ActionError::InputCount {
            expected: t.lobes,
            got: inputs.len(),
        });
    }
    let labelled = label_tree(o, &t.tree, inputs)?;
    Ok(compose_along_tree(o, &labelled)?)
}

fn label_tree<O: WithMultiplication>(
    o: &O,
    t: &Tree<ActionVertex>,
    inputs: &[Family<'_, O::Elem>],
) -> Result<Tree<O::Elem>, ActionError> {
    match t {
        Tree::Leaf(i) => Ok(Tree::Leaf(*i)),
        Tree::Node { label, children } => {
            let elem = match label {
                ActionVertex::Lobe { label, payload } => inputs[label - 1](payload)?,
                ActionVertex::Point { .. } => o.basepoint(children.len()),
            };
            let children = children
                .iter()
                .map(|c| label_tree(o, c, inputs))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Tree::node(elem, children))
        }
    }
}

/// `θ(e; a₁, …, a_m)` evaluated at `p`.
pub fn act<O: WithMultiplication>(
    o: &O,
    e: &FmsElement,
    inputs: &[Family<'_, O::Elem>],
    p: &EvalPoint,
    convention: SlotConvention,
) -> Result<O::Elem, ActionError> {
    theta(o, &action_tree(e, p, convention)?, inputs)
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

fn vertex_text(v: &ActionVertex) -> String {
    match v {
        ActionVertex::Lobe { label, payload } => match payload {
            Payload::Delta(y) => format!("a{label}⟨{}⟩", join(y.coords())),
            Payload::Lambda(y) => format!("a{label}⟨{}⟩ᶜ", join(y.lifts())),
            Payload::None => format!("a{label}"),
        },
        ActionVertex::Point {
            intersection,
            points,
        } => {
            let pts: Vec<String> = points.iter().map(|i| format!("x{i}")).collect();
            match (intersection, pts.is_empty()) {
                (true, true) => "∩".to_string(),
                (true, false) => format!("∩ {}", pts.join(" ")),
                _ => pts.join(" "),
            }
        }
    }
}

fn join(v: &[Rat]) -> String {
    v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")
}

impl ActionTree {
    pub fn leaf_count(&self) -> usize {
        self.tree.leaves().len()
    }

    /// Vertices, with point vertices split by kind.
    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for v in self.tree.labels() {
            match v {
                ActionVertex::Lobe { .. } => c.lobes += 1,
                ActionVertex::Point {
                    intersection: true, ..
                } => c.intersections += 1,
                ActionVertex::Point { .. } => c.special += 1,
            }
        }
        c.leaves = self.leaf_count();
        c
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "lobes": self.lobes,
            "cyclic": self.cyclic,
            "tree": tree_json(&self.tree),
        })
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.tree.to_dot(name, &mut vertex_text)
    }
}

fn tree_json(t: &Tree<ActionVertex>) -> Value {
    match t {
        Tree::Leaf(i) => json!({ "leaf": i }),
        Tree::Node { label, children } => {
            let cs: Vec<Value> = children.iter().map(tree_json).collect();
            match label {
                ActionVertex::Lobe { label, payload } => {
                    let point = match payload {
                        Payload::Delta(y) => json!({ "delta": rats(y.coords()) }),
                        Payload::Lambda(y) => json!({ "lambda": rats(y.lifts()) }),
                        Payload::None => Value::Null,
                    };
                    json!({ "kind": "lobe", "label": label, "point": point, "children": cs })
                }
                ActionVertex::Point {
                    intersection,
                    points,
                } => json!({
                    "kind": if *intersection { "intersection" } else { "special" },
                    "points": points,
                    "children": cs,
                }),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub lobes: usize,
    pub intersections: usize,
    /// Point vertices that are not intersections.
    pub special: usize,
    pub leaves: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, PlMonotoneMap};
    use crate::operad::FreeOperad;

    fn ex55() -> FmsElement {
        let p = LabeledPartition::new(2, vec![q(0, 1), q(1, 4), q(3, 4), q(1, 1)], vec![1, 2, 1])
            .unwrap();
        FmsElement::spineless(p, PlMonotoneMap::identity()).unwrap()
    }

    fn ev(name: &str, v: &[Rat]) -> FreeTerm {
        FreeTerm::evaluation(name, Payload::Delta(DeltaPoint::new(v.to_vec()).unwrap())).unwrap()
    }

    #[test]
    fn coincidence_with_intersection_point() {
        let t = build_action_tree(&ex55(), &DeltaPoint::new(vec![q(1, 4)]).unwrap()).unwrap();
        let c = t.census();
        assert_eq!(
            (c.lobes, c.intersections, c.special, c.leaves),
            (2, 1, 1, 1)
        );
        let got = theta(&FreeOperad, &t, &symbols(2)).unwrap();
        let want = ev("a1", &[q(1, 2)])
            .compose(1, &FreeTerm::mult(2))
            .unwrap()
            .compose(2, &ev("a2", &[]))
            .unwrap();
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "a1⟨1/2⟩(m2(#1, a2⟨⟩))");
    }

    #[test]
    fn unit_cactus_acts_trivially() {
        let p = DeltaPoint::new(vec![q(0, 1), q(1, 3), q(1, 3), q(1, 1)]).unwrap();
        let got = act(
            &FreeOperad,
            &FmsElement::unit(),
            &symbols(1),
            &EvalPoint::Plain(p.clone()),
            SlotConvention::ExitPoint,
        )
        .unwrap();
        assert_eq!(got, FreeTerm::evaluation("a1", Payload::Delta(p)).unwrap());
    }

    #[test]
    fn empty_cactus_gives_basepoints() {
        let p = DeltaPoint::new(vec![q(1, 3), q(1, 2)]).unwrap();
        let got = act(
            &FreeOperad,
            &FmsElement::point(),
            &symbols(0),
            &EvalPoint::Plain(p),
            SlotConvention::ExitPoint,
        )
        .unwrap();
        assert_eq!(got, FreeTerm::mult(2));
    }

    #[test]
    fn one_lobe_cyclic() {
        let e = FmsElement::new(
            LabeledPartition::trivial(),
            PlMonotoneMap::identity(),
            vec![CirclePoint::new(q(1, 5))],
        )
        .unwrap();
        let p = LambdaPoint::from_lifts(vec![q(1, 2)]).unwrap();
        let t = build_action_tree_cyclic(&e, &p, SlotConvention::ExitPoint).unwrap();
        let got = theta(&FreeOperad, &t, &symbols(1)).unwrap();
        let y = LambdaPoint::from_lifts(vec![q(7, 10)]).unwrap();
        assert_eq!(got, FreeTerm::evaluation("a1", Payload::Lambda(y)).unwrap());
    }

    #[test]
    fn framed_input_rejected_in_plain_mode() {
        let e = FmsElement::new(
            LabeledPartition::trivial(),
            PlMonotoneMap::identity(),
            vec![CirclePoint::new(q(1, 5))],
        )
        .unwrap();
        assert_eq!(
            build_action_tree(&e, &DeltaPoint::empty()),
            Err(ActionError::Framed)
        );
    }

    #[test]
    fn exports() {
        let t = build_action_tree(&ex55(), &DeltaPoint::new(vec![q(1, 4)]).unwrap()).unwrap();
        let v = t.to_json();
        assert_eq!(v["tree"]["kind"], "special");
        assert_eq!(v["tree"]["children"][0]["point"]["delta"][0], "1/2");
        assert!(t.to_dot("g").contains("a1⟨1/2⟩"));
    }
}
