//! Free (cyclic) operads with multiplication on formal generators.
//!
//! A term is a planar tree whose vertices carry either a basepoint `m_p` or
//! a generator. Generators come in two flavours. Formal ones carry an opaque
//! rotation marker `[q]`. Evaluation generators `a⟨y⟩` stand for the value of
//! a cosimplicial (or cocyclic) family `a` at a point `y` of Δˡ (or Λˡ), so
//! they obey the family's structure:
//!
//! * `a⟨y⟩ ∘_r u = a⟨y without y_r⟩` (codegeneracies);
//! * `a⟨dⁱy⟩` is `dⁱ(a⟨y⟩)`, written with `m` (cofaces);
//! * `[q]·a⟨y⟩ = a⟨τ^q y⟩` for Λ payloads.
//!
//! Normal form: basepoints never touch, no `m₁` remains, payloads are
//! nondegenerate, no `u` sits under an evaluation generator and Λ
//! evaluations carry no marker.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::traits::{check_slot, Cyclic, Operad, OperadError, WithMultiplication};
use crate::geometry::{DeltaPoint, LambdaPoint, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Payload {
    None,
    Delta(DeltaPoint),
    Lambda(LambdaPoint),
}

impl Payload {
    fn degree(&self) -> Option<usize> {
        match self {
            Payload::None => None,
            Payload::Delta(y) => Some(y.degree()),
            Payload::Lambda(y) => Some(y.degree()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Label {
    /// The basepoint `m_p`.
    Mult(usize),
    Gen {
        name: String,
        arity: usize,
        rot: usize,
        payload: Payload,
    },
}

impl Label {
    pub fn arity(&self) -> usize {
        match self {
            Label::Mult(p) => *p,
            Label::Gen { arity, .. } => *arity,
        }
    }

    pub fn is_basepoint(&self) -> bool {
        matches!(self, Label::Mult(_))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FreeTerm {
    /// An input; leaves are numbered implicitly in planar order.
    Leaf,
    Node {
        label: Label,
        children: Vec<FreeTerm>,
    },
}

/// Where a degenerate payload comes from: `y = dⁱ(reduced)`.
struct Degeneracy<P> {
    index: usize,
    reduced: P,
}

fn delta_degeneracies(y: &DeltaPoint) -> Vec<Degeneracy<DeltaPoint>> {
    let c = y.coords();
    let l = c.len();
    let mut out = Vec::new();
    if l == 0 {
        return out;
    }
    if c[0].is_zero() {
        out.push(Degeneracy {
            index: 0,
            reduced: y.without(0),
        });
    }
    for i in 1..l {
        if c[i - 1] == c[i] {
            out.push(Degeneracy {
                index: i,
                reduced: y.without(i),
            });
        }
    }
    if c[l - 1] == Rat::one() {
        out.push(Degeneracy {
            index: l,
            reduced: y.without(l - 1),
        });
    }
    out
}

fn lambda_degeneracies(y: &LambdaPoint) -> Vec<Degeneracy<LambdaPoint>> {
    let x = y.lifts();
    let l = y.degree();
    let mut out = Vec::new();
    for i in 0..l {
        if x[i] == x[i + 1] {
            out.push(Degeneracy {
                index: i,
                reduced: y.without(i + 1),
            });
        }
    }
    if l >= 1 && x[l] == &x[0] + Rat::one() {
        out.push(Degeneracy {
            index: l,
            reduced: y.without(l),
        });
    }
    out
}

fn is_unit_basepoint(t: &FreeTerm) -> bool {
    matches!(
        t,
        FreeTerm::Node {
            label: Label::Mult(0),
            ..
        }
    )
}

fn degenerate_indices(payload: &Payload) -> Vec<usize> {
    match payload {
        Payload::None => Vec::new(),
        Payload::Delta(y) => delta_degeneracies(y).into_iter().map(|d| d.index).collect(),
        Payload::Lambda(y) => lambda_degeneracies(y)
            .into_iter()
            .map(|d| d.index)
            .collect(),
    }
}

/// Rewrites `a⟨dⁱy⟩(c₁, …, c_l)` into an expression in `a⟨y⟩` and `m`.
fn expand_coface(
    name: String,
    payload: Payload,
    which: usize,
    children: Vec<FreeTerm>,
) -> FreeTerm {
    let (index, reduced) = match payload {
        Payload::Delta(y) => {
            let d = delta_degeneracies(&y)
                .into_iter()
                .nth(which)
                .expect("degenerate");
            (d.index, Payload::Delta(d.reduced))
        }
        Payload::Lambda(y) => {
            let d = lambda_degeneracies(&y)
                .into_iter()
                .nth(which)
                .expect("degenerate");
            (d.index, Payload::Lambda(d.reduced))
        }
        Payload::None => unreachable!("formal generators have no degeneracies"),
    };
    let l = children.len();
    let gen = |children: Vec<FreeTerm>| {
        mk(
            Label::Gen {
                name: name.clone(),
                arity: l - 1,
                rot: 0,
                payload: reduced.clone(),
            },
            children,
        )
    };
    let mut cs = children;
    if index == 0 {
        // d⁰z = m ∘₂ z
        let rest = cs.split_off(1);
        let first = cs.pop().expect("l ≥ 1");
        mk(Label::Mult(2), vec![first, gen(rest)])
    } else if index == l {
        // d^{l}z = m ∘₁ z for z of arity l − 1
        let last = cs.pop().expect("l ≥ 1");
        mk(Label::Mult(2), vec![gen(cs), last])
    } else {
        // dⁱz = z ∘_i m
        let tail = cs.split_off(index + 1);
        let b = cs.pop().expect("pair");
        let a = cs.pop().expect("pair");
        cs.push(mk(Label::Mult(2), vec![a, b]));
        cs.extend(tail);
        gen(cs)
    }
}

/// Smart constructor: assumes normalized children of the right number and
/// returns a normalized term.
fn mk(label: Label, children: Vec<FreeTerm>) -> FreeTerm {
    match label {
        Label::Mult(_) => {
            let mut flat = Vec::with_capacity(children.len());
            for c in children {
                match c {
                    FreeTerm::Node {
                        label: Label::Mult(_),
                        children: cc,
                    } => flat.extend(cc),
                    other => flat.push(other),
                }
            }
            if flat.len() == 1 {
                flat.pop().expect("one child")
            } else {
                FreeTerm::Node {
                    label: Label::Mult(flat.len()),
                    children: flat,
                }
            }
        }
        Label::Gen {
            name,
            arity,
            rot,
            payload,
        } => {
            let (rot, payload) = match payload {
                Payload::Lambda(y) if rot % (arity + 1) != 0 => {
                    (0, Payload::Lambda(y.rotated(rot)))
                }
                Payload::None => (rot % (arity + 1), Payload::None),
                p => (0, p),
            };
            if !matches!(payload, Payload::None) {
                if let Some(r) = children.iter().position(is_unit_basepoint) {
                    let mut cs = children;
                    cs.remove(r);
                    let payload = match payload {
                        Payload::Delta(y) => Payload::Delta(y.without(r)),
                        Payload::Lambda(y) => Payload::Lambda(y.without(r + 1)),
                        Payload::None => unreachable!(),
                    };
                    return mk(
                        Label::Gen {
                            name,
                            arity: arity - 1,
                            rot: 0,
                            payload,
                        },
                        cs,
                    );
                }
                if !degenerate_indices(&payload).is_empty() {
                    return expand_coface(name, payload, 0, children);
                }
            }
            FreeTerm::Node {
                label: Label::Gen {
                    name,
                    arity,
                    rot,
                    payload,
                },
                children,
            }
        }
    }
}

impl FreeTerm {
    /// The unit ι.
    pub fn leaf() -> FreeTerm {
        FreeTerm::Leaf
    }

    /// The basepoint `m_p` in normal form (`m₁ = ι`).
    pub fn mult(p: usize) -> FreeTerm {
        mk(Label::Mult(p), vec![FreeTerm::Leaf; p])
    }

    /// Formal generator corolla.
    pub fn generator(name: &str, arity: usize) -> FreeTerm {
        FreeTerm::Node {
            label: Label::Gen {
                name: name.to_string(),
                arity,
                rot: 0,
                payload: Payload::None,
            },
            children: vec![FreeTerm::Leaf; arity],
        }
    }

    /// `a⟨y⟩` as a corolla, normalized.
    pub fn evaluation(name: &str, payload: Payload) -> Result<FreeTerm, OperadError> {
        let arity = payload
            .degree()
            .ok_or_else(|| OperadError::Malformed("evaluation needs a point".into()))?;
        FreeTerm::node(
            Label::Gen {
                name: name.to_string(),
                arity,
                rot: 0,
                payload,
            },
            vec![FreeTerm::Leaf; arity],
        )
    }

    /// Checked and normalizing constructor.
    pub fn node(label: Label, children: Vec<FreeTerm>) -> Result<FreeTerm, OperadError> {
        if label.arity() != children.len() {
            return Err(OperadError::ArityMismatch {
                inputs: children.len(),
                label: label.arity(),
            });
        }
        if let Label::Gen {
            arity,
            rot,
            payload,
            ..
        } = &label
        {
            if let Some(d) = payload.degree() {
                if d != *arity {
                    return Err(OperadError::Malformed(format!(
                        "payload of degree {d} on a generator of arity {arity}"
                    )));
                }
            }
            if matches!(payload, Payload::Delta(_)) && *rot != 0 {
                return Err(OperadError::NoCyclicStructure);
            }
        }
        let children = children.iter().map(FreeTerm::normalize).collect();
        Ok(mk(label, children))
    }

    pub fn arity(&self) -> usize {
        match self {
            FreeTerm::Leaf => 1,
            FreeTerm::Node { children, .. } => children.iter().map(FreeTerm::arity).sum(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            FreeTerm::Leaf => 0,
            FreeTerm::Node { children, .. } => {
                1 + children.iter().map(FreeTerm::vertex_count).sum::<usize>()
            }
        }
    }

    pub fn label(&self) -> Option<&Label> {
        match self {
            FreeTerm::Leaf => None,
            FreeTerm::Node { label, .. } => Some(label),
        }
    }

    pub fn children(&self) -> &[FreeTerm] {
        match self {
            FreeTerm::Leaf => &[],
            FreeTerm::Node { children, .. } => children,
        }
    }

    pub fn normalize(&self) -> FreeTerm {
        match self {
            FreeTerm::Leaf => FreeTerm::Leaf,
            FreeTerm::Node { label, children } => mk(
                label.clone(),
                children.iter().map(FreeTerm::normalize).collect(),
            ),
        }
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }

    /// Replaces leaf `i` without normalizing.
    pub fn graft(&self, i: usize, other: &FreeTerm) -> Result<FreeTerm, OperadError> {
        check_slot(i, self.arity())?;
        let mut counter = 0;
        Ok(self.graft_rec(i, other, &mut counter))
    }

    fn graft_rec(&self, i: usize, other: &FreeTerm, counter: &mut usize) -> FreeTerm {
        match self {
            FreeTerm::Leaf => {
                *counter += 1;
                if *counter == i {
                    other.clone()
                } else {
                    FreeTerm::Leaf
                }
            }
            FreeTerm::Node { label, children } => FreeTerm::Node {
                label: label.clone(),
                children: children
                    .iter()
                    .map(|c| c.graft_rec(i, other, counter))
                    .collect(),
            },
        }
    }

    /// `self ∘_i other`, normalized.
    pub fn compose(&self, i: usize, other: &FreeTerm) -> Result<FreeTerm, OperadError> {
        Ok(self.graft(i, other)?.normalize())
    }

    /// One step of the cyclic action: the first leaf becomes the root and
    /// each vertex on the way is relabelled by `[q]` for the position `q` of
    /// its new output edge.
    pub fn rotate(&self) -> Result<FreeTerm, OperadError> {
        if self.arity() == 0 {
            return Ok(self.clone());
        }
        // path from the root to leaf 1, as (label, children, position)
        let mut path: Vec<(&Label, &[FreeTerm], usize)> = Vec::new();
        let mut cur = self;
        while let FreeTerm::Node { label, children } = cur {
            let q = children
                .iter()
                .position(|c| c.arity() > 0)
                .expect("a subtree with leaves has a child with leaves");
            path.push((label, children, q));
            cur = &children[q];
        }
        let mut acc = FreeTerm::Leaf;
        for (label, children, q) in path {
            let mut cs: Vec<FreeTerm> = children[q + 1..].to_vec();
            cs.push(acc);
            cs.extend_from_slice(&children[..q]);
            acc = FreeTerm::Node {
                label: rotate_label(label, q + 1)?,
                children: cs,
            };
        }
        Ok(acc.normalize())
    }

    pub fn rotate_by(&self, q: usize) -> Result<FreeTerm, OperadError> {
        let mut t = self.clone();
        for _ in 0..q % (self.arity() + 1) {
            t = t.rotate()?;
        }
        Ok(t)
    }

    /// Evaluates in an operad with multiplication, sending `m_p` to its
    /// basepoint and generators through `gen`.
    pub fn evaluate<O, F>(&self, o: &O, gen: &mut F) -> Result<O::Elem, OperadError>
    where
        O: WithMultiplication,
        F: FnMut(&Label) -> Result<O::Elem, OperadError>,
    {
        match self {
            FreeTerm::Leaf => Ok(o.unit()),
            FreeTerm::Node { label, children } => {
                let mut acc = match label {
                    Label::Mult(p) => o.basepoint(*p),
                    g => gen(g)?,
                };
                for (i, c) in children.iter().enumerate().rev() {
                    let v = c.evaluate(o, gen)?;
                    acc = o.compose(&acc, i + 1, &v)?;
                }
                Ok(acc)
            }
        }
    }

    /// All positions (child-index paths) at which a single rewrite applies.
    pub fn redexes(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.redexes_rec(&mut Vec::new(), &mut out);
        out
    }

    fn redexes_rec(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let FreeTerm::Node { label, children } = self else {
            return;
        };
        if !single_rewrites(label, children).is_empty() {
            out.push(path.clone());
        }
        for (i, c) in children.iter().enumerate() {
            path.push(i);
            c.redexes_rec(path, out);
            path.pop();
        }
    }

    /// Applies one randomly chosen rewrite at a random redex. Returns `None`
    /// when the term is irreducible.
    pub fn rewrite_step<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<FreeTerm> {
        let redexes = self.redexes();
        let path = redexes.choose(rng)?;
        Some(self.rewrite_at(path, rng))
    }

    fn rewrite_at<R: Rng + ?Sized>(&self, path: &[usize], rng: &mut R) -> FreeTerm {
        let FreeTerm::Node { label, children } = self else {
            unreachable!("redex paths end at vertices");
        };
        if let Some((&i, rest)) = path.split_first() {
            let mut cs = children.clone();
            cs[i] = children[i].rewrite_at(rest, rng);
            return FreeTerm::Node {
                label: label.clone(),
                children: cs,
            };
        }
        let options = single_rewrites(label, children);
        let pick = options.choose(rng).expect("redex");
        apply_single(label, children, pick)
    }

    /// Normalizes by random single rewrites until none applies.
    pub fn normalize_randomly<R: Rng + ?Sized>(&self, rng: &mut R) -> FreeTerm {
        let mut t = self.clone();
        while let Some(next) = t.rewrite_step(rng) {
            t = next;
        }
        t
    }

    pub fn to_json(&self) -> Value {
        let mut counter = 0;
        self.to_json_rec(&mut counter)
    }

    fn to_json_rec(&self, counter: &mut usize) -> Value {
        match self {
            FreeTerm::Leaf => {
                *counter += 1;
                json!({ "leaf": *counter })
            }
            FreeTerm::Node { label, children } => {
                let cs: Vec<Value> = children.iter().map(|c| c.to_json_rec(counter)).collect();
                match label {
                    Label::Mult(p) => json!({ "op": "m", "arity": p, "children": cs }),
                    Label::Gen {
                        name,
                        arity,
                        rot,
                        payload,
                    } => {
                        let payload = match payload {
                            Payload::None => Value::Null,
                            Payload::Delta(y) => json!({ "delta": y }),
                            Payload::Lambda(y) => json!({ "lambda": y }),
                        };
                        json!({ "op": "gen", "name": name, "arity": arity, "rot": rot, "payload": payload, "children": cs })
                    }
                }
            }
        }
    }

    /// Parses the JSON written by [`FreeTerm::to_json`] and normalizes.
    pub fn from_json(v: &Value) -> Result<FreeTerm, OperadError> {
        let mut counter = 0;
        FreeTerm::from_json_rec(v, &mut counter)
    }

    fn from_json_rec(v: &Value, counter: &mut usize) -> Result<FreeTerm, OperadError> {
        let bad = |m: &str| OperadError::Malformed(m.to_string());
        if let Some(k) = v.get("leaf") {
            *counter += 1;
            if k.as_u64() != Some(*counter as u64) {
                return Err(bad("leaves must be numbered 1, 2, … in planar order"));
            }
            return Ok(FreeTerm::Leaf);
        }
        let arity = v
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing arity"))? as usize;
        let children = match v.get("children") {
            None => Vec::new(),
            Some(Value::Array(cs)) => cs
                .iter()
                .map(|c| FreeTerm::from_json_rec(c, counter))
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(bad("children must be an array")),
        };
        let label = match v.get("op").and_then(Value::as_str) {
            Some("m") => Label::Mult(arity),
            Some("gen") => {
                let name = v
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("generator without a name"))?
                    .to_string();
                let rot = v.get("rot").and_then(Value::as_u64).unwrap_or(0) as usize;
                let payload = match v.get("payload") {
                    None | Some(Value::Null) => Payload::None,
                    Some(p) => {
                        if let Some(d) = p.get("delta") {
                            Payload::Delta(
                                serde_json::from_value(d.clone())
                                    .map_err(|e| bad(&e.to_string()))?,
                            )
                        } else if let Some(l) = p.get("lambda") {
                            Payload::Lambda(
                                serde_json::from_value(l.clone())
                                    .map_err(|e| bad(&e.to_string()))?,
                            )
                        } else {
                            return Err(bad("payload must be {\"delta\":…} or {\"lambda\":…}"));
                        }
                    }
                };
                Label::Gen {
                    name,
                    arity,
                    rot,
                    payload,
                }
            }
            _ => return Err(bad("op must be \"m\" or \"gen\"")),
        };
        FreeTerm::node(label, children)
    }

    /// DOT rendering of the term as a planar tree.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n  rankdir=BT;\n  root [shape=point];\n");
        let mut counter = 0;
        let mut leaves = 0;
        let top = self.dot_rec(&mut s, &mut counter, &mut leaves);
        s.push_str(&format!("  {top} -> root;\n}}\n"));
        s
    }

    fn dot_rec(&self, s: &mut String, counter: &mut usize, leaves: &mut usize) -> String {
        *counter += 1;
        let id = format!("v{counter}");
        match self {
            FreeTerm::Leaf => {
                *leaves += 1;
                s.push_str(&format!("  {id} [shape=plaintext,label=\"{leaves}\"];\n"));
            }
            FreeTerm::Node { label, children } => {
                s.push_str(&format!(
                    "  {id} [label=\"{}\"];\n",
                    label_text(label).replace('"', "'")
                ));
                for c in children {
                    let cid = c.dot_rec(s, counter, leaves);
                    s.push_str(&format!("  {cid} -> {id};\n"));
                }
            }
        }
        id
    }
}

fn rotate_label(label: &Label, q: usize) -> Result<Label, OperadError> {
    Ok(match label {
        Label::Mult(p) => Label::Mult(*p),
        Label::Gen {
            name,
            arity,
            rot,
            payload,
        } => match payload {
            Payload::Delta(_) => return Err(OperadError::NoCyclicStructure),
            Payload::None => Label::Gen {
                name: name.clone(),
                arity: *arity,
                rot: (rot + q) % (arity + 1),
                payload: Payload::None,
            },
            Payload::Lambda(y) => Label::Gen {
                name: name.clone(),
                arity: *arity,
                rot: 0,
                payload: Payload::Lambda(y.rotated(rot + q)),
            },
        },
    })
}

/// Single rewrites available at a vertex.
#[derive(Clone, Debug)]
enum Rewrite {
    /// Merge the basepoint child at this position.
    Merge(usize),
    /// Delete an `m₁`.
    DropUnit,
    /// Absorb the `u` child at this position.
    Absorb(usize),
    /// Expand the given degeneracy of the payload.
    Expand(usize),
    /// Push the marker of a Λ evaluation into its payload.
    Unmark,
}

fn single_rewrites(label: &Label, children: &[FreeTerm]) -> Vec<Rewrite> {
    let mut out = Vec::new();
    match label {
        Label::Mult(p) => {
            for (i, c) in children.iter().enumerate() {
                if matches!(c.label(), Some(Label::Mult(_))) {
                    out.push(Rewrite::Merge(i));
                }
            }
            if *p == 1 {
                out.push(Rewrite::DropUnit);
            }
        }
        Label::Gen {
            arity,
            rot,
            payload,
            ..
        } => {
            if matches!(payload, Payload::None) {
                return out;
            }
            if matches!(payload, Payload::Lambda(_)) && rot % (arity + 1) != 0 {
                out.push(Rewrite::Unmark);
            }
            for (i, c) in children.iter().enumerate() {
                if is_unit_basepoint(c) {
                    out.push(Rewrite::Absorb(i));
                }
            }
            for w in 0..degenerate_indices(payload).len() {
                out.push(Rewrite::Expand(w));
            }
        }
    }
    out
}

/// One unnormalized rewrite step.
fn apply_single(label: &Label, children: &[FreeTerm], rw: &Rewrite) -> FreeTerm {
    let raw = |label: Label, children: Vec<FreeTerm>| FreeTerm::Node { label, children };
    match (rw, label) {
        (Rewrite::Merge(i), Label::Mult(_)) => {
            let mut cs = children[..*i].to_vec();
            cs.extend_from_slice(children[*i].children());
            cs.extend_from_slice(&children[i + 1..]);
            raw(Label::Mult(cs.len()), cs)
        }
        (Rewrite::DropUnit, _) => children[0].clone(),
        (
            Rewrite::Absorb(r),
            Label::Gen {
                name,
                arity,
                payload,
                rot,
            },
        ) => {
            let mut cs = children.to_vec();
            cs.remove(*r);
            let payload = match payload {
                Payload::Delta(y) => Payload::Delta(y.without(*r)),
                Payload::Lambda(y) => Payload::Lambda(y.rotated(*rot).without(r + 1)),
                Payload::None => unreachable!(),
            };
            raw(
                Label::Gen {
                    name: name.clone(),
                    arity: arity - 1,
                    rot: 0,
                    payload,
                },
                cs,
            )
        }
        (
            Rewrite::Expand(w),
            Label::Gen {
                name, payload, rot, ..
            },
        ) => {
            let payload = match payload {
                Payload::Lambda(y) => Payload::Lambda(y.rotated(*rot)),
                p => p.clone(),
            };
            raw_expand(name.clone(), payload, *w, children.to_vec())
        }
        (
            Rewrite::Unmark,
            Label::Gen {
                name,
                arity,
                rot,
                payload: Payload::Lambda(y),
            },
        ) => raw(
            Label::Gen {
                name: name.clone(),
                arity: *arity,
                rot: 0,
                payload: Payload::Lambda(y.rotated(*rot)),
            },
            children.to_vec(),
        ),
        _ => unreachable!("rewrite does not match label"),
    }
}

/// Like [`expand_coface`] but without normalizing the pieces.
fn raw_expand(name: String, payload: Payload, which: usize, children: Vec<FreeTerm>) -> FreeTerm {
    let (index, reduced) = match payload {
        Payload::Delta(y) => {
            let d = delta_degeneracies(&y)
                .into_iter()
                .nth(which)
                .expect("degenerate");
            (d.index, Payload::Delta(d.reduced))
        }
        Payload::Lambda(y) => {
            let d = lambda_degeneracies(&y)
                .into_iter()
                .nth(which)
                .expect("degenerate");
            (d.index, Payload::Lambda(d.reduced))
        }
        Payload::None => unreachable!(),
    };
    let l = children.len();
    let gen = |children: Vec<FreeTerm>| FreeTerm::Node {
        label: Label::Gen {
            name: name.clone(),
            arity: l - 1,
            rot: 0,
            payload: reduced.clone(),
        },
        children,
    };
    let m2 = |a: FreeTerm, b: FreeTerm| FreeTerm::Node {
        label: Label::Mult(2),
        children: vec![a, b],
    };
    let mut cs = children;
    if index == 0 {
        let rest = cs.split_off(1);
        let first = cs.pop().expect("l ≥ 1");
        m2(first, gen(rest))
    } else if index == l {
        let last = cs.pop().expect("l ≥ 1");
        m2(gen(cs), last)
    } else {
        let tail = cs.split_off(index + 1);
        let b = cs.pop().expect("pair");
        let a = cs.pop().expect("pair");
        cs.push(m2(a, b));
        cs.extend(tail);
        gen(cs)
    }
}

fn fmt_rats(v: &[Rat]) -> String {
    v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")
}

fn label_text(label: &Label) -> String {
    match label {
        Label::Mult(0) => "u".to_string(),
        Label::Mult(p) => format!("m{p}"),
        Label::Gen {
            name, rot, payload, ..
        } => {
            let marker = if *rot != 0 {
                format!("[{rot}]·")
            } else {
                String::new()
            };
            let point = match payload {
                Payload::None => String::new(),
                Payload::Delta(y) => format!("⟨{}⟩", fmt_rats(y.coords())),
                Payload::Lambda(y) => format!("⟨{}⟩ᶜ", fmt_rats(y.lifts())),
            };
            format!("{marker}{name}{point}")
        }
    }
}

impl FreeTerm {
    fn fmt_rec(&self, f: &mut fmt::Formatter<'_>, counter: &mut usize) -> fmt::Result {
        match self {
            FreeTerm::Leaf => {
                *counter += 1;
                write!(f, "#{counter}")
            }
            FreeTerm::Node { label, children } => {
                write!(f, "{}", label_text(label))?;
                if !children.is_empty() {
                    write!(f, "(")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        c.fmt_rec(f, counter)?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counter = 0;
        self.fmt_rec(f, &mut counter)
    }
}

/// The free cyclic operad with multiplication, viewed as an operad instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FreeOperad;

impl Operad for FreeOperad {
    type Elem = FreeTerm;

    fn arity(&self, x: &FreeTerm) -> usize {
        x.arity()
    }

    fn unit(&self) -> FreeTerm {
        FreeTerm::Leaf
    }

    fn compose(&self, x: &FreeTerm, i: usize, y: &FreeTerm) -> Result<FreeTerm, OperadError> {
        x.compose(i, y)
    }
}

impl WithMultiplication for FreeOperad {
    fn basepoint(&self, p: usize) -> FreeTerm {
        FreeTerm::mult(p)
    }
}

impl Cyclic for FreeOperad {
    fn rotate(&self, x: &FreeTerm) -> Result<FreeTerm, OperadError> {
        x.rotate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m() -> FreeTerm {
        FreeTerm::mult(2)
    }

    fn u() -> FreeTerm {
        FreeTerm::mult(0)
    }

    fn delta(v: &[(i64, i64)]) -> Payload {
        Payload::Delta(DeltaPoint::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap())
    }

    #[test]
    fn basepoints_merge() {
        assert_eq!(m().compose(1, &m()).unwrap(), FreeTerm::mult(3));
        assert_eq!(m().compose(2, &m()).unwrap(), FreeTerm::mult(3));
        assert_eq!(m().compose(1, &u()).unwrap(), FreeTerm::Leaf);
        assert_eq!(m().compose(2, &u()).unwrap(), FreeTerm::Leaf);
        assert_eq!(FreeTerm::mult(1), FreeTerm::Leaf);
    }

    #[test]
    fn unit_vertex_disappears_under_generator() {
        let g = FreeTerm::generator("g", 2);
        let raw = FreeTerm::Node {
            label: Label::Mult(1),
            children: vec![g.clone()],
        };
        assert_eq!(raw.normalize(), g);
        assert_eq!(g.compose(1, &FreeTerm::Leaf).unwrap(), g);
    }

    #[test]
    fn evaluation_rules() {
        // codegeneracy: a⟨¼,½⟩ ∘₁ u = a⟨½⟩
        let a = FreeTerm::evaluation("a", delta(&[(1, 4), (1, 2)])).unwrap();
        let b = FreeTerm::evaluation("a", delta(&[(1, 2)])).unwrap();
        assert_eq!(a.compose(1, &u()).unwrap(), b);
        // coface: a⟨½,½⟩ = a⟨½⟩ ∘₁ m
        let c = FreeTerm::evaluation("a", delta(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(c, b.compose(1, &m()).unwrap());
        // a⟨0⟩ = m ∘₂ a⟨⟩, a⟨1⟩ = m ∘₁ a⟨⟩
        let a0 = FreeTerm::evaluation("a", delta(&[])).unwrap();
        assert_eq!(
            FreeTerm::evaluation("a", delta(&[(0, 1)])).unwrap(),
            m().compose(2, &a0).unwrap()
        );
        assert_eq!(
            FreeTerm::evaluation("a", delta(&[(1, 1)])).unwrap(),
            m().compose(1, &a0).unwrap()
        );
    }

    #[test]
    fn rotation_of_formal_terms() {
        let f = FreeTerm::generator("f", 2);
        let g = FreeTerm::generator("g", 3);
        // t₁(ι) = ι
        assert_eq!(FreeTerm::Leaf.rotate().unwrap(), FreeTerm::Leaf);
        // corolla: one step gives the marker [1]
        let tf = f.rotate().unwrap();
        assert_eq!(
            tf.label().unwrap(),
            &Label::Gen {
                name: "f".into(),
                arity: 2,
                rot: 1,
                payload: Payload::None
            }
        );
        assert_eq!(f.rotate_by(3).unwrap(), f);
        // t(f ∘₁ g) = t(g) ∘₃ t(f)
        let lhs = f.compose(1, &g).unwrap().rotate().unwrap();
        let rhs = g.rotate().unwrap().compose(3, &tf).unwrap();
        assert_eq!(lhs, rhs);
        // t(f ∘₂ g) = t(f) ∘₁ g
        let lhs = f.compose(2, &g).unwrap().rotate().unwrap();
        assert_eq!(lhs, tf.compose(1, &g).unwrap());
        assert_eq!(m().rotate().unwrap(), m());
    }

    #[test]
    fn rotation_refused_on_delta_payloads() {
        let a = FreeTerm::evaluation("a", delta(&[(1, 3)])).unwrap();
        assert_eq!(a.rotate(), Err(OperadError::NoCyclicStructure));
    }

    #[test]
    fn json_round_trip() {
        let a = FreeTerm::evaluation("a", delta(&[(1, 2)])).unwrap();
        let t = a
            .compose(1, &m())
            .unwrap()
            .compose(2, &FreeTerm::generator("b", 0))
            .unwrap();
        let v = t.to_json();
        assert_eq!(v["op"], "gen");
        assert_eq!(FreeTerm::from_json(&v).unwrap(), t);
        assert!(FreeTerm::from_json(
            &json!({"op":"m","arity":2,"children":[{"leaf":2},{"leaf":1}]})
        )
        .is_err());
        assert_eq!(t.to_string(), "a⟨1/2⟩(m2(#1, b))");
    }

    #[test]
    fn random_rewriting_reaches_the_normal_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let raw = FreeTerm::Node {
            label: Label::Gen {
                name: "a".into(),
                arity: 3,
                rot: 0,
                payload: delta(&[(0, 1), (1, 2), (1, 2)]),
            },
            children: vec![
                FreeTerm::Node {
                    label: Label::Mult(2),
                    children: vec![FreeTerm::Leaf, u()],
                },
                FreeTerm::Node {
                    label: Label::Mult(0),
                    children: vec![],
                },
                FreeTerm::Leaf,
            ],
        };
        let nf = raw.normalize();
        for _ in 0..50 {
            assert_eq!(raw.normalize_randomly(&mut rng), nf);
        }
        assert!(nf.redexes().is_empty());
    }
}
