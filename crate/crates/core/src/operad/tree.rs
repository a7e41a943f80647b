//! Rooted planar trees with numbered leaves.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// A rooted planar tree. Children are listed in counterclockwise order and
/// leaves (open input half-edges) carry their number in planar order.
///
/// The bare tree `Leaf(1)` is the tree with no vertices, i.e. the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tree<V> {
    Leaf(usize),
    Node { label: V, children: Vec<Tree<V>> },
}

impl<V> Tree<V> {
    pub fn node(label: V, children: Vec<Tree<V>>) -> Tree<V> {
        Tree::Node { label, children }
    }

    /// Single vertex with `arity` leaves numbered `1..=arity`.
    pub fn corolla(label: V, arity: usize) -> Tree<V> {
        Tree::Node {
            label,
            children: (1..=arity).map(Tree::Leaf).collect(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    pub fn label(&self) -> Option<&V> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Node { label, .. } => Some(label),
        }
    }

    pub fn children(&self) -> &[Tree<V>] {
        match self {
            Tree::Leaf(_) => &[],
            Tree::Node { children, .. } => children,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node { children, .. } => children.iter().map(Tree::leaf_count).sum(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node { children, .. } => {
                1 + children.iter().map(Tree::vertex_count).sum::<usize>()
            }
        }
    }

    /// Leaf numbers in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(i) => out.push(*i),
            Tree::Node { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Vertex labels in preorder.
    pub fn labels(&self) -> Vec<&V> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels<'a>(&'a self, out: &mut Vec<&'a V>) {
        if let Tree::Node { label, children } = self {
            out.push(label);
            children.iter().for_each(|c| c.collect_labels(out));
        }
    }

    /// Renumbers the leaves `1, 2, …` in planar order.
    pub fn renumbered(mut self) -> Tree<V> {
        let mut next = 1;
        self.renumber_from(&mut next);
        self
    }

    fn renumber_from(&mut self, next: &mut usize) {
        match self {
            Tree::Leaf(i) => {
                *i = *next;
                *next += 1;
            }
            Tree::Node { children, .. } => children.iter_mut().for_each(|c| c.renumber_from(next)),
        }
    }

    pub fn map<W>(self, f: &mut impl FnMut(V) -> W) -> Tree<W> {
        match self {
            Tree::Leaf(i) => Tree::Leaf(i),
            Tree::Node { label, children } => Tree::Node {
                label: f(label),
                children: children.into_iter().map(|c| c.map(f)).collect(),
            },
        }
    }

    pub fn map_ref<W>(&self, f: &mut impl FnMut(&V) -> W) -> Tree<W> {
        match self {
            Tree::Leaf(i) => Tree::Leaf(*i),
            Tree::Node { label, children } => Tree::Node {
                label: f(label),
                children: children.iter().map(|c| c.map_ref(f)).collect(),
            },
        }
    }

    /// Grafts `other` onto the `i`-th leaf (planar order) and renumbers.
    pub fn graft(self, i: usize, other: Tree<V>) -> Tree<V> {
        let mut slot = Some(other);
        let mut seen = 0;
        let t = self.graft_rec(i, &mut seen, &mut slot);
        assert!(slot.is_none(), "leaf {i} not found");
        t.renumbered()
    }

    fn graft_rec(self, i: usize, seen: &mut usize, slot: &mut Option<Tree<V>>) -> Tree<V> {
        match self {
            Tree::Leaf(j) => {
                *seen += 1;
                if *seen == i {
                    slot.take().unwrap()
                } else {
                    Tree::Leaf(j)
                }
            }
            Tree::Node { label, children } => Tree::Node {
                label,
                children: children
                    .into_iter()
                    .map(|c| c.graft_rec(i, seen, slot))
                    .collect(),
            },
        }
    }

    /// Graphviz rendering; the root half-edge enters from an invisible node.
    pub fn to_dot(&self, name: &str, label: &mut impl FnMut(&V) -> String) -> String {
        let mut s = String::new();
        writeln!(s, "digraph {name} {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  root [shape=point, style=invis];").unwrap();
        let mut counter = 0;
        let top = self.dot_rec(&mut s, &mut counter, label);
        writeln!(s, "  {top} -> root;").unwrap();
        s.push_str("}\n");
        s
    }

    fn dot_rec(
        &self,
        s: &mut String,
        counter: &mut usize,
        label: &mut impl FnMut(&V) -> String,
    ) -> String {
        let id = format!("v{counter}");
        *counter += 1;
        match self {
            Tree::Leaf(i) => {
                writeln!(s, "  {id} [shape=plaintext, label=\"{i}\"];").unwrap();
            }
            Tree::Node { label: l, children } => {
                let text = label(l).replace('"', "\\\"");
                writeln!(s, "  {id} [label=\"{text}\"];").unwrap();
                for (k, c) in children.iter().enumerate() {
                    let cid = c.dot_rec(s, counter, label);
                    writeln!(s, "  {cid} -> {id} [taillabel=\"{}\"];", k + 1).unwrap();
                }
            }
        }
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graft_renumbers_in_planar_order() {
        let a = Tree::corolla('a', 3);
        let b = Tree::corolla('b', 2);
        let t = a.graft(2, b);
        assert_eq!(t.leaf_count(), 4);
        assert_eq!(t.leaves(), vec![1, 2, 3, 4]);
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.children()[1].label(), Some(&'b'));
    }

    #[test]
    fn graft_onto_unit() {
        let t = Tree::<char>::Leaf(1).graft(1, Tree::corolla('g', 2));
        assert_eq!(t, Tree::corolla('g', 2));
    }

    #[test]
    fn dot_mentions_every_vertex() {
        let t = Tree::node('a', vec![Tree::Leaf(1), Tree::corolla('b', 0)]);
        let dot = t.to_dot("t", &mut |c| c.to_string());
        assert!(dot.contains("label=\"a\""));
        assert!(dot.contains("label=\"b\""));
        assert!(dot.starts_with("digraph t {"));
    }
}
