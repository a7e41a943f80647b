//! Composition along planar trees.

use rand::Rng;

use super::traits::{Operad, OperadError};
use super::tree::Tree;

fn check_planar<V>(t: &Tree<V>) -> Result<(), OperadError> {
    let leaves = t.leaves();
    if leaves.iter().enumerate().any(|(k, &l)| l != k + 1) {
        return Err(OperadError::Malformed(format!(
            "leaves {leaves:?} are not numbered 1..n in planar order"
        )));
    }
    Ok(())
}

fn check_arities<O: Operad>(o: &O, t: &Tree<O::Elem>) -> Result<(), OperadError> {
    if let Tree::Node { label, children } = t {
        if o.arity(label) != children.len() {
            return Err(OperadError::ArityMismatch {
                inputs: children.len(),
                label: o.arity(label),
            });
        }
        children.iter().try_for_each(|c| check_arities(o, c))?;
    }
    Ok(())
}

/// Contracts every internal edge, innermost first and right to left.
pub fn compose_along_tree<O: Operad>(o: &O, t: &Tree<O::Elem>) -> Result<O::Elem, OperadError> {
    check_planar(t)?;
    check_arities(o, t)?;
    contract(o, t)
}

fn contract<O: Operad>(o: &O, t: &Tree<O::Elem>) -> Result<O::Elem, OperadError> {
    match t {
        Tree::Leaf(_) => Ok(o.unit()),
        Tree::Node { label, children } => {
            let mut acc = label.clone();
            for (i, c) in children.iter().enumerate().rev() {
                if c.is_leaf() {
                    continue;
                }
                acc = o.compose(&acc, i + 1, &contract(o, c)?)?;
            }
            Ok(acc)
        }
    }
}

enum Slot {
    Leaf,
    Vertex(usize),
}

struct ArenaVertex<E> {
    elem: E,
    slots: Vec<Slot>,
    parent: Option<usize>,
    alive: bool,
}

fn build_arena<E: Clone>(
    t: &Tree<E>,
    parent: Option<usize>,
    arena: &mut Vec<ArenaVertex<E>>,
) -> Slot {
    match t {
        Tree::Leaf(_) => Slot::Leaf,
        Tree::Node { label, children } => {
            let id = arena.len();
            arena.push(ArenaVertex {
                elem: label.clone(),
                slots: Vec::new(),
                parent,
                alive: true,
            });
            let slots = children
                .iter()
                .map(|c| build_arena(c, Some(id), arena))
                .collect();
            arena[id].slots = slots;
            Slot::Vertex(id)
        }
    }
}

/// Contracts internal edges in a random order. The result must agree with
/// [`compose_along_tree`].
pub fn compose_along_tree_random<O: Operad, R: Rng + ?Sized>(
    o: &O,
    t: &Tree<O::Elem>,
    rng: &mut R,
) -> Result<O::Elem, OperadError> {
    check_planar(t)?;
    check_arities(o, t)?;
    let mut arena = Vec::new();
    let root = match build_arena(t, None, &mut arena) {
        Slot::Leaf => return Ok(o.unit()),
        Slot::Vertex(id) => id,
    };
    loop {
        let edges: Vec<usize> = (0..arena.len())
            .filter(|&v| arena[v].alive && arena[v].parent.is_some())
            .collect();
        if edges.is_empty() {
            break;
        }
        let child = edges[rng.gen_range(0..edges.len())];
        let parent = arena[child].parent.expect("internal edge");
        let pos = arena[parent]
            .slots
            .iter()
            .position(|s| matches!(s, Slot::Vertex(v) if *v == child))
            .expect("child listed in its parent");
        let elem = o.compose(&arena[parent].elem, pos + 1, &arena[child].elem)?;
        let grand = std::mem::take(&mut arena[child].slots);
        for s in &grand {
            if let Slot::Vertex(v) = s {
                arena[*v].parent = Some(parent);
            }
        }
        arena[child].alive = false;
        let p = &mut arena[parent];
        p.elem = elem;
        p.slots.splice(pos..=pos, grand);
    }
    Ok(arena.swap_remove(root).elem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::monoid::{FiniteMonoid, MonoidOperad};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corolla_and_two_vertices() {
        let o = MonoidOperad::new(FiniteMonoid::cyclic_group(3));
        let a = vec![1, 2];
        let b = vec![2, 2, 1];
        assert_eq!(
            compose_along_tree(&o, &Tree::corolla(a.clone(), 2)).unwrap(),
            a
        );
        let t = Tree::corolla(a.clone(), 2).graft(2, Tree::corolla(b.clone(), 3));
        assert_eq!(
            compose_along_tree(&o, &t).unwrap(),
            o.compose(&a, 2, &b).unwrap()
        );
    }

    #[test]
    fn caterpillar_matches_formula() {
        // (x₁,x₂) ∘₁ ((y₁,y₂) ∘₁ (z₁,z₂)): leading entries multiply up
        let o = MonoidOperad::new(FiniteMonoid::cyclic_group(3));
        let t = Tree::corolla(vec![1, 2], 2)
            .graft(1, Tree::corolla(vec![1, 0], 2))
            .graft(1, Tree::corolla(vec![2, 1], 2));
        let expect = vec![(1 + 1 + 2) % 3, (1 + 1 + 1) % 3, 1, 2];
        assert_eq!(compose_along_tree(&o, &t).unwrap(), expect);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            assert_eq!(compose_along_tree_random(&o, &t, &mut rng).unwrap(), expect);
        }
    }

    #[test]
    fn rejects_mismatched_arity() {
        let o = MonoidOperad::new(FiniteMonoid::cyclic_group(3));
        let t = Tree::node(vec![0, 0], vec![Tree::Leaf(1)]);
        assert!(matches!(
            compose_along_tree(&o, &t),
            Err(OperadError::ArityMismatch { .. })
        ));
        let t = Tree::node(vec![0, 0], vec![Tree::Leaf(2), Tree::Leaf(1)]);
        assert!(matches!(
            compose_along_tree(&o, &t),
            Err(OperadError::Malformed(_))
        ));
    }
}
