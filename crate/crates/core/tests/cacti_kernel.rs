use std::collections::BTreeMap;

use cacti::cacti::sample::{random_fms, random_partition, random_partition_with};
use cacti::cacti::{
    associated_tree, lobe_geometry, metric_distance, validate, CactusTree, CactusVertex,
    FmsElement, LabeledPartition,
};
use cacti::geometry::{q, CirclePoint, Rat};
use cacti::operad::perm::Permutation;
use cacti::operad::tree::Tree;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Direct evaluation of coordinate `j` of an element at `t ∈ [0, 1)`, from
/// the measure formula and linear interpolation, as a point of ℝ/ℤ.
fn eval_coord(e: &FmsElement, j: usize, t: &Rat) -> Rat {
    let f = e.reparam().points();
    let mut ft = f[f.len() - 1].1.clone();
    for w in f.windows(2) {
        if &w[0].0 <= t && t <= &w[1].0 {
            ft = &w[0].1 + (&w[1].1 - &w[0].1) * (t - &w[0].0) / (&w[1].0 - &w[0].0);
            break;
        }
    }
    let p = e.partition().unwrap();
    let mut inside = Rat::zero();
    let mut total = Rat::zero();
    for (i, &l) in p.labels().iter().enumerate() {
        if l != j {
            continue;
        }
        let (a, b) = (&p.breaks()[i], &p.breaks()[i + 1]);
        total = total + (b - a);
        if &ft > a {
            inside = inside + (b.clone().min(ft.clone()) - a);
        }
    }
    (inside / total + e.offsets()[j - 1].coordinate()).frac()
}

/// Coend composite evaluated pointwise.
fn eval_composite(e: &FmsElement, i: usize, f: &FmsElement, t: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    for j in 1..=e.arity() {
        let v = eval_coord(e, j, t);
        if j == i {
            for r in 1..=f.arity() {
                out.push(eval_coord(f, r, &v));
            }
        } else {
            out.push(v);
        }
    }
    out
}

fn eval_all(e: &FmsElement, t: &Rat) -> Vec<Rat> {
    (1..=e.arity()).map(|j| eval_coord(e, j, t)).collect()
}

fn samples(rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let mut v: Vec<Rat> = (0..48).map(|i| q(i, 48)).collect();
    v.extend((0..16).map(|_| {
        let d = rng.gen_range(1..200);
        q(rng.gen_range(0..d), d)
    }));
    v
}

#[test]
fn composition_agrees_with_pointwise_coend_composite() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(0..=3);
        let framed = rng.gen_bool(0.5);
        let e = random_fms(k, framed, &mut rng);
        let f = random_fms(l, framed, &mut rng);
        let i = rng.gen_range(1..=k);
        let c = e.compose(i, &f).unwrap();
        assert_eq!(c.arity(), k + l - 1);
        for t in samples(&mut rng) {
            let expect = eval_composite(&e, i, &f, &t);
            if c.arity() > 0 {
                assert_eq!(eval_all(&c, &t), expect, "e={e:?} f={f:?} i={i} t={t}");
            }
        }
        if !framed {
            assert!(c.is_spineless());
        }
    }
}

#[test]
fn multiplication_composites_match_pointwise() {
    let m = FmsElement::multiplication();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 1..=2 {
        let c = m.compose(i, &m).unwrap();
        for t in samples(&mut rng) {
            assert_eq!(eval_all(&c, &t), eval_composite(&m, i, &m, &t));
        }
    }
    let c = m.compose(2, &FmsElement::point()).unwrap();
    for t in samples(&mut rng) {
        assert_eq!(
            eval_all(&c, &t),
            eval_composite(&m, 2, &FmsElement::point(), &t)
        );
    }
}

#[test]
fn round_trip_through_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let e = random_fms(n, true, &mut rng);
        assert_eq!(FmsElement::factorize(&e.to_map()).unwrap(), e);
    }
}

#[test]
fn associativity_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..120 {
        let n = rng.gen_range(1..=3);
        let p = rng.gen_range(0..=2);
        let qq = rng.gen_range(0..=2);
        let a = random_fms(n, true, &mut rng);
        let b = random_fms(p, true, &mut rng);
        let c = random_fms(qq, true, &mut rng);
        // sequential
        let i = rng.gen_range(1..=n);
        if p >= 1 {
            let j = rng.gen_range(1..=p);
            let lhs = a.compose(i, &b.compose(j, &c).unwrap()).unwrap();
            let rhs = a.compose(i, &b).unwrap().compose(i + j - 1, &c).unwrap();
            assert_eq!(lhs, rhs);
        }
        // parallel
        if n >= 2 {
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(i + 1..=n);
            let lhs = a.compose(i, &b).unwrap().compose(j + p - 1, &c).unwrap();
            let rhs = a.compose(j, &c).unwrap().compose(i, &b).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn symmetric_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..150 {
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(0..=3);
        let x = random_fms(k, true, &mut rng);
        let y = random_fms(l, true, &mut rng);
        let s = Permutation::random(k, &mut rng);
        let t = Permutation::random(l, &mut rng);
        let i = rng.gen_range(1..=k);
        let lhs = x.act(&s).unwrap().compose(i, &y.act(&t).unwrap()).unwrap();
        let rhs = x
            .compose(s.apply(i), &y)
            .unwrap()
            .act(&s.block_compose(i, &t).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // right action
        let s2 = Permutation::random(k, &mut rng);
        assert_eq!(
            x.act(&s).unwrap().act(&s2).unwrap(),
            x.act(&s.then(&s2)).unwrap()
        );
    }
}

#[test]
fn outputs_are_valid_equal_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let l = rng.gen_range(1..=3);
        let e = random_fms(k, true, &mut rng);
        let f = random_fms(l, true, &mut rng);
        let c = e.compose(rng.gen_range(1..=k), &f).unwrap();
        let p = c.partition().unwrap();
        assert_eq!(validate(p, 2), Ok(()));
        for j in 1..=p.n() {
            assert_eq!(p.label_length(j), q(1, (k + l - 1) as i64));
        }
    }
}

/// Geometric construction of the associated tree from point classes and
/// lobe coordinates, independent of the label scan.
fn geometric_tree(p: &LabeledPartition) -> CactusTree {
    let g = lobe_geometry(p, None).unwrap();
    let labels = p.labels();
    let big_n = labels.len();
    let before = |a: usize| {
        if a == 0 {
            labels[big_n - 1]
        } else {
            labels[a - 1]
        }
    };
    let inters: Vec<usize> = (0..g.classes.len())
        .filter(|&c| g.classes[c].is_intersection())
        .collect();

    fn lobe_node(
        j: usize,
        parent_class: Option<usize>,
        g: &cacti::cacti::LobeGeometry,
        inters: &[usize],
        build_class: &dyn Fn(usize, usize) -> CactusTree,
    ) -> CactusTree {
        let start = match parent_class {
            Some(c) => g.images[g.classes[c].breakpoints[0]][j - 1].clone(),
            None => g.images[0][j - 1].clone(),
        };
        let mut kids: Vec<(Rat, usize)> = inters
            .iter()
            .filter(|&&c| Some(c) != parent_class && g.classes[c].lobes.contains(&j))
            .map(|&c| {
                let pos = &g.images[g.classes[c].breakpoints[0]][j - 1];
                (start.ccw_distance_to(pos), c)
            })
            .collect();
        kids.sort();
        Tree::node(
            CactusVertex::Lobe { label: j },
            kids.into_iter().map(|(_, c)| build_class(c, j)).collect(),
        )
    }

    // lobes around class c in traversal order: after-labels of its breakpoints
    let cyclic_lobes = |c: usize| -> Vec<(usize, usize)> {
        g.classes[c]
            .breakpoints
            .iter()
            .map(|&a| (before(a), labels[a]))
            .collect()
    };

    fn class_node(
        c: usize,
        parent_lobe: Option<usize>,
        g: &cacti::cacti::LobeGeometry,
        inters: &[usize],
        cyc: &dyn Fn(usize) -> Vec<(usize, usize)>,
    ) -> CactusTree {
        let trans = cyc(c);
        let start = match parent_lobe {
            Some(pl) => trans.iter().position(|t| t.0 == pl).unwrap(),
            None => 0,
        };
        let mut kids = Vec::new();
        for r in 0..trans.len() {
            let (_, after) = trans[(start + r) % trans.len()];
            if Some(after) == parent_lobe {
                break;
            }
            kids.push(after);
        }
        let build = |c2: usize, j: usize| class_node(c2, Some(j), g, inters, cyc);
        Tree::node(
            CactusVertex::Intersection {
                breakpoints: g.classes[c].breakpoints.clone(),
            },
            kids.into_iter()
                .map(|j| lobe_node(j, Some(c), g, inters, &build))
                .collect(),
        )
    }

    let build = |c2: usize, j: usize| class_node(c2, Some(j), &g, &inters, &cyclic_lobes);
    if g.basepoint_is_intersection() {
        class_node(g.basepoint_class, None, &g, &inters, &cyclic_lobes)
    } else {
        lobe_node(labels[0], None, &g, &inters, &build)
    }
}

#[test]
fn scan_tree_matches_geometric_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let p = random_partition(n, &mut rng);
        let t = associated_tree(&p).unwrap();
        assert_eq!(t, geometric_tree(&p), "labels {:?}", p.labels());
        assert_eq!(
            t.vertex_count(),
            n + lobe_geometry(&p, None).unwrap().intersections().count()
        );
    }
}

#[test]
fn tree_constant_on_open_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let p = random_partition(n, &mut rng);
        let p2 = random_partition_with(n, p.labels().to_vec(), &mut rng);
        assert_eq!(associated_tree(&p).unwrap(), associated_tree(&p2).unwrap());
    }
}

#[test]
fn intersection_classes_are_combinatorial() {
    // Breakpoints a < b coincide iff each label's arcs strictly between them
    // are all of that label's arcs or none of them.
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let p = random_partition(n, &mut rng);
        let g = lobe_geometry(&p, None).unwrap();
        let labels = p.labels();
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in labels {
            *count.entry(l).or_default() += 1;
        }
        for a in 0..labels.len() {
            for b in a + 1..labels.len() {
                let mut inner: BTreeMap<usize, usize> = BTreeMap::new();
                for &l in &labels[a..b] {
                    *inner.entry(l).or_default() += 1;
                }
                let same = inner.iter().all(|(l, c)| *c == count[l]);
                assert_eq!(g.class_of(a) == g.class_of(b), same, "{labels:?} {a} {b}");
            }
        }
    }
}

#[test]
fn framed_offsets_do_not_change_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..50 {
        let e = random_fms(rng.gen_range(1..=5), true, &mut rng);
        let p = e.partition().unwrap();
        let g0 = lobe_geometry(p, None).unwrap();
        let g1 = lobe_geometry(p, Some(e.offsets())).unwrap();
        assert_eq!(g0.classes, g1.classes);
    }
}

#[test]
fn metric_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let x = random_partition(n, &mut rng);
        let y = random_partition(n, &mut rng);
        let z = random_partition(n, &mut rng);
        let dxy = metric_distance(&x, &y).unwrap();
        assert_eq!(dxy, metric_distance(&y, &x).unwrap());
        assert_eq!(dxy.is_zero(), x == y);
        assert!(dxy <= metric_distance(&x, &z).unwrap() + metric_distance(&z, &y).unwrap());
    }
}

#[test]
fn framed_json_fixture_shape() {
    let e: FmsElement = serde_json::from_str(
        r#"{"n":2, "breaks":["0","1/2","1"], "labels":[1,2], "reparam":[["0","0"],["1","1"]], "offsets":["1/4","0"]}"#,
    )
    .unwrap();
    assert_eq!(e.offsets()[0], CirclePoint::new(q(1, 4)));
    let v: serde_json::Value = serde_json::to_value(&e).unwrap();
    assert_eq!(v["breaks"][1], "1/2");
    assert_eq!(v["offsets"][0], "1/4");
}
