//! Symbolic checks of the action: cosimpliciality, cyclic and symmetric
//! equivariance, the algebra property and continuity across cell
//! boundaries, plus agreement with evaluation in a concrete operad.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    act, action_tree, symbols, theta, ActionError, ActionTree, ActionVertex, EvalPoint, Family,
    SlotConvention,
};
use crate::cacti::sample::random_fms;
use crate::cacti::FmsElement;
use crate::cosimplicial::build_cocyclic;
use crate::geometry::{DeltaPoint, LambdaPoint, Rat};
use crate::operad::axioms::SuiteReport;
use crate::operad::free::{FreeTerm, Label, Payload};
use crate::operad::tree::Tree;
use crate::operad::{
    AdditiveRationals, FreeOperad, MonoidOperad, OperadError, Permutation, WithMultiplication,
};

type Res = Result<FreeTerm, OperadError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub cyclic: bool,
    pub convention: SlotConvention,
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            cyclic: false,
            convention: SlotConvention::ExitPoint,
            max_degree: 3,
            samples: 50,
            seed: 0,
        }
    }
}

/// Coordinates are multiples of 1/8, so coincidences with breakpoints and
/// with each other are frequent.
pub fn random_point(k: usize, cyclic: bool, rng: &mut ChaCha8Rng) -> EvalPoint {
    let mut v: Vec<Rat> = (0..k).map(|_| Rat::new(rng.gen_range(0..=8), 8)).collect();
    v.sort();
    if cyclic {
        let x0 = Rat::new(rng.gen_range(0..8), 8);
        let mut lifts = vec![x0.clone()];
        lifts.extend(v.iter().map(|x| &x0 + x));
        EvalPoint::Cyclic(LambdaPoint::from_lifts(lifts).expect("within one turn"))
    } else {
        EvalPoint::Plain(DeltaPoint::new(v).expect("sorted"))
    }
}

fn free_act(e: &FmsElement, p: &EvalPoint, conv: SlotConvention) -> Res {
    Ok(act(&FreeOperad, e, &symbols(e.arity()), p, conv)?)
}

fn coface(p: &EvalPoint, i: usize) -> EvalPoint {
    match p {
        EvalPoint::Plain(p) => EvalPoint::Plain(p.coface(i)),
        EvalPoint::Cyclic(p) => EvalPoint::Cyclic(p.coface(i)),
    }
}

fn codegeneracy(p: &EvalPoint, i: usize) -> EvalPoint {
    match p {
        EvalPoint::Plain(p) => EvalPoint::Plain(p.codegeneracy(i)),
        EvalPoint::Cyclic(p) => EvalPoint::Cyclic(p.codegeneracy(i)),
    }
}

/// `d^i a^k(p) = a^{k+1}(d^i p)`, `s^i a^k(p) = a^{k−1}(s^i p)` and, in cyclic
/// mode, `t_k a^k(p) = a^k(τ p)`.
pub fn check_cosimplicial(
    e: &FmsElement,
    p: &EvalPoint,
    conv: SlotConvention,
    report: &mut SuiteReport,
) {
    let c = build_cocyclic(&FreeOperad).expect("the free operad is cocyclic");
    let k = p.degree();
    let base = free_act(e, p, conv);
    let show = || format!("e = {e:?}, p = {p:?}");
    for i in 0..=k + 1 {
        let lhs = base.clone().and_then(|a| c.coface(i, &a));
        report.compare(
            &format!("d^{i} a^{k}(p) = a^{}(d^{i} p)", k + 1),
            &show,
            lhs,
            free_act(e, &coface(p, i), conv),
        );
    }
    for i in 0..k {
        let lhs = base.clone().and_then(|a| c.codegeneracy(i, &a));
        report.compare(
            &format!("s^{i} a^{k}(p) = a^{}(s^{i} p)", k - 1),
            &show,
            lhs,
            free_act(e, &codegeneracy(p, i), conv),
        );
    }
    if let EvalPoint::Cyclic(q) = p {
        let lhs = base.and_then(|a| c.cyclic(&a));
        let rhs = free_act(e, &EvalPoint::Cyclic(q.cyclic()), conv);
        report.compare(&format!("t_{k} a^{k}(p) = a^{k}(τ p)"), &show, lhs, rhs);
    }
}

/// `θ(eσ; b) = θ(e; c)` with `c_j = b_{σ⁻¹(j)}`.
pub fn check_symmetric(
    e: &FmsElement,
    sigma: &Permutation,
    p: &EvalPoint,
    conv: SlotConvention,
    report: &mut SuiteReport,
) {
    let show = || format!("e = {e:?}, σ = {sigma:?}, p = {p:?}");
    let lhs = e
        .act(sigma)
        .map_err(OperadError::from)
        .and_then(|es| free_act(&es, p, conv));
    let inv = sigma.inverse();
    let inputs: Vec<Family<'_, FreeTerm>> = (1..=e.arity())
        .map(|j| super::symbol(&format!("a{}", inv.apply(j))))
        .collect();
    let rhs = act(&FreeOperad, e, &inputs, p, conv).map_err(OperadError::from);
    report.compare("θ(eσ; b) = θ(e; bσ⁻¹)", &show, lhs, rhs);
}

/// `θ(e₁ ∘_i e₂; a) = θ(e₁; a₁, …, θ(e₂; a_i, …), …)`.
pub fn check_algebra(
    e1: &FmsElement,
    i: usize,
    e2: &FmsElement,
    p: &EvalPoint,
    conv: SlotConvention,
    report: &mut SuiteReport,
) {
    let show = || format!("e₁ = {e1:?}, i = {i}, e₂ = {e2:?}, p = {p:?}");
    let (m1, m2) = (e1.arity(), e2.arity());
    let lhs = e1
        .compose(i, e2)
        .map_err(OperadError::from)
        .and_then(|e| free_act(&e, p, conv));
    let inner: Family<'_, FreeTerm> = Box::new(move |payload: &Payload| {
        let names: Vec<Family<'_, FreeTerm>> = (i..i + m2)
            .map(|j| super::symbol(&format!("a{j}")))
            .collect();
        let q = EvalPoint::from_payload(payload)?;
        Ok(act(&FreeOperad, e2, &names, &q, conv)?)
    });
    let mut inputs: Vec<Family<'_, FreeTerm>> = Vec::new();
    for j in 1..i {
        inputs.push(super::symbol(&format!("a{j}")));
    }
    inputs.push(inner);
    for j in i + 1..=m1 {
        inputs.push(super::symbol(&format!("a{}", j + m2 - 1)));
    }
    let rhs = act(&FreeOperad, e1, &inputs, p, conv).map_err(OperadError::from);
    report.compare(
        &format!("θ(e₁ ∘_{i} e₂) = θ(e₁; …, θ(e₂), …)"),
        &show,
        lhs,
        rhs,
    );
}

fn shape_eq(a: &Tree<ActionVertex>, b: &Tree<ActionVertex>) -> bool {
    match (a, b) {
        (Tree::Leaf(i), Tree::Leaf(j)) => i == j,
        (
            Tree::Node {
                label: la,
                children: ca,
            },
            Tree::Node {
                label: lb,
                children: cb,
            },
        ) => {
            let same = match (la, lb) {
                (ActionVertex::Lobe { label: x, .. }, ActionVertex::Lobe { label: y, .. }) => {
                    x == y
                }
                (ActionVertex::Point { .. }, ActionVertex::Point { .. }) => true,
                _ => false,
            };
            same && ca.len() == cb.len() && ca.iter().zip(cb).all(|(x, y)| shape_eq(x, y))
        }
        _ => false,
    }
}

fn payload_coords(p: &Payload) -> Vec<Rat> {
    match p {
        Payload::Delta(y) => y.coords().to_vec(),
        Payload::Lambda(y) => y.lifts().to_vec(),
        Payload::None => Vec::new(),
    }
}

fn limit_payload(p: &Payload, v: Vec<Rat>) -> Result<Payload, ActionError> {
    Ok(match p {
        Payload::Delta(_) => Payload::Delta(DeltaPoint::new(v)?),
        Payload::Lambda(_) => {
            let shift = v[0].floor();
            Payload::Lambda(LambdaPoint::from_lifts(
                v.iter().map(|x| x - &shift).collect(),
            )?)
        }
        Payload::None => Payload::None,
    })
}

/// Linear extrapolation of the three trees to `ε → 0`.
fn extrapolate(
    t1: &Tree<ActionVertex>,
    t2: &Tree<ActionVertex>,
    t3: &Tree<ActionVertex>,
) -> Result<Tree<ActionVertex>, ActionError> {
    match (t1, t2, t3) {
        (Tree::Leaf(i), _, _) => Ok(Tree::Leaf(*i)),
        (
            Tree::Node {
                label: l1,
                children: c1,
            },
            Tree::Node {
                label: l2,
                children: c2,
            },
            Tree::Node {
                label: l3,
                children: c3,
            },
        ) => {
            let label = match (l1, l2, l3) {
                (
                    ActionVertex::Lobe { label, payload: p1 },
                    ActionVertex::Lobe { payload: p2, .. },
                    ActionVertex::Lobe { payload: p3, .. },
                ) => {
                    let (v1, v2, v3) = (payload_coords(p1), payload_coords(p2), payload_coords(p3));
                    let mut lim = Vec::with_capacity(v1.len());
                    for r in 0..v1.len() {
                        let d = &v2[r] - &v1[r];
                        if &v3[r] - &v2[r] != d {
                            return Err(ActionError::Scan(
                                "payload not affine near the boundary".into(),
                            ));
                        }
                        lim.push(&v1[r] - d);
                    }
                    ActionVertex::Lobe {
                        label: *label,
                        payload: limit_payload(p1, lim)?,
                    }
                }
                (other, _, _) => other.clone(),
            };
            let children = c1
                .iter()
                .zip(c2)
                .zip(c3)
                .map(|((a, b), c)| extrapolate(a, b, c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Tree::node(label, children))
        }
        _ => Err(ActionError::Scan("shapes differ".into())),
    }
}

/// The limit of `a(p(ε))` as `ε → 0` along the given side, assuming the
/// tree is combinatorially constant for `0 < |ε| ≤ 3·eps`.
pub fn one_sided_limit(
    e: &FmsElement,
    point_at: &dyn Fn(&Rat) -> Option<EvalPoint>,
    eps: &Rat,
    conv: SlotConvention,
) -> Result<Option<FreeTerm>, ActionError> {
    let mut trees: Vec<ActionTree> = Vec::new();
    for r in 1..=3 {
        let Some(p) = point_at(&(eps * Rat::from_int(r))) else {
            return Ok(None);
        };
        trees.push(action_tree(e, &p, conv)?);
    }
    if !shape_eq(&trees[0].tree, &trees[1].tree) || !shape_eq(&trees[1].tree, &trees[2].tree) {
        return Err(ActionError::Scan(
            "tree changes shape arbitrarily close to the boundary".into(),
        ));
    }
    let limit = ActionTree {
        tree: extrapolate(&trees[0].tree, &trees[1].tree, &trees[2].tree)?,
        ..trees[0].clone()
    };
    Ok(Some(theta(&FreeOperad, &limit, &symbols(e.arity()))?))
}

/// Compares `a(p)` with its one-sided limits along `p + εv`.
pub fn check_continuity(
    e: &FmsElement,
    p: &EvalPoint,
    direction: &[i64],
    conv: SlotConvention,
    report: &mut SuiteReport,
) {
    let show = || format!("e = {e:?}, p = {p:?}, v = {direction:?}");
    let at = free_act(e, p, conv);
    let moved = |eps: &Rat| -> Option<EvalPoint> {
        let step = |r: usize| eps * Rat::from_int(direction[r]);
        match p {
            EvalPoint::Plain(q) => {
                let v: Vec<Rat> = q
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(r, x)| x + step(r))
                    .collect();
                DeltaPoint::new(v).ok().map(EvalPoint::Plain)
            }
            EvalPoint::Cyclic(q) => {
                let v: Vec<Rat> = q
                    .lifts()
                    .iter()
                    .enumerate()
                    .map(|(r, x)| x + step(r))
                    .collect();
                let shift = v[0].floor();
                LambdaPoint::from_lifts(v.iter().map(|x| x - &shift).collect())
                    .ok()
                    .map(EvalPoint::Cyclic)
            }
        }
    };
    let eps = Rat::new(1, 4096);
    for (side, e_side) in [("+", eps.clone()), ("−", -eps.clone())] {
        match one_sided_limit(e, &moved, &e_side, conv) {
            Ok(Some(lim)) => report.compare(
                &format!("a(p) = lim a(p {side} εv)"),
                &show,
                at.clone(),
                Ok(lim),
            ),
            Ok(None) => report.skipped += 1,
            Err(err) => report.fail(
                &format!("a(p) = lim a(p {side} εv)"),
                format!("{}: {err}", show()),
            ),
        }
    }
}

/// A loop `γ(x) = c·{x}(1 − {x})` in (ℚ, +), giving the family
/// `(x₁, …, x_k) ↦ (γ(x₁), …, γ(x_k))`, or `(γ(x_i) − γ(x₀))` in cyclic mode.
pub fn loop_family<'a>(c: Rat) -> Family<'a, Vec<Rat>> {
    Box::new(move |p: &Payload| {
        let g = |x: &Rat| {
            let f = x.frac();
            &c * &f * (Rat::one() - &f)
        };
        match p {
            Payload::Delta(y) => Ok(y.coords().iter().map(g).collect()),
            Payload::Lambda(y) => {
                let g0 = g(y.x0());
                Ok(y.lifts()[1..].iter().map(|x| g(x) - &g0).collect())
            }
            Payload::None => Err(OperadError::Malformed("loop family needs a point".into())),
        }
    })
}

/// Evaluating symbolic `θ` in (ℚ, +) agrees with running `θ` there.
pub fn check_evaluation(
    e: &FmsElement,
    p: &EvalPoint,
    conv: SlotConvention,
    report: &mut SuiteReport,
) {
    let o = MonoidOperad::cyclic(AdditiveRationals).expect("ℚ is a group");
    let constants: Vec<Rat> = (1..=e.arity())
        .map(|j| Rat::new(2 * j as i64 + 1, j as i64 + 1))
        .collect();
    let fams: Vec<Family<'_, Vec<Rat>>> = constants.iter().cloned().map(loop_family).collect();
    let show = || format!("e = {e:?}, p = {p:?}");
    let direct = act(&o, e, &fams, p, conv).map_err(OperadError::from);
    let symbolic = free_act(e, p, conv).and_then(|t| {
        t.evaluate(&o, &mut |label: &Label| match label {
            Label::Gen {
                name, payload, rot, ..
            } => {
                let j: usize = name[1..]
                    .parse()
                    .map_err(|_| OperadError::Malformed(name.clone()))?;
                if *rot != 0 {
                    return Err(OperadError::Malformed("marker on an evaluation".into()));
                }
                fams[j - 1](payload)
            }
            Label::Mult(p) => Ok(o.basepoint(*p)),
        })
    });
    report.compare("ev(θ_free) = θ_ℚ", &show, symbolic, direct);
}

/// Runs every applicable check on seeded random cacti with `1 ≤ m ≤ 3`
/// lobes and points of degree `≤ max_degree`.
pub fn verify_action(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cos = SuiteReport::new(if cfg.cyclic {
        "action cocyclic"
    } else {
        "action cosimplicial"
    });
    let mut sym = SuiteReport::new("action symmetric");
    let mut alg = SuiteReport::new("action algebra");
    let mut cont = SuiteReport::new("action continuity");
    let mut eval = SuiteReport::new("action evaluation");
    for r in [&mut cos, &mut sym, &mut alg, &mut cont, &mut eval] {
        r.exhaustive = false;
    }
    for _ in 0..cfg.samples {
        let m = rng.gen_range(1..=3);
        let e = random_fms(m, cfg.cyclic, &mut rng);
        let k = rng.gen_range(0..=cfg.max_degree);
        let p = random_point(k, cfg.cyclic, &mut rng);
        check_cosimplicial(&e, &p, cfg.convention, &mut cos);
        let sigma = Permutation::random(m, &mut rng);
        check_symmetric(&e, &sigma, &p, cfg.convention, &mut sym);
        let m2 = rng.gen_range(0..=2);
        let e2 = random_fms(m2, cfg.cyclic, &mut rng);
        let i = rng.gen_range(1..=m);
        check_algebra(&e, i, &e2, &p, cfg.convention, &mut alg);
        let dims = if cfg.cyclic { k + 1 } else { k };
        let v: Vec<i64> = (0..dims).map(|_| rng.gen_range(-1..=1)).collect();
        check_continuity(&e, &p, &v, cfg.convention, &mut cont);
        check_evaluation(&e, &p, cfg.convention, &mut eval);
    }
    vec![cos, sym, alg, cont, eval]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cacti::LabeledPartition;
    use crate::geometry::{lambda_join, q, CirclePoint, PlMonotoneMap};

    #[test]
    fn plain_mode_passes() {
        let cfg = VerifyConfig {
            samples: 60,
            seed: 11,
            ..VerifyConfig::default()
        };
        for r in verify_action(&cfg) {
            assert!(r.passed(), "{}: {:#?}", r.summary(), r.failures);
        }
    }

    #[test]
    fn cyclic_mode_passes() {
        let cfg = VerifyConfig {
            cyclic: true,
            samples: 60,
            seed: 12,
            ..VerifyConfig::default()
        };
        for r in verify_action(&cfg) {
            assert!(r.passed(), "{}: {:#?}", r.summary(), r.failures);
        }
    }

    #[test]
    fn wrong_slot_convention_fails() {
        let cfg = VerifyConfig {
            cyclic: true,
            convention: SlotConvention::LobeBasepoint,
            samples: 60,
            seed: 12,
            ..VerifyConfig::default()
        };
        let reports = verify_action(&cfg);
        assert!(!reports[0].passed());
    }

    fn ex55() -> FmsElement {
        let part =
            LabeledPartition::new(2, vec![q(0, 1), q(1, 4), q(3, 4), q(1, 1)], vec![1, 2, 1])
                .unwrap();
        FmsElement::spineless(part, PlMonotoneMap::identity()).unwrap()
    }

    #[test]
    fn limits_across_the_intersection_point() {
        let e = ex55();
        let at = |x: &Rat| {
            DeltaPoint::new(vec![q(1, 4) + x])
                .ok()
                .map(EvalPoint::Plain)
        };
        let p = at(&Rat::zero()).unwrap();
        let here = free_act(&e, &p, SlotConvention::ExitPoint).unwrap();
        let eps = q(1, 1000);
        for side in [eps.clone(), -eps.clone()] {
            let near = action_tree(&e, &at(&side).unwrap(), SlotConvention::ExitPoint).unwrap();
            let exact = action_tree(&e, &p, SlotConvention::ExitPoint).unwrap();
            assert!(!shape_eq(&near.tree, &exact.tree));
            let lim = one_sided_limit(&e, &at, &side, SlotConvention::ExitPoint)
                .unwrap()
                .unwrap();
            assert_eq!(lim, here);
        }
        let mut r = SuiteReport::new("continuity");
        check_continuity(&e, &p, &[1], SlotConvention::ExitPoint, &mut r);
        assert!(r.passed() && r.checked == 2, "{r:?}");
    }

    #[test]
    fn cyclic_mode_restricts_to_plain_mode() {
        let o = MonoidOperad::cyclic(AdditiveRationals).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let m = rng.gen_range(1..=3);
            let e = random_fms(m, false, &mut rng);
            let k = rng.gen_range(0..=3);
            let EvalPoint::Plain(y) = random_point(k, false, &mut rng) else {
                unreachable!()
            };
            let z = EvalPoint::Cyclic(lambda_join(&y, &CirclePoint::basepoint()));
            let fams = |_: ()| -> Vec<Family<'_, Vec<Rat>>> {
                (1..=m).map(|j| loop_family(q(j as i64, 1))).collect()
            };
            let plain = act(
                &o,
                &e,
                &fams(()),
                &EvalPoint::Plain(y.clone()),
                SlotConvention::ExitPoint,
            )
            .unwrap();
            let cyc = act(&o, &e, &fams(()), &z, SlotConvention::ExitPoint).unwrap();
            assert_eq!(plain, cyc, "{e:?} {y:?}");
        }
    }
}
