//! Report-style checks of the operad, symmetric, multiplication and cyclic
//! identities.

use std::fmt::Debug;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::correspondence::{Correspondence, LxElem};
use super::free::{FreeTerm, Label, Payload};
use super::instances::{Ass, Fms};
use super::monoid::{Monoid, MonoidOperad};
use super::perm::Permutation;
use super::traits::{Cyclic, Operad, OperadError, Symmetric, WithMultiplication};
use crate::cacti::sample::random_fms;
use crate::cacti::FmsElement;
use crate::geometry::{DeltaPoint, LambdaPoint, Rat};

/// Source of test elements for an instance.
pub trait Sampler {
    type Elem;

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// Every element of the given arity, when there are finitely many.
    fn all(&self, _arity: usize) -> Option<Vec<Self::Elem>> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest arity of any composite that gets formed.
    pub max_arity: usize,
    /// Random draws per arity pattern when not enumerating.
    pub samples: usize,
    pub seed: u64,
    /// Enumerate a pattern only if it has at most this many combinations.
    pub exhaustive_limit: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_arity: 4,
            samples: 100,
            seed: 0,
            exhaustive_limit: 50_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub identity: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    /// Instances where neither side is defined.
    pub skipped: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<Counterexample>,
    /// True when every arity pattern was enumerated.
    pub exhaustive: bool,
}

const KEPT_FAILURES: usize = 20;

impl SuiteReport {
    pub fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            checked: 0,
            skipped: 0,
            failed: 0,
            failures: Vec::new(),
            exhaustive: true,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    pub fn fail(&mut self, identity: &str, detail: String) {
        self.checked += 1;
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Counterexample {
                identity: identity.to_string(),
                detail,
            });
        }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    /// Compares the two sides of an identity. Both sides undefined is a skip;
    /// any other error, or definedness on one side only, is a failure.
    pub fn compare<E: PartialEq + Debug>(
        &mut self,
        identity: &str,
        inputs: &dyn Fn() -> String,
        lhs: Result<E, OperadError>,
        rhs: Result<E, OperadError>,
    ) {
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => self.pass(),
            (Ok(a), Ok(b)) => self.fail(identity, format!("{}: {a:?} ≠ {b:?}", inputs())),
            (Err(OperadError::Undefined(_)), Err(OperadError::Undefined(_))) => self.skipped += 1,
            (a, b) => self.fail(identity, format!("{}: {a:?} vs {b:?}", inputs())),
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.failed += other.failed;
        self.exhaustive &= other.exhaustive;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }

    /// One line, as printed by the CLI.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} checked, {} skipped, {} failed{})",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked,
            self.skipped,
            self.failed,
            if self.exhaustive { ", exhaustive" } else { "" }
        )
    }
}

/// Runs `f` on element tuples of the given arities: all of them when the
/// sampler can enumerate within the limit, otherwise `budget.samples` draws.
pub(crate) fn for_each_tuple<S: Sampler>(
    sampler: &S,
    arities: &[usize],
    budget: &Budget,
    rng: &mut ChaCha8Rng,
    report: &mut SuiteReport,
    mut f: impl FnMut(&[&S::Elem], &mut SuiteReport),
) {
    let pools: Option<Vec<Vec<S::Elem>>> = arities.iter().map(|&a| sampler.all(a)).collect();
    if let Some(pools) = pools {
        let total = pools
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.len()));
        if total.is_some_and(|t| t <= budget.exhaustive_limit) {
            let mut idx = vec![0; pools.len()];
            if pools.iter().any(Vec::is_empty) {
                return;
            }
            loop {
                let tuple: Vec<&S::Elem> = idx.iter().zip(&pools).map(|(&i, p)| &p[i]).collect();
                f(&tuple, report);
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        return;
                    }
                    idx[k] += 1;
                    if idx[k] < pools[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
    report.exhaustive = false;
    for _ in 0..budget.samples {
        let owned: Vec<S::Elem> = arities.iter().map(|&a| sampler.sample(a, rng)).collect();
        let tuple: Vec<&S::Elem> = owned.iter().collect();
        f(&tuple, report);
    }
}

/// Unit laws and both associativity laws.
pub fn check_operad<O, S>(o: &O, sampler: &S, budget: &Budget) -> SuiteReport
where
    O: Operad,
    S: Sampler<Elem = O::Elem>,
{
    let mut report = SuiteReport::new("operad");
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let n = budget.max_arity;
    for a in 0..=n {
        for_each_tuple(sampler, &[a], budget, &mut rng, &mut report, |t, r| {
            let x = t[0];
            let show = || format!("x = {x:?}");
            r.compare(
                "ι ∘₁ x = x",
                &show,
                o.compose(&o.unit(), 1, x),
                Ok(x.clone()),
            );
            for i in 1..=a {
                r.compare(
                    &format!("x ∘_{i} ι = x"),
                    &show,
                    o.compose(x, i, &o.unit()),
                    Ok(x.clone()),
                );
            }
        });
    }
    for a in 1..=n {
        for b in 0..=n + 1 - a {
            for c in 0..=n + 2 - a - b {
                if a + b + c < 2 || a + b + c - 2 > n {
                    continue;
                }
                for_each_tuple(
                    sampler,
                    &[a, b, c],
                    budget,
                    &mut rng,
                    &mut report,
                    |t, r| {
                        let (x, y, z) = (t[0], t[1], t[2]);
                        let show = || format!("a = {x:?}, b = {y:?}, c = {z:?}");
                        for i in 1..=a {
                            // sequential
                            for j in 1..=b {
                                let lhs = o
                                    .compose(x, i, y)
                                    .and_then(|xy| o.compose(&xy, i + j - 1, z));
                                let rhs = o.compose(y, j, z).and_then(|yz| o.compose(x, i, &yz));
                                r.compare(
                                    &format!("(a ∘_{i} b) ∘_{} c = a ∘_{i} (b ∘_{j} c)", i + j - 1),
                                    &show,
                                    lhs,
                                    rhs,
                                );
                            }
                            // parallel
                            for k in i + 1..=a {
                                let lhs = o
                                    .compose(x, i, y)
                                    .and_then(|xy| o.compose(&xy, k + b - 1, z));
                                let rhs = o.compose(x, k, z).and_then(|xz| o.compose(&xz, i, y));
                                r.compare(
                                    &format!("(a ∘_{i} b) ∘_{} c = (a ∘_{k} c) ∘_{i} b", k + b - 1),
                                    &show,
                                    lhs,
                                    rhs,
                                );
                            }
                        }
                    },
                );
            }
        }
    }
    report
}

/// All pairs, or a fixed random subset of `cap` pairs once there are more.
fn perm_pairs<'a>(
    pa: &'a [Permutation],
    pb: &'a [Permutation],
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(&'a Permutation, &'a Permutation)> {
    if pa.len() * pb.len() <= cap {
        return pa
            .iter()
            .flat_map(|s| pb.iter().map(move |t| (s, t)))
            .collect();
    }
    (0..cap)
        .map(|_| {
            (
                &pa[rng.gen_range(0..pa.len())],
                &pb[rng.gen_range(0..pb.len())],
            )
        })
        .collect()
}

/// Identity and composition of the action, and equivariance of `∘_i`.
pub fn check_symmetric<O, S>(o: &O, sampler: &S, budget: &Budget) -> SuiteReport
where
    O: Symmetric,
    S: Sampler<Elem = O::Elem>,
{
    let mut report = SuiteReport::new("symmetric");
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x5eed);
    let n = budget.max_arity;
    for a in 0..=n {
        let perms = Permutation::all(a);
        let pairs = perm_pairs(&perms, &perms, 144, &mut rng);
        for_each_tuple(sampler, &[a], budget, &mut rng, &mut report, |t, r| {
            let x = t[0];
            let show = || format!("x = {x:?}");
            r.compare(
                "x·id = x",
                &show,
                o.act(x, &Permutation::identity(a)),
                Ok(x.clone()),
            );
            for &(s, tau) in &pairs {
                {
                    let lhs = o.act(x, s).and_then(|xs| o.act(&xs, tau));
                    let rhs = o.act(x, &s.then(tau));
                    r.compare(&format!("(x·{s:?})·{tau:?} = x·(στ)"), &show, lhs, rhs);
                }
            }
        });
    }
    for a in 1..=n {
        for b in 0..=n + 1 - a {
            let (pa, pb) = (Permutation::all(a), Permutation::all(b));
            let pairs = perm_pairs(&pa, &pb, 24, &mut rng);
            let draws = budget.samples.clamp(1, 10);
            let local = Budget {
                samples: draws,
                ..*budget
            };
            for_each_tuple(sampler, &[a, b], &local, &mut rng, &mut report, |t, r| {
                let (x, y) = (t[0], t[1]);
                let show = || format!("x = {x:?}, y = {y:?}");
                for &(s, tau) in &pairs {
                    {
                        for i in 1..=a {
                            let lhs = o
                                .act(x, s)
                                .and_then(|xs| o.act(y, tau).and_then(|yt| o.compose(&xs, i, &yt)));
                            let rhs =
                                s.block_compose(i, tau)
                                    .map_err(OperadError::from)
                                    .and_then(|st| {
                                        o.compose(x, s.apply(i), y).and_then(|c| o.act(&c, &st))
                                    });
                            r.compare(
                                &format!("(x·{s:?}) ∘_{i} (y·{tau:?}) = (x ∘_σ(i) y)·(σ ∘_i τ)"),
                                &show,
                                lhs,
                                rhs,
                            );
                        }
                    }
                }
            });
        }
    }
    report
}

/// `m ∘₁ m = m ∘₂ m`, `m ∘_i u = ι`, and `m_p` agreeing with iterated `m`.
pub fn check_multiplication<O: WithMultiplication>(o: &O, budget: &Budget) -> SuiteReport {
    let mut report = SuiteReport::new("multiplication");
    let (m, u) = (o.mult(), o.mult_unit());
    let none = || String::new();
    report.compare(
        "m ∘₁ m = m ∘₂ m",
        &none,
        o.compose(&m, 1, &m),
        o.compose(&m, 2, &m),
    );
    report.compare("m ∘₁ u = ι", &none, o.compose(&m, 1, &u), Ok(o.unit()));
    report.compare("m ∘₂ u = ι", &none, o.compose(&m, 2, &u), Ok(o.unit()));
    report.compare("m₁ = ι", &none, Ok(o.basepoint(1)), Ok(o.unit()));
    report.compare("arity m = 2", &none, Ok(o.arity(&m)), Ok(2));
    report.compare("arity u = 0", &none, Ok(o.arity(&u)), Ok(0));
    for p in 2..=budget.max_arity.max(3) {
        for i in 1..p {
            report.compare(
                &format!("m_{p} ∘_{i} m = m_{}", p + 1),
                &none,
                o.compose(&o.basepoint(p), i, &m),
                Ok(o.basepoint(p + 1)),
            );
            report.compare(
                &format!("m_{p} ∘_{i} u = m_{}", p - 1),
                &none,
                o.compose(&o.basepoint(p), i, &u),
                Ok(o.basepoint(p - 1)),
            );
        }
    }
    report
}

/// `t₂(m) = m`, for operads that are both cyclic and multiplicative.
pub fn check_cyclic_multiplication<O: WithMultiplication + Cyclic>(o: &O) -> SuiteReport {
    let mut report = SuiteReport::new("cyclic multiplication");
    let m = o.mult();
    report.compare("t₂(m₂) = m₂", &String::new, o.rotate(&m), Ok(m.clone()));
    report
}

/// Order `n+1`, `t₁(ι) = ι` and the compatibility of `t` with `∘_i`:
///
/// * `t(f ∘₁ g) = t(g) ∘_n t(f)` for `g` of arity `n ≥ 1`,
/// * `t(f ∘₁ g) = t²(f) ∘_m g` for `g` of arity 0 and `f` of arity `m`,
/// * `t(f ∘_i g) = t(f) ∘_{i−1} g` for `i > 1`.
pub fn check_cyclic<O, S>(o: &O, sampler: &S, budget: &Budget) -> SuiteReport
where
    O: Cyclic,
    S: Sampler<Elem = O::Elem>,
{
    let mut report = SuiteReport::new("cyclic");
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0xc1c);
    let n = budget.max_arity;
    report.compare("t₁(ι) = ι", &String::new, o.rotate(&o.unit()), Ok(o.unit()));
    for a in 0..=n {
        for_each_tuple(sampler, &[a], budget, &mut rng, &mut report, |t, r| {
            let x = t[0];
            let mut y = Ok(x.clone());
            for _ in 0..=a {
                y = y.and_then(|y| o.rotate(&y));
            }
            r.compare(
                &format!("t^{} = id", a + 1),
                &|| format!("x = {x:?}"),
                y,
                Ok(x.clone()),
            );
        });
    }
    for a in 1..=n {
        for b in 0..=n + 1 - a {
            for_each_tuple(sampler, &[a, b], budget, &mut rng, &mut report, |t, r| {
                let (f, g) = (t[0], t[1]);
                let show = || format!("f = {f:?}, g = {g:?}");
                let lhs = o.compose(f, 1, g).and_then(|fg| o.rotate(&fg));
                let (identity, rhs) = if b >= 1 {
                    (
                        format!("t(f ∘₁ g) = t(g) ∘_{b} t(f)"),
                        o.rotate(g)
                            .and_then(|tg| o.rotate(f).and_then(|tf| o.compose(&tg, b, &tf))),
                    )
                } else {
                    (
                        format!("t(f ∘₁ g) = t²(f) ∘_{a} g"),
                        o.rotate_by(f, 2).and_then(|tf| o.compose(&tf, a, g)),
                    )
                };
                r.compare(&identity, &show, lhs, rhs);
                for i in 2..=a {
                    let lhs = o.compose(f, i, g).and_then(|fg| o.rotate(&fg));
                    let rhs = o.rotate(f).and_then(|tf| o.compose(&tf, i - 1, g));
                    r.compare(
                        &format!("t(f ∘_{i} g) = t(f) ∘_{} g", i - 1),
                        &show,
                        lhs,
                        rhs,
                    );
                }
            });
        }
    }
    report
}

impl<M: Monoid> Sampler for MonoidOperad<M> {
    type Elem = Vec<M::Item>;

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Self::Elem {
        (0..arity).map(|_| self.monoid().random(rng)).collect()
    }

    fn all(&self, arity: usize) -> Option<Vec<Self::Elem>> {
        let items = self.monoid().elements()?;
        let mut out: Vec<Self::Elem> = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|v| {
                    items.iter().map(move |g| {
                        let mut w = v.clone();
                        w.push(g.clone());
                        w
                    })
                })
                .collect();
        }
        Some(out)
    }
}

impl Sampler for Correspondence {
    type Elem = LxElem;

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> LxElem {
        if rng.gen_bool(0.1) {
            LxElem::Diagonal(arity)
        } else {
            LxElem::Tuple((0..=arity).map(|_| rng.gen_range(0..self.size())).collect())
        }
    }

    fn all(&self, arity: usize) -> Option<Vec<LxElem>> {
        Some(self.elements(arity))
    }
}

impl Sampler for Ass {
    type Elem = usize;

    fn sample(&self, arity: usize, _rng: &mut ChaCha8Rng) -> usize {
        arity
    }

    fn all(&self, arity: usize) -> Option<Vec<usize>> {
        Some(vec![arity])
    }
}

impl Sampler for Fms {
    type Elem = FmsElement;

    /// Framed three times in four, spineless otherwise.
    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> FmsElement {
        let framed = rng.gen_bool(0.75);
        random_fms(arity, framed, rng)
    }
}

/// Random free terms over the generators `f`, `g`, `h`, optionally mixed
/// with evaluation generators `a⟨y⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeSampler {
    /// Put random rotation markers on formal generators and use Λ payloads.
    pub cyclic: bool,
    pub evaluations: bool,
    pub depth: usize,
}

impl FreeSampler {
    pub fn formal(cyclic: bool) -> FreeSampler {
        FreeSampler {
            cyclic,
            evaluations: false,
            depth: 2,
        }
    }

    fn label(&self, arity: usize, rng: &mut ChaCha8Rng) -> Label {
        let roll = rng.gen_range(0..6);
        if roll == 0 {
            return Label::Mult(arity);
        }
        if self.evaluations && roll == 1 {
            let payload = if self.cyclic {
                Payload::Lambda(random_lambda(arity, rng))
            } else {
                Payload::Delta(random_delta(arity, rng))
            };
            return Label::Gen {
                name: "a".into(),
                arity,
                rot: 0,
                payload,
            };
        }
        let name = ["f", "g", "h"][rng.gen_range(0..3)];
        let rot = if self.cyclic {
            rng.gen_range(0..=arity)
        } else {
            0
        };
        Label::Gen {
            name: name.into(),
            arity,
            rot,
            payload: Payload::None,
        }
    }

    fn term(&self, arity: usize, depth: usize, rng: &mut ChaCha8Rng) -> FreeTerm {
        if arity == 1 && rng.gen_bool(0.3) {
            return FreeTerm::Leaf;
        }
        if depth == 0 || rng.gen_bool(0.35) {
            let label = self.label(arity, rng);
            return FreeTerm::node(label, vec![FreeTerm::Leaf; arity]).expect("corolla");
        }
        let k = rng.gen_range(1..=3);
        let mut parts = vec![0; k];
        for _ in 0..arity {
            parts[rng.gen_range(0..k)] += 1;
        }
        let children = parts
            .iter()
            .map(|&p| self.term(p, depth - 1, rng))
            .collect();
        let label = self.label(k, rng);
        FreeTerm::node(label, children).expect("arities match")
    }
}

fn random_delta(k: usize, rng: &mut ChaCha8Rng) -> DeltaPoint {
    let mut v: Vec<Rat> = (0..k).map(|_| Rat::new(rng.gen_range(0..=4), 4)).collect();
    v.sort();
    DeltaPoint::new(v).expect("sorted in [0,1]")
}

fn random_lambda(k: usize, rng: &mut ChaCha8Rng) -> LambdaPoint {
    let x0 = Rat::new(rng.gen_range(0..4), 4);
    let mut rest: Vec<Rat> = (0..k)
        .map(|_| &x0 + Rat::new(rng.gen_range(0..=4), 4))
        .collect();
    rest.sort();
    let mut v = vec![x0];
    v.extend(rest);
    LambdaPoint::from_lifts(v).expect("within one turn")
}

impl Sampler for FreeSampler {
    type Elem = FreeTerm;

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> FreeTerm {
        self.term(arity, self.depth, rng)
    }
}
