//! Piecewise-linear weakly monotone maps of the interval and of the circle,
//! with exact rational breakpoints.
//!
//! Both kinds are stored as a breakpoint list `(s, v)` of a continuous PL
//! function on `[0, 1]`. For interval maps `v` runs from 0 to 1; for circle
//! maps the list is a lift that runs from `v₀ ∈ [0, 1)` to `v₀ + 1`.
//! Breakpoint lists are kept minimal (no three consecutive collinear
//! points), so two maps are equal as functions iff they are equal as values.

use serde::{Deserialize, Serialize};

use super::rational::{CirclePoint, Rat};
use super::GeometryError;

type Points = Vec<(Rat, Rat)>;

/// Drops interior points that lie on the segment joining their neighbours.
fn canonicalize(pts: Points) -> Points {
    let mut out: Points = Vec::with_capacity(pts.len());
    for p in pts {
        if let Some(last) = out.last() {
            if last.0 == p.0 {
                continue;
            }
        }
        while out.len() >= 2 {
            let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
            // collinear iff (b - a) x (p - a) == 0
            let lhs = (&b.1 - &a.1) * (&p.0 - &a.0);
            let rhs = (&p.1 - &a.1) * (&b.0 - &a.0);
            if lhs == rhs {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// Evaluates the PL function through `pts` at `t ∈ [s₀, s_last]`.
fn eval_points(pts: &[(Rat, Rat)], t: &Rat) -> Rat {
    debug_assert!(!pts.is_empty());
    let idx = pts.partition_point(|(s, _)| s <= t);
    if idx == 0 {
        return pts[0].1.clone();
    }
    if idx == pts.len() {
        return pts[pts.len() - 1].1.clone();
    }
    let (s0, v0) = &pts[idx - 1];
    let (s1, v1) = &pts[idx];
    if s0 == t {
        return v0.clone();
    }
    v0 + (v1 - v0) * (t - s0) / (s1 - s0)
}

/// Composite `outer ∘ inner`, where `outer` is given by its evaluation and
/// by the list of its breakpoints falling in an open value range.
fn compose_points(
    inner: &[(Rat, Rat)],
    outer_eval: impl Fn(&Rat) -> Rat,
    outer_breaks_in: impl Fn(&Rat, &Rat) -> Vec<Rat>,
) -> Points {
    let mut ts: Vec<Rat> = Vec::new();
    for w in inner.windows(2) {
        let (s0, v0) = &w[0];
        let (s1, v1) = &w[1];
        ts.push(s0.clone());
        if v1 > v0 {
            for c in outer_breaks_in(v0, v1) {
                ts.push(s0 + (&c - v0) * (s1 - s0) / (v1 - v0));
            }
        }
    }
    ts.push(inner[inner.len() - 1].0.clone());
    let pts = ts
        .into_iter()
        .map(|t| {
            let v = outer_eval(&eval_points(inner, &t));
            (t, v)
        })
        .collect();
    canonicalize(pts)
}

fn check_domain(pts: &[(Rat, Rat)]) -> Result<(), GeometryError> {
    if pts.len() < 2 {
        return Err(GeometryError::TooFewBreakpoints);
    }
    if !pts[0].0.is_zero() || pts[pts.len() - 1].0 != Rat::one() {
        return Err(GeometryError::DomainNotUnitInterval);
    }
    for w in pts.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(GeometryError::BreakpointsNotIncreasing);
        }
        if w[1].1 < w[0].1 {
            return Err(GeometryError::NotMonotone);
        }
    }
    Ok(())
}

/// A weakly increasing PL self-map of `[0, 1]` fixing both endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlMonotoneMap {
    pts: Points,
}

impl PlMonotoneMap {
    pub fn new(pts: Vec<(Rat, Rat)>) -> Result<PlMonotoneMap, GeometryError> {
        check_domain(&pts)?;
        if !pts[0].1.is_zero() || pts[pts.len() - 1].1 != Rat::one() {
            return Err(GeometryError::EndpointsNotFixed);
        }
        Ok(PlMonotoneMap {
            pts: canonicalize(pts),
        })
    }

    pub fn identity() -> PlMonotoneMap {
        PlMonotoneMap {
            pts: vec![(Rat::zero(), Rat::zero()), (Rat::one(), Rat::one())],
        }
    }

    pub fn points(&self) -> &[(Rat, Rat)] {
        &self.pts
    }

    pub fn is_identity(&self) -> bool {
        self.pts.len() == 2
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        eval_points(&self.pts, t)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlMonotoneMap) -> PlMonotoneMap {
        let pts = compose_points(
            &inner.pts,
            |v| self.eval(v),
            |lo, hi| {
                self.pts
                    .iter()
                    .map(|(s, _)| s.clone())
                    .filter(|s| s > lo && s < hi)
                    .collect()
            },
        );
        PlMonotoneMap { pts }
    }

    /// Largest `s` with `self(s) = c`, for `c ∈ [0, 1]`.
    pub fn max_preimage(&self, c: &Rat) -> Rat {
        let idx = self.pts.partition_point(|(_, v)| v <= c);
        if idx == self.pts.len() {
            return Rat::one();
        }
        // pts[idx].1 > c >= pts[idx-1].1
        let (s0, v0) = &self.pts[idx - 1];
        let (s1, v1) = &self.pts[idx];
        s0 + (c - v0) * (s1 - s0) / (v1 - v0)
    }

    /// Smallest `s` with `self(s) = c`, for `c ∈ [0, 1]`.
    pub fn min_preimage(&self, c: &Rat) -> Rat {
        let idx = self.pts.partition_point(|(_, v)| v < c);
        if idx == 0 {
            return Rat::zero();
        }
        let (s0, v0) = &self.pts[idx - 1];
        let (s1, v1) = &self.pts[idx];
        s0 + (c - v0) * (s1 - s0) / (v1 - v0)
    }
}

/// A weakly monotone degree-one self-map of S¹, represented by a PL lift
/// `[0, 1] → ℝ` with `lift(1) = lift(0) + 1` and `lift(0) ∈ [0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlCircleMap {
    lift: Points,
}

impl PlCircleMap {
    /// Accepts any lift with `lift(1) = lift(0) + 1`; the lift is shifted by
    /// an integer so that it starts in `[0, 1)`.
    pub fn new(lift: Vec<(Rat, Rat)>) -> Result<PlCircleMap, GeometryError> {
        check_domain(&lift)?;
        let start = lift[0].1.clone();
        if lift[lift.len() - 1].1 != &start + Rat::one() {
            return Err(GeometryError::DegreeNotOne);
        }
        let shift = start.floor();
        let lift = lift.into_iter().map(|(s, v)| (s, v - &shift)).collect();
        Ok(PlCircleMap {
            lift: canonicalize(lift),
        })
    }

    pub fn identity() -> PlCircleMap {
        PlCircleMap::from_interval(&PlMonotoneMap::identity())
    }

    /// Rigid rotation `t ↦ t + r`.
    pub fn rotation(r: &Rat) -> PlCircleMap {
        let z = r.frac();
        PlCircleMap {
            lift: vec![(Rat::zero(), z.clone()), (Rat::one(), z + Rat::one())],
        }
    }

    /// The based circle map induced by an element of Mon(I, ∂I).
    pub fn from_interval(f: &PlMonotoneMap) -> PlCircleMap {
        PlCircleMap {
            lift: f.pts.clone(),
        }
    }

    pub fn lift_points(&self) -> &[(Rat, Rat)] {
        &self.lift
    }

    /// `lift(0) mod 1`, the image of the basepoint.
    pub fn basepoint_shift(&self) -> &Rat {
        &self.lift[0].1
    }

    pub fn is_based(&self) -> bool {
        self.lift[0].1.is_zero()
    }

    /// Lift evaluated on `[0, 1]`.
    pub fn eval_lift(&self, t: &Rat) -> Rat {
        eval_points(&self.lift, t)
    }

    /// Image of the circle point with coordinate `t` (any rational).
    pub fn eval(&self, t: &Rat) -> CirclePoint {
        CirclePoint::new(self.eval_lift(&t.frac()))
    }

    /// Degree-one periodic extension of the lift to all of ℝ.
    pub fn eval_extended(&self, x: &Rat) -> Rat {
        let k = x.floor();
        self.eval_lift(&(x - &k)) + k
    }

    /// Breakpoints of the periodic extension lying in the open range `(lo, hi)`.
    fn extended_breaks_in(&self, lo: &Rat, hi: &Rat) -> Vec<Rat> {
        let mut out = Vec::new();
        let mut k = lo.floor();
        while &k < hi {
            for (s, _) in &self.lift {
                let c = s + &k;
                if &c > lo && &c < hi && out.last() != Some(&c) {
                    out.push(c);
                }
            }
            k = k + Rat::one();
        }
        out
    }

    /// `self ∘ inner` on the circle.
    pub fn compose(&self, inner: &PlCircleMap) -> PlCircleMap {
        let pts = compose_points(
            &inner.lift,
            |v| self.eval_extended(v),
            |lo, hi| self.extended_breaks_in(lo, hi),
        );
        PlCircleMap::new(pts).expect("composite of degree-one lifts has degree one")
    }

    /// `self ∘ inner` where `inner` is a based interval reparametrization.
    pub fn after_interval(&self, inner: &PlMonotoneMap) -> PlCircleMap {
        self.compose(&PlCircleMap::from_interval(inner))
    }

    /// Total variation of the lift on `[0, t]`.
    pub fn variation_up_to(&self, t: &Rat) -> Rat {
        self.eval_lift(t) - &self.lift[0].1
    }
}

/// Either kind of PL map, for the kind-checked composition entry point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PlMap {
    Interval(PlMonotoneMap),
    Circle(PlCircleMap),
}

/// Composite `f ∘ g`. Allowed kinds: interval∘interval, circle∘circle and
/// circle∘interval.
pub fn compose_pl(f: &PlMap, g: &PlMap) -> Result<PlMap, GeometryError> {
    match (f, g) {
        (PlMap::Interval(f), PlMap::Interval(g)) => Ok(PlMap::Interval(f.compose(g))),
        (PlMap::Circle(f), PlMap::Circle(g)) => Ok(PlMap::Circle(f.compose(g))),
        (PlMap::Circle(f), PlMap::Interval(g)) => Ok(PlMap::Circle(f.after_interval(g))),
        (PlMap::Interval(_), PlMap::Circle(_)) => Err(GeometryError::KindMismatch),
    }
}

/// Wire form: list of `[s, v]` rational string pairs.
impl Serialize for PlMonotoneMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.pts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlMonotoneMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<PlMonotoneMap, D::Error> {
        let pts = Vec::<(Rat, Rat)>::deserialize(d)?;
        PlMonotoneMap::new(pts).map_err(serde::de::Error::custom)
    }
}

impl Serialize for PlCircleMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.lift.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlCircleMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<PlCircleMap, D::Error> {
        let pts = Vec::<(Rat, Rat)>::deserialize(d)?;
        PlCircleMap::new(pts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::q;

    fn map(pts: &[(i64, i64, i64, i64)]) -> PlMonotoneMap {
        PlMonotoneMap::new(pts.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).collect()).unwrap()
    }

    fn grid(den: i64) -> Vec<Rat> {
        (0..=den).map(|i| q(i, den)).collect()
    }

    #[test]
    fn canonical_form_drops_collinear_points() {
        let f = map(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 1, 1)]);
        assert!(f.is_identity());
    }

    #[test]
    fn identity_is_neutral() {
        let g = map(&[(0, 1, 0, 1), (1, 3, 1, 2), (2, 3, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(PlMonotoneMap::identity().compose(&g), g);
        assert_eq!(g.compose(&PlMonotoneMap::identity()), g);
    }

    #[test]
    fn doubling_composed_with_itself() {
        let f = map(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 1)]);
        let ff = f.compose(&f);
        assert_eq!(
            ff.points(),
            map(&[(0, 1, 0, 1), (1, 4, 1, 1), (1, 1, 1, 1)]).points()
        );
        for t in grid(48) {
            assert_eq!(ff.eval(&t), f.eval(&f.eval(&t)));
        }
    }

    #[test]
    fn circle_composite_keeps_degree_one() {
        // doubling-speed lift then constant, after a quarter rotation
        let fast = PlCircleMap::new(vec![
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(1, 1)),
            (q(1, 1), q(1, 1)),
        ])
        .unwrap();
        let rot = PlCircleMap::rotation(&q(1, 4));
        let c = fast.compose(&rot);
        let pts = c.lift_points();
        assert_eq!(&pts[pts.len() - 1].1 - &pts[0].1, Rat::one());
        for t in grid(40) {
            assert_eq!(c.eval(&t), fast.eval(rot.eval(&t).coordinate()));
        }
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let f = PlMap::Interval(PlMonotoneMap::identity());
        let g = PlMap::Circle(PlCircleMap::identity());
        assert_eq!(compose_pl(&f, &g), Err(GeometryError::KindMismatch));
        assert!(compose_pl(&g, &f).is_ok());
    }

    #[test]
    fn preimage_bounds_of_flat_piece() {
        let f = map(&[(0, 1, 0, 1), (1, 4, 1, 2), (3, 4, 1, 2), (1, 1, 1, 1)]);
        assert_eq!(f.min_preimage(&q(1, 2)), q(1, 4));
        assert_eq!(f.max_preimage(&q(1, 2)), q(3, 4));
        assert_eq!(f.max_preimage(&q(0, 1)), q(0, 1));
        assert_eq!(f.max_preimage(&q(1, 1)), q(1, 1));
        assert_eq!(f.max_preimage(&q(1, 4)), q(1, 8));
    }

    #[test]
    fn invalid_maps_are_rejected() {
        assert_eq!(
            PlMonotoneMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 2))]),
            Err(GeometryError::EndpointsNotFixed)
        );
        assert_eq!(
            PlMonotoneMap::new(vec![
                (q(0, 1), q(0, 1)),
                (q(1, 2), q(3, 4)),
                (q(1, 2), q(3, 4)),
                (q(1, 1), q(1, 1))
            ]),
            Err(GeometryError::BreakpointsNotIncreasing)
        );
        assert_eq!(
            PlCircleMap::new(vec![(q(0, 1), q(0, 1)), (q(1, 1), q(2, 1))]),
            Err(GeometryError::DegreeNotOne)
        );
    }
}
