//! Points of the standard simplices Δᵏ and of the cyclic simplices Λᵏ.

use serde::{Deserialize, Serialize};

use super::pl::PlMonotoneMap;
use super::rational::{CirclePoint, Rat};
use super::GeometryError;

/// A point `0 ≤ x₁ ≤ … ≤ x_k ≤ 1` of Δᵏ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct DeltaPoint(Vec<Rat>);

impl DeltaPoint {
    pub fn new(coords: Vec<Rat>) -> Result<DeltaPoint, GeometryError> {
        if coords.iter().any(|x| !x.in_unit_interval()) {
            return Err(GeometryError::OutOfUnitInterval);
        }
        if coords.windows(2).any(|w| w[1] < w[0]) {
            return Err(GeometryError::NotMonotone);
        }
        Ok(DeltaPoint(coords))
    }

    pub fn empty() -> DeltaPoint {
        DeltaPoint(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.0
    }

    /// Coface δⁱ : Δᵏ → Δᵏ⁺¹ for `0 ≤ i ≤ k + 1`: δ⁰ prepends 0,
    /// δ^{k+1} appends 1, otherwise `x_i` is repeated.
    pub fn coface(&self, i: usize) -> DeltaPoint {
        let k = self.degree();
        assert!(i <= k + 1, "coface index {i} out of range for degree {k}");
        let mut v = self.0.clone();
        if i == 0 {
            v.insert(0, Rat::zero());
        } else if i == k + 1 {
            v.push(Rat::one());
        } else {
            v.insert(i, self.0[i - 1].clone());
        }
        DeltaPoint(v)
    }

    /// Codegeneracy σⁱ : Δᵏ → Δᵏ⁻¹ for `0 ≤ i ≤ k − 1`, forgetting `x_{i+1}`.
    pub fn codegeneracy(&self, i: usize) -> DeltaPoint {
        assert!(i < self.degree(), "codegeneracy index {i} out of range");
        self.without(i)
    }

    /// Drops the coordinate at zero-based position `idx`.
    pub fn without(&self, idx: usize) -> DeltaPoint {
        let mut v = self.0.clone();
        v.remove(idx);
        DeltaPoint(v)
    }

    /// True when some coordinate is 0 or 1, or two coordinates coincide.
    pub fn is_degenerate(&self) -> bool {
        self.0.iter().any(|x| x.is_zero() || *x == Rat::one())
            || self.0.windows(2).any(|w| w[0] == w[1])
    }
}

impl<'de> Deserialize<'de> for DeltaPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<DeltaPoint, D::Error> {
        DeltaPoint::new(Vec::<Rat>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Coordinatewise image `(f(x₁), …, f(x_k))`.
pub fn apply_reparam(f: &PlMonotoneMap, p: &DeltaPoint) -> DeltaPoint {
    DeltaPoint(p.0.iter().map(|x| f.eval(x)).collect())
}

/// A point `(x₀, …, x_k)` of Λᵏ: a weakly counterclockwise-ordered tuple of
/// circle points.
///
/// Stored as lifts `x₀ ≤ x₁ ≤ … ≤ x_k ≤ x₀ + 1` with `x₀ ∈ [0, 1)`. The lift
/// distinguishes a coordinate equal to `x₀` from one that has gone all the
/// way round, which the bare circle tuple cannot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct LambdaPoint(Vec<Rat>);

impl LambdaPoint {
    pub fn from_lifts(lifts: Vec<Rat>) -> Result<LambdaPoint, GeometryError> {
        let Some(x0) = lifts.first() else {
            return Err(GeometryError::EmptyLambdaPoint);
        };
        if x0.is_negative() || *x0 >= Rat::one() {
            return Err(GeometryError::OutOfUnitInterval);
        }
        if lifts.windows(2).any(|w| w[1] < w[0]) {
            return Err(GeometryError::CyclicOrderViolation);
        }
        if lifts[lifts.len() - 1] > x0 + Rat::one() {
            return Err(GeometryError::CyclicOrderViolation);
        }
        Ok(LambdaPoint(lifts))
    }

    /// Reads circle points counterclockwise from `x₀`, choosing for each step
    /// the shortest forward arc. Fails if the steps wind more than once.
    pub fn from_circle(points: &[CirclePoint]) -> Result<LambdaPoint, GeometryError> {
        let Some(first) = points.first() else {
            return Err(GeometryError::EmptyLambdaPoint);
        };
        let mut lifts = vec![first.coordinate().clone()];
        for w in points.windows(2) {
            let step = w[0].ccw_distance_to(&w[1]);
            let next = &lifts[lifts.len() - 1] + step;
            lifts.push(next);
        }
        LambdaPoint::from_lifts(lifts)
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn lifts(&self) -> &[Rat] {
        &self.0
    }

    pub fn circle_points(&self) -> Vec<CirclePoint> {
        self.0.iter().map(|x| CirclePoint::new(x.clone())).collect()
    }

    pub fn x0(&self) -> &Rat {
        &self.0[0]
    }

    fn renormalized(mut v: Vec<Rat>) -> LambdaPoint {
        let shift = v[0].floor();
        if !shift.is_zero() {
            for x in &mut v {
                *x = &*x - &shift;
            }
        }
        LambdaPoint(v)
    }

    /// Cyclic operator τ: `(x₀, …, x_k) ↦ (x₁, …, x_k, x₀)`.
    pub fn cyclic(&self) -> LambdaPoint {
        let mut v: Vec<Rat> = self.0[1..].to_vec();
        v.push(&self.0[0] + Rat::one());
        LambdaPoint::renormalized(v)
    }

    /// τ applied `r` times.
    pub fn rotated(&self, r: usize) -> LambdaPoint {
        let r = r % (self.degree() + 1);
        let mut v: Vec<Rat> = self.0[r..].to_vec();
        v.extend(self.0[..r].iter().map(|x| x + Rat::one()));
        LambdaPoint::renormalized(v)
    }

    /// Coface for `0 ≤ i ≤ k + 1`: repeats `x_i`, or for `i = k + 1` appends
    /// a copy of `x₀` one full turn later.
    pub fn coface(&self, i: usize) -> LambdaPoint {
        let k = self.degree();
        assert!(i <= k + 1, "coface index {i} out of range for degree {k}");
        let mut v = self.0.clone();
        if i == k + 1 {
            v.push(&self.0[0] + Rat::one());
        } else {
            v.insert(i, self.0[i].clone());
        }
        LambdaPoint(v)
    }

    /// Codegeneracy for `0 ≤ i ≤ k − 1`, forgetting `x_{i+1}`.
    pub fn codegeneracy(&self, i: usize) -> LambdaPoint {
        assert!(i < self.degree(), "codegeneracy index {i} out of range");
        self.without(i + 1)
    }

    /// Drops the coordinate at position `idx ≥ 1`.
    pub fn without(&self, idx: usize) -> LambdaPoint {
        assert!(idx >= 1, "x0 cannot be dropped");
        let mut v = self.0.clone();
        v.remove(idx);
        LambdaPoint(v)
    }
}

impl<'de> Deserialize<'de> for LambdaPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<LambdaPoint, D::Error> {
        LambdaPoint::from_lifts(Vec::<Rat>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Λᵏ → Δᵏ × S¹, `(x₀, …, x_k) ↦ ((x₁ − x₀, …, x_k − x₀), x₀)`.
pub fn lambda_split(p: &LambdaPoint) -> (DeltaPoint, CirclePoint) {
    let x0 = p.x0();
    let delta = p.0[1..].iter().map(|x| x - x0).collect();
    (DeltaPoint(delta), CirclePoint::new(x0.clone()))
}

/// Δᵏ × S¹ → Λᵏ, `((x₁, …, x_k), z) ↦ (z, z + x₁, …, z + x_k)`.
pub fn lambda_join(delta: &DeltaPoint, z: &CirclePoint) -> LambdaPoint {
    let z = z.coordinate();
    let mut v = vec![z.clone()];
    v.extend(delta.0.iter().map(|x| z + x));
    LambdaPoint(v)
}
