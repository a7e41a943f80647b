//! Elements of MS(n) and fMS(n) and their operad structure, computed inside
//! the coendomorphism operad of the circle.

use serde::{Deserialize, Serialize};

use super::partition::{find_alternation, validate, LabeledPartition, Violation};
use super::CactiError;
use crate::geometry::{CirclePoint, PlCircleMap, PlMonotoneMap, Rat};
use crate::operad::perm::Permutation;

/// `(x, f, z)` with `x ∈ F(n)`, `f ∈ Mon(I, ∂I)` and offsets `z ∈ (S¹)ⁿ`.
/// The arity-zero element is the single point of MS(0).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FmsElement {
    partition: Option<LabeledPartition>,
    reparam: PlMonotoneMap,
    offsets: Vec<CirclePoint>,
}

impl FmsElement {
    /// Validates `x` at alternation order 2.
    pub fn new(
        partition: LabeledPartition,
        reparam: PlMonotoneMap,
        offsets: Vec<CirclePoint>,
    ) -> Result<FmsElement, CactiError> {
        if !partition.is_equal_length() {
            return Err(CactiError::NotEqualLength);
        }
        validate(&partition, 2)?;
        if offsets.len() != partition.n() {
            return Err(CactiError::OffsetCount {
                expected: partition.n(),
                got: offsets.len(),
            });
        }
        Ok(FmsElement {
            partition: Some(partition),
            reparam,
            offsets,
        })
    }

    /// Spineless element (all offsets zero).
    pub fn spineless(
        partition: LabeledPartition,
        reparam: PlMonotoneMap,
    ) -> Result<FmsElement, CactiError> {
        let n = partition.n();
        FmsElement::new(partition, reparam, vec![CirclePoint::basepoint(); n])
    }

    /// The point of MS(0).
    pub fn point() -> FmsElement {
        FmsElement {
            partition: None,
            reparam: PlMonotoneMap::identity(),
            offsets: Vec::new(),
        }
    }

    /// The operad unit ι ∈ MS(1).
    pub fn unit() -> FmsElement {
        FmsElement {
            partition: Some(LabeledPartition::trivial()),
            reparam: PlMonotoneMap::identity(),
            offsets: vec![CirclePoint::basepoint()],
        }
    }

    /// The two-lobe element `(0, ½, 1; 1, 2)` with identity reparametrization.
    pub fn multiplication() -> FmsElement {
        let p = LabeledPartition::new(2, vec![Rat::zero(), Rat::new(1, 2), Rat::one()], vec![1, 2])
            .expect("valid");
        FmsElement::spineless(p, PlMonotoneMap::identity()).expect("valid")
    }

    pub fn arity(&self) -> usize {
        self.offsets.len()
    }

    pub fn partition(&self) -> Option<&LabeledPartition> {
        self.partition.as_ref()
    }

    pub fn reparam(&self) -> &PlMonotoneMap {
        &self.reparam
    }

    pub fn offsets(&self) -> &[CirclePoint] {
        &self.offsets
    }

    pub fn is_spineless(&self) -> bool {
        self.offsets.iter().all(|z| z.coordinate().is_zero())
    }

    /// Same cactus with offsets reset to zero.
    pub fn to_spineless(&self) -> FmsElement {
        FmsElement {
            offsets: vec![CirclePoint::basepoint(); self.arity()],
            ..self.clone()
        }
    }

    /// Coordinates `g_j = z_j + π_j ∘ f` of the associated map `S¹ → (S¹)ⁿ`.
    pub fn to_map(&self) -> Vec<PlCircleMap> {
        let Some(p) = &self.partition else {
            return Vec::new();
        };
        (1..=p.n())
            .map(|j| {
                let pj = p.coordinate_map(j).expect("validated partition");
                PlCircleMap::rotation(self.offsets[j - 1].coordinate())
                    .compose(&pj)
                    .after_interval(&self.reparam)
            })
            .collect()
    }

    /// Recovers the unique element whose associated map is `g`.
    pub fn factorize(g: &[PlCircleMap]) -> Result<FmsElement, CactiError> {
        let n = g.len();
        if n == 0 {
            return Ok(FmsElement::point());
        }
        let mut ss: Vec<Rat> = g
            .iter()
            .flat_map(|c| c.lift_points().iter().map(|(s, _)| s.clone()))
            .collect();
        ss.sort();
        ss.dedup();

        let nr = Rat::from_int(n as i64);
        let mut total = Rat::zero();
        let mut reparam = vec![(Rat::zero(), Rat::zero())];
        // (image start, image end, label) for each varying piece
        let mut arcs: Vec<(Rat, Rat, usize)> = Vec::new();
        let mut prev: Vec<Rat> = g.iter().map(|c| c.eval_lift(&ss[0])).collect();
        for w in ss.windows(2) {
            let cur: Vec<Rat> = g.iter().map(|c| c.eval_lift(&w[1])).collect();
            let mut varying = None;
            let mut inc = Rat::zero();
            for j in 0..n {
                let d = &cur[j] - &prev[j];
                if d.is_positive() {
                    if varying.is_some() {
                        return Err(CactiError::SeveralVarying {
                            from: Box::new(w[0].clone()),
                            to: Box::new(w[1].clone()),
                        });
                    }
                    varying = Some(j + 1);
                    inc = d;
                }
            }
            if let Some(j) = varying {
                let start = &total / &nr;
                total = total + inc;
                let end = &total / &nr;
                match arcs.last_mut() {
                    Some(last) if last.2 == j => last.1 = end,
                    _ => arcs.push((start, end, j)),
                }
            }
            reparam.push((w[1].clone(), &total / &nr));
            prev = cur;
        }

        let mut breaks = vec![Rat::zero()];
        breaks.extend(arcs.iter().map(|a| a.1.clone()));
        let labels: Vec<usize> = arcs.iter().map(|a| a.2).collect();
        if let Some(v) = find_alternation(&labels, n, 2) {
            return Err(CactiError::Invalid(v));
        }
        let partition = LabeledPartition::new(n, breaks, labels)?;
        let reparam = PlMonotoneMap::new(reparam)?;
        let offsets = g
            .iter()
            .map(|c| CirclePoint::new(c.basepoint_shift().clone()))
            .collect();
        FmsElement::new(partition, reparam, offsets)
    }

    /// Operadic composition `self ∘_i other`.
    pub fn compose(&self, i: usize, other: &FmsElement) -> Result<FmsElement, CactiError> {
        let k = self.arity();
        if i == 0 || i > k {
            return Err(CactiError::SlotOutOfRange { slot: i, arity: k });
        }
        let f = self.to_map();
        let g = other.to_map();
        let mut out = Vec::with_capacity(k + g.len() - 1);
        out.extend_from_slice(&f[..i - 1]);
        out.extend(g.iter().map(|gr| gr.compose(&f[i - 1])));
        out.extend_from_slice(&f[i..]);
        FmsElement::factorize(&out)
    }

    /// Right action of Σ_n: coordinate `k` of `eσ` is coordinate `σ(k)` of `e`.
    pub fn act(&self, sigma: &Permutation) -> Result<FmsElement, CactiError> {
        if sigma.len() != self.arity() {
            return Err(CactiError::SizeMismatch {
                left: self.arity(),
                right: sigma.len(),
            });
        }
        let inv = sigma.inverse();
        Ok(FmsElement {
            partition: self
                .partition
                .as_ref()
                .map(|p| p.relabeled(|l| inv.apply(l))),
            reparam: self.reparam.clone(),
            offsets: sigma.act(&self.offsets),
        })
    }
}

/// `e σ`.
pub fn symmetric_action(e: &FmsElement, sigma: &Permutation) -> Result<FmsElement, CactiError> {
    e.act(sigma)
}

/// JSON wire form.
#[derive(Serialize, Deserialize)]
struct FmsWire {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    breaks: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reparam: Option<PlMonotoneMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    offsets: Option<Vec<CirclePoint>>,
}

impl Serialize for FmsElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match &self.partition {
            None => FmsWire {
                n: 0,
                breaks: None,
                labels: None,
                reparam: None,
                offsets: None,
            },
            Some(p) => FmsWire {
                n: p.n(),
                breaks: Some(p.breaks().to_vec()),
                labels: Some(p.labels().to_vec()),
                reparam: Some(self.reparam.clone()),
                offsets: Some(self.offsets.clone()),
            },
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FmsElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<FmsElement, D::Error> {
        use serde::de::Error;
        let w = FmsWire::deserialize(d)?;
        if w.n == 0 {
            return Ok(FmsElement::point());
        }
        let breaks = w.breaks.ok_or_else(|| D::Error::missing_field("breaks"))?;
        let labels = w.labels.ok_or_else(|| D::Error::missing_field("labels"))?;
        let p = LabeledPartition::new(w.n, breaks, labels).map_err(D::Error::custom)?;
        let reparam = w.reparam.unwrap_or_else(PlMonotoneMap::identity);
        let offsets = w
            .offsets
            .unwrap_or_else(|| vec![CirclePoint::basepoint(); w.n]);
        FmsElement::new(p, reparam, offsets).map_err(D::Error::custom)
    }
}

impl From<Violation> for CactiError {
    fn from(v: Violation) -> CactiError {
        CactiError::Invalid(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;

    fn pl(pts: &[(i64, i64, i64, i64)]) -> PlMonotoneMap {
        PlMonotoneMap::new(pts.iter().map(|&(a, b, c, d)| (q(a, b), q(c, d))).collect()).unwrap()
    }

    fn three_lobes() -> LabeledPartition {
        LabeledPartition::new(3, vec![q(0, 1), q(1, 3), q(2, 3), q(1, 1)], vec![1, 2, 3]).unwrap()
    }

    #[test]
    fn multiplication_composites_differ_by_reparam() {
        let m = FmsElement::multiplication();
        let a = m.compose(1, &m).unwrap();
        let b = m.compose(2, &m).unwrap();
        assert_eq!(a.partition(), Some(&three_lobes()));
        assert_eq!(b.partition(), Some(&three_lobes()));
        assert_eq!(
            a.reparam(),
            &pl(&[(0, 1, 0, 1), (1, 4, 1, 3), (1, 2, 2, 3), (1, 1, 1, 1)])
        );
        assert_eq!(
            b.reparam(),
            &pl(&[(0, 1, 0, 1), (1, 2, 1, 3), (3, 4, 2, 3), (1, 1, 1, 1)])
        );
        assert_ne!(a, b);
    }

    #[test]
    fn capping_a_lobe_is_not_the_unit() {
        let m = FmsElement::multiplication();
        let c = m.compose(2, &FmsElement::point()).unwrap();
        assert_eq!(c.partition(), Some(&LabeledPartition::trivial()));
        assert_eq!(
            c.reparam(),
            &pl(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 1)])
        );
        assert_ne!(c, FmsElement::unit());
    }

    #[test]
    fn unit_laws() {
        let m = FmsElement::multiplication();
        assert_eq!(m.compose(1, &FmsElement::unit()).unwrap(), m);
        assert_eq!(m.compose(2, &FmsElement::unit()).unwrap(), m);
        assert_eq!(FmsElement::unit().compose(1, &m).unwrap(), m);
        assert!(matches!(
            m.compose(3, &m),
            Err(CactiError::SlotOutOfRange { slot: 3, arity: 2 })
        ));
    }

    #[test]
    fn factorize_single_fast_coordinate() {
        let g = PlCircleMap::new(vec![
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(1, 1)),
            (q(1, 1), q(1, 1)),
        ])
        .unwrap();
        let e = FmsElement::factorize(&[g]).unwrap();
        assert_eq!(e.partition(), Some(&LabeledPartition::trivial()));
        assert_eq!(
            e.reparam(),
            &pl(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 1)])
        );
        assert_eq!(
            FmsElement::factorize(&[PlCircleMap::identity()]).unwrap(),
            FmsElement::unit()
        );
    }

    #[test]
    fn factorize_rejects_simultaneous_motion() {
        let id = PlCircleMap::identity();
        assert!(matches!(
            FmsElement::factorize(&[id.clone(), id]),
            Err(CactiError::SeveralVarying { .. })
        ));
    }

    #[test]
    fn offsets_shift_coordinates() {
        let m = FmsElement::multiplication();
        let p = m.partition().unwrap().clone();
        let e = FmsElement::new(
            p,
            PlMonotoneMap::identity(),
            vec![CirclePoint::new(q(1, 4)), CirclePoint::basepoint()],
        )
        .unwrap();
        let g0 = m.to_map();
        let g = e.to_map();
        for i in 0..=24 {
            let t = q(i, 24);
            assert_eq!(g[0].eval(&t), g0[0].eval(&t).shifted(&q(1, 4)));
            assert_eq!(g[1].eval(&t), g0[1].eval(&t));
        }
    }

    #[test]
    fn transposition_swaps_labels() {
        let m = FmsElement::multiplication();
        let t = m.act(&Permutation::transposition(2, 1, 2)).unwrap();
        assert_eq!(t.partition().unwrap().labels(), &[2, 1]);
        assert_eq!(m.act(&Permutation::identity(2)).unwrap(), m);
    }

    #[test]
    fn json_round_trip() {
        let m = FmsElement::multiplication()
            .compose(1, &FmsElement::multiplication())
            .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: FmsElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let z: FmsElement = serde_json::from_str(r#"{"n":0}"#).unwrap();
        assert_eq!(z, FmsElement::point());
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"{"n":0}"#);
    }
}
