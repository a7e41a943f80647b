//! Seeded random generation of cacti with small denominators.

use rand::Rng;

use super::fms::FmsElement;
use super::partition::LabeledPartition;
use crate::geometry::{CirclePoint, PlMonotoneMap, Rat};
use crate::operad::perm::Permutation;

/// A random cell label sequence of F(n), built by attaching lobes one at a
/// time either inside an existing arc or at an existing arc boundary.
pub fn random_labels<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    assert!(n >= 1);
    let order = Permutation::random(n, rng);
    let mut seq = vec![order.apply(1)];
    for k in 2..=n {
        let l = order.apply(k);
        if rng.gen_bool(0.5) {
            // split an arc: x -> x, l, x
            let i = rng.gen_range(0..seq.len());
            let x = seq[i];
            seq.splice(i..=i, [x, l, x]);
        } else {
            // insert at one of the len+1 arc boundaries (both ends are the basepoint)
            let i = rng.gen_range(0..=seq.len());
            seq.insert(i, l);
        }
    }
    seq
}

fn small_positive<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    Rat::from_int(rng.gen_range(1..=4))
}

/// Equal-length partition with the given labels and random arc lengths.
pub fn random_partition_with<R: Rng + ?Sized>(
    n: usize,
    labels: Vec<usize>,
    rng: &mut R,
) -> LabeledPartition {
    let weights: Vec<Rat> = labels.iter().map(|_| small_positive(rng)).collect();
    let mut totals = vec![Rat::zero(); n + 1];
    for (w, &l) in weights.iter().zip(&labels) {
        totals[l] = &totals[l] + w;
    }
    let nr = Rat::from_int(n as i64);
    let mut breaks = vec![Rat::zero()];
    let mut acc = Rat::zero();
    for (w, &l) in weights.iter().zip(&labels) {
        acc = acc + w / (&totals[l] * &nr);
        breaks.push(acc.clone());
    }
    LabeledPartition::new(n, breaks, labels).expect("generated partition is well formed")
}

pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledPartition {
    let labels = random_labels(n, rng);
    random_partition_with(n, labels, rng)
}

/// A random rational in `[0, 1)` with denominator at most `den`.
pub fn random_unit_rat<R: Rng + ?Sized>(den: i64, rng: &mut R) -> Rat {
    let d = rng.gen_range(1..=den);
    Rat::new(rng.gen_range(0..d), d)
}

/// Identity half the time, otherwise a few random breakpoints, sometimes
/// with flat pieces.
pub fn random_reparam<R: Rng + ?Sized>(rng: &mut R) -> PlMonotoneMap {
    if rng.gen_bool(0.5) {
        return PlMonotoneMap::identity();
    }
    let k = rng.gen_range(1..=3);
    let mut ss: Vec<Rat> = (0..k)
        .map(|_| random_unit_rat(8, rng))
        .filter(|s| s.is_positive())
        .collect();
    ss.sort();
    ss.dedup();
    let mut vs: Vec<Rat> = ss.iter().map(|_| random_unit_rat(8, rng)).collect();
    vs.sort();
    let mut pts = vec![(Rat::zero(), Rat::zero())];
    pts.extend(ss.into_iter().zip(vs));
    pts.push((Rat::one(), Rat::one()));
    PlMonotoneMap::new(pts).expect("sorted breakpoints")
}

pub fn random_offsets<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<CirclePoint> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.4) {
                CirclePoint::basepoint()
            } else {
                CirclePoint::new(random_unit_rat(6, rng))
            }
        })
        .collect()
}

/// Random element of fMS(n) (or MS(n) when `framed` is false). Arity zero
/// gives the point.
pub fn random_fms<R: Rng + ?Sized>(n: usize, framed: bool, rng: &mut R) -> FmsElement {
    if n == 0 {
        return FmsElement::point();
    }
    let p = random_partition(n, rng);
    let f = random_reparam(rng);
    let z = if framed {
        random_offsets(n, rng)
    } else {
        vec![CirclePoint::basepoint(); n]
    };
    FmsElement::new(p, f, z).expect("generated element is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cacti::partition::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_partitions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6 {
            for _ in 0..50 {
                let p = random_partition(n, &mut rng);
                assert_eq!(validate(&p, 2), Ok(()), "{p:?}");
            }
        }
    }
}
