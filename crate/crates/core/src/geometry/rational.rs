//! Exact rational scalars and points of the circle ℝ/ℤ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator. Values that fit in machine words stay there.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `denom > 0`.
    Small(i64, i64),
    /// Only for values that do not fit `Small`.
    Big(BigRational),
}

fn reduce128(n: i128, d: i128) -> Rat {
    debug_assert!(d != 0);
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) => Rat(Repr::Small(a, b)),
        _ => Rat(Repr::Big(BigRational::new_raw(
            BigInt::from(n),
            BigInt::from(d),
        ))),
    }
}

fn from_big_ratio(r: BigRational) -> Rat {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(a), Some(b)) => Rat(Repr::Small(a, b)),
        _ => Rat(Repr::Big(r)),
    }
}

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        reduce128(numer as i128, denom as i128)
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Rat, GeometryError> {
        if denom.is_zero() {
            return Err(GeometryError::ZeroDenominator);
        }
        Ok(from_big_ratio(BigRational::new(numer, denom)))
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn zero() -> Rat {
        Rat::from_int(0)
    }

    pub fn one() -> Rat {
        Rat::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(r) => r.is_positive(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn floor(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat::from_int(n.div_floor(d)),
            Repr::Big(r) => from_big_ratio(r.floor()),
        }
    }

    /// Floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        self.floor().numer()
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn frac(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(n.mod_floor(d), *d)),
            Repr::Big(r) => from_big_ratio(r - r.floor()),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && *self <= Rat::one()
    }

    /// Lossy conversion used only for rendering.
    pub fn to_f64(&self) -> f64 {
        if let Repr::Small(n, d) = self.0 {
            return n as f64 / d as f64;
        }
        let (n, d) = (self.numer(), self.denom());
        // keep precision for huge operands by shifting both down together
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let n = n >> shift as usize;
        let d = d >> shift as usize;
        let nf: f64 = n.to_string().parse().unwrap_or(0.0);
        let df: f64 = d.to_string().parse().unwrap_or(1.0);
        nf / df
    }

    /// Lowest common multiple of the denominators; handy for building grids.
    pub fn lcm_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
        values
            .into_iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()))
    }
}

impl Default for Rat {
    fn default() -> Rat {
        Rat::zero()
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Rat, GeometryError> {
        let bad = || GeometryError::BadRational(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rat::from_big(n, d)
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(from_big_ratio(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn small_op(op: char, (a, b): (i64, i64), (c, d): (i64, i64)) -> Option<Rat> {
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    Some(match op {
        '+' => reduce128(a * d + c * b, b * d),
        '-' => reduce128(a * d - c * b, b * d),
        '*' => reduce128(a * c, b * d),
        _ => {
            if c == 0 {
                return None;
            }
            reduce128(a * d, b * c)
        }
    })
}

fn binop(op: char, x: &Rat, y: &Rat) -> Rat {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if let Some(r) = small_op(op, (*a, *b), (*c, *d)) {
            return r;
        }
    }
    let (x, y) = (x.big(), y.big());
    from_big_ratio(match op {
        '+' => x + y,
        '-' => x - y,
        '*' => x * y,
        _ => x / y,
    })
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                binop($op, self, rhs)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                binop($op, &self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                binop($op, &self, rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                binop($op, self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, '+');
forward_binop!(Sub, sub, '-');
forward_binop!(Mul, mul, '*');
forward_binop!(Div, div, '/');

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat(Repr::Small(m, *d)),
                None => from_big_ratio(-self.big()),
            },
            Repr::Big(r) => from_big_ratio(-r),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

/// Shorthand used throughout the tests and fixtures.
pub fn q(numer: i64, denom: i64) -> Rat {
    Rat::new(numer, denom)
}

/// A point of S¹ = ℝ/ℤ, stored by its representative in `[0, 1)`.
///
/// Coordinate 0 is the basepoint of the circle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CirclePoint(Rat);

impl CirclePoint {
    /// Reduces any rational modulo 1.
    pub fn new(r: Rat) -> CirclePoint {
        CirclePoint(r.frac())
    }

    pub fn basepoint() -> CirclePoint {
        CirclePoint(Rat::zero())
    }

    pub fn coordinate(&self) -> &Rat {
        &self.0
    }

    pub fn into_coordinate(self) -> Rat {
        self.0
    }

    /// Rotation by `r` (addition in ℝ/ℤ).
    pub fn shifted(&self, r: &Rat) -> CirclePoint {
        CirclePoint::new(&self.0 + r)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_distance_to(&self, other: &CirclePoint) -> Rat {
        (&other.0 - &self.0).frac()
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CirclePoint, D::Error> {
        Ok(CirclePoint::new(Rat::deserialize(d)?))
    }
}
