//! Exact rationals with a machine-word fast path.
//!
//! A `Rat` is always stored in lowest terms with a positive denominator.
//! Values that fit in `i64` use the small representation; everything else
//! falls back to `BigRational`. The representation is canonical, so derived
//! equality and hashing on the enum would be sound, but we implement them by
//! hand to keep the invariant in one place.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

#[derive(Clone)]
pub struct Rat(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    pub fn int(v: i64) -> Rat {
        Rat(Repr::Small(v, 1))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    pub fn half() -> Rat {
        Rat::frac(1, 2)
    }

    fn from_i128(num: i128, den: i128) -> Rat {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if d != 1 {
            let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        if let (Ok(n64), Ok(d64)) = (i64::try_from(n), i64::try_from(d)) {
            Rat(Repr::Small(n64, d64))
        } else {
            Rat(Repr::Big(BigRational::new(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new already reduces; only the size class is decided here.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(r)),
        }
    }

    pub fn from_bigint(v: BigInt) -> Rat {
        Rat::from_big(BigRational::from_integer(v))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
            Repr::Big(_) => None,
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_euclid(*d)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(-((-n).div_euclid(*d))),
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Rat::from_big(b.recip()),
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

    fn small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(_) => None,
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::int(v)
    }
}

impl From<i32> for Rat {
    fn from(v: i32) -> Self {
        Rat::int(v as i64)
    }
}

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Self {
        Rat::from_bigint(v)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self.small(), other.small()) {
            (Some((a, b)), Some((c, d))) => {
                if b == d {
                    a.cmp(&c)
                } else {
                    (a as i128 * d as i128).cmp(&(c as i128 * b as i128))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_ref(x: &Rat, y: &Rat) -> Rat {
    match (x.small(), y.small()) {
        (Some((a, 1)), Some((c, 1))) => match a.checked_add(c) {
            Some(s) => Rat::int(s),
            None => Rat::from_i128(a as i128 + c as i128, 1),
        },
        (Some((a, b)), Some((c, d))) => {
            Rat::from_i128(a as i128 * d as i128 + c as i128 * b as i128, b as i128 * d as i128)
        }
        _ => Rat::from_big(x.to_big() + y.to_big()),
    }
}

fn sub_ref(x: &Rat, y: &Rat) -> Rat {
    match (x.small(), y.small()) {
        (Some((a, 1)), Some((c, 1))) => match a.checked_sub(c) {
            Some(s) => Rat::int(s),
            None => Rat::from_i128(a as i128 - c as i128, 1),
        },
        (Some((a, b)), Some((c, d))) => {
            Rat::from_i128(a as i128 * d as i128 - c as i128 * b as i128, b as i128 * d as i128)
        }
        _ => Rat::from_big(x.to_big() - y.to_big()),
    }
}

fn mul_ref(x: &Rat, y: &Rat) -> Rat {
    match (x.small(), y.small()) {
        (Some((a, 1)), Some((c, 1))) => match a.checked_mul(c) {
            Some(s) => Rat::int(s),
            None => Rat::from_i128(a as i128 * c as i128, 1),
        },
        (Some((a, b)), Some((c, d))) => {
            Rat::from_i128(a as i128 * c as i128, b as i128 * d as i128)
        }
        _ => Rat::from_big(x.to_big() * y.to_big()),
    }
}

fn div_ref(x: &Rat, y: &Rat) -> Rat {
    assert!(!y.is_zero(), "division by zero");
    match (x.small(), y.small()) {
        (Some((a, b)), Some((c, d))) => {
            Rat::from_i128(a as i128 * d as i128, b as i128 * c as i128)
        }
        _ => Rat::from_big(x.to_big() / y.to_big()),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                $f(self, rhs)
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                $f(&self, rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self.small() {
            Some((n, d)) => match n.checked_neg() {
                Some(m) => Rat(Repr::Small(m, d)),
                None => Rat::from_i128(-(n as i128), d as i128),
            },
            None => Rat::from_big(-self.to_big()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRatError(pub String);

fn parse_int(s: &str) -> Option<BigInt> {
    let t = s.strip_prefix('+').unwrap_or(s);
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse::<BigInt>().ok()
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `k` or `p/q` with decimal integers; the unicode minus sign is
    /// treated as `-`. Anything else, including `inf`, is rejected.
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let norm = s.trim().replace('\u{2212}', "-");
        let err = || ParseRatError(s.to_string());
        match norm.split_once('/') {
            None => Ok(Rat::from_bigint(parse_int(&norm).ok_or_else(err)?)),
            Some((p, q)) => {
                let p = parse_int(p).ok_or_else(err)?;
                let q = parse_int(q).ok_or_else(err)?;
                if q.is_zero() {
                    return Err(err());
                }
                Ok(Rat::from_big(BigRational::new(p, q)))
            }
        }
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer division rounding toward negative infinity, for `BigInt`.
pub fn big_floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub fn big_is_one(b: &BigInt) -> bool {
    b.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_prints() {
        assert_eq!(Rat::frac(6, -4).to_string(), "-3/2");
        assert_eq!(Rat::frac(4, 2), Rat::int(2));
        assert_eq!("-1/2".parse::<Rat>().unwrap(), Rat::frac(-1, 2));
        assert_eq!("\u{2212}1/2".parse::<Rat>().unwrap(), Rat::frac(-1, 2));
        assert!("inf".parse::<Rat>().is_err());
        assert!("1.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn overflow_promotes_to_big() {
        let a = Rat::int(i64::MAX);
        let b = &a + &a;
        assert_eq!(b.to_string(), "18446744073709551614");
        let c = &b - &a;
        assert_eq!(c, a);
        let d = Rat::frac(1, i64::MAX) * Rat::frac(1, i64::MAX);
        assert_eq!(d.recip(), Rat::int(i64::MAX) * Rat::int(i64::MAX));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(Rat::frac(-3, 2).floor(), BigInt::from(-2));
        assert_eq!(Rat::frac(-3, 2).ceil(), BigInt::from(-1));
        assert_eq!(Rat::frac(3, 2).floor(), BigInt::from(1));
        assert_eq!(Rat::frac(3, 2).ceil(), BigInt::from(2));
    }

    #[test]
    fn big_round_trip_parse() {
        let s = "123456789012345678901234567891/2";
        let r: Rat = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
        let two64 = "18446744073709551616";
        let q: Rat = format!("1/{two64}").parse().unwrap();
        assert_eq!(q.to_string(), format!("1/{two64}"));
    }
}
