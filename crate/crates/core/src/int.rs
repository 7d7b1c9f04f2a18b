//! Arbitrary-precision integers with an inline fast path.
//!
//! Boundary matrices are almost entirely `±1`, but elimination can blow
//! entries up. `Int` keeps values in an `i64` until an operation overflows and
//! only then promotes to a heap `BigInt`. A `Big` value that fits back into
//! `i64` is always demoted, so equal numbers have equal representations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    /// `true` for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Truncating division and remainder: `self = q * rhs + r` with
    /// `|r| < |rhs|` and `r` carrying the sign of `self`.
    ///
    /// Panics on division by zero.
    pub fn div_rem(&self, rhs: &Int) -> (Int, Int) {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return (Int::Small(q), Int::Small(r));
            }
        }
        let (q, r) = self.to_big().div_rem(&rhs.to_big());
        (Int::from_big(q), Int::from_big(r))
    }

    /// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
    pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Int::ONE, Int::ZERO);
        let (mut old_t, mut t) = (Int::ZERO, Int::ONE);
        while !r.is_zero() {
            let (q, rem) = old_r.div_rem(&r);
            old_r = std::mem::replace(&mut r, rem);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    pub fn gcd(a: &Int, b: &Int) -> Int {
        match (a, b) {
            (Int::Small(x), Int::Small(y)) => {
                let g = x.unsigned_abs().gcd(&y.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(g)),
                }
            }
            _ => Int::from_big(a.to_big().gcd(&b.to_big())),
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        -(self.clone())
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        &self + &rhs
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        &self - &rhs
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        &self * &rhs
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Int::from_big(s.parse::<BigInt>()?))
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

/// Serialized as a JSON number when it fits in `i64`, otherwise as a string.
impl serde::Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Int::Small(v)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::ONE;
        assert!(matches!(b, Int::Big(_)));
        let c = &b - &Int::ONE;
        assert_eq!(c, Int::Small(i64::MAX));
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        assert_eq!(Int::from(i64::MIN).abs().to_string(), "9223372036854775808");
    }

    #[test]
    fn extended_gcd_bezout() {
        for (a, b) in [(12i64, 18i64), (-7, 3), (0, 5), (5, 0), (-4, -6)] {
            let (g, s, t) = Int::extended_gcd(&Int::from(a), &Int::from(b));
            assert_eq!(&(&s * &Int::from(a)) + &(&t * &Int::from(b)), g);
            assert_eq!(g, Int::gcd(&Int::from(a), &Int::from(b)));
        }
    }

    #[test]
    fn div_rem_truncates() {
        let (q, r) = Int::from(-7).div_rem(&Int::from(2));
        assert_eq!((q, r), (Int::from(-3), Int::from(-1)));
    }
}
