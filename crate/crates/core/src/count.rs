//! Arbitrary-precision solution counts.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact non-negative integer used for every count in the crate.
///
/// Serializes as a decimal string so JSON consumers never truncate it to a
/// double.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `2^exp`.
    pub fn pow2(exp: u64) -> Self {
        BigCount(BigUint::one() << exp)
    }

    /// Base-2 logarithm when the value is an exact power of two.
    pub fn exact_log2(&self) -> Option<u64> {
        if self.0.is_zero() {
            return None;
        }
        let bits = self.0.bits() - 1;
        (BigUint::one() << bits == self.0).then_some(bits)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u32> for BigCount {
    fn from(v: u32) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a non-negative decimal integer: `{0}`")]
pub struct ParseCountError(pub String);

impl FromStr for BigCount {
    type Err = ParseCountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().replace('_', "");
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseCountError(s.to_string()));
        }
        t.parse::<BigUint>()
            .map(BigCount)
            .map_err(|_| ParseCountError(s.to_string()))
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &'a BigCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<u64> for BigCount {
    fn add_assign(&mut self, rhs: u64) {
        self.0 += rhs;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 * &rhs.0)
    }
}

impl<'a> MulAssign<&'a BigCount> for BigCount {
    fn mul_assign(&mut self, rhs: &'a BigCount) {
        self.0 *= &rhs.0;
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl Product for BigCount {
    fn product<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::one(), |a, b| a * b)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Running sum kept in a machine word until it would overflow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tally {
    Small(u128),
    Big(BigUint),
}

impl Tally {
    pub const ZERO: Tally = Tally::Small(0);

    pub fn is_zero(&self) -> bool {
        matches!(self, Tally::Small(0))
    }

    pub fn add(&mut self, rhs: &Tally) {
        match (&mut *self, rhs) {
            (Tally::Small(a), Tally::Small(b)) => match a.checked_add(*b) {
                Some(v) => *a = v,
                None => *self = Tally::Big(BigUint::from(*a) + *b),
            },
            (Tally::Big(a), Tally::Small(b)) => *a += *b,
            (Tally::Small(a), Tally::Big(b)) => *self = Tally::Big(b + *a),
            (Tally::Big(a), Tally::Big(b)) => *a += b,
        }
    }
}

impl From<u64> for Tally {
    fn from(v: u64) -> Self {
        Tally::Small(v as u128)
    }
}

impl From<Tally> for BigCount {
    fn from(t: Tally) -> Self {
        match t {
            Tally::Small(v) => BigCount(BigUint::from(v)),
            Tally::Big(v) => BigCount(v),
        }
    }
}
