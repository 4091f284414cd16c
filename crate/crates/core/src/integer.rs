//! Arbitrary-precision integers with an inline fast path.
//!
//! Character and denominator coefficients are almost always tiny, so the
//! common case stays in an `i64` and only overflowing results are promoted to
//! a heap-allocated [`BigInt`].

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, Debug)]
pub enum Integer {
    Small(i64),
    Large(BigInt),
}

impl Integer {
    pub fn zero() -> Self {
        Integer::Small(0)
    }

    pub fn one() -> Self {
        Integer::Small(1)
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Large(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Large(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Integer::Small(v) => *v > 0,
            Integer::Large(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Large(b) => b.is_negative(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Large(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Integer::Small(v) => u64::try_from(*v).ok(),
            Integer::Large(b) => b.to_u64(),
        }
    }

    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn checked_div_exact(&self, other: &Integer) -> Option<Integer> {
        if other.is_zero() {
            return None;
        }
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => {
                if a.checked_rem(*b).is_none_or(|r| r == 0) {
                    match a.checked_div(*b) {
                        Some(q) => Some(Integer::Small(q)),
                        None => Some(Integer::from_big(BigInt::from(*a) / BigInt::from(*b))),
                    }
                } else {
                    None
                }
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&other.to_big());
                r.is_zero().then(|| Integer::from_big(q))
            }
        }
    }

    /// `self += a * b` without allocating in the small case.
    pub fn add_mul(&mut self, a: &Integer, b: &Integer) {
        if let (Integer::Small(x), Integer::Small(y), Integer::Small(z)) = (&*self, a, b) {
            if let Some(p) = y.checked_mul(*z) {
                if let Some(s) = x.checked_add(p) {
                    *self = Integer::Small(s);
                    return;
                }
            }
        }
        let v = self.to_big() + a.to_big() * b.to_big();
        *self = Integer::from_big(v);
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::zero()
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v as i64)
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        Integer::from_big(BigInt::from(v))
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::from_big(v)
    }
}

impl PartialEq for Integer {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a == b,
            // Large values are always out of i64 range, so mixed pairs differ.
            (Integer::Large(a), Integer::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Integer {}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Large(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Integer::from_big(BigInt::from_str(s)?))
    }
}

impl Add<&Integer> for &Integer {
    type Output = Integer;

    fn add(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub<&Integer> for &Integer {
    type Output = Integer;

    fn sub(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_big() - rhs.to_big())
    }
}

impl Mul<&Integer> for &Integer {
    type Output = Integer;

    fn mul(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(*b) {
                return Integer::Small(s);
            }
        }
        Integer::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Integer {
    type Output = Integer;

    fn neg(self) -> Integer {
        match self {
            Integer::Small(a) => match a.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*a)),
            },
            Integer::Large(b) => Integer::from_big(-b),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;

    fn neg(self) -> Integer {
        -&self
    }
}

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Self {
        iter.fold(Integer::zero(), |acc, x| &acc + &x)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::Small(1)
    }
}

impl Mul for Integer {
    type Output = Integer;

    fn mul(self, rhs: Integer) -> Integer {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes() {
        let a = Integer::from(i64::MAX);
        let b = &a + &Integer::one();
        assert!(matches!(b, Integer::Large(_)));
        let c = &b - &Integer::one();
        assert_eq!(c, Integer::Small(i64::MAX));
        let sq = &a * &a;
        assert_eq!(sq.to_big(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
    }

    #[test]
    fn exact_division() {
        let a = Integer::from(12);
        assert_eq!(a.checked_div_exact(&Integer::from(-4)), Some(Integer::from(-3)));
        assert_eq!(a.checked_div_exact(&Integer::from(5)), None);
        assert_eq!(Integer::from(i64::MIN).checked_div_exact(&Integer::from(-1)).unwrap().to_big(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn add_mul_small_and_large() {
        let mut x = Integer::from(5);
        x.add_mul(&Integer::from(-2), &Integer::from(3));
        assert_eq!(x, Integer::from(-1));
        let mut y = Integer::from(i64::MAX);
        y.add_mul(&Integer::from(2), &Integer::from(2));
        assert_eq!(y.to_big(), BigInt::from(i64::MAX) + 4);
    }
}
