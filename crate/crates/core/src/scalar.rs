//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`], an exact field of
//! characteristic zero. The production instantiation is [`BigRational`];
//! fixed-width rationals are accepted for small experiments but may
//! overflow.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssign, One, Signed, ToPrimitive, Zero};


pub use num_rational::BigRational;

/// An exact field whose elements can be built from machine integers.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Eq
    + Hash
    + Zero
    + One
    + NumAssign
    + std::ops::Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Product without consuming either operand.
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.mul_ref(b);
    }

    /// The value as an integer if it is one and fits in an `i64`.
    fn to_int(&self) -> Option<i64>;

    /// Parses `"p"`, `"-p"` or `"p/q"`.
    fn parse_rational(s: &str) -> Option<Self>;
}

impl<I> Field for Ratio<I>
where
    I: Clone
        + Integer
        + Signed
        + NumAssign
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + fmt::Debug
        + fmt::Display
        + Hash
        + Send
        + Sync
        + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(I::from_i64(n).expect("integer out of range for scalar type"))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn parse_rational(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: I = num.parse().ok()?;
        let den: I = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Ratio::new(num, den))
    }
}

/// Binomial coefficient `C(x, k)` for any integer `x`, using the falling
/// factorial `x (x-1) ... (x-k+1) / k!`, so that negative `x` expands the
/// way `(1+z)^x` does.
pub fn binomial(x: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if x >= 0 && k > x {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(x - j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// [`binomial`] lifted into a field.
pub fn binomial_in<T: Field>(x: i64, k: i64) -> T {
    let b = binomial(x, k);
    match b.to_i64() {
        Some(v) => T::from_int(v),
        None => T::parse_rational(&b.to_string()).expect("binomial does not fit the scalar type"),
    }
}

/// `(-1)^k` for any integer `k`.
pub fn sign<T: Field>(k: i64) -> T {
    if k.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Renders a scalar the way configuration files and reports write it.
pub fn fmt_scalar<T: Field>(x: &T) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-1, 4), BigInt::from(1));
        assert_eq!(binomial(-3, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(-4, 0), BigInt::from(1));
    }

    #[test]
    fn negative_binomial_matches_series() {
        // (1+z)^{-2} = sum (-1)^k (k+1) z^k
        for k in 0..8 {
            let expected = if k % 2 == 0 { k + 1 } else { -(k + 1) };
            assert_eq!(binomial(-2, k), BigInt::from(expected));
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(Q::parse_rational("1/2"), Some(Q::from_frac(1, 2)));
        assert_eq!(Q::parse_rational("-22/5"), Some(Q::from_frac(-22, 5)));
        assert_eq!(Q::parse_rational(" 7 "), Some(Q::from_int(7)));
        assert_eq!(Q::parse_rational("1/0"), None);
        assert_eq!(Q::parse_rational("x"), None);
        assert_eq!(format!("{}", Q::from_frac(2, 4)), "1/2");
    }

    #[test]
    fn signs() {
        assert_eq!(sign::<Q>(-3), -Q::one());
        assert_eq!(sign::<Q>(-2), Q::one());
        assert_eq!(sign::<Q>(0), Q::one());
    }
}
