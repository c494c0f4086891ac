//! Ordered-field scalars.
//!
//! The elimination engine and polynomial evaluation are written against
//! [`Scalar`], so they run unchanged over exact rationals (the default used by
//! every decision and verification path) and over `f32`/`f64` for quick
//! numeric inspection.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

/// An ordered field element.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every ordered field embeds the integers")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {}

/// Scalars that can also absorb an arbitrary-precision integer.
pub trait FromBigInt: Scalar {
    fn from_bigint(value: &BigInt) -> Self;
}

impl FromBigInt for BigRational {
    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }
}

impl FromBigInt for f64 {
    fn from_bigint(value: &BigInt) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }
}

impl FromBigInt for f32 {
    fn from_bigint(value: &BigInt) -> Self {
        value.to_f32().unwrap_or(f32::NAN)
    }
}

/// `base^exp` for a signed integer exponent, by repeated squaring.
///
/// Returns `None` when the exponent does not fit a machine word or when a
/// negative exponent is applied to zero.
pub fn pow_signed<T: Scalar>(base: &T, exp: &BigInt) -> Option<T> {
    let magnitude = exp.magnitude().to_usize()?;
    let raised = num_traits::pow::pow(base.clone(), magnitude);
    if exp.is_negative() {
        if raised.is_zero() {
            return None;
        }
        Some(T::one() / raised)
    } else {
        Some(raised)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator(values: &[BigRational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Bit length of the larger of numerator and denominator.
pub fn rational_bits(value: &BigRational) -> u64 {
    value.numer().bits().max(value.denom().bits())
}

pub fn is_positive_integer(value: &BigRational) -> bool {
    value.is_integer() && value.is_positive()
}
