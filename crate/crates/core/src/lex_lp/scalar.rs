//! Scalar backends for the simplex core.
//!
//! The solver runs the exact same pivot sequence over two exact
//! representations: a machine-word rational (`Ratio<i128>`) with fully checked
//! arithmetic, and arbitrary-precision `BigRational`. Any overflow on the fast
//! path aborts the solve, which is then replayed on the wide path. Signs (and
//! hence pivots) are exact in both, so results are identical.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// The fast path exceeded i128 range; retry with big rationals.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Overflow;

pub(crate) trait SimplexScalar: Clone {
    fn from_rational(r: &BigRational) -> Option<Self>;
    fn into_rational(self) -> BigRational;
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn sign(&self) -> Ordering;
    fn try_add(&self, other: &Self) -> Result<Self, Overflow>;
    fn try_sub(&self, other: &Self) -> Result<Self, Overflow>;
    fn try_mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn try_div(&self, other: &Self) -> Result<Self, Overflow>;
    fn try_neg(&self) -> Result<Self, Overflow>;

    fn is_zero_value(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl SimplexScalar for Ratio<i128> {
    fn from_rational(r: &BigRational) -> Option<Self> {
        let numer = r.numer().to_i128()?;
        let denom = r.denom().to_i128()?;
        // BigRational is stored reduced with a positive denominator, so the
        // gcd-free constructor is valid here.
        Some(Ratio::new_raw(numer, denom))
    }

    fn into_rational(self) -> BigRational {
        BigRational::new_raw(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn zero_value() -> Self {
        Ratio::zero()
    }

    fn one_value() -> Self {
        Ratio::one()
    }

    fn sign(&self) -> Ordering {
        self.numer().cmp(&0)
    }

    fn try_add(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(other).ok_or(Overflow)
    }

    fn try_sub(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(other).ok_or(Overflow)
    }

    fn try_mul(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other).ok_or(Overflow)
    }

    fn try_div(&self, other: &Self) -> Result<Self, Overflow> {
        if other.is_zero() {
            return Err(Overflow);
        }
        self.checked_div(other).ok_or(Overflow)
    }

    fn try_neg(&self) -> Result<Self, Overflow> {
        Ratio::zero().checked_sub(self).ok_or(Overflow)
    }
}

impl SimplexScalar for BigRational {
    fn from_rational(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }

    fn into_rational(self) -> BigRational {
        self
    }

    fn zero_value() -> Self {
        Zero::zero()
    }

    fn one_value() -> Self {
        One::one()
    }

    fn sign(&self) -> Ordering {
        if self.numer().is_zero() {
            Ordering::Equal
        } else if self.numer().is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn try_add(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self + other)
    }

    fn try_sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }

    fn try_mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }

    fn try_div(&self, other: &Self) -> Result<Self, Overflow> {
        debug_assert!(!other.is_zero(), "division by zero in simplex pivot");
        Ok(self / other)
    }

    fn try_neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }

    fn is_zero_value(&self) -> bool {
        self.numer().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio, Rational};

    #[test]
    fn narrow_round_trip() {
        let r = ratio(-22, 7);
        let s = <Ratio<i128>>::from_rational(&r).unwrap();
        assert_eq!(s.into_rational(), r);
    }

    #[test]
    fn narrow_rejects_huge_values() {
        let huge = Rational::from_integer(BigInt::from(2).pow(200));
        assert!(<Ratio<i128>>::from_rational(&huge).is_none());
    }

    #[test]
    fn narrow_overflow_is_detected() {
        let big = Ratio::<i128>::new_raw(i128::MAX, 1);
        assert!(big.try_add(&big).is_err());
        assert!(big.try_mul(&big).is_err());
        assert_eq!(
            Ratio::<i128>::new_raw(i128::MIN, 1).try_neg().map(|_| ()).is_err(),
            true
        );
    }

    #[test]
    fn signs_match_across_backends() {
        for v in [-3i64, 0, 5] {
            let wide = rat(v);
            let narrow = <Ratio<i128>>::from_rational(&wide).unwrap();
            assert_eq!(narrow.sign(), wide.sign());
        }
    }
}
