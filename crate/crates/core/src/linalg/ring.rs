//! Checked integer rings used by the fraction-free kernels.
//!
//! Hot loops run on `i128` with overflow detection and are re-run on
//! [`BigInt`] when a checked operation fails.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Marker for an overflowed checked operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type Checked<T> = Result<T, Overflow>;

pub trait ExactInt: Clone + std::fmt::Debug + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> i32;
    fn add(&self, rhs: &Self) -> Checked<Self>;
    fn sub(&self, rhs: &Self) -> Checked<Self>;
    fn mul(&self, rhs: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    /// Division that is known to be exact.
    fn div_exact(&self, rhs: &Self) -> Self;
    fn gcd(&self, rhs: &Self) -> Self;
    fn to_bigint(&self) -> BigInt;

    fn is_positive(&self) -> bool {
        self.signum() > 0
    }
    fn is_negative(&self) -> bool {
        self.signum() < 0
    }
    /// `a*b - c*e`, the Sylvester/Bareiss update kernel.
    fn mul_sub_mul(a: &Self, b: &Self, c: &Self, e: &Self) -> Checked<Self> {
        a.mul(b)?.sub(&c.mul(e)?)
    }
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn add(&self, rhs: &Self) -> Checked<Self> {
        self.checked_add(*rhs).ok_or(Overflow)
    }
    fn sub(&self, rhs: &Self) -> Checked<Self> {
        self.checked_sub(*rhs).ok_or(Overflow)
    }
    fn mul(&self, rhs: &Self) -> Checked<Self> {
        self.checked_mul(*rhs).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self % rhs, 0, "inexact division {self} / {rhs}");
        self / rhs
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_positive(self) {
            1
        } else {
            -1
        }
    }
    fn add(&self, rhs: &Self) -> Checked<Self> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Checked<Self> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Checked<Self> {
        Ok(self * rhs)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Narrow a big integer to `i128` if it fits.
pub fn narrow(v: &BigInt) -> Option<i128> {
    v.to_i128()
}

/// Compare `a/b` with `c/e` for positive `b`, `e`.
pub fn cmp_fractions<T: ExactInt>(a: &T, b: &T, c: &T, e: &T) -> Checked<Ordering> {
    Ok(a.mul(e)?.cmp(&c.mul(b)?))
}

/// Divide a vector by the gcd of its entries (sign preserved).
pub fn primitive<T: ExactInt>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g == T::one() {
                return;
            }
        }
    }
    if g.is_zero() || g == T::one() {
        return;
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
}
