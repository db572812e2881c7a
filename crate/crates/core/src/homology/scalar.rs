use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar usable by the linear-algebra engine.
///
/// Fixed-width types report overflow through the checked operations; the
/// homology routines retry with [`BigInt`] when that happens.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Send
    + Sync
    + num_integer::Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    /// `self - a * b`, or `None` on overflow.
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(&a.checked_mul(b)?)
    }

    fn to_bigint(&self) -> BigInt;

    fn from_bigint(v: &BigInt) -> Option<Self>;
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

/// Arithmetic overflow in a fixed-width scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;
