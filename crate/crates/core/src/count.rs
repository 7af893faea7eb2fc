//! Scalar types usable as solution counts.
//!
//! The search engines are generic over the count type. [`BigUint`] is exact
//! for any instance; fixed-width integers are faster but may overflow, and
//! `f64` yields approximate counts for very large solution spaces.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

pub trait CountValue:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
    + ToPrimitive
{
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count type cannot represent value")
    }

    fn from_u64_lossy(n: u64) -> Self {
        Self::from_u64(n).expect("count type cannot represent value")
    }
}

impl<T> CountValue for T where
    T: Clone
        + Debug
        + Display
        + PartialOrd
        + Zero
        + One
        + Add<Output = T>
        + Mul<Output = T>
        + FromPrimitive
        + ToPrimitive
{
}

/// Exact, unbounded solution count.
pub type Count = BigUint;
