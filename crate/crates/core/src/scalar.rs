//! Scalar traits shared by the generic algebra.

use num_traits::{Num, One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring with unit, the coefficient domain of [`crate::rep_ring::RepElem`].
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Ordered field, the scalar domain of the symmetric signature routine.
///
/// Exact for [`crate::Q`]; `f64` also qualifies and is only meant for quick
/// cross-checks.
pub trait OrderedField: Clone + Debug + PartialOrd + Num + Signed {}

impl<T> OrderedField for T where T: Clone + Debug + PartialOrd + Num + Signed {}
