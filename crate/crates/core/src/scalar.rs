use std::fmt::Debug;
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};

/// Coefficient ring for class polynomials and Schubert cycles.
///
/// Only ring operations are used by generic code; `Div` is inherited from
/// [`Num`] but never relied on outside [`ExactField`] contexts.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive {}

/// A field whose equality test is exact.
///
/// Rank and root-multiplicity decisions in [`crate::line`] branch on exact
/// zero tests, so floating point types are deliberately not members.
pub trait ExactField: Scalar {}

macro_rules! exact_ratio {
    ($($t:ty),*) => {
        $(impl ExactField for Ratio<$t> {})*
    };
}

exact_ratio!(num_bigint::BigInt, i64, i128);
