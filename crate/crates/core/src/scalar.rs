//! Scalar abstractions: every dimension and intersection number in this
//! crate is computed in an exact signed ring, and every Laurent-tail
//! computation in a complex floating type. Both are pluggable through the
//! traits below; the crate root exports `i64`, `BigInt`, `f32`, and `f64`
//! aliases.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Exact signed integer scalar. Implemented by the primitive signed
/// integers and by `num_bigint::BigInt`.
pub trait IntScalar:
    Num + Signed + Clone + Ord + Debug + Display + From<i64> + ToPrimitive + Sum
{
}

impl<T> IntScalar for T where
    T: Num + Signed + Clone + Ord + Debug + Display + From<i64> + ToPrimitive + Sum
{
}

/// Shorthand for lifting small constants into the working ring.
pub fn int<T: IntScalar>(v: i64) -> T {
    T::from(v)
}

/// Floating scalar backing the complex tail arithmetic.
pub trait RealScalar: Float + FromPrimitive + Debug + Display + Sum + 'static {}

impl<T> RealScalar for T where T: Float + FromPrimitive + Debug + Display + Sum + 'static {}

pub fn real<F: RealScalar>(v: f64) -> F {
    F::from_f64(v).expect("constant representable in the floating type")
}
