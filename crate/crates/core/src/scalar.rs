use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant, rounding to the nearest representable value.
    fn lit(x: f64) -> Self;

    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits any float")
    }

    fn from_int(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("i64 fits any float")
    }
}

impl Scalar for f32 {
    fn lit(x: f64) -> Self {
        x as f32
    }
}

impl Scalar for f64 {
    fn lit(x: f64) -> Self {
        x
    }
}
