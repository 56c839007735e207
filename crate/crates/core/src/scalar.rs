use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar backing every amplitude, angle and activation in the crate.
///
/// Implemented for `f32` and `f64`. The f64 instantiation is the reference one;
/// f32 exists for throughput experiments and carries a looser norm tolerance.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Allowed deviation of a state or feature vector's squared norm from 1.
    fn norm_tolerance() -> Self;

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable as float")
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }
}

impl Scalar for f64 {
    fn norm_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn norm_tolerance() -> Self {
        1e-4
    }
}
