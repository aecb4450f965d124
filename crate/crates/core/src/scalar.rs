//! Scalar abstractions.
//!
//! Combinatorial quantities (degree moments, expected cuts, the small-β
//! expansion) only need field arithmetic, so they are generic over
//! [`Scalar`] and can be evaluated exactly with [`crate::Rational`].
//! Anything involving `exp`, `ln` or fractional powers needs [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Field-like numeric type: `f32`, `f64` or an exact rational.
pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy conversion for reporting; exact types round to nearest.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl<T> Scalar for T where
    T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
}

/// Floating point scalar with transcendental functions.
pub trait Real: Scalar + Float + FloatConst {
    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite conversion")
    }
}

impl<T> Real for T where T: Scalar + Float + FloatConst {}
