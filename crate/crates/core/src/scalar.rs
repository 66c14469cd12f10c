//! Scalar abstraction shared by every numerical routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point type usable by the kernel: `f32` or `f64`.
///
/// Tolerances throughout the crate are written for double precision and
/// passed through [`Real::tol`], which widens them for lower precision types.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Widening factor applied to `f64`-calibrated tolerances.
    const TOL_SCALE: f64;

    /// Converts a tolerance calibrated for `f64` to this type, never going
    /// below a small multiple of the type's machine epsilon.
    fn tol(base: f64) -> Self {
        Self::of(base * Self::TOL_SCALE).max(Self::epsilon() * Self::of(64.0))
    }

    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 is representable")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const TOL_SCALE: f64 = 1.0;
}

impl Real for f32 {
    const TOL_SCALE: f64 = 1e4;
}
