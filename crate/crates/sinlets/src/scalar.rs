//! Scalar abstraction over the floating-point types the library runs on.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar the whole crate is generic over.
///
/// Beyond the usual `num_traits` bundle this adds the error function, which
/// the erf phase family needs. Both impls delegate to `libm`'s port of the
/// FreeBSD/SunPro rational approximations (error below 1 ulp in the target
/// precision, i.e. well under 1e-15 for `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssignOps + core::fmt::Debug + core::fmt::Display + 'static
{
    /// Error function erf(x) = (2/sqrt(pi)) * integral of exp(-z^2) over [0, x].
    fn erf(self) -> Self;

    /// Complementary error function, 1 - erf(x), accurate in the right tail.
    fn erfc(self) -> Self;

    /// Shorthand for lossless-enough conversion of literals and counts.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize conversion")
    }
}

impl Real for f64 {
    fn erf(self) -> Self {
        libm::erf(self)
    }
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

impl Real for f32 {
    fn erf(self) -> Self {
        libm::erff(self)
    }
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}
