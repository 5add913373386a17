//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the library is generic over (`f32` or `f64`).
///
/// Accuracy targets quoted in the docs refer to `f64`; `f32` works with
/// tolerances scaled by its machine epsilon.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + serde::Serialize
    + serde::de::DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Significant decimal digits needed for a lossless text round trip.
    const ROUND_TRIP_DIGITS: usize;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative tolerance the adaptive routines aim for by default.
    #[inline]
    fn default_rel_tol() -> Self {
        Self::epsilon() * Self::lit(500.0)
    }
}

impl Real for f32 {
    const ROUND_TRIP_DIGITS: usize = 9;
}

impl Real for f64 {
    const ROUND_TRIP_DIGITS: usize = 17;
}

/// Formats a value with enough significant digits to parse back bit-exactly.
pub fn format_round_trip<T: Real>(x: T) -> String {
    format!("{:.*e}", T::ROUND_TRIP_DIGITS - 1, x)
}
