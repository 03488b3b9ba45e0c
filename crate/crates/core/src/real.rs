//! Scalar abstraction for the numerical core.
//!
//! Everything downstream is generic over a floating-point scalar so the
//! same code instantiates at `f32` and `f64`. Double precision is the
//! working type for all shipped tools; see the aliases in the crate root.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable throughout the crate: IEEE float with
/// transcendentals, mathematical constants, and primitive conversions.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` constant into the working scalar.
///
/// Panics only if the scalar type cannot represent any `f64` at all, which
/// none of the supported types do; overflow saturates like an `as` cast.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert into the scalar type")
}

/// Converts a count into the working scalar.
#[inline]
pub fn real_of<T: Real>(n: u64) -> T {
    T::from_u64(n).expect("count must convert into the scalar type")
}

/// Lossy view of a scalar as `f64`, for diagnostics and error messages.
#[inline]
pub fn approx_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_common_constants() {
        assert_eq!(real::<f64>(0.5), 0.5);
        assert_eq!(real::<f32>(0.5), 0.5f32);
        assert_eq!(real_of::<f64>(12), 12.0);
    }

    fn generic_norm<T: Real>(x: T, y: T) -> T {
        x.hypot(y)
    }

    #[test]
    fn trait_is_usable_generically() {
        assert!((generic_norm(3.0f64, 4.0) - 5.0).abs() < 1e-15);
        assert!((generic_norm(3.0f32, 4.0) - 5.0).abs() < 1e-6);
    }
}
