//! Scalar abstraction for the closed-form and ODE parts of the crate.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};

/// Floating point type the analytic machinery is generic over.
///
/// Implemented for `f32` and `f64`. The Fock-space oracle is `f64` only.
pub trait Real:
    'static
    + Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
{
    /// Converts an `f64` literal. Infallible for the implemented types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `expm1(t * x) / x`, continuous through `x = 0`.
    ///
    /// Below `|x| < 1e-8` a three-term series is used.
    fn expm1_over(x: Self, t: Self) -> Self {
        if x.abs() < Self::lit(1e-8) {
            let tx = t * x;
            t * (Self::one() + tx / Self::lit(2.0) + tx * tx / Self::lit(6.0))
        } else {
            (t * x).exp_m1() / x
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_over_is_continuous_at_zero() {
        let t = 3.0_f64;
        let at_zero = f64::expm1_over(0.0, t);
        assert_eq!(at_zero, t);
        for x in [1e-12, -1e-12, 1e-9, 5e-8, -5e-8, 1e-3] {
            let direct = (t * x).exp_m1() / x;
            assert!((f64::expm1_over(x, t) - direct).abs() < 1e-12 * t.abs().max(1.0));
        }
    }

    #[test]
    fn lit_roundtrips_for_f32() {
        assert_eq!(f32::lit(0.25), 0.25_f32);
        assert_eq!(0.5_f32.as_f64(), 0.5);
    }
}
