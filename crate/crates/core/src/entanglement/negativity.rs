use crate::error::{Error, Result};
use crate::scalar::Real;
use serde::Serialize;

/// Slack on `x₊ ≤ 1` for states sitting exactly on the normalizability edge.
pub const EDGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityResult<T = f64> {
    pub value: T,
    pub x_plus: T,
    pub x_minus: T,
    pub separable: bool,
}

/// `x± = f₃ ± √(f₅² + f₉² + f₁₂²)`.
pub fn x_pm<T: Real>(f3: T, f5: T, f9: T, f12: T) -> (T, T) {
    let r = (f5 * f5 + f9 * f9 + f12 * f12).sqrt();
    (f3 + r, f3 - r)
}

/// Strict check used by everything that needs the full state: `x₊ < 1`, `x₋ > −1`.
pub(crate) fn normalizable<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<(T, T)> {
    let (xp, xm) = x_pm(f3, f5, f9, f12);
    if xp < T::one() && xm > -T::one() && xp.is_finite() {
        Ok((xp, xm))
    } else {
        Err(Error::NonNormalizable {
            x_plus: xp.as_f64(),
            x_minus: xm.as_f64(),
        })
    }
}

/// `Neg = max(0, (r − f₃)/(1 + f₃ − r))`.
///
/// Only `x₋ = f₃ − r` enters, so states with `x₊ = 1` (the long-time limit
/// in the underdamped regime) are accepted.
pub fn negativity<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<NegativityResult<T>> {
    let (xp, xm) = x_pm(f3, f5, f9, f12);
    if !(xp <= T::one() + T::lit(EDGE_SLACK) && xm > -T::one()) || !xp.is_finite() {
        return Err(Error::NonNormalizable {
            x_plus: xp.as_f64(),
            x_minus: xm.as_f64(),
        });
    }
    let separable = xm >= T::zero();
    let value = if separable {
        T::zero()
    } else {
        -xm / (T::one() + xm)
    };
    Ok(NegativityResult {
        value,
        x_plus: xp,
        x_minus: xm,
        separable,
    })
}
