//! Right-hand side of the Wei-Norman equations for a vacuum start.

use super::state::WnState;
use crate::params::{Sign, SystemParams};
use crate::scalar::Real;

/// Time derivatives of the vacuum-start functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WnRates<T = f64> {
    pub f0: T,
    pub f1: T,
    pub f3: T,
    pub f5: T,
    pub f9: T,
    pub f12: T,
}

impl<T: Real> WnRates<T> {
    /// Euclidean norm over `ḟ₃, ḟ₅, ḟ₉, ḟ₁₂`.
    pub fn quad_norm(&self) -> T {
        (self.f3 * self.f3 + self.f5 * self.f5 + self.f9 * self.f9 + self.f12 * self.f12).sqrt()
    }
}

/// Deliberate defects for exercising the validation harness.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the `c₁₁,₊ f₃ f₅` term in `ḟ₅`.
    F5DampingSign,
}

/// Packed order of the integrated components.
pub(crate) const F0: usize = 0;
pub(crate) const F1: usize = 1;
pub(crate) const F3: usize = 2;
pub(crate) const F5: usize = 3;
pub(crate) const F9: usize = 4;
pub(crate) const F12: usize = 5;

pub(crate) fn pack<T: Real>(s: &WnState<T>) -> [T; 6] {
    [s.f[0], s.f[1], s.f[3], s.f[5], s.f[9], s.f[12]]
}

pub(crate) fn unpack<T: Real>(t: T, y: &[T; 6]) -> WnState<T> {
    WnState::from_vacuum_slots(t, y[F0], y[F1], y[F3], y[F5], y[F9], y[F12])
}

pub(crate) fn rates_packed<T: Real>(
    y: &[T; 6],
    p: &SystemParams<T>,
    fault: Option<Fault>,
) -> [T; 6] {
    let (one, two) = (T::one(), T::lit(2.0));
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let zero = T::zero();
    let c21p = p.c(two, one, Sign::Plus);
    let c21m = p.c(two, one, Sign::Minus);
    let c11p = p.c(one, one, Sign::Plus);
    let c11m = p.c(one, one, Sign::Minus);
    let c10p = p.c(one, zero, Sign::Plus);
    let c10m = p.c(one, zero, Sign::Minus);
    let (xi, delta) = (p.xi_abs, p.delta);
    let (f3, f5, f9, f12) = (y[F3], y[F5], y[F9], y[F12]);
    let (s3, s5, s9, s12) = (f3 * f3, f5 * f5, f9 * f9, f12 * f12);

    let d0 = half * p.kappa_sum();
    let d1 = half * c11p * f3 + half * c11m * f9 - quarter * xi * f5 - quarter * c21p;
    let d3 = -half * c21p * f3 - half * c21m * f9 + c11m * f3 * f9 - half * xi * f3 * f5
        + half * c11p * (s3 + s5 + s9 + s12)
        + half * c10p;
    let damp = match fault {
        Some(Fault::F5DampingSign) => -c11p,
        None => c11p,
    };
    let d5 = -half * c21p * f5
        + damp * f3 * f5
        + c11m * f5 * f9
        + two * delta * f12
        + quarter * xi * (-s3 - s5 + s9 + s12 + one);
    let d9 = -half * c21m * f3 - half * c21p * f9 + c11p * f3 * f9 - half * xi * f5 * f9
        + half * c11m * (s3 - s5 + s9 - s12)
        + half * c10m;
    let d12 = -half * c21p * f12 + c11p * f3 * f12 + c11m * f9 * f12
        - two * delta * f5
        - half * xi * f5 * f12;
    [d0, d1, d3, d5, d9, d12]
}

/// `(ḟ₀, ḟ₁, ḟ₃, ḟ₅, ḟ₉, ḟ₁₂)` at `state`.
///
/// `c_{xy,±} = κ₁(x n₁ + y) ± κ₂(x n₂ + y)`. The constant terms of `ḟ₃` and
/// `ḟ₉` are `½c₁₀,±` and the drive enters `ḟ₁` as `−¼|ξ| f₅`.
pub fn wn_rhs<T: Real>(state: &WnState<T>, params: &SystemParams<T>) -> WnRates<T> {
    let d = rates_packed(&pack(state), params, None);
    WnRates {
        f0: d[F0],
        f1: d[F1],
        f3: d[F3],
        f5: d[F5],
        f9: d[F9],
        f12: d[F12],
    }
}
