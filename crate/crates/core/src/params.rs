//! Physical inputs of the driven, damped two-mode system.

use crate::error::{Error, Result};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};

/// Rates, bath occupations, detuning and squeeze drive.
///
/// `kappa*`, `delta` and `xi_abs` are rates (inverse time); `nth*` are
/// dimensionless mean bath occupations. `phi` is the drive phase in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams<T = f64> {
    pub kappa1: T,
    pub kappa2: T,
    pub nth1: T,
    pub nth2: T,
    pub delta: T,
    pub xi_abs: T,
    pub phi: T,
}

/// Which combination in `c_{xy,±} = κ₁(x n₁ + y) ± κ₂(x n₂ + y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl<T: Real> SystemParams<T> {
    pub fn new(
        kappa1: T,
        kappa2: T,
        nth1: T,
        nth2: T,
        delta: T,
        xi_abs: T,
        phi: T,
    ) -> Result<Self> {
        SystemParams {
            kappa1,
            kappa2,
            nth1,
            nth2,
            delta,
            xi_abs,
            phi,
        }
        .validated()
    }

    /// Identical baths on both modes.
    pub fn symmetric(kappa: T, nth: T, xi_abs: T, delta: T) -> Result<Self> {
        Self::new(kappa, kappa, nth, nth, delta, xi_abs, T::zero())
    }

    /// Checks ranges and wraps `phi` into `[0, 2π)`.
    pub fn validated(mut self) -> Result<Self> {
        let nonneg = [
            ("kappa1", self.kappa1),
            ("kappa2", self.kappa2),
            ("nth1", self.nth1),
            ("nth2", self.nth2),
            ("xi_abs", self.xi_abs),
        ];
        for (name, v) in nonneg {
            if !v.is_finite() {
                return Err(Error::param(name, format!("must be finite, got {v}")));
            }
            if v < T::zero() {
                return Err(Error::param(name, format!("must be non-negative, got {v}")));
            }
        }
        if !self.delta.is_finite() {
            return Err(Error::param("delta", "must be finite"));
        }
        if !self.phi.is_finite() {
            return Err(Error::param("phi", "must be finite"));
        }
        let two_pi = T::TAU();
        let mut phi = self.phi % two_pi;
        if phi < T::zero() {
            phi += two_pi;
        }
        if phi >= two_pi {
            phi = T::zero();
        }
        self.phi = phi;
        Ok(self)
    }

    /// `c_{xy,±} = κ₁(x·n₁ + y) ± κ₂(x·n₂ + y)`.
    #[inline]
    pub fn c(&self, x: T, y: T, sign: Sign) -> T {
        let a = self.kappa1 * (x * self.nth1 + y);
        let b = self.kappa2 * (x * self.nth2 + y);
        match sign {
            Sign::Plus => a + b,
            Sign::Minus => a - b,
        }
    }

    pub fn kappa_sum(&self) -> T {
        self.kappa1 + self.kappa2
    }

    pub fn is_symmetric(&self) -> bool {
        self.kappa1 == self.kappa2 && self.nth1 == self.nth2
    }

    pub fn is_resonant(&self) -> bool {
        self.delta == T::zero()
    }

    /// Converts to another scalar type.
    pub fn cast<U: Real>(&self) -> SystemParams<U> {
        let c = |x: T| U::lit(x.as_f64());
        SystemParams {
            kappa1: c(self.kappa1),
            kappa2: c(self.kappa2),
            nth1: c(self.nth1),
            nth2: c(self.nth2),
            delta: c(self.delta),
            xi_abs: c(self.xi_abs),
            phi: c(self.phi),
        }
    }
}

/// Source of (possibly time-dependent) parameters for the equations of motion.
pub trait ParamSchedule<T: Real>: Sync {
    fn at(&self, t: T) -> SystemParams<T>;

    /// True when `at` ignores its argument.
    fn is_constant(&self) -> bool {
        false
    }
}

impl<T: Real> ParamSchedule<T> for SystemParams<T> {
    #[inline]
    fn at(&self, _t: T) -> SystemParams<T> {
        *self
    }

    fn is_constant(&self) -> bool {
        true
    }
}

/// Coefficients evaluated per step from a closure.
///
/// No closed forms are claimed in this mode; only the integrator uses it.
pub struct TimeDependent<F>(pub F);

impl<T: Real, F> ParamSchedule<T> for TimeDependent<F>
where
    F: Fn(T) -> SystemParams<T> + Sync,
{
    #[inline]
    fn at(&self, t: T) -> SystemParams<T> {
        (self.0)(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn phi_is_wrapped() {
        let p = SystemParams::new(1.0f64, 1.0, 0.0, 0.0, 0.0, 1.0, -0.5).unwrap();
        assert!((p.phi - (TAU - 0.5)).abs() < 1e-15);
        let p = SystemParams::new(1.0f64, 1.0, 0.0, 0.0, 0.0, 1.0, 3.0 * TAU + 0.25).unwrap();
        assert!((p.phi - 0.25).abs() < 1e-12);
        let p = SystemParams::new(1.0f64, 1.0, 0.0, 0.0, 0.0, 1.0, TAU).unwrap();
        assert_eq!(p.phi, 0.0);
    }

    #[test]
    fn rejects_negative_rates_and_nan() {
        assert!(SystemParams::new(-1.0f64, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0f64, 1.0, 0.0, -0.1, 0.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0f64, 1.0, 0.0, 0.0, f64::NAN, 1.0, 0.0).is_err());
        assert!(SystemParams::new(1.0f64, f64::INFINITY, 0.0, 0.0, 0.0, 1.0, 0.0).is_err());
        // detuning may have either sign
        assert!(SystemParams::new(1.0f64, 1.0, 0.0, 0.0, -2.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn c_coefficients() {
        let p = SystemParams::new(0.5f64, 0.25, 1.0, 2.0, 0.0, 0.0, 0.0).unwrap();
        // c_{21,+} = 0.5*(2+1) + 0.25*(4+1)
        assert!((p.c(2.0, 1.0, Sign::Plus) - 2.75).abs() < 1e-15);
        assert!((p.c(1.0, 0.0, Sign::Minus) - 0.0).abs() < 1e-15);
        let s = SystemParams::symmetric(0.7f64, 0.3, 1.0, 0.0).unwrap();
        assert_eq!(s.c(1.0, 1.0, Sign::Minus), 0.0);
    }
}
