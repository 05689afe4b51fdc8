use crate::scalar::Real;
use serde::Serialize;

/// Wei-Norman functions `f_0 … f_15` at time `t`.
///
/// Vacuum-start runs populate `f_0, f_1, f_3, f_5, f_9, f_12`; the symmetric
/// resonant closed forms populate `f_0 … f_6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WnState<T = f64> {
    pub f: [T; 16],
    pub t: T,
}

impl<T: Real> Default for WnState<T> {
    fn default() -> Self {
        Self::vacuum()
    }
}

impl<T: Real> WnState<T> {
    /// All functions zero at `t = 0`: the propagator is the identity.
    pub fn vacuum() -> Self {
        Self {
            f: [T::zero(); 16],
            t: T::zero(),
        }
    }

    pub fn from_vacuum_slots(t: T, f0: T, f1: T, f3: T, f5: T, f9: T, f12: T) -> Self {
        let mut f = [T::zero(); 16];
        f[0] = f0;
        f[1] = f1;
        f[3] = f3;
        f[5] = f5;
        f[9] = f9;
        f[12] = f12;
        Self { f, t }
    }

    #[inline]
    pub fn f3(&self) -> T {
        self.f[3]
    }

    /// `r = √(f₅² + f₉² + f₁₂²)`.
    pub fn r(&self) -> T {
        (self.f[5] * self.f[5] + self.f[9] * self.f[9] + self.f[12] * self.f[12]).sqrt()
    }

    pub fn x_plus(&self) -> T {
        self.f[3] + self.r()
    }

    pub fn x_minus(&self) -> T {
        self.f[3] - self.r()
    }

    /// `(f₃, f₅, f₉, f₁₂)`.
    pub fn quad(&self) -> [T; 4] {
        [self.f[3], self.f[5], self.f[9], self.f[12]]
    }

    /// `exp(2f₁ + f₀) − [(1−f₃)² − f₅² − f₉² − f₁₂²]`.
    ///
    /// `f₀` carries `∫(κ₁+κ₂)/2 dt`; the identity holds along every
    /// trajectory started from the vacuum.
    pub fn normalization_residual(&self) -> T {
        let one = T::one();
        let lhs = (self.f[1] * T::lit(2.0) + self.f[0]).exp();
        let r2 = self.f[5] * self.f[5] + self.f[9] * self.f[9] + self.f[12] * self.f[12];
        let rhs = (one - self.f[3]) * (one - self.f[3]) - r2;
        lhs - rhs
    }

    pub fn cast<U: Real>(&self) -> WnState<U> {
        WnState {
            f: self.f.map(|x| U::lit(x.as_f64())),
            t: U::lit(self.t.as_f64()),
        }
    }
}
