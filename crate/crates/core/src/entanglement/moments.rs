//! Quadratic moments from the normalization generating function.

use super::negativity::normalizable;
use crate::error::Result;
use crate::scalar::Real;
use num_complex::Complex;

/// Mean occupations and the `⟨ab⟩` correlation of a two-mode state.
///
/// For states of the closed-form family every other quadratic moment
/// (`⟨a⟩`, `⟨a²⟩`, `⟨a†b⟩`, ...) vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet<T = f64> {
    pub n_a: T,
    pub n_b: T,
    pub ab: Complex<T>,
}

/// `Λ = 𝓝⁻¹ = 1/((1−f₃)² − f₅² − f₉² − f₁₂²)`.
pub fn generating_function<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<T> {
    normalizable(f3, f5, f9, f12)?;
    let one = T::one();
    Ok(one / ((one - f3) * (one - f3) - f5 * f5 - f9 * f9 - f12 * f12))
}

/// Gradient `(∂₃, ∂₅, ∂₉, ∂₁₂)` of `Λ`.
pub fn generating_gradient<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<[T; 4]> {
    let lam = generating_function(f3, f5, f9, f12)?;
    let two = T::lit(2.0);
    let l2 = two * lam * lam;
    Ok([(T::one() - f3) * l2, f5 * l2, f9 * l2, f12 * l2])
}

/// Moments with the drive phase set to zero; see [`moments_with_phase`].
pub fn moments<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<MomentSet<T>> {
    moments_with_phase(f3, f5, f9, f12, T::zero())
}

/// `⟨a†a⟩ = ½𝓝(∂₃+∂₉)Λ − 1`, `⟨b†b⟩ = ½𝓝(∂₃−∂₉)Λ − 1` and
/// `⟨ab⟩ = ½𝓝(∂₁₂ + i∂₅)Λ e^{−iφ} = (f₁₂ + i f₅)e^{−iφ}/𝓝`.
///
/// Without the `−1` the derivative expression gives the anti-normally
/// ordered `⟨aa†⟩` (it equals one on the vacuum).
pub fn moments_with_phase<T: Real>(f3: T, f5: T, f9: T, f12: T, phi: T) -> Result<MomentSet<T>> {
    let lam = generating_function(f3, f5, f9, f12)?;
    let [d3, d5, d9, d12] = generating_gradient(f3, f5, f9, f12)?;
    let half_norm = T::lit(0.5) / lam;
    let one = T::one();
    let ab = Complex::new(d12 * half_norm, d5 * half_norm) * Complex::from_polar(one, -phi);
    Ok(MomentSet {
        n_a: half_norm * (d3 + d9) - one,
        n_b: half_norm * (d3 - d9) - one,
        ab,
    })
}
