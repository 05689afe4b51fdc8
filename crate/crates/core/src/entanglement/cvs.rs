//! Quadrature-variance separability test for states with `f₉ = 0`.

use super::moments::{moments_with_phase, MomentSet};
use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

/// Largest `|f₉|` accepted by [`cvs_separable`].
pub const F9_TOL: f64 = 1e-12;

/// Separable iff `f₃ ≥ |z|`, `|z| = √(f₅² + f₁₂²)`.
///
/// The reduction assumes identical baths, where `f₉` vanishes; for other
/// states use [`negativity`](super::negativity).
pub fn cvs_separable<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<bool> {
    if f9.abs() > T::lit(F9_TOL) {
        return Err(Error::NotApplicable(format!(
            "reduced quadrature criterion needs f9 = 0, got {f9}; use negativity"
        )));
    }
    Ok(f3 >= f5.hypot(f12))
}

/// Both sides of the quadrature inequalities for one pair of directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvsAudit<T = f64> {
    /// `⟨(ΔX_d)²⟩ + ⟨(ΔX_d′)²⟩`.
    pub lhs: T,
    /// `|d₁d₂′ − d₂d₁′ + d₃d₄′ − d₄d₃′|`, obeyed by every state.
    pub uncertainty_bound: T,
    /// `|d₁d₂′ − d₂d₁′| + |d₃d₄′ − d₄d₃′|`, obeyed by separable states.
    pub separable_bound: T,
}

impl<T: Real> CvsAudit<T> {
    pub fn violates_separability(&self) -> bool {
        self.lhs < self.separable_bound
    }
}

/// `⟨X_d²⟩ = |λ₁|²(2⟨a†a⟩+1) + |λ₂|²(2⟨b†b⟩+1) + 4 Re(λ₁λ₂⟨a†b†⟩)` with
/// `X_d = d₁x₁ + d₂p₁ + d₃x₂ + d₄p₂`, `λ₁ = (d₁+id₂)/√2`, `λ₂ = (d₃+id₄)/√2`.
/// All first moments and the remaining second moments are taken to vanish.
pub fn quadrature_variance<T: Real>(m: &MomentSet<T>, d: [T; 4]) -> T {
    let s = T::FRAC_1_SQRT_2();
    let l1 = Complex::new(d[0] * s, d[1] * s);
    let l2 = Complex::new(d[2] * s, d[3] * s);
    let (one, two, four) = (T::one(), T::lit(2.0), T::lit(4.0));
    l1.norm_sqr() * (two * m.n_a + one)
        + l2.norm_sqr() * (two * m.n_b + one)
        + four * (l1 * l2 * m.ab.conj()).re
}

pub fn cvs_quadratic_form<T: Real>(m: &MomentSet<T>, d: [T; 4], dp: [T; 4]) -> CvsAudit<T> {
    let w1 = d[0] * dp[1] - d[1] * dp[0];
    let w2 = d[2] * dp[3] - d[3] * dp[2];
    CvsAudit {
        lhs: quadrature_variance(m, d) + quadrature_variance(m, dp),
        uncertainty_bound: (w1 + w2).abs(),
        separable_bound: w1.abs() + w2.abs(),
    }
}

/// Directions with `|λᵢ| = |λᵢ′| = 1` that saturate the uncertainty bound at
/// zero, reach the separable bound 4 and minimize the variance sum for a
/// correlation `⟨ab⟩` of phase `arg_ab`: `λ₁ = 1`, `λ₁′ = i`,
/// `λ₂ = −e^{i arg}`, `λ₂′ = −iλ₂`.
pub fn optimal_directions<T: Real>(arg_ab: T) -> ([T; 4], [T; 4]) {
    let r2 = T::SQRT_2();
    let l2 = -Complex::from_polar(T::one(), arg_ab);
    let l2p = l2 * Complex::new(T::zero(), -T::one());
    (
        [r2, T::zero(), r2 * l2.re, r2 * l2.im],
        [T::zero(), r2, r2 * l2p.re, r2 * l2p.im],
    )
}

/// [`cvs_quadratic_form`] along [`optimal_directions`] for the closed-form state.
pub fn cvs_audit<T: Real>(f3: T, f5: T, f9: T, f12: T, phi: T) -> Result<CvsAudit<T>> {
    let m = moments_with_phase(f3, f5, f9, f12, phi)?;
    let (d, dp) = optimal_directions(m.ab.arg());
    Ok(cvs_quadratic_form(&m, d, dp))
}
