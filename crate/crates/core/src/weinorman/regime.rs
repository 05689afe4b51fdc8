use crate::params::SystemParams;
use crate::scalar::Real;
use serde::Serialize;

/// Absolute tolerance on `|ξ|² − Ξ²` for the boundary label.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Occupations grow without bound.
    Underdamped,
    /// Bounded occupations and a normalizable steady state.
    Overdamped,
    Boundary,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Underdamped => "underdamped",
            Regime::Overdamped => "overdamped",
            Regime::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeLabel<T = f64> {
    pub regime: Regime,
    /// `Ξ²`.
    pub xi_boundary_sq: T,
}

/// Detuning as it enters the regime boundary and the steady-state closed
/// forms: `δ̃ = 4δ` for the Hamiltonian detuning `δ`.
pub fn effective_detuning<T: Real>(p: &SystemParams<T>) -> T {
    T::lit(4.0) * p.delta
}

/// `Ξ² = (1 − (κ₁−κ₂)²/(κ₁+κ₂)²)(δ̃² + (κ₁+κ₂)²)`, which is `δ̃²` without damping.
pub fn xi_boundary_sq<T: Real>(p: &SystemParams<T>) -> T {
    let s = p.kappa_sum();
    let dt = effective_detuning(p);
    let d2 = dt * dt;
    if s == T::zero() {
        return d2;
    }
    // 1 − (κ₁−κ₂)²/(κ₁+κ₂)² = 4κ₁κ₂/(κ₁+κ₂)²
    T::lit(4.0) * p.kappa1 * p.kappa2 / (s * s) * (d2 + s * s)
}

pub fn classify_regime<T: Real>(p: &SystemParams<T>) -> RegimeLabel<T> {
    let b = xi_boundary_sq(p);
    let x2 = p.xi_abs * p.xi_abs;
    let regime = if (x2 - b).abs() <= T::lit(BOUNDARY_TOL) {
        Regime::Boundary
    } else if x2 > b {
        Regime::Underdamped
    } else {
        Regime::Overdamped
    };
    RegimeLabel {
        regime,
        xi_boundary_sq: b,
    }
}
