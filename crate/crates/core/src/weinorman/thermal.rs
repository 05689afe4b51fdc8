//! Corrections for a start in the thermal product state `∝ exp(τ H₃)|00⟩⟨00|`.

use super::analytic::{analytic_symmetric, pqr};
use super::state::WnState;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if !(tau >= T::zero() && tau < T::one()) {
        return Err(Error::param(
            "tau",
            format!("must lie in [0, 1), got {tau}"),
        ));
    }
    Ok(())
}

fn poles<T: Real>(tau: T, q_minus: T, q_plus: T) -> Result<()> {
    for (sign, q) in [('-', q_minus), ('+', q_plus)] {
        let v = tau * q;
        if (T::one() - v).abs() <= T::epsilon() * T::lit(16.0) {
            return Err(Error::Pole {
                sign,
                value: v.as_f64(),
            });
        }
    }
    Ok(())
}

/// `(𝓕₃, 𝓕₅)` from `f₁, f₂, f₄, f₆` of the symmetric resonant solution:
///
/// `𝓕₃ = ½(−e^{2f₁+f₆}τ/(f₂τ−f₄τ−1) − e^{2f₁−f₆}τ/(f₂τ+f₄τ−1))`,
/// `𝓕₅ = ½( e^{2f₁−f₆}τ/(f₂τ+f₄τ−1) − e^{2f₁+f₆}τ/(f₂τ−f₄τ−1))`.
pub fn thermal_corrections<T: Real>(f: &WnState<T>, tau: T) -> Result<(T, T)> {
    check_tau(tau)?;
    let (f1, f2, f4, f6) = (f.f[1], f.f[2], f.f[4], f.f[6]);
    poles(tau, f2 - f4, f2 + f4)?;
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let a = (two * f1 + f6).exp() * tau / (f2 * tau - f4 * tau - T::one());
    let b = (two * f1 - f6).exp() * tau / (f2 * tau + f4 * tau - T::one());
    Ok((half * (-a - b), half * (b - a)))
}

/// Same quantities from `p±, q±` directly:
/// `𝓡± = τ e^{p±}/(1 − τ q±)`, `𝓕₃ = (𝓡₋+𝓡₊)/2`, `𝓕₅ = (𝓡₋−𝓡₊)/2`.
pub fn thermal_corrections_sandwich<T: Real>(
    t: T,
    kappa: T,
    nth: T,
    xi_abs: T,
    tau: T,
) -> Result<(T, T)> {
    check_tau(tau)?;
    let s = pqr(t, kappa, nth, xi_abs)?;
    poles(tau, s.q[1], s.q[0])?;
    let rr = |i: usize| tau * s.p[i].exp() / (T::one() - tau * s.q[i]);
    let (rp, rm) = (rr(0), rr(1));
    let half = T::lit(0.5);
    Ok((half * (rm + rp), half * (rm - rp)))
}

/// `(g₃, g₅) = (f₃ + 𝓕₃, f₅ + 𝓕₅)`.
pub fn thermal_g_functions<T: Real>(t: T, kappa: T, nth: T, xi_abs: T, tau: T) -> Result<(T, T)> {
    let f = analytic_symmetric(t, kappa, nth, xi_abs)?;
    let (c3, c5) = thermal_corrections(&f, tau)?;
    Ok((f.f[3] + c3, f.f[5] + c5))
}

/// `τ = n/(n+1)`: the bath's own thermal ratio.
pub fn equilibrium_tau<T: Real>(nth: T) -> T {
    nth / (nth + T::one())
}
