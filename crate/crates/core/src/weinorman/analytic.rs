//! Closed-form transients for identical baths and resonant drive.
//!
//! The six-function system splits into two independent three-function
//! systems with solutions `p±, q±, r±`.

use super::state::WnState;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `p±, q±, r±`, index 0 is the `+` branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pqr<T = f64> {
    pub p: [T; 2],
    pub q: [T; 2],
    pub r: [T; 2],
}

fn check_inputs<T: Real>(t: T, kappa: T, nth: T, xi_abs: T) -> Result<()> {
    for (name, v) in [("t", t), ("kappa", kappa), ("nth", nth), ("xi_abs", xi_abs)] {
        if !v.is_finite() || v < T::zero() {
            return Err(Error::param(
                name,
                format!("must be finite and >= 0, got {v}"),
            ));
        }
    }
    Ok(())
}

/// One branch with `γ = κ ± |ξ|/2`, `A = 2(n+1)κ ± |ξ|/2`, `s = ±|ξ|/2`.
///
/// With `h = (e^{γt} − 1)/γ`:
/// `r = −h(s − 2nκ)/(2 + hA)`, `q = hA/(hA + 2)`, `p = γt − 2 ln(1 + hA/2)`.
fn branch<T: Real>(t: T, gamma: T, a: T, s: T, kappa: T, nth: T) -> (T, T, T) {
    let two = T::lit(2.0);
    let src = s - two * nth * kappa;
    let e = gamma * t;
    if gamma > T::zero() && e > T::lit(20.0) {
        // 1/h = γ/expm1(γt) underflows gracefully; A > 0 on this branch
        let inv_h = gamma / e.exp_m1();
        let r = -src / (two * inv_h + a);
        let q = a / (a + two * inv_h);
        let ln_h = e + (-(-e).exp()).ln_1p() - gamma.ln();
        let p = e - two * (ln_h + (inv_h + a / two).ln());
        (p, q, r)
    } else {
        let h = T::expm1_over(gamma, t);
        let ha = h * a;
        let r = -h * src / (two + ha);
        let q = ha / (ha + two);
        let p = e - two * (ha / two).ln_1p();
        (p, q, r)
    }
}

pub fn pqr<T: Real>(t: T, kappa: T, nth: T, xi_abs: T) -> Result<Pqr<T>> {
    check_inputs(t, kappa, nth, xi_abs)?;
    let half_xi = xi_abs / T::lit(2.0);
    let a0 = T::lit(2.0) * (nth + T::one()) * kappa;
    let (pp, qp, rp) = branch(t, kappa + half_xi, a0 + half_xi, half_xi, kappa, nth);
    let (pm, qm, rm) = branch(t, kappa - half_xi, a0 - half_xi, -half_xi, kappa, nth);
    Ok(Pqr {
        p: [pp, pm],
        q: [qp, qm],
        r: [rp, rm],
    })
}

/// `f₀ … f₆` at time `t` for `κ₁ = κ₂ = κ`, `n₁ = n₂ = nth`, `δ = 0`, vacuum start.
///
/// `f₁ = (p₋+p₊)/4`, `f₂ = (q₋+q₊)/2`, `f₃ = (r₋+r₊)/2`, `f₄ = (q₊−q₋)/2`,
/// `f₅ = (r₋−r₊)/2`, `f₆ = (p₋−p₊)/2`, `f₀ = κt`.
pub fn analytic_symmetric<T: Real>(t: T, kappa: T, nth: T, xi_abs: T) -> Result<WnState<T>> {
    let Pqr { p, q, r } = pqr(t, kappa, nth, xi_abs)?;
    let half = T::lit(0.5);
    let mut f = [T::zero(); 16];
    f[0] = kappa * t;
    f[1] = (p[1] + p[0]) * T::lit(0.25);
    f[2] = (q[1] + q[0]) * half;
    f[3] = (r[1] + r[0]) * half;
    f[4] = (q[0] - q[1]) * half;
    f[5] = (r[1] - r[0]) * half;
    f[6] = (p[1] - p[0]) * half;
    Ok(WnState { f, t })
}

/// Right-hand side of the six-function symmetric resonant system.
pub fn symmetric_rhs<T: Real>(f: &[T; 7], kappa: T, nth: T, xi_abs: T) -> [T; 7] {
    let (one, two) = (T::one(), T::lit(2.0));
    let (half, quarter) = (T::lit(0.5), T::lit(0.25));
    let n1 = nth + one;
    let n21 = two * nth + one;
    let e2f1 = (two * f[1]).exp();
    let (c6, s6) = (f[6].cosh(), f[6].sinh());
    let mut d = [T::zero(); 7];
    d[0] = kappa;
    d[1] = kappa * n1 * f[3] - kappa * n21 * half - quarter * xi_abs * f[5];
    d[2] = half * e2f1 * (two * kappa * n1 * c6 - half * xi_abs * s6);
    d[3] = -half * xi_abs * f[3] * f[5] - kappa * n21 * f[3]
        + kappa * n1 * f[3] * f[3]
        + kappa * (n1 * f[5] * f[5] + nth);
    d[4] = half * e2f1 * (half * xi_abs * c6 - two * kappa * n1 * s6);
    d[5] = kappa * f[5] * (two * n1 * f[3] - n21)
        - quarter * xi_abs * (f[3] * f[3] + f[5] * f[5] - one);
    d[6] = two * kappa * n1 * f[5] - half * xi_abs * f[3];
    d
}
