//! Negativity along the symmetric resonant transients and steady-state
//! separability thresholds for identical baths.

use super::negativity::negativity;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::weinorman::{equilibrium_tau, thermal_g_functions};

fn check<T: Real>(kappa: T, nth: T, xi_abs: T) -> Result<()> {
    for (name, v) in [("kappa", kappa), ("nth", nth), ("xi_abs", xi_abs)] {
        if !v.is_finite() || v < T::zero() {
            return Err(Error::param(
                name,
                format!("must be finite and >= 0, got {v}"),
            ));
        }
    }
    Ok(())
}

/// Vacuum-start negativity written through the decay factor `E = e^{−tΓ}`,
/// `Γ = κ + |ξ|/2`:
///
/// `(1−E)(|ξ|−4κn) / (2[E(|ξ|−4κn) + 2κ(2n+1)])`, clipped at zero.
///
/// `E = 0` gives the steady value `(|ξ|−4κn)/(4κ(2n+1))`.
pub fn transient_negativity_from_decay<T: Real>(decay: T, kappa: T, nth: T, xi_abs: T) -> T {
    let (one, two, four) = (T::one(), T::lit(2.0), T::lit(4.0));
    let a = xi_abs - four * kappa * nth;
    if !(a > T::zero()) {
        return T::zero();
    }
    (one - decay) * a / (two * (decay * a + two * kappa * (two * nth + one)))
}

/// Vacuum-start negativity `max(0, −r₊/(1+r₊))` for identical baths and resonant drive.
pub fn transient_negativity<T: Real>(t: T, kappa: T, nth: T, xi_abs: T) -> Result<T> {
    check(kappa, nth, xi_abs)?;
    if !(t >= T::zero()) || !t.is_finite() {
        return Err(Error::param(
            "t",
            format!("must be finite and >= 0, got {t}"),
        ));
    }
    let a = xi_abs - T::lit(4.0) * kappa * nth;
    if !(a > T::zero()) {
        return Ok(T::zero());
    }
    let gamma = kappa + xi_abs / T::lit(2.0);
    let x = -t * gamma;
    let (one, two) = (T::one(), T::lit(2.0));
    // 1 − E without cancellation at small t
    let one_minus_e = -x.exp_m1();
    let e = one - one_minus_e;
    Ok(one_minus_e * a / (two * (e * a + two * kappa * (two * nth + one))))
}

/// `(|ξ|−4κn)/(4κ(2n+1))`, clipped at zero; infinite without damping.
pub fn steady_negativity_symmetric<T: Real>(kappa: T, nth: T, xi_abs: T) -> Result<T> {
    check(kappa, nth, xi_abs)?;
    Ok(transient_negativity_from_decay(
        T::zero(),
        kappa,
        nth,
        xi_abs,
    ))
}

/// Negativity `(g₃, g₅)` for a start in the thermal product state with ratio `τ`.
///
/// `τ = 0` is the vacuum start and returns [`transient_negativity`] exactly.
pub fn thermal_negativity<T: Real>(t: T, kappa: T, nth: T, xi_abs: T, tau: T) -> Result<T> {
    if tau == T::zero() {
        return transient_negativity(t, kappa, nth, xi_abs);
    }
    let (g3, g5) = thermal_g_functions(t, kappa, nth, xi_abs, tau)?;
    Ok(negativity(g3, g5, T::zero(), T::zero())?.value)
}

fn onset_gap<T: Real>(t: T, kappa: T, nth: T, xi_abs: T, tau: T) -> Result<T> {
    let (g3, g5) = thermal_g_functions(t, kappa, nth, xi_abs, tau)?;
    Ok(g5.abs() - g3)
}

/// Relative width at which [`thermal_onset_time`] stops bisecting.
pub const ONSET_RTOL: f64 = 1e-10;

/// First time the negativity of the equilibrium start `τ = n/(n+1)` becomes
/// positive: zero at `n = 0`, `None` when `|ξ| ≤ 4κn` (never entangled).
pub fn thermal_onset_time<T: Real>(kappa: T, nth: T, xi_abs: T) -> Result<Option<T>> {
    check(kappa, nth, xi_abs)?;
    if nth == T::zero() {
        return Ok(Some(T::zero()));
    }
    if !(xi_abs > T::lit(4.0) * kappa * nth) {
        return Ok(None);
    }
    let tau = equilibrium_tau(nth);
    let gamma = kappa + xi_abs / T::lit(2.0);
    let grow = T::lit(1.25);
    let t_cap = T::lit(1e6) / gamma;
    let mut lo = T::zero();
    let mut hi = T::lit(1e-3) / gamma;
    while onset_gap(hi, kappa, nth, xi_abs, tau)? <= T::zero() {
        lo = hi;
        hi *= grow;
        if hi > t_cap {
            return Err(Error::NoConvergence(format!(
                "negativity still zero at t = {lo}"
            )));
        }
    }
    let tol = T::lit(ONSET_RTOL).max(T::lit(4.0) * T::epsilon());
    while hi - lo > tol * hi {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if onset_gap(mid, kappa, nth, xi_abs, tau)? > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Steady-state separability for identical baths with `δ̃ = 4δ`:
/// for `|ξ|² ≥ 4κ² + δ̃²` separable iff `4nκ > √(|ξ|² − δ̃²)`, otherwise
/// iff `2n√(4κ² + δ̃²) > |ξ|`.
pub fn steady_separable_symmetric<T: Real>(kappa: T, nth: T, xi_abs: T, delta: T) -> bool {
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    let dt = four * delta;
    let g = four * kappa * kappa + dt * dt;
    let x2 = xi_abs * xi_abs;
    if x2 >= g {
        four * nth * kappa > (x2 - dt * dt).sqrt()
    } else {
        two * nth * g.sqrt() > xi_abs
    }
}

/// The `|ξ|` at which the identical-bath steady state stops being separable:
/// `2n√(4κ² + δ̃²)` when that lies in the overdamped regime (`n ≤ ½`),
/// `√(16n²κ² + δ̃²)` otherwise.
pub fn separability_threshold_symmetric<T: Real>(kappa: T, nth: T, delta: T) -> T {
    let four = T::lit(4.0);
    let dt = four * delta;
    let g = four * kappa * kappa + dt * dt;
    if nth <= T::lit(0.5) {
        T::lit(2.0) * nth * g.sqrt()
    } else {
        (four * four * nth * nth * kappa * kappa + dt * dt).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weinorman::analytic_symmetric;

    #[test]
    fn examples() {
        assert_eq!(transient_negativity(0.0f64, 1.0, 0.0, 2.0).unwrap(), 0.0);
        assert!((transient_negativity(200.0f64, 1.0, 0.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        for t in [0.1, 1.0, 4.0] {
            let want = ((2.0 * t / 2.0f64).exp() - 1.0) / 2.0;
            let got = transient_negativity(t, 0.0, 0.0, 2.0).unwrap();
            assert!((got - want).abs() < 1e-12 * want);
        }
        assert_eq!(transient_negativity(3.0f64, 1.0, 1.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn matches_r_plus() {
        for &(k, n, x) in &[
            (1.0f64, 0.0, 1.0),
            (0.5, 0.2, 3.0),
            (0.1, 1.0, 1.0),
            (1.0, 0.3, 5.0),
        ] {
            for t in [0.2, 1.0, 3.0, 10.0] {
                let f = analytic_symmetric(t, k, n, x).unwrap();
                let neg = negativity(f.f[3], f.f[5], 0.0, 0.0).unwrap().value;
                let got = transient_negativity(t, k, n, x).unwrap();
                assert!((got - neg).abs() < 1e-12, "{k} {n} {x} {t}: {got} vs {neg}");
            }
        }
    }

    #[test]
    fn steady_limit_exact() {
        for &(k, n, x) in &[(1.0, 0.0, 1.0), (1.0, 0.0, 2.0), (0.5, 0.25, 3.0)] {
            let want = (x - 4.0 * k * n) / (4.0 * k * (2.0 * n + 1.0));
            assert_eq!(transient_negativity_from_decay(0.0f64, k, n, x), want);
        }
        assert!(steady_negativity_symmetric(0.0f64, 0.0, 1.0)
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn thermal_reduces_to_vacuum() {
        for t in [0.5f64, 2.0] {
            let a = thermal_negativity(t, 1.0, 0.2, 3.0, 0.0).unwrap();
            let b = transient_negativity(t, 1.0, 0.2, 3.0).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn onset() {
        assert_eq!(thermal_onset_time(1.0f64, 0.0, 1.0).unwrap(), Some(0.0));
        assert_eq!(thermal_onset_time(1.0f64, 1.0, 4.0).unwrap(), None);
        let ts = thermal_onset_time(0.1f64, 1.0, 1.0).unwrap().unwrap();
        assert!(ts > 0.0);
        let tau = 0.5;
        assert_eq!(
            thermal_negativity(ts * (1.0 - 1e-6), 0.1, 1.0, 1.0, tau).unwrap(),
            0.0
        );
        assert!(thermal_negativity(ts * (1.0 + 1e-6), 0.1, 1.0, 1.0, tau).unwrap() > 0.0);
    }

    #[test]
    fn separability_thresholds() {
        // resonant: both branches reduce to 4κn vs |ξ|
        assert!(steady_separable_symmetric(1.0f64, 1.0, 3.9, 0.0));
        assert!(!steady_separable_symmetric(1.0f64, 1.0, 4.1, 0.0));
        assert!(!steady_separable_symmetric(1.0f64, 0.0, 0.5, 0.3));
    }

    #[test]
    fn threshold_is_the_separability_edge() {
        for &(k, n, d) in &[
            (1.0f64, 0.5, 0.0),
            (1.0, 0.2, 0.25),
            (0.5, 1.3, 0.1),
            (2.0, 0.0, 0.3),
        ] {
            let xc = separability_threshold_symmetric(k, n, d);
            assert!(steady_separable_symmetric(k, n, xc * (1.0 - 1e-9) - 1e-12, d) || xc == 0.0);
            assert!(!steady_separable_symmetric(
                k,
                n,
                xc * (1.0 + 1e-9) + 1e-12,
                d
            ));
        }
        assert!((separability_threshold_symmetric(1.0f64, 0.5, 0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn vacuum_start_is_the_transient() {
        for t in [0.0f64, 0.3, 2.0, 9.0] {
            let a = thermal_negativity(t, 0.7, 0.2, 1.9, 0.0).unwrap();
            assert_eq!(a, transient_negativity(t, 0.7, 0.2, 1.9).unwrap());
            let b = thermal_negativity(t, 0.7, 0.2, 1.9, 1e-300).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
