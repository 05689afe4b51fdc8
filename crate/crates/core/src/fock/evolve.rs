//! Fixed-step RK4 integration of the master equation.

use super::lindblad::LindbladGenerator;
use super::TruncatedDensityMatrix;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Step size; `None` uses [`default_dt`].
    pub dt: Option<f64>,
    /// Repeat the run at half the step and report the difference.
    pub richardson: bool,
    /// Abort when the top-level population exceeds this.
    pub tail_bound: Option<f64>,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            dt: None,
            richardson: true,
            tail_bound: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvolveReport {
    pub rho: TruncatedDensityMatrix,
    pub steps: usize,
    pub dt: f64,
    /// Frobenius distance between the full- and half-step results.
    pub richardson_error: Option<f64>,
    pub trace_drift: f64,
    pub max_tail_mass: f64,
}

/// `min(10⁻², 0.1/((N−1)(|ξ|/2 + Σκᵢ(2nᵢ+1) + 2|δ|) + 1))`, which keeps
/// `h‖L‖` small for RK4 on the truncated space.
pub fn default_dt(p: &SystemParams, cutoff: usize) -> f64 {
    let levels = cutoff.saturating_sub(1) as f64;
    let rates = 0.5 * p.xi_abs
        + p.kappa1 * (2.0 * p.nth1 + 1.0)
        + p.kappa2 * (2.0 * p.nth2 + 1.0)
        + 2.0 * p.delta.abs();
    (1e-2f64).min(0.1 / (levels * rates + 1.0))
}

fn run(
    gen: &LindbladGenerator,
    rho0: &TruncatedDensityMatrix,
    t_end: f64,
    dt: f64,
    tail_bound: Option<f64>,
) -> Result<(TruncatedDensityMatrix, usize, f64)> {
    let steps = ((t_end / dt).ceil() as usize).max(1);
    let h = t_end / steps as f64;
    let n = rho0.cutoff();
    let len = rho0.dim() * rho0.dim();
    let mut rho = rho0.clone();
    let zero = Complex64::new(0.0, 0.0);
    let (mut k, mut acc, mut tmp) = (vec![zero; len], vec![zero; len], vec![zero; len]);
    let mut max_tail = rho.tail_mass();
    let sector = LindbladGenerator::in_sector(rho0);
    let apply = |x: &[Complex64], out: &mut [Complex64]| {
        if sector {
            gen.apply_raw_sector(x, out)
        } else {
            gen.apply_raw(x, out)
        }
    };
    for step in 0..steps {
        let y = rho.matrix().as_slice();
        apply(y, &mut k);
        for i in 0..len {
            acc[i] = k[i];
            tmp[i] = y[i] + k[i] * (0.5 * h);
        }
        apply(&tmp, &mut k);
        for i in 0..len {
            acc[i] += k[i] * 2.0;
            tmp[i] = y[i] + k[i] * (0.5 * h);
        }
        apply(&tmp, &mut k);
        for i in 0..len {
            acc[i] += k[i] * 2.0;
            tmp[i] = y[i] + k[i] * h;
        }
        apply(&tmp, &mut k);
        let y = rho.matrix_mut().as_mut_slice();
        for i in 0..len {
            y[i] += (acc[i] + k[i]) * (h / 6.0);
        }
        rho.hermitize();
        let tail = rho.tail_mass();
        max_tail = max_tail.max(tail);
        if let Some(bound) = tail_bound {
            if tail > bound {
                return Err(Error::TailMassExceeded {
                    cutoff: n,
                    tail_mass: tail,
                    bound,
                    t: (step + 1) as f64 * h,
                });
            }
        }
    }
    Ok((rho, steps, max_tail))
}

/// Integrates `ρ̇ = L ρ` from `rho0` to `t_end`.
pub fn evolve(
    rho0: &TruncatedDensityMatrix,
    params: &SystemParams,
    t_end: f64,
    opts: EvolveOptions,
) -> Result<EvolveReport> {
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::param(
            "t_end",
            format!("must be finite and >= 0, got {t_end}"),
        ));
    }
    let dt = opts.dt.unwrap_or_else(|| default_dt(params, rho0.cutoff()));
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::param("dt", format!("must be positive, got {dt}")));
    }
    let gen = LindbladGenerator::new(params, rho0.cutoff())?;
    if t_end == 0.0 {
        return Ok(EvolveReport {
            rho: rho0.clone(),
            steps: 0,
            dt,
            richardson_error: Some(0.0),
            trace_drift: 0.0,
            max_tail_mass: rho0.tail_mass(),
        });
    }
    let (rho, steps, max_tail) = run(&gen, rho0, t_end, dt, opts.tail_bound)?;
    let richardson_error = if opts.richardson {
        let (fine, _, _) = run(&gen, rho0, t_end, dt / 2.0, opts.tail_bound)?;
        Some(rho.frobenius_distance(&fine)?)
    } else {
        None
    };
    let trace_drift = (rho.trace() - rho0.trace()).norm();
    Ok(EvolveReport {
        rho,
        steps,
        dt: t_end / steps as f64,
        richardson_error,
        trace_drift,
        max_tail_mass: max_tail,
    })
}
