//! Adaptive integration of the vacuum-start Wei-Norman equations.

use super::ode::{solve, StepControl, StepStats};
use super::regime::{classify_regime, RegimeLabel};
use super::rhs::{pack, rates_packed, unpack, Fault, F12, F3, F5, F9};
use super::state::WnState;
use crate::error::{Error, Result};
use crate::params::ParamSchedule;
use crate::scalar::Real;
use serde_json::json;
use std::io::Write;

/// `1 − x₊` below this is reported as divergence.
pub const DIVERGENCE_MARGIN: f64 = 1e-12;

/// Integrated normalization `e^{2f₁+f₀}` below this is reported as divergence.
///
/// Catches the approach `x₊ → 1` once `1 − x₊` is no longer resolved by the
/// integrator but `f₁` keeps falling.
pub const NORMALIZATION_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions<T = f64> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
    pub h_max: Option<T>,
    /// Check invariants after every accepted step.
    pub check_invariants: bool,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl<T: Real> Default for IntegrateOptions<T> {
    fn default() -> Self {
        Self {
            rtol: T::lit(1e-10),
            atol: T::lit(1e-12),
            max_steps: 1_000_000,
            h_max: None,
            check_invariants: true,
            fault: None,
        }
    }
}

impl<T: Real> IntegrateOptions<T> {
    pub fn with_tolerances(rtol: T, atol: T) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |x: T| x > T::zero() && x <= T::lit(1e-2);
        if !ok(self.rtol) {
            return Err(Error::param(
                "rtol",
                format!("must lie in (0, 1e-2], got {}", self.rtol),
            ));
        }
        if !ok(self.atol) {
            return Err(Error::param(
                "atol",
                format!("must lie in (0, 1e-2], got {}", self.atol),
            ));
        }
        Ok(())
    }

    /// Largest normalization residual tolerated before the run is aborted.
    pub fn invariant_limit(&self) -> T {
        T::lit(100.0) * (self.rtol + self.atol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryMeta<T = f64> {
    pub rtol: T,
    pub atol: T,
    pub stats: StepStats,
    /// `None` for time-dependent coefficients.
    pub regime: Option<RegimeLabel<T>>,
    pub max_invariant_residual: T,
}

/// Time-ordered Wei-Norman samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T = f64> {
    pub samples: Vec<WnState<T>>,
    pub meta: TrajectoryMeta<T>,
}

/// Column names of the serialized form.
pub const TRAJECTORY_COLUMNS: [&str; 7] =
    ["t", "f1", "f3", "f5", "f9", "f12", "invariant_residual"];

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&WnState<T>> {
        self.samples.last()
    }

    /// One row per sample, in [`TRAJECTORY_COLUMNS`] order.
    pub fn rows(&self) -> impl Iterator<Item = [T; 7]> + '_ {
        self.samples.iter().map(|s| {
            [
                s.t,
                s.f[1],
                s.f[3],
                s.f[5],
                s.f[9],
                s.f[12],
                s.normalization_residual(),
            ]
        })
    }

    /// Comma-separated, header row first, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", TRAJECTORY_COLUMNS.join(","))?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{:.16e}", v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// `{"columns": [...], "rows": [[...], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<f64>> = self
            .rows()
            .map(|r| r.iter().map(|v| v.as_f64()).collect())
            .collect();
        json!({ "columns": TRAJECTORY_COLUMNS, "rows": rows })
    }
}

fn check_state<T: Real>(s: &WnState<T>, opts: &IntegrateOptions<T>) -> Result<T> {
    let margin = T::one() - s.x_plus();
    let norm = (T::lit(2.0) * s.f[1] + s.f[0]).exp();
    if !(margin > T::lit(DIVERGENCE_MARGIN)) || !(norm > T::lit(NORMALIZATION_FLOOR)) {
        return Err(Error::Divergence {
            t: s.t.as_f64(),
            margin: margin.as_f64(),
        });
    }
    let floor = -opts.invariant_limit();
    if s.f3() < floor {
        return Err(Error::InvariantViolation {
            t: s.t.as_f64(),
            what: "f3 >= 0",
            value: s.f3().as_f64(),
            limit: floor.as_f64(),
        });
    }
    let res = s.normalization_residual().abs();
    if !(res <= opts.invariant_limit()) {
        return Err(Error::InvariantViolation {
            t: s.t.as_f64(),
            what: "normalization identity",
            value: res.as_f64(),
            limit: opts.invariant_limit().as_f64(),
        });
    }
    Ok(res)
}

#[derive(Clone, Copy)]
enum Output<'a, T> {
    Steps,
    At(&'a [T]),
}

fn run<T: Real, S: ParamSchedule<T>>(
    sched: &S,
    t_end: T,
    opts: &IntegrateOptions<T>,
    initial: &WnState<T>,
    output: Output<'_, T>,
) -> Result<Trajectory<T>> {
    opts.validate()?;
    if !(t_end > initial.t) || !t_end.is_finite() {
        return Err(Error::param(
            "t_end",
            format!("must be finite and after the initial time, got {t_end}"),
        ));
    }
    let ctl = StepControl {
        rtol: opts.rtol,
        atol: opts.atol,
        max_steps: opts.max_steps,
        h_max: opts.h_max,
    };
    let mut max_res = T::zero();
    let mut samples = Vec::new();
    let mut cursor = 0usize;
    if opts.check_invariants {
        max_res = check_state(initial, opts)?;
    }
    match output {
        Output::Steps => samples.push(*initial),
        Output::At(times) => {
            while cursor < times.len() && times[cursor] <= initial.t {
                samples.push(WnState {
                    t: times[cursor],
                    ..*initial
                });
                cursor += 1;
            }
        }
    }
    let fault = opts.fault;
    let rhs = |t: T, y: &[T; 6]| rates_packed(y, &sched.at(t), fault);
    let (_, stats) = solve(
        rhs,
        initial.t,
        pack(initial),
        t_end,
        &ctl,
        |dense, t1, y1| {
            let s = unpack(t1, y1);
            if opts.check_invariants {
                max_res = max_res.max(check_state(&s, opts)?);
            }
            match output {
                Output::Steps => samples.push(s),
                Output::At(times) => {
                    while cursor < times.len() && times[cursor] <= t1 {
                        let tq = times[cursor];
                        let y = if tq == t1 { *y1 } else { dense.eval(tq) };
                        let q = unpack(tq, &y);
                        if opts.check_invariants {
                            max_res = max_res.max(check_state(&q, opts)?);
                        }
                        samples.push(q);
                        cursor += 1;
                    }
                }
            }
            Ok(())
        },
    )?;
    let regime = sched
        .is_constant()
        .then(|| classify_regime(&sched.at(initial.t)));
    Ok(Trajectory {
        samples,
        meta: TrajectoryMeta {
            rtol: opts.rtol,
            atol: opts.atol,
            stats,
            regime,
            max_invariant_residual: max_res,
        },
    })
}

/// Integrates from `initial` to `t_end`, keeping every accepted step.
///
/// `initial` must lie on a vacuum-start trajectory (normally
/// [`WnState::vacuum`]) for the normalization check to be meaningful.
pub fn integrate<T: Real, S: ParamSchedule<T>>(
    sched: &S,
    t_end: T,
    opts: &IntegrateOptions<T>,
    initial: &WnState<T>,
) -> Result<Trajectory<T>> {
    run(sched, t_end, opts, initial, Output::Steps)
}

/// Like [`integrate`] but samples the dense output at `times`
/// (strictly increasing, all `>= initial.t`).
pub fn integrate_at<T: Real, S: ParamSchedule<T>>(
    sched: &S,
    times: &[T],
    opts: &IntegrateOptions<T>,
    initial: &WnState<T>,
) -> Result<Trajectory<T>> {
    if times.is_empty() {
        return Err(Error::param("times", "at least one output time required"));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::param("times", "must be strictly increasing"));
    }
    if times[0] < initial.t {
        return Err(Error::param("times", "must not precede the initial state"));
    }
    let t_end = *times.last().unwrap();
    if t_end == initial.t {
        if opts.check_invariants {
            check_state(initial, opts)?;
        }
        return Ok(Trajectory {
            samples: vec![*initial],
            meta: TrajectoryMeta {
                rtol: opts.rtol,
                atol: opts.atol,
                stats: StepStats::default(),
                regime: sched
                    .is_constant()
                    .then(|| classify_regime(&sched.at(t_end))),
                max_invariant_residual: initial.normalization_residual().abs(),
            },
        });
    }
    run(sched, t_end, opts, initial, Output::At(times))
}

/// Evaluates the packed right-hand side; used by the steady-state search.
pub(crate) fn quad_rates<T: Real>(p: &crate::params::SystemParams<T>, q: &[T; 4]) -> [T; 4] {
    let y = [T::zero(), T::zero(), q[0], q[1], q[2], q[3]];
    let d = rates_packed(&y, p, None);
    [d[F3], d[F5], d[F9], d[F12]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{SystemParams, TimeDependent};

    #[test]
    fn undamped_tanh() {
        let xi = 1.3;
        let p = SystemParams::new(0.0f64, 0.0, 0.0, 0.0, 0.0, xi, 0.0).unwrap();
        let times: Vec<f64> = (0..=40).map(|k| k as f64 * 0.1).collect();
        let tr =
            integrate_at(&p, &times, &IntegrateOptions::default(), &WnState::vacuum()).unwrap();
        assert_eq!(tr.len(), times.len());
        for s in &tr.samples {
            assert!((s.f[5] - (xi * s.t / 4.0).tanh()).abs() < 1e-10);
            assert_eq!(s.f[3], 0.0);
            assert_eq!(s.f[9], 0.0);
        }
    }

    #[test]
    fn no_drive_stays_at_vacuum() {
        let p = SystemParams::new(0.5f64, 0.2, 0.0, 0.0, 0.3, 0.0, 0.0).unwrap();
        let tr = integrate(&p, 10.0, &IntegrateOptions::default(), &WnState::vacuum()).unwrap();
        for s in &tr.samples {
            assert_eq!(s.quad(), [0.0; 4]);
        }
    }

    #[test]
    fn undamped_long_run_diverges() {
        let p = SystemParams::new(0.0f64, 0.0, 0.0, 0.0, 0.0, 1.5, 0.0).unwrap();
        let r = integrate(&p, 100.0, &IntegrateOptions::default(), &WnState::vacuum());
        assert!(matches!(r, Err(Error::Divergence { .. })), "{r:?}");
    }

    #[test]
    fn fault_breaks_normalization() {
        let p = SystemParams::symmetric(0.5f64, 0.2, 1.5, 0.0).unwrap();
        let opts = IntegrateOptions {
            fault: Some(Fault::F5DampingSign),
            ..Default::default()
        };
        let r = integrate(&p, 10.0, &opts, &WnState::vacuum());
        assert!(matches!(r, Err(Error::InvariantViolation { .. })), "{r:?}");
    }

    #[test]
    fn rejects_bad_tolerances() {
        let p = SystemParams::symmetric(0.5f64, 0.2, 1.5, 0.0).unwrap();
        let o = IntegrateOptions::with_tolerances(0.1, 1e-12);
        assert!(integrate(&p, 1.0, &o, &WnState::vacuum()).is_err());
        let o = IntegrateOptions::default();
        assert!(integrate(&p, 0.0, &o, &WnState::vacuum()).is_err());
    }

    #[test]
    fn symmetric_and_resonant_reductions() {
        let p = SystemParams::new(0.7f64, 0.7, 0.4, 0.4, 0.0, 1.1, 0.5).unwrap();
        let tr = integrate(&p, 8.0, &IntegrateOptions::default(), &WnState::vacuum()).unwrap();
        assert!(tr.samples.iter().all(|s| s.f[9] == 0.0 && s.f[12] == 0.0));
        assert!(tr.meta.max_invariant_residual < 1e-9);
    }

    #[test]
    fn time_dependent_hook() {
        // constant schedule through the closure path must agree
        let p = SystemParams::new(0.3f64, 0.6, 0.2, 0.1, 0.4, 0.9, 0.0).unwrap();
        let o = IntegrateOptions::default();
        let a = integrate_at(&p, &[5.0], &o, &WnState::vacuum()).unwrap();
        let b = integrate_at(&TimeDependent(|_t: f64| p), &[5.0], &o, &WnState::vacuum()).unwrap();
        assert_eq!(a.samples, b.samples);
        assert!(b.meta.regime.is_none());
        // ramped drive still satisfies the normalization identity
        let ramp = TimeDependent(|t: f64| SystemParams {
            xi_abs: 0.9 * (1.0 - (-t).exp()),
            ..p
        });
        let c = integrate(&ramp, 6.0, &o, &WnState::vacuum()).unwrap();
        assert!(c.meta.max_invariant_residual < 1e-9);
    }

    #[test]
    fn csv_layout() {
        let p = SystemParams::symmetric(0.5f64, 0.2, 1.5, 0.0).unwrap();
        let tr = integrate_at(
            &p,
            &[0.0, 0.5, 1.0],
            &IntegrateOptions::default(),
            &WnState::vacuum(),
        )
        .unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,f1,f3,f5,f9,f12,invariant_residual");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0.0000000000000000e0,"));
        assert_eq!(tr.to_json()["rows"].as_array().unwrap().len(), 3);
    }
}
