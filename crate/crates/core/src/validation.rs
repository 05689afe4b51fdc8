//! Grid checks of every closed form against the Fock-space oracle and
//! against each other.
//!
//! Each check reports pass, fail or inconclusive. A point is inconclusive
//! when the oracle cannot represent it faithfully (required cutoff above the
//! cap, tail mass above the bound, or a trajectory that diverges).

use crate::algebra::{
    alpha_vector, so42_generator, structure_constants, superoperator, Combination, DIM,
};
use crate::entanglement::{
    cvs_separable, negativity, pt_spectrum, steady_negativity_symmetric,
    steady_separable_symmetric, thermal_negativity, thermal_onset_time, trace_power,
    transient_negativity, transient_negativity_from_decay,
};
use crate::error::{Error, Result};
use crate::fock::{
    cutoff_for_state, evolve, lindblad_rhs, materialize, negativity_numeric, partial_transpose,
    pt_eigenvalues, trace_of_power, EvolveOptions, Subsystem, TruncatedDensityMatrix,
    DEFAULT_CUTOFF_CAP,
};
use crate::params::SystemParams;
use crate::weinorman::{
    analytic_symmetric, equilibrium_tau, integrate_at, steady_state, thermal_g_functions, Fault,
    IntegrateOptions, WnState,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Oracle negativity tolerance.
pub const NEGATIVITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    /// Largest error seen over conclusive points.
    pub max_error: f64,
    pub tolerance: f64,
    /// Conclusive points.
    pub points: usize,
    pub inconclusive: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Grid {
    /// The full acceptance grid.
    Full,
    /// A small subset for smoke runs.
    Quick,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationConfig {
    pub cutoff_bound: f64,
    pub cutoff_cap: usize,
    pub rtol: f64,
    pub atol: f64,
    pub grid: Grid,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            cutoff_bound: 1e-8,
            cutoff_cap: DEFAULT_CUTOFF_CAP,
            rtol: 1e-10,
            atol: 1e-12,
            grid: Grid::Full,
            fault: None,
        }
    }
}

impl ValidationConfig {
    fn integrate_opts(&self) -> IntegrateOptions {
        IntegrateOptions {
            fault: self.fault,
            ..IntegrateOptions::with_tolerances(self.rtol, self.atol)
        }
    }

    fn quick(&self) -> bool {
        self.grid == Grid::Quick
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// No check failed (inconclusive checks are warnings).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn has_warnings(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Inconclusive)
    }
}

/// Accumulates point outcomes for one check.
#[derive(Debug, Default, Clone)]
struct Tally {
    max_err: f64,
    points: usize,
    inconclusive: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn error(&mut self, err: f64, tol: f64, what: impl FnOnce() -> String) {
        self.points += 1;
        if err.is_nan() || err > self.max_err {
            self.max_err = if err.is_nan() { f64::INFINITY } else { err };
        }
        if !(err <= tol) {
            self.fail(what());
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.points += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 5 {
            self.failures.push(msg);
        } else if self.failures.len() == 5 {
            self.failures.push("...".into());
        }
    }

    fn skip(&mut self, n: usize, why: impl FnOnce() -> String) {
        if self.inconclusive == 0 {
            self.notes.push(why());
        }
        self.inconclusive += n;
    }

    fn merge(&mut self, other: Tally) {
        self.max_err = self.max_err.max(other.max_err);
        self.points += other.points;
        for f in other.failures {
            self.fail(f);
        }
        if self.inconclusive == 0 {
            self.notes.extend(other.notes);
        }
        self.inconclusive += other.inconclusive;
    }

    fn finish(self, id: u8, name: &'static str, tolerance: f64) -> Check {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        let detail = if !self.failures.is_empty() {
            self.failures.join("; ")
        } else if self.inconclusive > 0 {
            format!(
                "{} point(s) not representable: {}",
                self.inconclusive,
                self.notes.join("; ")
            )
        } else {
            String::new()
        };
        Check {
            id,
            name,
            status,
            max_error: self.max_err,
            tolerance,
            points: self.points,
            inconclusive: self.inconclusive,
            detail,
        }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

fn symmetric(kappa: f64, nth: f64, xi: f64, delta: f64) -> SystemParams {
    SystemParams::symmetric(kappa, nth, xi, delta).expect("valid grid parameters")
}

/// Oracle negativity of the materialized state; `Ok(None)` when it cannot be
/// represented within the configured cutoff.
fn oracle_negativity(
    f: [f64; 4],
    phi: f64,
    cfg: &ValidationConfig,
) -> Result<std::result::Result<f64, String>> {
    let report = match cutoff_for_state(f[0], f[1], f[2], f[3], cfg.cutoff_bound, cfg.cutoff_cap) {
        Ok(r) => r,
        Err(e @ Error::CutoffCapExceeded { .. }) => return Ok(Err(e.to_string())),
        Err(e) => return Err(e),
    };
    let rho = materialize(f[0], f[1], f[2], f[3], phi, report.cutoff)?;
    let tail = rho.tail_mass();
    if tail > cfg.cutoff_bound {
        return Ok(Err(format!(
            "tail mass {tail:e} above {:e} at cutoff {}",
            cfg.cutoff_bound, report.cutoff
        )));
    }
    Ok(Ok(negativity_numeric(&rho)))
}

/// Checks 1 and 7: closed-form negativity against the oracle and the
/// normalization identity along the same trajectories.
pub fn check_oracle_grid(cfg: &ValidationConfig) -> (Check, Check) {
    let (kappas, ratios, nths, xis, deltas, phis, tfacs): (
        &[f64],
        &[f64],
        &[f64],
        &[f64],
        &[f64],
        &[f64],
        &[f64],
    ) = if cfg.quick() {
        (
            &[0.5],
            &[1.0, 2.0],
            &[0.0, 0.5],
            &[1.0, 2.0],
            &[0.0, 1.0],
            &[1.3],
            &[1.0],
        )
    } else {
        (
            &[0.1, 0.5, 1.0],
            &[1.0, 2.0],
            &[0.0, 0.5, 1.0],
            &[0.5, 1.0, 2.0],
            &[0.0, 1.0],
            &[0.0, 1.3],
            &[0.5, 1.0, 3.0],
        )
    };
    let mut grid = Vec::new();
    for &k in kappas {
        for &ratio in ratios {
            for &n1 in nths {
                for &n2 in nths {
                    for &xi in xis {
                        for &delta in deltas {
                            for &phi in phis {
                                let p = SystemParams::new(k, ratio * k, n1, n2, delta, xi, phi)
                                    .expect("valid grid parameters");
                                let times: Vec<f64> =
                                    tfacs.iter().map(|f| f / k.max(0.1)).collect();
                                grid.push((p, times));
                            }
                        }
                    }
                }
            }
        }
    }
    let opts = cfg.integrate_opts();
    let norm_tol = 10.0 * cfg.rtol;
    let outcomes: Vec<(Tally, Tally)> = grid
        .par_iter()
        .map(|(p, times)| {
            let mut neg = Tally::default();
            let mut norm = Tally::default();
            let tag = || {
                format!(
                    "k1={} k2={} n1={} n2={} xi={} delta={} phi={}",
                    p.kappa1, p.kappa2, p.nth1, p.nth2, p.xi_abs, p.delta, p.phi
                )
            };
            let traj = match integrate_at(p, times, &opts, &WnState::vacuum()) {
                Ok(t) => t,
                Err(e @ Error::Divergence { .. }) => {
                    neg.skip(times.len(), || format!("{}: {e}", tag()));
                    norm.skip(1, || format!("{}: {e}", tag()));
                    return (neg, norm);
                }
                Err(e) => {
                    neg.fail(format!("{}: {e}", tag()));
                    norm.fail(format!("{}: {e}", tag()));
                    return (neg, norm);
                }
            };
            let res = traj.meta.max_invariant_residual;
            norm.error(res, norm_tol, || format!("{}: residual {res:e}", tag()));
            for s in &traj.samples {
                let f = s.quad();
                let closed = match negativity(f[0], f[1], f[2], f[3]) {
                    Ok(v) => v.value,
                    Err(e) => {
                        neg.fail(format!("{} t={}: {e}", tag(), s.t));
                        continue;
                    }
                };
                match oracle_negativity(f, p.phi, cfg) {
                    Ok(Ok(num)) => {
                        let err = (closed - num).abs();
                        neg.error(err, NEGATIVITY_TOL, || {
                            format!("{} t={}: closed {closed} vs oracle {num}", tag(), s.t)
                        })
                    }
                    Ok(Err(why)) => neg.skip(1, || format!("{} t={}: {why}", tag(), s.t)),
                    Err(e) => neg.fail(format!("{} t={}: {e}", tag(), s.t)),
                }
            }
            (neg, norm)
        })
        .collect();
    let mut neg = Tally::default();
    let mut norm = Tally::default();
    for (a, b) in outcomes {
        neg.merge(a);
        norm.merge(b);
    }
    (
        neg.finish(1, "closed-form negativity vs Fock oracle", NEGATIVITY_TOL),
        norm.finish(7, "normalization identity along trajectories", norm_tol),
    )
}

/// Check 2: steady-state values for identical zero-temperature baths.
pub fn check_steady_values(_cfg: &ValidationConfig) -> Check {
    let mut t = Tally::default();
    match steady_state(&symmetric(1.0, 0.0, 1.0, 0.0)) {
        Ok(s) => {
            let q = s.quad();
            t.error((q[0] - 1.0 / 15.0).abs(), 1e-9, || format!("f3 = {}", q[0]));
            t.error((q[1] - 4.0 / 15.0).abs(), 1e-9, || format!("f5 = {}", q[1]));
            match negativity(q[0], q[1], q[2], q[3]) {
                Ok(n) => t.error((n.value - 0.25).abs(), 1e-8, || {
                    format!("negativity {}", n.value)
                }),
                Err(e) => t.fail(e.to_string()),
            }
        }
        Err(e) => t.fail(format!("xi=1: {e}")),
    }
    match steady_state(&symmetric(1.0, 0.0, 4.0, 0.0)) {
        Ok(s) => {
            let q = s.quad();
            match negativity(q[0], q[1], q[2], q[3]) {
                Ok(n) => t.error((n.value - 1.0).abs(), 1e-8, || {
                    format!("xi=4 negativity {}", n.value)
                }),
                Err(e) => t.fail(e.to_string()),
            }
        }
        Err(e) => t.fail(format!("xi=4: {e}")),
    }
    t.finish(2, "steady-state reproduction", 1e-8)
}

fn steady_gap(p: &SystemParams) -> Result<f64> {
    let q = steady_state(p)?.quad();
    Ok(q[1].hypot(q[3]) - q[0])
}

/// Check 3: separability phase boundary.
pub fn check_phase_boundary(cfg: &ValidationConfig) -> Check {
    let mut t = Tally::default();
    let cases: &[(f64, f64)] = if cfg.quick() {
        &[(1.0, 0.5), (1.0, 0.25)]
    } else {
        &[(1.0, 0.5), (0.5, 1.0), (2.0, 0.25), (1.0, 0.1), (0.3, 2.0)]
    };
    let tol = 1e-6;
    for &(k, n) in cases {
        let want = 4.0 * k * n;
        let (mut lo, mut hi) = (0.5 * want, 1.5 * want);
        let gap = |xi: f64| steady_gap(&symmetric(k, n, xi, 0.0));
        let ends = (gap(lo), gap(hi));
        match ends {
            (Ok(a), Ok(b)) if a < 0.0 && b > 0.0 => {
                let mut failed = None;
                while hi - lo > 1e-13 * want {
                    let mid = 0.5 * (lo + hi);
                    match gap(mid) {
                        Ok(g) if g > 0.0 => hi = mid,
                        Ok(_) => lo = mid,
                        Err(e) => {
                            failed = Some(e);
                            break;
                        }
                    }
                }
                match failed {
                    Some(e) => t.fail(format!("k={k} n={n}: {e}")),
                    None => {
                        let x = 0.5 * (lo + hi);
                        let rel = (x - want).abs() / want;
                        t.error(rel, tol, || format!("k={k} n={n}: crossing {x} vs {want}"));
                    }
                }
            }
            (Ok(a), Ok(b)) => t.fail(format!("k={k} n={n}: no sign change ({a}, {b})")),
            (Err(e), _) | (_, Err(e)) => t.fail(format!("k={k} n={n}: {e}")),
        }
    }
    // detuned, overdamped: κ = 1, δ = 0.25 puts the boundary at |ξ|² = 4κ² + 16δ² = 5
    let (k, delta) = (1.0, 0.25);
    let size = if cfg.quick() { 4 } else { 10 };
    let points: Vec<(f64, f64)> = linspace(0.0, 1.0, size)
        .into_iter()
        .flat_map(|n| linspace(0.1, 2.2, size).into_iter().map(move |xi| (n, xi)))
        .collect();
    let verdicts: Vec<(f64, f64, Result<bool>)> = points
        .par_iter()
        .map(|&(n, xi)| {
            let p = symmetric(k, n, xi, delta);
            let v = steady_state(&p).and_then(|s| {
                let q = s.quad();
                Ok(negativity(q[0], q[1], q[2], q[3])?.separable)
            });
            (n, xi, v)
        })
        .collect();
    let g = (4.0 * k * k + 16.0 * delta * delta).sqrt();
    for (n, xi, v) in verdicts {
        if (2.0 * n * g - xi).abs() < 1e-9 {
            t.skip(1, || format!("n={n} xi={xi} on the boundary"));
            continue;
        }
        match v {
            Ok(sep) => {
                let want = steady_separable_symmetric(k, n, xi, delta);
                t.expect(sep == want, || {
                    format!("n={n} xi={xi}: negativity says {sep}, threshold says {want}")
                });
            }
            Err(e) => t.fail(format!("n={n} xi={xi}: {e}")),
        }
    }
    t.finish(3, "separability phase boundary", tol)
}

/// The twelve `(κ, n, |ξ|)` combinations of check 4; entries 2, 4 and 8 sit
/// on the boundary `|ξ| = 2κ`.
pub const TRANSIENT_CASES: [(f64, f64, f64); 12] = [
    (1.0, 0.0, 1.0),
    (1.0, 0.0, 3.0),
    (1.0, 0.5, 2.0),
    (0.5, 0.2, 1.5),
    (0.5, 0.2, 1.0),
    (0.3, 1.0, 0.2),
    (0.3, 1.0, 2.0),
    (2.0, 0.1, 1.0),
    (2.0, 0.1, 4.0),
    (0.8, 0.4, 1.2),
    (0.1, 0.0, 0.5),
    (1.0, 2.0, 6.0),
];

/// Check 4: symmetric closed-form transients against the integrator.
pub fn check_transients(cfg: &ValidationConfig) -> Check {
    let tol = 1e-8;
    let times = linspace(0.0, 10.0, if cfg.quick() { 11 } else { 101 });
    let opts = IntegrateOptions {
        fault: cfg.fault,
        ..IntegrateOptions::with_tolerances(1e-12, 1e-14)
    };
    let mut t = Tally::default();
    let cases: &[(f64, f64, f64)] = if cfg.quick() {
        &TRANSIENT_CASES[..4]
    } else {
        &TRANSIENT_CASES
    };
    for &(k, n, xi) in cases {
        let p = symmetric(k, n, xi, 0.0);
        match integrate_at(&p, &times, &opts, &WnState::vacuum()) {
            Ok(traj) => {
                let mut worst = 0.0f64;
                let mut failed = None;
                for s in &traj.samples {
                    match analytic_symmetric(s.t, k, n, xi) {
                        Ok(a) => {
                            for i in [0, 1, 3, 5] {
                                worst = worst.max((a.f[i] - s.f[i]).abs());
                            }
                            worst = worst.max(s.f[9].abs()).max(s.f[12].abs());
                        }
                        Err(e) => failed = Some(e),
                    }
                }
                match failed {
                    Some(e) => t.fail(format!("k={k} n={n} xi={xi}: {e}")),
                    None => t.error(worst, tol, || {
                        format!("k={k} n={n} xi={xi}: max deviation {worst:e}")
                    }),
                }
            }
            Err(e) => t.fail(format!("k={k} n={n} xi={xi}: {e}")),
        }
    }
    t.finish(4, "analytic transients vs integrator", tol)
}

/// Deterministic pseudo-random Hermitian state supported on levels `≤ top`.
fn interior_state(n: usize, top: usize, seed: f64) -> TruncatedDensityMatrix {
    let mut rho = TruncatedDensityMatrix::zeros(n).expect("cutoff >= 2");
    let d = n * n;
    for i in 0..d {
        for j in 0..d {
            let (a1, a2, b1, b2) = (i / n, i % n, j / n, j % n);
            if a1 > top || a2 > top || b1 > top || b2 > top {
                continue;
            }
            let k = (i * d + j) as f64;
            rho.matrix_mut()[(i, j)] =
                Complex64::new((k * 0.731 + seed).sin(), (k * 0.377 + 2.0 * seed).cos());
        }
    }
    rho.hermitize();
    rho
}

fn combination_apply(
    c: &Combination,
    applied: &[TruncatedDensityMatrix],
    rho: &TruncatedDensityMatrix,
) -> nalgebra::DMatrix<Complex64> {
    let mut out = rho.matrix() * Complex64::new(c[0] as f64, 0.0);
    for k in 1..=DIM {
        if c[k] != 0 {
            out += applied[k].matrix() * Complex64::new(c[k] as f64, 0.0);
        }
    }
    out
}

/// Check 5: algebra closure in integers, superoperator commutators and the
/// α-form of the master equation.
pub fn check_algebra(_cfg: &ValidationConfig) -> Check {
    let mut t = Tally::default();
    let table = structure_constants();
    let mut mismatched = Vec::new();
    for i in 1..=DIM {
        for j in i + 1..=DIM {
            let (a, b) = (so42_generator(i), so42_generator(j));
            let ok = match (a, b, table.bracket(i, j)) {
                (Ok(a), Ok(b), Ok(want)) => a.commutator(&b).decompose() == Some(want),
                _ => false,
            };
            if !ok {
                mismatched.push((i, j));
            }
        }
    }
    t.expect(mismatched.is_empty(), || {
        format!("generator pairs off the table: {mismatched:?}")
    });
    let jac = table.jacobi_violations();
    t.expect(jac.is_empty(), || format!("Jacobi violations: {jac:?}"));

    let n = 6;
    let phi = 0.9;
    let rho = interior_state(n, 2, 0.3);
    let ops: Vec<_> = (0..=DIM)
        .map(|i| superoperator(i, n, phi))
        .collect::<Result<_>>()
        .unwrap_or_default();
    if ops.len() != DIM + 1 {
        t.fail("superoperator construction failed".into());
        return t.finish(5, "algebra exactness", 1e-12);
    }
    let applied: Vec<TruncatedDensityMatrix> = ops
        .iter()
        .map(|s| s.apply(&rho).expect("same cutoff"))
        .collect();
    let mut worst = 0.0f64;
    for i in 1..=DIM {
        for j in i + 1..=DIM {
            let sij = ops[i].apply(&applied[j]).expect("same cutoff");
            let sji = ops[j].apply(&applied[i]).expect("same cutoff");
            let lhs = sij.matrix() - sji.matrix();
            let want = table.bracket(i, j).expect("valid indices");
            let rhs = combination_apply(&want, &applied, &rho);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    t.error(worst, 1e-12, || {
        format!("superoperator commutators off by {worst:e}")
    });

    let mut worst = 0.0f64;
    for (s, &(k1, k2, n1, n2, delta, xi, phi)) in [
        (0.4, 0.9, 0.3, 0.1, 0.7, 1.3, 0.4),
        (1.0, 1.0, 0.0, 0.0, 0.0, 2.0, 0.0),
        (0.2, 0.5, 1.2, 0.4, -0.6, 0.8, 5.1),
    ]
    .iter()
    .enumerate()
    {
        let p = SystemParams::new(k1, k2, n1, n2, delta, xi, phi).expect("valid parameters");
        let rho = interior_state(n, 2, 1.1 + s as f64);
        let a = crate::algebra::master_rhs_from_alphas(&rho, &p).expect("same cutoff");
        let b = lindblad_rhs(&rho, &p).expect("same cutoff");
        worst = worst.max((a.matrix() - b.matrix()).norm());
        let _ = alpha_vector(&p);
    }
    t.error(worst, 1e-12, || {
        format!("alpha form vs Lindblad off by {worst:e}")
    });
    t.finish(5, "algebra exactness", 1e-12)
}

/// States with `max|x±| ≤ 0.6` so that cutoff 40 truncates below `1e−9`.
const SPECTRAL_STATES: [[f64; 4]; 5] = [
    [0.1, 0.3, 0.1, 0.2],
    [0.0, 0.5, 0.0, 0.0],
    [0.3, 0.0, 0.2, 0.1],
    [0.05, -0.2, 0.35, 0.1],
    [0.2, 0.25, 0.0, -0.3],
];

/// Check 6: trace powers, the partially transposed spectrum and purity.
pub fn check_spectral(cfg: &ValidationConfig) -> Check {
    let tol = 1e-8;
    let n = 40;
    let states: &[[f64; 4]] = if cfg.quick() {
        &SPECTRAL_STATES[..2]
    } else {
        &SPECTRAL_STATES
    };
    let mut t = Tally::default();
    for (k, f) in states.iter().enumerate() {
        let phi = 0.7 * k as f64;
        let rho = match materialize(f[0], f[1], f[2], f[3], phi, n) {
            Ok(r) => r,
            Err(e) => {
                t.fail(format!("{f:?}: {e}"));
                continue;
            }
        };
        let pt = partial_transpose(&rho, Subsystem::A);
        for j in 1..=4 {
            match (
                trace_power(f[0], f[1], f[2], f[3], j),
                trace_of_power(pt.matrix(), j),
            ) {
                (Ok(a), Ok(b)) => {
                    let err = (a - b.re).abs().max(b.im.abs());
                    t.error(err, tol, || format!("{f:?} j={j}: {a} vs {}", b.re));
                }
                (Err(e), _) | (_, Err(e)) => t.fail(format!("{f:?} j={j}: {e}")),
            }
        }
        let mut numeric = pt_eigenvalues(&rho);
        match pt_spectrum(f[0], f[1], f[2], f[3], 80, 80) {
            Ok(s) => {
                let mut closed: Vec<f64> = s.into_iter().map(|e| e.value).collect();
                numeric.resize(closed.len().max(numeric.len()), 0.0);
                closed.resize(numeric.len(), 0.0);
                numeric.sort_by(f64::total_cmp);
                closed.sort_by(f64::total_cmp);
                let err = numeric
                    .iter()
                    .zip(&closed)
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                t.error(err, tol, || format!("{f:?}: spectrum off by {err:e}"));
            }
            Err(e) => t.fail(format!("{f:?}: {e}")),
        }
    }
    match (
        trace_power(0.0, 0.5, 0.0, 0.0, 2),
        materialize(0.0, 0.5, 0.0, 0.0, 0.0, n),
    ) {
        (Ok(p), Ok(rho)) => {
            let p: f64 = p;
            t.error((p - 1.0).abs(), 1e-10, || format!("closed purity {p}"));
            match trace_of_power(rho.matrix(), 2) {
                Ok(q) => t.error((q.re - 1.0).abs(), 1e-10, || {
                    format!("oracle purity {}", q.re)
                }),
                Err(e) => t.fail(e.to_string()),
            }
        }
        (Err(e), _) | (_, Err(e)) => t.fail(e.to_string()),
    }
    t.finish(6, "spectral identities", tol)
}

/// Check 8: quadrature criterion and negativity agree on every `f₉ = 0` state.
pub fn check_criterion_agreement(cfg: &ValidationConfig) -> Check {
    let mut t = Tally::default();
    let mut states: Vec<[f64; 3]> = Vec::new();
    let m = if cfg.quick() { 8 } else { 25 };
    for f3 in linspace(0.0, 0.6, m) {
        for z in linspace(0.0, 0.39, m) {
            for ang in [0.0, 0.8, 2.0] {
                let (f5, f12) = (z * f64::cos(ang), z * f64::sin(ang));
                if f3 + z < 1.0 {
                    states.push([f3, f5, f12]);
                }
            }
        }
    }
    // exact ties and the closed-form symmetric transients
    states.extend([[0.3, 0.3, 0.0], [0.25, 0.0, 0.25], [0.0, 0.0, 0.0]]);
    for &(k, n, xi) in TRANSIENT_CASES.iter() {
        for time in [0.5, 2.0, 8.0] {
            if let Ok(s) = analytic_symmetric(time, k, n, xi) {
                states.push([s.f[3], s.f[5], 0.0]);
            }
        }
    }
    let mut disagreements = 0usize;
    for s in &states {
        match (
            cvs_separable(s[0], s[1], 0.0, s[2]),
            negativity(s[0], s[1], 0.0, s[2]),
        ) {
            (Ok(a), Ok(b)) => {
                let ok = a == (b.value == 0.0);
                if !ok {
                    disagreements += 1;
                }
                t.expect(ok, || {
                    format!("{s:?}: criterion {a}, negativity {}", b.value)
                });
            }
            (Err(e), _) | (_, Err(e)) => t.fail(format!("{s:?}: {e}")),
        }
    }
    t.max_err = disagreements as f64;
    t.finish(8, "quadrature criterion vs negativity", 0.0)
}

/// Check 9: thermal start.
pub fn check_thermal(cfg: &ValidationConfig) -> Check {
    let mut t = Tally::default();
    for &(k, n, xi) in &[
        (1.0f64, 0.2, 3.0),
        (0.5, 0.1, 1.5),
        (0.1, 1.0, 1.0),
        (1.0, 0.0, 1.5),
    ] {
        let tau = equilibrium_tau(n);
        let gamma_min = (k - xi / 2.0).abs().min(k + xi / 2.0);
        let late = 60.0 / gamma_min;
        match (
            thermal_negativity(late, k, n, xi, tau),
            steady_negativity_symmetric(k, n, xi),
        ) {
            (Ok(a), Ok(b)) => t.error((a - b).abs(), 1e-8, || {
                format!("k={k} n={n} xi={xi}: {a} vs {b}")
            }),
            (Err(e), _) | (_, Err(e)) => t.fail(format!("k={k} n={n} xi={xi}: {e}")),
        }
    }
    for &(k, n, xi) in &[
        (0.1f64, 1.0, 1.0),
        (1.0, 0.2, 3.0),
        (1.0, 0.0, 1.0),
        (1.0, 1.0, 4.0),
        (1.0, 1.0, 2.0),
    ] {
        let want = if n == 0.0 {
            "zero"
        } else if xi > 4.0 * k * n {
            "positive"
        } else {
            "none"
        };
        match thermal_onset_time(k, n, xi) {
            Ok(v) => {
                let got = match v {
                    Some(x) if x == 0.0 => "zero",
                    Some(x) if x > 0.0 => "positive",
                    Some(_) => "negative",
                    None => "none",
                };
                t.expect(got == want, || {
                    format!("k={k} n={n} xi={xi}: onset {v:?}, expected {want}")
                });
            }
            Err(e) => t.fail(format!("k={k} n={n} xi={xi}: onset {e}")),
        }
    }
    // g-route against the oracle evolved from the thermal product state
    let (k, n, xi) = (1.0, 0.2, 2.0);
    let tau = equilibrium_tau(n);
    let p = symmetric(k, n, xi, 0.0);
    let times: &[f64] = if cfg.quick() { &[0.5] } else { &[0.5, 1.5] };
    let last = *times.last().expect("non-empty");
    let xp = match thermal_g_functions(last, k, n, xi, tau) {
        Ok((g3, g5)) => (g3 + g5.abs()).max(tau),
        Err(e) => {
            t.fail(e.to_string());
            return t.finish(9, "thermal start", 1e-6);
        }
    };
    let cutoff = match crate::fock::choose_cutoff(xp, cfg.cutoff_bound, cfg.cutoff_cap) {
        Ok(r) => r.cutoff,
        Err(e) => {
            t.skip(times.len(), || e.to_string());
            return t.finish(9, "thermal start", 1e-6);
        }
    };
    let mut rho = match TruncatedDensityMatrix::thermal_product(cutoff, tau, tau) {
        Ok(r) => r,
        Err(e) => {
            t.fail(e.to_string());
            return t.finish(9, "thermal start", 1e-6);
        }
    };
    let mut now = 0.0;
    for &time in times {
        let opts = EvolveOptions {
            richardson: false,
            ..Default::default()
        };
        match evolve(&rho, &p, time - now, opts) {
            Ok(rep) => rho = rep.rho,
            Err(e) => {
                t.fail(format!("t={time}: {e}"));
                break;
            }
        }
        now = time;
        let tail = rho.tail_mass();
        if tail > cfg.cutoff_bound {
            t.skip(1, || {
                format!("t={time}: tail mass {tail:e} at cutoff {cutoff}")
            });
            continue;
        }
        match thermal_negativity(time, k, n, xi, tau) {
            Ok(closed) => {
                let num = negativity_numeric(&rho);
                t.error((closed - num).abs(), 1e-6, || {
                    format!("t={time}: closed {closed} vs oracle {num}")
                });
            }
            Err(e) => t.fail(format!("t={time}: {e}")),
        }
    }
    t.finish(9, "thermal start", 1e-6)
}

/// Parameter points for check 10.
pub const LIMIT_POINTS: [(f64, f64, f64); 5] = [
    (1.0, 0.0, 1.0),
    (1.0, 0.0, 2.0),
    (0.5, 0.25, 3.0),
    (2.0, 0.1, 5.0),
    (0.3, 1.0, 1.7),
];

/// Check 10: the transient formula's long-time limit is
/// `(|ξ|−4κn)/(4κ(2n+1))` exactly, not four times that.
pub fn check_transient_limit(_cfg: &ValidationConfig) -> Check {
    let mut t = Tally::default();
    for &(k, n, xi) in &LIMIT_POINTS {
        let want = ((xi - 4.0 * k * n) / (4.0 * k * (2.0 * n + 1.0))).max(0.0);
        let limit = transient_negativity_from_decay(0.0, k, n, xi);
        t.expect(limit == want, || {
            format!("k={k} n={n} xi={xi}: limit {limit} vs {want}")
        });
        t.expect(want == 0.0 || (limit / want - 4.0).abs() > 1.0, || {
            "limit carries a factor 4".into()
        });
        match transient_negativity(1e3 / k, k, n, xi) {
            Ok(v) => t.error((v - want).abs(), 1e-14 * want.max(1.0), || {
                format!("k={k} n={n} xi={xi}: late value {v}")
            }),
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.finish(10, "transient negativity limit", 0.0)
}

/// Runs all ten checks in order.
pub fn validate(cfg: &ValidationConfig) -> ValidationReport {
    let (c1, c7) = check_oracle_grid(cfg);
    let mut checks = vec![
        c1,
        check_steady_values(cfg),
        check_phase_boundary(cfg),
        check_transients(cfg),
        check_algebra(cfg),
        check_spectral(cfg),
        c7,
        check_criterion_agreement(cfg),
        check_thermal(cfg),
        check_transient_limit(cfg),
    ];
    checks.sort_by_key(|c| c.id);
    ValidationReport { checks }
}
