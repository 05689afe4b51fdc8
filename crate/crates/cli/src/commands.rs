//! One function per subcommand, each returning a table to emit.

use crate::config::{resolve, CommonArgs, RunConfig};
use crate::table::{Cell, Table};
use crate::Failure;
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use twomode::entanglement::{
    cvs_separable, negativity, separability_threshold_symmetric, steady_separable_symmetric,
    thermal_negativity, thermal_onset_time, transient_negativity, F9_TOL,
};
use twomode::validation::{validate, Grid, Status, ValidationConfig};
use twomode::weinorman::{
    classify_regime, equilibrium_tau, integrate_at, steady_state, thermal_g_functions, Fault,
    IntegrateOptions, WnState,
};
use twomode::SystemParams;

fn solver(e: twomode::Error) -> Failure {
    Failure::solver(e.to_string())
}

fn integrate_opts(cfg: &RunConfig) -> IntegrateOptions<f64> {
    IntegrateOptions::with_tolerances(cfg.rtol, cfg.atol)
}

fn regime_meta(t: &mut Table, p: &SystemParams) {
    let r = classify_regime(p);
    t.meta("regime", r.regime.as_str());
    t.meta_num("xi_boundary_sq", r.xi_boundary_sq);
}

pub fn trajectory(args: &CommonArgs) -> Result<(Table, RunConfig), Failure> {
    let cfg = resolve(args)?;
    let traj = integrate_at(
        &cfg.params,
        &cfg.times(),
        &integrate_opts(&cfg),
        &WnState::vacuum(),
    )
    .map_err(solver)?;
    let mut t = Table::new(
        cfg.meta("trajectory"),
        &[
            "t",
            "f1",
            "f3",
            "f5",
            "f9",
            "f12",
            "negativity",
            "invariant_residual",
        ],
    );
    regime_meta(&mut t, &cfg.params);
    t.meta_num("max_invariant_residual", traj.meta.max_invariant_residual);
    for s in &traj.samples {
        let [f3, f5, f9, f12] = s.quad();
        let neg = negativity(f3, f5, f9, f12).map_err(solver)?.value;
        t.push(vec![
            s.t.into(),
            s.f[1].into(),
            f3.into(),
            f5.into(),
            f9.into(),
            f12.into(),
            neg.into(),
            s.normalization_residual().into(),
        ]);
    }
    Ok((t, cfg))
}

const STATE_COLUMNS: [&str; 10] = [
    "t",
    "f3",
    "f5",
    "f9",
    "f12",
    "negativity",
    "x_plus",
    "x_minus",
    "separable",
    "cvs_separable",
];

fn state_row(t: f64, f: [f64; 4]) -> Result<Vec<Cell>, Failure> {
    let n = negativity(f[0], f[1], f[2], f[3]).map_err(solver)?;
    let cvs: Cell = if f[2].abs() <= F9_TOL {
        cvs_separable(f[0], f[1], f[2], f[3])
            .map_err(solver)?
            .into()
    } else {
        "n/a".into()
    };
    Ok(vec![
        t.into(),
        f[0].into(),
        f[1].into(),
        f[2].into(),
        f[3].into(),
        n.value.into(),
        n.x_plus.into(),
        n.x_minus.into(),
        n.separable.into(),
        cvs,
    ])
}

pub fn steady(args: &CommonArgs) -> Result<(Table, RunConfig), Failure> {
    let cfg = resolve(args)?;
    let s = steady_state(&cfg.params).map_err(solver)?;
    let mut t = Table::new(cfg.meta("steady"), &STATE_COLUMNS);
    regime_meta(&mut t, &cfg.params);
    t.meta("method", s.method.as_str());
    t.meta_num("rate_norm", s.rate_norm);
    t.push(state_row(f64::INFINITY, s.quad())?);
    Ok((t, cfg))
}

#[derive(Debug, Clone, Args)]
pub struct NegativityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Evaluate this state instead of integrating to --t-max.
    #[arg(long, allow_negative_numbers = true)]
    pub f3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub f5: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub f9: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub f12: Option<f64>,
}

pub fn negativity_cmd(args: &NegativityArgs) -> Result<(Table, RunConfig), Failure> {
    let cfg = resolve(&args.common)?;
    let explicit = [args.f3, args.f5, args.f9, args.f12];
    let mut t = Table::new(cfg.meta("negativity"), &STATE_COLUMNS);
    let (time, f) = if explicit.iter().any(Option::is_some) {
        t.meta("source", "explicit");
        (f64::NAN, explicit.map(|v| v.unwrap_or(0.0)))
    } else {
        t.meta("source", "integrated");
        let traj = integrate_at(
            &cfg.params,
            &[cfg.t_max],
            &integrate_opts(&cfg),
            &WnState::vacuum(),
        )
        .map_err(solver)?;
        (cfg.t_max, traj.samples[0].quad())
    };
    t.push(state_row(time, f)?);
    Ok((t, cfg))
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// name:start:stop:count[:log]; give once or twice.
    #[arg(long = "axis", required = true)]
    pub axes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: &'static str,
    pub values: Vec<f64>,
}

const AXIS_NAMES: [&str; 9] = [
    "kappa", "kappa1", "kappa2", "nth", "nth1", "nth2", "xi", "delta", "phi",
];

pub fn parse_axis(spec: &str) -> Result<Axis, Failure> {
    let bad = |why: &str| Failure::usage(format!("--axis `{spec}`: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if !(4..=5).contains(&parts.len()) {
        return Err(bad("expected name:start:stop:count[:log]"));
    }
    let name = AXIS_NAMES.iter().find(|n| **n == parts[0]).ok_or_else(|| {
        bad(&format!(
            "unknown parameter, expected one of {}",
            AXIS_NAMES.join(", ")
        ))
    })?;
    let num = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite());
    let (start, stop) = match (num(parts[1]), num(parts[2])) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(bad("start and stop must be finite numbers")),
    };
    let count: usize = parts[3]
        .parse()
        .map_err(|_| bad("count must be a positive integer"))?;
    if count == 0 {
        return Err(bad("count must be at least 1"));
    }
    let log = match parts.get(4) {
        None | Some(&"lin") => false,
        Some(&"log") => true,
        Some(_) => return Err(bad("spacing must be `lin` or `log`")),
    };
    if log && !(start > 0.0 && stop > 0.0) {
        return Err(bad("log spacing needs positive endpoints"));
    }
    let values = (0..count)
        .map(|i| {
            let s = if count == 1 {
                0.0
            } else {
                i as f64 / (count - 1) as f64
            };
            if log {
                (start.ln() + s * (stop.ln() - start.ln())).exp()
            } else {
                start + s * (stop - start)
            }
        })
        .collect();
    Ok(Axis { name, values })
}

fn with_axis(mut p: SystemParams, name: &str, v: f64) -> SystemParams {
    match name {
        "kappa" => {
            p.kappa1 = v;
            p.kappa2 = v;
        }
        "kappa1" => p.kappa1 = v,
        "kappa2" => p.kappa2 = v,
        "nth" => {
            p.nth1 = v;
            p.nth2 = v;
        }
        "nth1" => p.nth1 = v,
        "nth2" => p.nth2 = v,
        "xi" => p.xi_abs = v,
        "delta" => p.delta = v,
        "phi" => p.phi = v,
        _ => unreachable!("axis names are checked when parsed"),
    }
    p
}

fn sweep_point(p: SystemParams) -> Vec<Cell> {
    let nan = || Cell::Num(f64::NAN);
    let regime: Cell = classify_regime(&p).regime.as_str().into();
    let (xi_c, analytic): (Cell, Cell) = if p.is_symmetric() {
        (
            separability_threshold_symmetric(p.kappa1, p.nth1, p.delta).into(),
            steady_separable_symmetric(p.kappa1, p.nth1, p.xi_abs, p.delta).into(),
        )
    } else {
        (nan(), "".into())
    };
    let computed = p.validated().and_then(|p| {
        let s = steady_state(&p)?;
        let f = s.quad();
        Ok((f, negativity(f[0], f[1], f[2], f[3])?))
    });
    let mut row: Vec<Cell> = match computed {
        Ok((f, n)) => vec![
            f[0].into(),
            f[1].into(),
            f[2].into(),
            f[3].into(),
            n.value.into(),
            n.separable.into(),
        ],
        Err(_) => vec![nan(), nan(), nan(), nan(), nan(), "".into()],
    };
    row.extend([regime, xi_c, analytic]);
    row.push(match computed {
        Ok(_) => "".into(),
        Err(e) => e.to_string().into(),
    });
    row
}

pub fn sweep(args: &SweepArgs) -> Result<(Table, RunConfig), Failure> {
    let cfg = resolve(&args.common)?;
    if args.axes.len() > 2 {
        return Err(Failure::usage("at most two --axis flags"));
    }
    let axes: Vec<Axis> = args
        .axes
        .iter()
        .map(|s| parse_axis(s))
        .collect::<Result<_, _>>()?;
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(Failure::usage("the two axes must differ"));
    }
    let mut points: Vec<Vec<f64>> = axes[0].values.iter().map(|&v| vec![v]).collect();
    if let Some(second) = axes.get(1) {
        points = points
            .into_iter()
            .flat_map(|pt| {
                second
                    .values
                    .iter()
                    .map(move |&v| [pt.clone(), vec![v]].concat())
            })
            .collect();
    }
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|vals| {
            let p = axes
                .iter()
                .zip(vals)
                .fold(cfg.params, |p, (a, &v)| with_axis(p, a.name, v));
            let mut row: Vec<Cell> = vals.iter().map(|&v| v.into()).collect();
            row.extend(sweep_point(p));
            row
        })
        .collect();
    let mut columns: Vec<&str> = axes.iter().map(|a| a.name).collect();
    columns.extend([
        "f3",
        "f5",
        "f9",
        "f12",
        "negativity",
        "separable",
        "regime",
        "xi_critical",
        "analytic_separable",
        "error",
    ]);
    let mut t = Table::new(cfg.meta("sweep"), &columns);
    for (i, a) in args.axes.iter().enumerate() {
        t.meta(&format!("axis{}", i + 1), a);
    }
    for r in rows {
        t.push(r);
    }
    Ok((t, cfg))
}

pub fn thermal(args: &CommonArgs) -> Result<(Table, RunConfig), Failure> {
    let cfg = resolve(args)?;
    let p = cfg.params;
    if !(p.is_symmetric() && p.is_resonant()) {
        return Err(Failure::usage(
            "thermal needs identical baths (kappa1 = kappa2, nth1 = nth2) and delta = 0",
        ));
    }
    let (k, n, xi) = (p.kappa1, p.nth1, p.xi_abs);
    let tau = equilibrium_tau(n);
    let onset = thermal_onset_time(k, n, xi).map_err(solver)?;
    let mut t = Table::new(
        cfg.meta("thermal"),
        &["t", "g3", "g5", "negativity_thermal", "negativity_vacuum"],
    );
    t.meta_num("tau", tau);
    t.meta(
        "onset_time",
        onset.map_or("none".to_string(), crate::config::num),
    );
    for time in cfg.times() {
        let (g3, g5) = thermal_g_functions(time, k, n, xi, tau).map_err(solver)?;
        let thermal = thermal_negativity(time, k, n, xi, tau).map_err(solver)?;
        let vacuum = transient_negativity(time, k, n, xi).map_err(solver)?;
        t.push(vec![
            time.into(),
            g3.into(),
            g5.into(),
            thermal.into(),
            vacuum.into(),
        ]);
    }
    Ok((t, cfg))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    F5DampingSign,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest Fock cutoff per mode for the oracle.
    #[arg(long, default_value_t = twomode::fock::DEFAULT_CUTOFF_CAP)]
    pub cutoff_cap: usize,
    /// Run a reduced grid.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
}

pub struct Validation {
    pub table: Table,
    pub config: RunConfig,
    pub failed: bool,
    pub warnings: Vec<String>,
}

pub fn validate_cmd(args: &ValidateArgs) -> Result<Validation, Failure> {
    let cfg = resolve(&args.common)?;
    if args.cutoff_cap < 2 {
        return Err(Failure::usage("--cutoff-cap must be at least 2"));
    }
    let vcfg = ValidationConfig {
        cutoff_bound: cfg.cutoff_bound,
        cutoff_cap: args.cutoff_cap,
        rtol: cfg.rtol,
        atol: cfg.atol,
        grid: if args.quick { Grid::Quick } else { Grid::Full },
        fault: args.inject_fault.map(|f| match f {
            FaultArg::F5DampingSign => Fault::F5DampingSign,
        }),
    };
    let report = validate(&vcfg);
    let meta = vec![
        ("command".to_string(), "validate".to_string()),
        (
            "grid".to_string(),
            if args.quick { "quick" } else { "full" }.to_string(),
        ),
        ("rtol".to_string(), crate::config::num(cfg.rtol)),
        ("atol".to_string(), crate::config::num(cfg.atol)),
        (
            "cutoff_bound".to_string(),
            crate::config::num(cfg.cutoff_bound),
        ),
        ("cutoff_cap".to_string(), args.cutoff_cap.to_string()),
        ("passed".to_string(), report.passed().to_string()),
    ];
    let mut t = Table::new(
        meta,
        &[
            "id",
            "name",
            "status",
            "max_error",
            "tolerance",
            "points",
            "inconclusive",
            "detail",
        ],
    );
    let mut warnings = Vec::new();
    for c in &report.checks {
        if c.status == Status::Inconclusive {
            warnings.push(format!(
                "check {} ({}) inconclusive: {}",
                c.id, c.name, c.detail
            ));
        }
        t.push(vec![
            (c.id as usize).into(),
            c.name.into(),
            c.status.as_str().into(),
            c.max_error.into(),
            c.tolerance.into(),
            c.points.into(),
            c.inconclusive.into(),
            c.detail.clone().into(),
        ]);
    }
    Ok(Validation {
        table: t,
        config: cfg,
        failed: !report.passed(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_specs() {
        let a = parse_axis("nth:0:1:5").unwrap();
        assert_eq!(a.name, "nth");
        assert_eq!(a.values, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let l = parse_axis("xi:0.1:10:3:log").unwrap();
        assert!((l.values[1] - 1.0).abs() < 1e-15);
        assert_eq!(parse_axis("xi:2:3:1").unwrap().values, vec![2.0]);
        for bad in [
            "speed:0:1:3",
            "xi:0:1:0",
            "xi:0:1",
            "xi:0:1:3:log",
            "xi:a:1:3",
            "xi:1:2:3:cubic",
        ] {
            assert_eq!(parse_axis(bad).unwrap_err().code, 64, "{bad}");
        }
    }

    #[test]
    fn sweep_marks_failed_points() {
        let p = SystemParams::symmetric(1.0, 0.0, 1.0, 0.0).unwrap();
        let row = sweep_point(with_axis(p, "kappa", -1.0));
        assert!(matches!(row.last(), Some(Cell::Text(s)) if s.contains("kappa")));
        let row = sweep_point(p);
        assert_eq!(row.last(), Some(&Cell::Text(String::new())));
    }
}
