//! Run configuration: built-in defaults, then a `key=value` file, then flags.

use crate::Failure;
use clap::{Args, ValueEnum};
use std::path::{Path, PathBuf};
use twomode::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Flags shared by every subcommand. All optional so a config file can
/// supply them.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Damping rate of mode a.
    #[arg(long, allow_negative_numbers = true)]
    pub kappa1: Option<f64>,
    /// Damping rate of mode b.
    #[arg(long, allow_negative_numbers = true)]
    pub kappa2: Option<f64>,
    /// Sets both damping rates (overridden by --kappa1/--kappa2).
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    /// Bath occupation of mode a.
    #[arg(long, allow_negative_numbers = true)]
    pub nth1: Option<f64>,
    /// Bath occupation of mode b.
    #[arg(long, allow_negative_numbers = true)]
    pub nth2: Option<f64>,
    /// Sets both bath occupations (overridden by --nth1/--nth2).
    #[arg(long, allow_negative_numbers = true)]
    pub nth: Option<f64>,
    /// Squeeze drive magnitude |xi|.
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Detuning.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Drive phase.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// End of the time grid.
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    /// Number of time steps; the grid has t_steps + 1 points.
    #[arg(long)]
    pub t_steps: Option<usize>,
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long)]
    pub atol: Option<f64>,
    /// Tail-mass bound for the Fock-space oracle.
    #[arg(long)]
    pub cutoff_bound: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file with defaults for any of these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Shortest round-trip form, with an exponent for very small or large values.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: SystemParams,
    pub t_max: f64,
    pub t_steps: usize,
    pub rtol: f64,
    pub atol: f64,
    pub cutoff_bound: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Header metadata in a fixed order.
    pub fn meta(&self, command: &str) -> Vec<(String, String)> {
        let p = &self.params;
        [
            ("command", command.to_string()),
            ("kappa1", num(p.kappa1)),
            ("kappa2", num(p.kappa2)),
            ("nth1", num(p.nth1)),
            ("nth2", num(p.nth2)),
            ("xi", num(p.xi_abs)),
            ("delta", num(p.delta)),
            ("phi", num(p.phi)),
            ("t_max", num(self.t_max)),
            ("t_steps", self.t_steps.to_string()),
            ("rtol", num(self.rtol)),
            ("atol", num(self.atol)),
            ("cutoff_bound", num(self.cutoff_bound)),
            ("format", self.format.as_str().to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }

    /// `t_steps + 1` equally spaced times from 0 to `t_max`.
    pub fn times(&self) -> Vec<f64> {
        let n = self.t_steps;
        if n == 0 {
            return vec![0.0];
        }
        (0..=n).map(|i| self.t_max * i as f64 / n as f64).collect()
    }
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.trim()
        .parse()
        .map_err(|_| Failure::usage(format!("config key `{key}`: cannot parse `{v}`")))
}

/// Reads `key = value` lines; `#` starts a comment. Keys use the flag names
/// with either `-` or `_`.
pub fn read_config_file(path: &Path) -> Result<CommonArgs, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<CommonArgs, Failure> {
    let mut a = CommonArgs::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Failure::usage(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "kappa1" => a.kappa1 = Some(number(&key, value)?),
            "kappa2" => a.kappa2 = Some(number(&key, value)?),
            "kappa" => a.kappa = Some(number(&key, value)?),
            "nth1" => a.nth1 = Some(number(&key, value)?),
            "nth2" => a.nth2 = Some(number(&key, value)?),
            "nth" => a.nth = Some(number(&key, value)?),
            "xi" => a.xi = Some(number(&key, value)?),
            "delta" => a.delta = Some(number(&key, value)?),
            "phi" => a.phi = Some(number(&key, value)?),
            "t_max" => a.t_max = Some(number(&key, value)?),
            "t_steps" => a.t_steps = Some(number(&key, value)?),
            "rtol" => a.rtol = Some(number(&key, value)?),
            "atol" => a.atol = Some(number(&key, value)?),
            "cutoff_bound" => a.cutoff_bound = Some(number(&key, value)?),
            "jobs" => a.jobs = Some(number(&key, value)?),
            "out" => a.out = Some(PathBuf::from(value)),
            "format" => {
                a.format = Some(Format::parse(value).ok_or_else(|| {
                    Failure::usage(format!("config key `format`: unknown `{value}`"))
                })?)
            }
            other => {
                return Err(Failure::usage(format!(
                    "config line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(a)
}

/// Fields set in `over` win over `base`.
fn overlay(base: CommonArgs, over: CommonArgs) -> CommonArgs {
    CommonArgs {
        kappa1: over.kappa1.or(base.kappa1),
        kappa2: over.kappa2.or(base.kappa2),
        kappa: over.kappa.or(base.kappa),
        nth1: over.nth1.or(base.nth1),
        nth2: over.nth2.or(base.nth2),
        nth: over.nth.or(base.nth),
        xi: over.xi.or(base.xi),
        delta: over.delta.or(base.delta),
        phi: over.phi.or(base.phi),
        t_max: over.t_max.or(base.t_max),
        t_steps: over.t_steps.or(base.t_steps),
        rtol: over.rtol.or(base.rtol),
        atol: over.atol.or(base.atol),
        cutoff_bound: over.cutoff_bound.or(base.cutoff_bound),
        format: over.format.or(base.format),
        out: over.out.or(base.out),
        config: None,
        jobs: over.jobs.or(base.jobs),
    }
}

pub fn resolve(flags: &CommonArgs) -> Result<RunConfig, Failure> {
    let merged = match &flags.config {
        Some(path) => overlay(read_config_file(path)?, flags.clone()),
        None => flags.clone(),
    };
    let kappa = merged.kappa.unwrap_or(1.0);
    let nth = merged.nth.unwrap_or(0.0);
    let params = SystemParams::new(
        merged.kappa1.unwrap_or(kappa),
        merged.kappa2.unwrap_or(kappa),
        merged.nth1.unwrap_or(nth),
        merged.nth2.unwrap_or(nth),
        merged.delta.unwrap_or(0.0),
        merged.xi.unwrap_or(1.0),
        merged.phi.unwrap_or(0.0),
    )
    .map_err(|e| Failure::usage(e.to_string()))?;
    let t_max = merged.t_max.unwrap_or(10.0);
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Failure::usage(format!(
            "--t-max must be finite and >= 0, got {t_max}"
        )));
    }
    let tol = |name: &str, v: f64| {
        if v > 0.0 && v <= 1e-2 {
            Ok(v)
        } else {
            Err(Failure::usage(format!(
                "--{name} must lie in (0, 1e-2], got {v}"
            )))
        }
    };
    let cutoff_bound = merged.cutoff_bound.unwrap_or(1e-8);
    if !(cutoff_bound > 0.0 && cutoff_bound <= 1e-4) {
        return Err(Failure::usage(format!(
            "--cutoff-bound must lie in (0, 1e-4], got {cutoff_bound}"
        )));
    }
    if merged.jobs == Some(0) {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    Ok(RunConfig {
        params,
        t_max,
        t_steps: merged.t_steps.unwrap_or(1000),
        rtol: tol("rtol", merged.rtol.unwrap_or(1e-10))?,
        atol: tol("atol", merged.atol.unwrap_or(1e-12))?,
        cutoff_bound,
        format: merged.format.unwrap_or(Format::Csv),
        out: merged.out,
        jobs: merged.jobs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_config("# run\nkappa = 0.5\nnth2=0.3 # bath b\nt-max = 4\nformat=json\n")
            .unwrap();
        let flags = CommonArgs {
            kappa2: Some(2.0),
            ..Default::default()
        };
        let cfg = resolve(&overlay(file, flags)).unwrap();
        assert_eq!(cfg.params.kappa1, 0.5);
        assert_eq!(cfg.params.kappa2, 2.0);
        assert_eq!(cfg.params.nth2, 0.3);
        assert_eq!(cfg.t_max, 4.0);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.times().len(), 1001);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config("speed = 3").is_err());
        assert!(parse_config("kappa = fast").is_err());
        assert!(parse_config("just words").is_err());
        let neg = CommonArgs {
            kappa: Some(-1.0),
            ..Default::default()
        };
        assert_eq!(resolve(&neg).unwrap_err().code, 64);
    }
}
