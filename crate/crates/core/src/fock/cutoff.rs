use crate::error::{Error, Result};
use serde::Serialize;

/// Default ceiling on the per-mode cutoff.
pub const DEFAULT_CUTOFF_CAP: usize = 64;

/// Outcome of a cutoff choice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffReport {
    pub cutoff: usize,
    /// Predicted (geometric) or measured population of the top level.
    pub tail_mass: f64,
    pub bound: f64,
    pub x_plus: f64,
}

impl CutoffReport {
    pub fn within_bound(&self) -> bool {
        self.tail_mass <= self.bound
    }
}

/// Smallest `N ≥ 2` with `x₊^N ≤ bound`, capped at `cap`.
pub fn choose_cutoff(x_plus: f64, bound: f64, cap: usize) -> Result<CutoffReport> {
    if !(bound > 0.0 && bound <= 1e-4) {
        return Err(Error::param(
            "bound",
            format!("must lie in (0, 1e-4], got {bound}"),
        ));
    }
    if !(0.0..=1.0).contains(&x_plus) {
        return Err(Error::param(
            "x_plus",
            format!("must lie in [0, 1], got {x_plus}"),
        ));
    }
    let required = if x_plus == 0.0 {
        2
    } else if x_plus >= 1.0 {
        usize::MAX
    } else {
        let n = (bound.ln() / x_plus.ln()).ceil();
        if n > 1e6 {
            usize::MAX
        } else {
            (n as usize).max(2)
        }
    };
    if required > cap {
        return Err(Error::CutoffCapExceeded {
            required,
            cap,
            x_plus,
        });
    }
    Ok(CutoffReport {
        cutoff: required,
        tail_mass: x_plus.powi(required as i32),
        bound,
        x_plus,
    })
}

/// [`choose_cutoff`] for the state with the given Wei-Norman functions.
pub fn cutoff_for_state(
    f3: f64,
    f5: f64,
    f9: f64,
    f12: f64,
    bound: f64,
    cap: usize,
) -> Result<CutoffReport> {
    let xp = f3 + (f5 * f5 + f9 * f9 + f12 * f12).sqrt();
    choose_cutoff(xp.max(0.0), bound, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(choose_cutoff(0.0, 1e-8, 64).unwrap().cutoff, 2);
        let r = choose_cutoff(0.5, 1e-8, 64).unwrap();
        assert_eq!(r.cutoff, 27);
        assert!(r.within_bound());
        assert!(matches!(
            choose_cutoff(0.999, 1e-8, 64),
            Err(Error::CutoffCapExceeded { cap: 64, .. })
        ));
        assert!(choose_cutoff(1.0, 1e-8, 64).is_err());
        assert!(choose_cutoff(0.5, 1e-3, 64).is_err());
    }
}
