//! Wei-Norman equations of motion, their closed-form solutions and
//! long-time limits.

mod analytic;
mod integrate;
mod ode;
mod regime;
mod rhs;
mod state;
mod steady;
mod thermal;

pub use analytic::{analytic_symmetric, pqr, symmetric_rhs, Pqr};
pub use integrate::{
    integrate, integrate_at, IntegrateOptions, Trajectory, TrajectoryMeta, DIVERGENCE_MARGIN,
    NORMALIZATION_FLOOR, TRAJECTORY_COLUMNS,
};
pub use ode::{solve, DenseStep, StepControl, StepStats};
pub use regime::{
    classify_regime, effective_detuning, xi_boundary_sq, Regime, RegimeLabel, BOUNDARY_TOL,
};
pub use rhs::{wn_rhs, Fault, WnRates};
pub use state::WnState;
pub use steady::{
    steady_state, symmetric_closed_form, zero_temperature_closed_form, SteadyMethod, SteadyState,
    STEADY_RESIDUAL,
};
pub use thermal::{
    equilibrium_tau, thermal_corrections, thermal_corrections_sandwich, thermal_g_functions,
};
