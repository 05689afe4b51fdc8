//! Entanglement measures of the closed-form two-mode state.

mod cvs;
mod moments;
mod negativity;
mod spectrum;
mod transient;

pub use cvs::{
    cvs_audit, cvs_quadratic_form, cvs_separable, optimal_directions, quadrature_variance,
    CvsAudit, F9_TOL,
};
pub use moments::{
    generating_function, generating_gradient, moments, moments_with_phase, MomentSet,
};
pub use negativity::{negativity, x_pm, NegativityResult, EDGE_SLACK};
pub use spectrum::{
    auto_order, pt_spectrum, recursive_exponents, trace_power, trace_power_recursive, PtEigenvalue,
    SPECTRUM_EPS,
};
pub use transient::{
    separability_threshold_symmetric, steady_negativity_symmetric, steady_separable_symmetric,
    thermal_negativity, thermal_onset_time, transient_negativity, transient_negativity_from_decay,
    ONSET_RTOL,
};
