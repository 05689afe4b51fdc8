//! Brute-force truncated Fock-space reference implementation.
//!
//! Shares no numerical code with the Wei-Norman solver so that the two can
//! be cross-checked.

mod cutoff;
mod density;
mod evolve;
mod lindblad;
mod materialize;
mod moments;
mod spectral;

pub use cutoff::{choose_cutoff, cutoff_for_state, CutoffReport, DEFAULT_CUTOFF_CAP};
pub use density::TruncatedDensityMatrix;
pub use evolve::{default_dt, evolve, EvolveOptions, EvolveReport};
pub use lindblad::{lindblad_rhs, LindbladGenerator};
pub use materialize::materialize;
pub use moments::moments_numeric;
pub use spectral::{
    hermitian_eigenvalues, negativity_numeric, negativity_numeric_with, partial_transpose,
    pt_eigenvalues, trace_of_power, Subsystem, NEG_THRESHOLD,
};
