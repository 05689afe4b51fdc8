//! Entanglement dynamics of two dissipative bosonic modes driven by
//! two-mode squeezing.
//!
//! The density operator is written in Wei-Norman form, a product of
//! exponentials of so(4,2) superoperators acting on the vacuum. Starting
//! from the vacuum only four functions `f₃, f₅, f₉, f₁₂` shape the state and
//! its negativity has a closed form. The [`fock`] module is an independent
//! truncated Fock-space solver used to check every closed form.
//!
//! The closed-form and ODE code is generic over [`Real`] (`f32`, `f64`);
//! aliases for both are exported at the crate root.

pub mod algebra;
pub mod entanglement;
mod error;
pub mod fock;
pub mod params;
mod scalar;
pub mod validation;
pub mod weinorman;

pub use error::{Error, Result};
pub use params::{ParamSchedule, Sign, SystemParams, TimeDependent};
pub use scalar::Real;

pub type SystemParams64 = SystemParams<f64>;
pub type SystemParams32 = SystemParams<f32>;
pub type WnState64 = weinorman::WnState<f64>;
pub type WnState32 = weinorman::WnState<f32>;
pub type Trajectory64 = weinorman::Trajectory<f64>;
pub type Trajectory32 = weinorman::Trajectory<f32>;
pub type NegativityResult64 = entanglement::NegativityResult<f64>;
pub type NegativityResult32 = entanglement::NegativityResult<f32>;
pub type MomentSet64 = entanglement::MomentSet<f64>;
pub type MomentSet32 = entanglement::MomentSet<f32>;
