use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("generator index {0} outside 1..=15")]
    GeneratorIndex(usize),

    #[error("superoperator index {0} outside 0..=15")]
    SuperoperatorIndex(usize),

    #[error("Fock cutoff {0} is below the minimum of 2")]
    CutoffTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalizable (x+ = {x_plus}, x- = {x_minus})")]
    NonNormalizable { x_plus: f64, x_minus: f64 },

    #[error("step size underflow at t = {t} (h = {h})")]
    StepSizeUnderflow { t: f64, h: f64 },

    #[error("trajectory diverges at t = {t}: 1 - x+ = {margin:e}, occupations unbounded")]
    Divergence { t: f64, margin: f64 },

    #[error("invariant `{what}` violated at t = {t}: {value:e} exceeds {limit:e}")]
    InvariantViolation {
        t: f64,
        what: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("maximum number of steps ({0}) exceeded")]
    TooManySteps(usize),

    #[error("steady state search did not converge: {0}")]
    NoConvergence(String),

    #[error("steady state root is unphysical: {0}")]
    UnphysicalRoot(String),

    #[error("thermal correction has a pole: tau * (f2 {sign} f4) = {value}")]
    Pole { sign: char, value: f64 },

    #[error("criterion not applicable: {0}")]
    NotApplicable(String),

    #[error("trace power order must be at least 1")]
    ZeroPower,

    #[error("required cutoff {required} exceeds cap {cap} (x+ = {x_plus})")]
    CutoffCapExceeded {
        required: usize,
        cap: usize,
        x_plus: f64,
    },

    #[error("tail mass {tail_mass:e} above bound {bound:e} at cutoff {cutoff} (t = {t})")]
    TailMassExceeded {
        cutoff: usize,
        tail_mass: f64,
        bound: f64,
        t: f64,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
