//! The so(4,2) superoperator algebra behind the master equation.

mod alpha;
mod so42;
mod structure;
mod superop;

pub use alpha::{alpha_vector, AlphaVector};
pub use so42::{so42_generator, So42Matrix, METRIC};
pub use structure::{structure_constants, unit, Combination, StructureTable, DIM};
pub use superop::{master_rhs_from_alphas, superoperator, superoperator_matrix, Superoperator};
