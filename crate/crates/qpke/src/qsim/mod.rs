//! Small-dimension quantum state simulation.
//!
//! Dense complex matrices throughout; the single numeric kernel is the
//! Hermitian eigendecomposition in [`linalg`], which backs trace distance,
//! positivity checks and Helstrom measurements alike. All values are
//! immutable after construction and every operation is a pure function of
//! its inputs plus an explicitly passed random stream.

pub mod compose;
pub mod distance;
pub mod linalg;
pub mod measure;
pub mod state;
pub mod unitary;

pub use compose::{partial_trace, tensor};
pub use distance::{helstrom_advantage, trace_distance};
pub use measure::{measure, MeasurementOutcome, ProjectiveMeasurement};
pub use state::{MixedState, PureState, QuantumState};
pub use unitary::{apply_unitary, UnitaryOp};

/// Tolerance for structural invariants (norms, Hermiticity, idempotence).
pub const STRUCT_TOL: f64 = 1e-9;
/// Tolerance for derived inequalities (triangle inequality and the like).
pub const DERIVED_TOL: f64 = 1e-8;
/// Cap on total matrix entries of any constructed state (dim^2 for density
/// matrices), so composed registers stay at desk scale.
pub const ENTRY_CAP: usize = 1 << 20;

/// Largest dimension whose square stays under [`ENTRY_CAP`].
pub const DIM_CAP: usize = 1 << 10;

#[cfg(test)]
mod tests;
