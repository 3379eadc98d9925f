//! Concrete schemes: the permutation-phase bit encryption, the classical
//! quadratic-residuosity toy as a degenerate-quantum negative control, and a
//! deliberately broken scheme.

pub mod broken;
pub mod perm;
pub mod toy_gm;

pub use broken::BrokenScheme;
pub use perm::{perm_keygen, Perm, PermScheme, SymmetricGroup};
pub use toy_gm::ToyGmScheme;
