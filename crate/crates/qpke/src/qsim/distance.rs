//! Trace distance and the optimal two-state discrimination measurement.

use super::linalg::{self, CMat};
use super::measure::ProjectiveMeasurement;
use super::state::MixedState;
use crate::{Error, Result};

/// ½ Σ |λ_i| over the eigenvalues of a.density − b.density.
pub fn trace_distance(a: &MixedState, b: &MixedState) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!(
            "trace distance of dims {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let delta = a.density() - b.density();
    let sum: f64 = linalg::hermitian_eigenvalues(&delta)
        .iter()
        .map(|v| v.abs())
        .sum();
    Ok(0.5 * sum)
}

/// The optimal distinguishing advantage between two states together with the
/// measurement achieving it: the first projector spans the nonnegative
/// eigenspace of a.density − b.density, so Pr[+|a] − Pr[+|b] equals the
/// returned advantage exactly.
pub fn helstrom_advantage(
    a: &MixedState,
    b: &MixedState,
) -> Result<(f64, ProjectiveMeasurement)> {
    if a.dim() != b.dim() {
        return Err(Error::Shape(format!(
            "helstrom of dims {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let dim = a.dim();
    let delta = a.density() - b.density();
    let (vals, vecs) = linalg::hermitian_eigen(&delta);
    let advantage: f64 = 0.5 * vals.iter().map(|v| v.abs()).sum::<f64>();

    let mut plus = CMat::zeros(dim, dim);
    for (i, &v) in vals.iter().enumerate() {
        if v >= 0.0 {
            let col = vecs.column(i);
            plus += &col * col.adjoint();
        }
    }
    let measurement = ProjectiveMeasurement::new(
        vec![plus.clone(), linalg::identity(dim) - &plus],
        vec!["+".to_string(), "-".to_string()],
    )?;
    Ok((advantage, measurement))
}
