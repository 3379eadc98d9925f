//! Unitary operators and their application to subsystems.

use std::ops::Range;

use super::linalg::{self, CMat};
use super::state::{MixedState, PureState, QuantumState};
use super::STRUCT_TOL;
use crate::{Error, Result};

/// A unitary operator on a register of the given dimension.
#[derive(Debug, Clone)]
pub struct UnitaryOp {
    matrix: CMat,
}

impl UnitaryOp {
    pub fn new(matrix: CMat) -> Result<Self> {
        let dim = matrix.nrows();
        if dim == 0 || matrix.ncols() != dim {
            return Err(Error::Shape(format!(
                "unitary must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dev = linalg::frobenius_distance(&(&matrix * matrix.adjoint()), &linalg::identity(dim));
        if dev > STRUCT_TOL {
            return Err(Error::InvalidUnitary(format!(
                "U U^dag deviates from identity by {dev:.3e}"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Permutation unitary |i⟩ → |images[i]⟩.
    pub fn from_basis_map(images: &[usize]) -> Result<Self> {
        let dim = images.len();
        let mut seen = vec![false; dim];
        let mut m = CMat::zeros(dim, dim);
        for (src, &dst) in images.iter().enumerate() {
            if dst >= dim || seen[dst] {
                return Err(Error::InvalidUnitary(format!(
                    "basis map {images:?} is not a permutation"
                )));
            }
            seen[dst] = true;
            m[(dst, src)] = linalg::cr(1.0);
        }
        Self::new(m)
    }

    /// Diagonal unitary with the given unit-modulus phases.
    pub fn diagonal(phases: &[num_complex::Complex64]) -> Result<Self> {
        let dim = phases.len();
        let mut m = CMat::zeros(dim, dim);
        for (i, &p) in phases.iter().enumerate() {
            m[(i, i)] = p;
        }
        Self::new(m)
    }
}

/// Applies `u` to the contiguous factor range `target` of `s`, embedding it
/// as I ⊗ U ⊗ I against the declared register factorization.
pub fn apply_unitary(u: &UnitaryOp, s: &QuantumState, target: Range<usize>) -> Result<QuantumState> {
    let factors = s.factors();
    if target.start >= target.end || target.end > factors.len() {
        return Err(Error::Shape(format!(
            "target range {target:?} out of bounds for {} factors",
            factors.len()
        )));
    }
    let left: usize = factors[..target.start].iter().product();
    let mid: usize = factors[target.clone()].iter().product();
    let right: usize = factors[target.end..].iter().product();
    if mid != u.dim() {
        return Err(Error::Shape(format!(
            "unitary dim {} does not match target subsystem dim {mid}",
            u.dim()
        )));
    }

    let embedded = if left == 1 && right == 1 {
        u.matrix().clone()
    } else {
        let li = linalg::identity(left);
        let ri = linalg::identity(right);
        linalg::kron(&linalg::kron(&li, u.matrix()), &ri)
    };

    Ok(match s {
        QuantumState::Pure(p) => {
            let amps = &embedded * p.amplitudes();
            QuantumState::Pure(PureState::from_parts(
                amps,
                p.labels().map(|l| l.to_vec()),
                p.factors().to_vec(),
            ))
        }
        QuantumState::Mixed(m) => {
            let rho = &embedded * m.density() * embedded.adjoint();
            QuantumState::Mixed(MixedState::from_parts(
                rho,
                m.labels().map(|l| l.to_vec()),
                m.factors().to_vec(),
            ))
        }
    })
}
