//! Pure and mixed states over labelled registers.
//!
//! Register factorizations are declared explicitly (and tracked through
//! composition) so that partial traces are unambiguous.

use num_complex::Complex64;

use super::linalg::{self, CMat, CVec};
use super::{DIM_CAP, STRUCT_TOL};
use crate::{Error, Result};

/// A pure state: a unit-norm complex amplitude vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: CVec,
    labels: Option<Vec<String>>,
    factors: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, labels: Option<Vec<String>>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim == 0 {
            return Err(Error::InvalidState("pure state must have dim >= 1".into()));
        }
        if dim > DIM_CAP {
            return Err(Error::Capacity(format!(
                "state dimension {dim} exceeds cap {DIM_CAP}"
            )));
        }
        if let Some(ref l) = labels {
            if l.len() != dim {
                return Err(Error::Shape(format!(
                    "{} labels for dimension {dim}",
                    l.len()
                )));
            }
        }
        let v = CVec::from_vec(amplitudes);
        let norm2: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > STRUCT_TOL {
            return Err(Error::InvalidState(format!(
                "amplitude norm^2 = {norm2}, expected 1"
            )));
        }
        Ok(Self {
            amplitudes: v,
            labels,
            factors: vec![dim],
        })
    }

    /// Computational-basis state `|index⟩` of the given dimension.
    pub fn basis(dim: usize, index: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if index >= dim {
            return Err(Error::Domain(format!("basis index {index} >= dim {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(amps, labels)
    }

    /// Uniform superposition over all basis states.
    pub fn uniform(dim: usize, labels: Option<Vec<String>>) -> Result<Self> {
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self::new(vec![a; dim], labels)
    }

    pub(crate) fn from_parts(
        amplitudes: CVec,
        labels: Option<Vec<String>>,
        factors: Vec<usize>,
    ) -> Self {
        let s = Self {
            amplitudes,
            labels,
            factors,
        };
        s.debug_validate();
        s
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Redeclare the register factorization (must multiply to the dimension).
    pub fn with_factors(mut self, factors: Vec<usize>) -> Result<Self> {
        let prod: usize = factors.iter().product();
        if prod != self.dim() || factors.iter().any(|&f| f == 0) {
            return Err(Error::Shape(format!(
                "factors {factors:?} do not multiply to dim {}",
                self.dim()
            )));
        }
        self.factors = factors;
        Ok(self)
    }

    pub fn to_density(&self) -> MixedState {
        let d = &self.amplitudes * self.amplitudes.adjoint();
        MixedState::from_parts(d, self.labels.clone(), self.factors.clone())
    }

    /// |⟨self|other⟩|².
    pub fn overlap_sqr(&self, other: &PureState) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "overlap of dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok((self.amplitudes.adjoint() * &other.amplitudes)[(0, 0)].norm_sqr())
    }

    /// Text dump: one line per amplitude, "re,im".
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for a in self.amplitudes.iter() {
            out.push_str(&format!("{:.12e},{:.12e}\n", a.re, a.im));
        }
        out
    }

    pub(crate) fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        {
            let norm2: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum();
            debug_assert!(
                (norm2 - 1.0).abs() <= 1e-7,
                "pure state norm^2 drifted to {norm2}"
            );
        }
    }
}

/// A mixed state: a trace-one positive semidefinite density matrix.
#[derive(Debug, Clone)]
pub struct MixedState {
    density: CMat,
    labels: Option<Vec<String>>,
    factors: Vec<usize>,
}

impl MixedState {
    /// Full validation: Hermitian within 1e-9, PSD (eigenvalues >= -1e-9),
    /// trace one within 1e-9.
    pub fn new(density: CMat, labels: Option<Vec<String>>) -> Result<Self> {
        let dim = density.nrows();
        if dim == 0 || density.ncols() != dim {
            return Err(Error::Shape(format!(
                "density must be square and non-empty, got {}x{}",
                density.nrows(),
                density.ncols()
            )));
        }
        if dim > DIM_CAP {
            return Err(Error::Capacity(format!(
                "state dimension {dim} exceeds cap {DIM_CAP}"
            )));
        }
        if let Some(ref l) = labels {
            if l.len() != dim {
                return Err(Error::Shape(format!(
                    "{} labels for dimension {dim}",
                    l.len()
                )));
            }
        }
        if !linalg::is_hermitian(&density, STRUCT_TOL) {
            return Err(Error::InvalidState("density is not Hermitian".into()));
        }
        let tr = density.trace();
        if (tr.re - 1.0).abs() > STRUCT_TOL || tr.im.abs() > STRUCT_TOL {
            return Err(Error::InvalidState(format!("density trace is {tr}")));
        }
        let min_eig = linalg::hermitian_eigenvalues(&density)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -STRUCT_TOL {
            return Err(Error::InvalidState(format!(
                "density has negative eigenvalue {min_eig}"
            )));
        }
        Ok(Self {
            density,
            labels,
            factors: vec![dim],
        })
    }

    /// Trusted constructor for densities that are PSD by construction
    /// (projections, partial traces, unitary conjugates). Cheap checks only;
    /// the eigenvalue check runs in debug mode at small dimensions.
    pub(crate) fn from_parts(
        density: CMat,
        labels: Option<Vec<String>>,
        factors: Vec<usize>,
    ) -> Self {
        let s = Self {
            density,
            labels,
            factors,
        };
        s.debug_validate();
        s
    }

    pub fn basis(dim: usize, index: usize, labels: Option<Vec<String>>) -> Result<Self> {
        Ok(PureState::basis(dim, index, labels)?.to_density())
    }

    /// Maximally mixed state I/dim.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 || dim > DIM_CAP {
            return Err(Error::Capacity(format!("dim {dim} out of range")));
        }
        Ok(Self::from_parts(
            linalg::identity(dim).scale(1.0 / dim as f64),
            None,
            vec![dim],
        ))
    }

    pub fn dim(&self) -> usize {
        self.density.nrows()
    }

    pub fn density(&self) -> &CMat {
        &self.density
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn with_factors(mut self, factors: Vec<usize>) -> Result<Self> {
        let prod: usize = factors.iter().product();
        if prod != self.dim() || factors.iter().any(|&f| f == 0) {
            return Err(Error::Shape(format!(
                "factors {factors:?} do not multiply to dim {}",
                self.dim()
            )));
        }
        self.factors = factors;
        Ok(self)
    }

    /// Projector onto the support (eigenvectors with eigenvalue > 1e-9).
    pub fn support_projector(&self) -> CMat {
        linalg::support_projector(&self.density, STRUCT_TOL)
    }

    /// Text dump: one matrix row per line, entries as "re,im" separated by
    /// single spaces.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            let mut row = Vec::with_capacity(self.dim());
            for j in 0..self.dim() {
                let e = self.density[(i, j)];
                row.push(format!("{:.12e},{:.12e}", e.re, e.im));
            }
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub(crate) fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        {
            debug_assert!(
                linalg::is_hermitian(&self.density, 1e-7),
                "density drifted from Hermitian"
            );
            let tr = self.density.trace();
            debug_assert!(
                (tr.re - 1.0).abs() <= 1e-7 && tr.im.abs() <= 1e-7,
                "density trace drifted to {tr}"
            );
            // Full positivity check is cubic; keep it to small registers in
            // debug builds. Property tests cover the general case.
            if self.dim() <= 24 {
                let min = linalg::hermitian_eigenvalues(&self.density)
                    .first()
                    .copied()
                    .unwrap_or(0.0);
                debug_assert!(min >= -1e-7, "density eigenvalue {min} < 0");
            }
        }
    }
}

/// Either a pure or a mixed state.
#[derive(Debug, Clone)]
pub enum QuantumState {
    Pure(PureState),
    Mixed(MixedState),
}

impl QuantumState {
    pub fn dim(&self) -> usize {
        match self {
            QuantumState::Pure(p) => p.dim(),
            QuantumState::Mixed(m) => m.dim(),
        }
    }

    pub fn factors(&self) -> &[usize] {
        match self {
            QuantumState::Pure(p) => p.factors(),
            QuantumState::Mixed(m) => m.factors(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        match self {
            QuantumState::Pure(p) => p.labels(),
            QuantumState::Mixed(m) => m.labels(),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, QuantumState::Pure(_))
    }

    pub fn to_density(&self) -> MixedState {
        match self {
            QuantumState::Pure(p) => p.to_density(),
            QuantumState::Mixed(m) => m.clone(),
        }
    }

    pub fn with_factors(self, factors: Vec<usize>) -> Result<Self> {
        Ok(match self {
            QuantumState::Pure(p) => QuantumState::Pure(p.with_factors(factors)?),
            QuantumState::Mixed(m) => QuantumState::Mixed(m.with_factors(factors)?),
        })
    }
}

impl From<PureState> for QuantumState {
    fn from(p: PureState) -> Self {
        QuantumState::Pure(p)
    }
}

impl From<MixedState> for QuantumState {
    fn from(m: MixedState) -> Self {
        QuantumState::Mixed(m)
    }
}
