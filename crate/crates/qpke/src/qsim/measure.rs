//! Projective measurements with exact Born-value reporting.

use rand::Rng;

use super::linalg::{self, CMat};
use super::state::{MixedState, PureState, QuantumState};
use super::STRUCT_TOL;
use crate::{Error, Result};

/// A projective measurement: orthogonal projectors summing to the identity.
#[derive(Debug, Clone)]
pub struct ProjectiveMeasurement {
    projectors: Vec<CMat>,
    outcome_labels: Vec<String>,
}

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<CMat>, outcome_labels: Vec<String>) -> Result<Self> {
        if projectors.is_empty() || projectors.len() != outcome_labels.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} projectors for {} labels",
                projectors.len(),
                outcome_labels.len()
            )));
        }
        let dim = projectors[0].nrows();
        let mut sum = CMat::zeros(dim, dim);
        for p in &projectors {
            if p.nrows() != dim || p.ncols() != dim {
                return Err(Error::Shape("projector dimensions differ".into()));
            }
            if !linalg::is_hermitian(p, STRUCT_TOL) {
                return Err(Error::InvalidMeasurement("projector not Hermitian".into()));
            }
            if linalg::frobenius_distance(&(p * p), p) > STRUCT_TOL {
                return Err(Error::InvalidMeasurement("projector not idempotent".into()));
            }
            sum += p;
        }
        if linalg::frobenius_distance(&sum, &linalg::identity(dim)) > STRUCT_TOL {
            return Err(Error::InvalidMeasurement(
                "projectors do not sum to identity".into(),
            ));
        }
        Ok(Self {
            projectors,
            outcome_labels,
        })
    }

    /// Bypasses validation; for deliberately malformed test fixtures and
    /// internal constructions that are orthogonal by construction.
    pub fn new_unchecked(projectors: Vec<CMat>, outcome_labels: Vec<String>) -> Self {
        Self {
            projectors,
            outcome_labels,
        }
    }

    /// Measurement in the computational basis with labels "0", "1", ... or
    /// the provided custom labels.
    pub fn computational_basis(dim: usize, labels: Option<Vec<String>>) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| i.to_string()).collect());
        if labels.len() != dim {
            return Err(Error::Shape("label count != dim".into()));
        }
        let projectors = (0..dim)
            .map(|i| {
                let mut p = CMat::zeros(dim, dim);
                p[(i, i)] = linalg::cr(1.0);
                p
            })
            .collect();
        Self::new(projectors, labels)
    }

    /// Two-outcome measurement from a projector and its complement.
    pub fn binary(projector: CMat, label_in: &str, label_out: &str) -> Result<Self> {
        let dim = projector.nrows();
        let complement = linalg::identity(dim) - &projector;
        Self::new(
            vec![projector, complement],
            vec![label_in.to_string(), label_out.to_string()],
        )
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].nrows()
    }

    pub fn projectors(&self) -> &[CMat] {
        &self.projectors
    }

    pub fn outcome_labels(&self) -> &[String] {
        &self.outcome_labels
    }

    /// Exact Born probabilities of every outcome on the given state.
    pub fn outcome_probabilities(&self, s: &QuantumState) -> Result<Vec<f64>> {
        if s.dim() != self.dim() {
            return Err(Error::Shape(format!(
                "measurement dim {} vs state dim {}",
                self.dim(),
                s.dim()
            )));
        }
        Ok(match s {
            QuantumState::Pure(p) => self
                .projectors
                .iter()
                .map(|proj| linalg::quadratic_form(proj, p.amplitudes()).max(0.0))
                .collect(),
            QuantumState::Mixed(m) => self
                .projectors
                .iter()
                .map(|proj| linalg::trace_of_product(proj, m.density()).re.max(0.0))
                .collect(),
        })
    }
}

/// One sampled measurement outcome.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub label: String,
    pub index: usize,
    pub post_state: QuantumState,
    /// Exact Born value of the sampled outcome, not an empirical estimate.
    pub probability: f64,
}

/// Samples an outcome with its exact Born probability and returns the
/// renormalized post-measurement state.
pub fn measure<R: Rng + ?Sized>(
    m: &ProjectiveMeasurement,
    s: &QuantumState,
    rng: &mut R,
) -> Result<MeasurementOutcome> {
    let probs = m.outcome_probabilities(s)?;
    let total: f64 = probs.iter().sum();
    if total < 1e-12 {
        return Err(Error::InconsistentMeasurement);
    }
    let mut draw = rng.gen::<f64>() * total;
    let mut index = probs.len() - 1;
    for (i, &p) in probs.iter().enumerate() {
        if draw < p {
            index = i;
            break;
        }
        draw -= p;
    }
    // Guard against landing on a zero-probability outcome through float
    // carry-over at the end of the scan.
    if probs[index] <= 0.0 {
        index = probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("NaN probability"))
            .map(|(i, _)| i)
            .expect("nonempty");
    }

    let proj = &m.projectors[index];
    let p = probs[index];
    let post_state = match s {
        QuantumState::Pure(ps) => {
            let amps = (proj * ps.amplitudes()).scale(1.0 / p.sqrt());
            QuantumState::Pure(PureState::from_parts(
                amps,
                ps.labels().map(|l| l.to_vec()),
                ps.factors().to_vec(),
            ))
        }
        QuantumState::Mixed(ms) => {
            let rho = (proj * ms.density() * proj).scale(1.0 / p);
            QuantumState::Mixed(MixedState::from_parts(
                rho,
                ms.labels().map(|l| l.to_vec()),
                ms.factors().to_vec(),
            ))
        }
    };
    Ok(MeasurementOutcome {
        label: m.outcome_labels[index].clone(),
        index,
        post_state,
        probability: p,
    })
}
