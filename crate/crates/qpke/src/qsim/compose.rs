//! Register composition and discarding: tensor products and partial trace.

use std::ops::Range;

use super::linalg::{self, CMat};
use super::state::{MixedState, PureState, QuantumState};
use super::ENTRY_CAP;
use crate::{Error, Result};

fn combined_labels(a: Option<&[String]>, b: Option<&[String]>) -> Option<Vec<String>> {
    match (a, b) {
        (Some(la), Some(lb)) => {
            let mut out = Vec::with_capacity(la.len() * lb.len());
            for x in la {
                for y in lb {
                    out.push(format!("{x}{y}"));
                }
            }
            Some(out)
        }
        _ => None,
    }
}

/// Kronecker composition. Pure ⊗ pure stays pure; anything else is mixed.
/// The register factorizations concatenate.
pub fn tensor(a: &QuantumState, b: &QuantumState) -> Result<QuantumState> {
    let dim = a
        .dim()
        .checked_mul(b.dim())
        .ok_or_else(|| Error::Capacity("tensor dimension overflows usize".into()))?;
    let entries = dim
        .checked_mul(dim)
        .ok_or_else(|| Error::Capacity("tensor entry count overflows usize".into()))?;
    if entries > ENTRY_CAP {
        return Err(Error::Capacity(format!(
            "tensor of dims {}x{} needs {entries} matrix entries, cap is {ENTRY_CAP}",
            a.dim(),
            b.dim()
        )));
    }
    let labels = combined_labels(a.labels(), b.labels());
    let mut factors = a.factors().to_vec();
    factors.extend_from_slice(b.factors());

    Ok(match (a, b) {
        (QuantumState::Pure(pa), QuantumState::Pure(pb)) => {
            let amps = linalg::kron_vec(pa.amplitudes(), pb.amplitudes());
            QuantumState::Pure(PureState::from_parts(amps, labels, factors))
        }
        _ => {
            let da = a.to_density();
            let db = b.to_density();
            let rho = linalg::kron(da.density(), db.density());
            QuantumState::Mixed(MixedState::from_parts(rho, labels, factors))
        }
    })
}

/// Tensor of a sequence of states, left to right.
pub fn tensor_all(states: &[QuantumState]) -> Result<QuantumState> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::Domain("tensor_all of empty sequence".into()))?;
    let mut acc = first.clone();
    for s in rest {
        acc = tensor(&acc, s)?;
    }
    Ok(acc)
}

/// Traces out everything outside the contiguous factor range `keep`.
pub fn partial_trace(s: &MixedState, keep: Range<usize>) -> Result<MixedState> {
    let factors = s.factors();
    if keep.start >= keep.end || keep.end > factors.len() {
        return Err(Error::Shape(format!(
            "keep range {keep:?} not aligned to declared factorization {factors:?}"
        )));
    }
    let left: usize = factors[..keep.start].iter().product();
    let mid: usize = factors[keep.clone()].iter().product();
    let right: usize = factors[keep.end..].iter().product();

    let rho = s.density();
    let mut out = CMat::zeros(mid, mid);
    for b1 in 0..mid {
        for b2 in 0..mid {
            let mut sum = num_complex::Complex64::new(0.0, 0.0);
            for a in 0..left {
                for c in 0..right {
                    let i = (a * mid + b1) * right + c;
                    let j = (a * mid + b2) * right + c;
                    sum += rho[(i, j)];
                }
            }
            out[(b1, b2)] = sum;
        }
    }
    // Labels refer to the full register; they do not survive a trace unless
    // nothing was discarded.
    let labels = if left == 1 && right == 1 {
        s.labels().map(|l| l.to_vec())
    } else {
        None
    };
    Ok(MixedState::from_parts(
        out,
        labels,
        factors[keep].to_vec(),
    ))
}
