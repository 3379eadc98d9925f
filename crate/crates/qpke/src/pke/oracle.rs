//! Decryption oracles under the four attack models.
//!
//! Oracle access is allowed only in phase one under CCA1 and in both phases
//! under CCA2; COA and CPA forbid decryption queries outright (encryption
//! needs no oracle since public-key copies are freely available). Under CCA2
//! in the second phase, every query state must have vanishing overlap with
//! the support of the challenge ciphertext.

use std::sync::Arc;

use crate::qsim::linalg::CMat;
use crate::qsim::{apply_unitary, partial_trace, QuantumState, UnitaryOp, STRUCT_TOL};
use crate::{Error, Result};

use super::{decrypt_scored, Ciphertext, DecryptionKey, Scheme};

/// The four attack models, ordered by oracle power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackModel {
    Coa,
    Cpa,
    Cca1,
    Cca2,
}

impl AttackModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttackModel::Coa => "coa",
            AttackModel::Cpa => "cpa",
            AttackModel::Cca1 => "cca1",
            AttackModel::Cca2 => "cca2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "coa" => Ok(AttackModel::Coa),
            "cpa" => Ok(AttackModel::Cpa),
            "cca1" => Ok(AttackModel::Cca1),
            "cca2" => Ok(AttackModel::Cca2),
            other => Err(Error::Config(format!("unknown attack model {other:?}"))),
        }
    }

    pub fn all() -> [AttackModel; 4] {
        [
            AttackModel::Coa,
            AttackModel::Cpa,
            AttackModel::Cca1,
            AttackModel::Cca2,
        ]
    }
}

/// Attack phase: before or after the challenge ciphertext is issued.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Classical,
    Superposed,
}

/// One answered oracle query.
#[derive(Debug, Clone)]
pub struct QueryRecord {
    pub phase: Phase,
    pub kind: QueryKind,
    /// Overlap of the query with the challenge support at query time
    /// (zero when no challenge restriction was active).
    pub overlap: f64,
}

/// Single-owner oracle handle for one game trial. Queries are logged with
/// their phase; refused queries are counted separately and never answered.
pub struct OracleHandles {
    scheme: Arc<dyn Scheme>,
    key: DecryptionKey,
    model: AttackModel,
    phase: Phase,
    challenge_support: Option<CMat>,
    answered: Vec<QueryRecord>,
    refused: u64,
    superposed_map: Option<UnitaryOp>,
}

/// Builds oracle handles for a trial. With a challenge the handles start in
/// phase two with the challenge-support restriction active; without one they
/// start in phase one.
pub fn make_oracles(
    scheme: Arc<dyn Scheme>,
    key: DecryptionKey,
    model: AttackModel,
    challenge: Option<&Ciphertext>,
) -> OracleHandles {
    let mut handles = OracleHandles {
        scheme,
        key,
        model,
        phase: Phase::One,
        challenge_support: None,
        answered: Vec::new(),
        refused: 0,
        superposed_map: None,
    };
    if let Some(c) = challenge {
        handles.set_challenge(c);
    }
    handles
}

impl OracleHandles {
    /// Moves to phase two, restricting CCA2 queries to states with no
    /// overlap with the support of the challenge state.
    pub fn set_challenge(&mut self, challenge: &Ciphertext) {
        self.phase = Phase::Two;
        self.challenge_support = Some(challenge.state.to_density().support_projector());
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn model(&self) -> AttackModel {
        self.model
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.answered
    }

    /// Count of queries refused for policy or overlap reasons.
    pub fn refused(&self) -> u64 {
        self.refused
    }

    /// Answered query counts per phase.
    pub fn counts(&self) -> (u64, u64) {
        let p1 = self
            .answered
            .iter()
            .filter(|r| r.phase == Phase::One)
            .count() as u64;
        (p1, self.answered.len() as u64 - p1)
    }

    fn check_policy(&mut self) -> Result<()> {
        let allowed = match self.model {
            AttackModel::Coa | AttackModel::Cpa => false,
            AttackModel::Cca1 => self.phase == Phase::One,
            AttackModel::Cca2 => true,
        };
        if allowed {
            Ok(())
        } else {
            self.refused += 1;
            Err(Error::PolicyViolation(format!(
                "decryption query not permitted under {} in phase {:?}",
                self.model.as_str(),
                self.phase
            )))
        }
    }

    /// Overlap of a query state with the challenge support: ‖P_ch |ψ⟩‖ for
    /// pure queries, √tr(P_ch ρ) for mixed ones.
    fn challenge_overlap(&self, state: &QuantumState) -> f64 {
        let Some(proj) = &self.challenge_support else {
            return 0.0;
        };
        if proj.nrows() != state.dim() {
            return 0.0;
        }
        match state {
            QuantumState::Pure(p) => crate::qsim::linalg::quadratic_form(proj, p.amplitudes())
                .max(0.0)
                .sqrt(),
            QuantumState::Mixed(m) => crate::qsim::linalg::trace_of_product(proj, m.density())
                .re
                .max(0.0)
                .sqrt(),
        }
    }

    fn check_overlap(&mut self, state: &QuantumState) -> Result<f64> {
        if self.model != AttackModel::Cca2 || self.phase != Phase::Two {
            return Ok(0.0);
        }
        let overlap = self.challenge_overlap(state);
        if overlap > STRUCT_TOL {
            self.refused += 1;
            return Err(Error::OverlapViolation { overlap });
        }
        Ok(overlap)
    }

    /// Classical decryption query: answers with the deterministic decryption
    /// of the submitted ciphertext.
    pub fn decrypt_classical(&mut self, c: &Ciphertext) -> Result<String> {
        self.check_policy()?;
        let overlap = self.check_overlap(&c.state)?;
        let (plaintext, _) = decrypt_scored(self.scheme.as_ref(), &self.key, c)?;
        self.answered.push(QueryRecord {
            phase: self.phase,
            kind: QueryKind::Classical,
            overlap,
        });
        Ok(plaintext)
    }

    /// Superposition decryption query over [ciphertext, answer] registers:
    /// the reversible map |c⟩|z⟩ → |c⟩|z ⊞ D_d(c)⟩ over the ciphertext
    /// basis, where ⊞ is addition modulo the plaintext count (XOR for a
    /// two-element space).
    pub fn decrypt_superposed(&mut self, query: &QuantumState) -> Result<QuantumState> {
        self.check_policy()?;
        let dim_c = self.scheme.ciphertext_dim();
        let m = self.scheme.plaintext_space().len();
        if query.dim() != dim_c * m {
            return Err(Error::Shape(format!(
                "superposed query dim {} != ciphertext dim {dim_c} x answer dim {m}",
                query.dim()
            )));
        }
        // The overlap rule constrains the ciphertext register alone.
        let query = query
            .clone()
            .with_factors(vec![dim_c, m])
            .expect("factor product checked above");
        let cipher_register = partial_trace(&query.to_density(), 0..1)?;
        let overlap = self.check_overlap(&cipher_register.into())?;

        if self.superposed_map.is_none() {
            self.superposed_map = Some(self.build_superposed_map()?);
        }
        let map = self.superposed_map.as_ref().expect("built above");
        let answered = apply_unitary(map, &query, 0..2)?;
        self.answered.push(QueryRecord {
            phase: self.phase,
            kind: QueryKind::Superposed,
            overlap,
        });
        Ok(answered)
    }

    /// Deterministic basis decryption table c ↦ plaintext index, from the
    /// decryption measurement's diagonal Born values (ties broken by
    /// plaintext enumeration order).
    pub fn basis_decrypt_table(&self) -> Result<Vec<usize>> {
        let measurement = self.scheme.decryption_measurement(&self.key)?;
        let space = self.scheme.plaintext_space();
        let dim_c = self.scheme.ciphertext_dim();
        let mut table = Vec::with_capacity(dim_c);
        for c in 0..dim_c {
            let mut best = 0usize;
            let mut best_p = f64::NEG_INFINITY;
            for (i, proj) in measurement.projectors().iter().enumerate() {
                let p = proj[(c, c)].re;
                if p > best_p {
                    best_p = p;
                    best = i;
                }
            }
            let label = &measurement.outcome_labels()[best];
            let idx = space
                .index_of(label)
                .ok_or_else(|| Error::Domain(format!("outcome label {label:?} not a plaintext")))?;
            table.push(idx);
        }
        Ok(table)
    }

    fn build_superposed_map(&self) -> Result<UnitaryOp> {
        let table = self.basis_decrypt_table()?;
        let m = self.scheme.plaintext_space().len();
        let dim_c = self.scheme.ciphertext_dim();
        let mut images = vec![0usize; dim_c * m];
        for (c, &d) in table.iter().enumerate() {
            for z in 0..m {
                images[c * m + z] = c * m + (z + d) % m;
            }
        }
        UnitaryOp::from_basis_map(&images)
    }
}
