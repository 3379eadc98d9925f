//! Adversaries as callback values with explicit quantum advice.
//!
//! Attack callbacks never see the decryption key; every key-dependent
//! capability flows through the oracle handles, which enforce the attack
//! model policy and log each query.

use std::sync::Arc;

use rand::RngCore;

use super::oracle::OracleHandles;
use super::Ciphertext;
use crate::qsim::{MixedState, PureState, QuantumState};
use crate::Result;

/// What an adversary may hand back to the game harness.
#[derive(Debug, Clone)]
pub enum AdversaryOutcome {
    Classical(String),
    State(QuantumState),
    Cipher(Ciphertext),
}

/// Leakage handed to semantic-security adversaries: the value of h(α).
#[derive(Debug, Clone)]
pub enum Leakage {
    Classical(String),
    Quantum(PureState),
}

/// Everything an adversary sees in its attack phase.
pub struct AttackInput<'a> {
    pub pubkeys: &'a [MixedState],
    pub challenge: Option<&'a Ciphertext>,
    pub leakage: Option<&'a Leakage>,
    pub advice: Option<&'a PureState>,
    /// Classical note produced by the first-phase hook, if any.
    pub memory: Option<&'a str>,
    pub oracles: &'a mut OracleHandles,
}

pub type AttackFn =
    dyn Fn(&mut AttackInput<'_>, &mut dyn RngCore) -> Result<AdversaryOutcome> + Send + Sync;

/// Optional first-phase hook: runs with the public keys and oracles before
/// the challenge exists (where CCA1 queries are allowed) and may pass a
/// classical note forward to the attack phase.
pub type PrepareFn = dyn Fn(&[MixedState], &mut OracleHandles, &mut dyn RngCore) -> Result<Option<String>>
    + Send
    + Sync;

/// An adversary: an attack callback plus optional advice state and
/// first-phase hook.
#[derive(Clone)]
pub struct PkAdversary {
    pub name: String,
    pub advice: Option<PureState>,
    pub prepare: Option<Arc<PrepareFn>>,
    pub attack: Arc<AttackFn>,
}

impl PkAdversary {
    pub fn new<F>(name: &str, attack: F) -> Self
    where
        F: Fn(&mut AttackInput<'_>, &mut dyn RngCore) -> Result<AdversaryOutcome>
            + Send
            + Sync
            + 'static,
    {
        Self {
            name: name.to_string(),
            advice: None,
            prepare: None,
            attack: Arc::new(attack),
        }
    }

    pub fn with_advice(mut self, advice: PureState) -> Self {
        self.advice = Some(advice);
        self
    }

    pub fn with_prepare<F>(mut self, prepare: F) -> Self
    where
        F: Fn(&[MixedState], &mut OracleHandles, &mut dyn RngCore) -> Result<Option<String>>
            + Send
            + Sync
            + 'static,
    {
        self.prepare = Some(Arc::new(prepare));
        self
    }
}

impl std::fmt::Debug for PkAdversary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PkAdversary")
            .field("name", &self.name)
            .field("has_advice", &self.advice.is_some())
            .field("has_prepare", &self.prepare.is_some())
            .finish()
    }
}
