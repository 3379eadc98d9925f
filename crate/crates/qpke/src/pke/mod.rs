//! Scheme, adversary and oracle abstractions shared by every game.
//!
//! A scheme is the quadruple (key generation, plaintext spaces, encryption,
//! decryption) with a classical decryption key and a sub-procedure deriving
//! fresh public-key copies from it, so one receiver can serve many senders
//! without entangling keys.

pub mod adversary;
pub mod oracle;

pub use adversary::{AdversaryOutcome, AttackInput, Leakage, PkAdversary};
pub use oracle::{AttackModel, OracleHandles, Phase, QueryKind, QueryRecord};

use rand::RngCore;

use crate::qsim::{MixedState, ProjectiveMeasurement, QuantumState, ENTRY_CAP};
use crate::{Error, Result};

/// Classical decryption key. Schemes parse their own encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecryptionKey(pub String);

impl std::fmt::Display for DecryptionKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite plaintext space with a stable enumeration order.
#[derive(Debug, Clone)]
pub struct PlaintextSpace {
    pub elements: Vec<String>,
    pub description: String,
}

impl PlaintextSpace {
    pub fn new(elements: Vec<String>, description: &str) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Domain("plaintext space must be non-empty".into()));
        }
        Ok(Self {
            elements,
            description: description.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &str) -> bool {
        self.elements.iter().any(|e| e == m)
    }

    pub fn index_of(&self, m: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }
}

/// A ciphertext: a quantum state plus an optional classical component for
/// schemes whose ciphertexts are computational-basis states.
#[derive(Debug, Clone)]
pub struct Ciphertext {
    pub state: QuantumState,
    pub classical_part: Option<String>,
}

/// The scheme abstraction. All procedures are pure given their random
/// stream; instances are immutable and shareable across concurrent trials.
pub trait Scheme: Send + Sync {
    fn name(&self) -> &str;

    /// Identifier including parameters; used for caches and report echoes.
    fn id(&self) -> String;

    /// Samples a classical decryption key.
    fn keygen(&self, rng: &mut dyn RngCore) -> Result<DecryptionKey>;

    /// Derives one fresh public-key copy from the decryption key. Copies are
    /// sampled independently, so they are never entangled with each other or
    /// with any retained secret register.
    fn derive_pub(&self, key: &DecryptionKey, rng: &mut dyn RngCore) -> Result<MixedState>;

    fn plaintext_space(&self) -> PlaintextSpace;

    fn ciphertext_dim(&self) -> usize;

    /// Encrypts a plaintext, consuming one public-key copy. The returned
    /// state is the reduced ciphertext state after any garbage register has
    /// been traced out.
    fn encrypt(
        &self,
        copy: QuantumState,
        plaintext: &str,
        rng: &mut dyn RngCore,
    ) -> Result<Ciphertext>;

    /// The decryption measurement: a projective measurement on the
    /// ciphertext register whose outcome labels are plaintexts. Honest
    /// ciphertexts lie entirely inside one outcome's eigenspace.
    fn decryption_measurement(&self, key: &DecryptionKey) -> Result<ProjectiveMeasurement>;

    /// Exact ciphertext density of a plaintext under a key, averaged over
    /// all encryption randomness (including the fresh public-key copy).
    fn exact_ciphertext_density(&self, key: &DecryptionKey, plaintext: &str)
        -> Result<MixedState>;

    /// Exact public-key copy density under a key, averaged over the
    /// randomness of `derive_pub`.
    fn exact_pubkey_density(&self, key: &DecryptionKey) -> Result<MixedState>;

    /// All keys, when the key space is small enough to enumerate.
    fn enumerate_keys(&self) -> Option<Vec<DecryptionKey>>;
}

/// Samples a key and the requested number of independent public-key copies.
pub fn make_key_pair(
    scheme: &dyn Scheme,
    copies: usize,
    rng: &mut dyn RngCore,
) -> Result<(DecryptionKey, Vec<MixedState>)> {
    if copies < 1 {
        return Err(Error::Domain("make_key_pair needs copies >= 1".into()));
    }
    let dim = scheme.ciphertext_dim();
    let entries = copies
        .checked_mul(dim * dim)
        .ok_or_else(|| Error::Capacity("copy entry count overflows".into()))?;
    if entries > ENTRY_CAP {
        return Err(Error::Capacity(format!(
            "{copies} copies of dimension {dim} need {entries} entries, cap is {ENTRY_CAP}"
        )));
    }
    let key = scheme.keygen(rng)?;
    let pubkeys = (0..copies)
        .map(|_| scheme.derive_pub(&key, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok((key, pubkeys))
}

/// Encrypts a plaintext with (and consuming) one public-key copy.
pub fn encrypt_with_copy(
    scheme: &dyn Scheme,
    copy: MixedState,
    plaintext: &str,
    rng: &mut dyn RngCore,
) -> Result<Ciphertext> {
    if !scheme.plaintext_space().contains(plaintext) {
        return Err(Error::Domain(format!(
            "plaintext {plaintext:?} not in the plaintext space"
        )));
    }
    scheme.encrypt(copy.into(), plaintext, rng)
}

/// Deterministic decryption of a stored ciphertext state: the outcome of the
/// scheme's decryption measurement with the largest exact Born probability
/// (ties broken by plaintext enumeration order). Honest ciphertexts decrypt
/// with probability one, so this coincides with the measurement outcome.
pub fn decrypt(scheme: &dyn Scheme, key: &DecryptionKey, c: &Ciphertext) -> Result<String> {
    Ok(decrypt_scored(scheme, key, c)?.0)
}

/// As [`decrypt`], also returning the exact Born probability of the chosen
/// outcome.
pub fn decrypt_scored(
    scheme: &dyn Scheme,
    key: &DecryptionKey,
    c: &Ciphertext,
) -> Result<(String, f64)> {
    let m = scheme.decryption_measurement(key)?;
    if c.state.dim() != m.dim() {
        return Err(Error::Shape(format!(
            "ciphertext dim {} vs decryption measurement dim {}",
            c.state.dim(),
            m.dim()
        )));
    }
    let probs = m.outcome_probabilities(&c.state)?;
    let mut best = 0usize;
    for (i, &p) in probs.iter().enumerate() {
        if p > probs[best] {
            best = i;
        }
    }
    Ok((m.outcome_labels()[best].clone(), probs[best]))
}

/// Report of a correctness sweep over keys and plaintexts.
#[derive(Debug, Clone)]
pub struct CorrectnessReport {
    /// Minimum exact decryption-success probability over all checked cases.
    pub min_success: f64,
    pub keys_checked: usize,
    pub cases_checked: usize,
    /// Key and plaintext realizing the minimum.
    pub worst_case: Option<(DecryptionKey, String)>,
}

/// Computes the exact decryption-success Born probability for every
/// plaintext under every enumerated key (or `key_samples` sampled keys when
/// the key space is not enumerable) and reports the minimum.
pub fn correctness_sweep(
    scheme: &dyn Scheme,
    key_samples: usize,
    rng: &mut dyn RngCore,
) -> Result<CorrectnessReport> {
    let keys = match scheme.enumerate_keys() {
        Some(keys) => keys,
        None => (0..key_samples.max(1))
            .map(|_| scheme.keygen(rng))
            .collect::<Result<Vec<_>>>()?,
    };
    let space = scheme.plaintext_space();
    let mut min_success = f64::INFINITY;
    let mut worst = None;
    let mut cases = 0usize;
    for key in &keys {
        let m = scheme.decryption_measurement(key)?;
        for alpha in &space.elements {
            let rho = scheme.exact_ciphertext_density(key, alpha)?;
            let mut success = 0.0;
            for (proj, label) in m.projectors().iter().zip(m.outcome_labels()) {
                if label == alpha {
                    success += crate::qsim::linalg::trace_of_product(proj, rho.density()).re;
                }
            }
            cases += 1;
            if success < min_success {
                min_success = success;
                worst = Some((key.clone(), alpha.clone()));
            }
        }
    }
    Ok(CorrectnessReport {
        min_success,
        keys_checked: keys.len(),
        cases_checked: cases,
        worst_case: worst,
    })
}

/// Sampled counterpart of [`correctness_sweep`]: encrypts `enc_samples`
/// times per (key, plaintext) with fresh randomness and returns the minimum
/// exact Born success probability over the sampled ciphertext states.
pub fn sampled_correctness_min(
    scheme: &dyn Scheme,
    key: &DecryptionKey,
    enc_samples: usize,
    rng: &mut dyn RngCore,
) -> Result<f64> {
    let space = scheme.plaintext_space();
    let m = scheme.decryption_measurement(key)?;
    let mut min_success = f64::INFINITY;
    for alpha in &space.elements {
        for _ in 0..enc_samples {
            let copy = scheme.derive_pub(key, rng)?;
            let c = scheme.encrypt(copy.into(), alpha, rng)?;
            let probs = m.outcome_probabilities(&c.state)?;
            let mut success = 0.0;
            for (i, label) in m.outcome_labels().iter().enumerate() {
                if label == alpha {
                    success += probs[i];
                }
            }
            min_success = min_success.min(success);
        }
    }
    Ok(min_success)
}

#[cfg(test)]
mod tests;
