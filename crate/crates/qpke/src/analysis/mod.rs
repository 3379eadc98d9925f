//! Statistical machinery and exact brute-force oracles.
//!
//! Distribution-free Hoeffding intervals replace asymptotic negligibility at
//! fixed parameters: a measured gap is reported as "consistent with zero at
//! this size" when it stays within three halfwidths. The exact oracles build
//! the full game ensembles (public-key copies tensored with the ciphertext)
//! and hand them to the Helstrom measurement for information-theoretic
//! ceilings.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rand::{Rng, RngCore};

use crate::pke::{
    AdversaryOutcome, Ciphertext, DecryptionKey, PkAdversary, Scheme,
};
use crate::qsim::linalg::{self, CMat};
use crate::qsim::{helstrom_advantage, MixedState, DIM_CAP, ENTRY_CAP};
use crate::report::{fmt_sig12, JsonValue};
use crate::{Error, Result};

/// A Monte-Carlo estimate with its two-sided 95% Hoeffding halfwidth.
#[derive(Debug, Clone)]
pub struct Estimate {
    pub value: f64,
    pub trials: u64,
    pub ci95_halfwidth: f64,
    pub method: String,
}

/// √(ln(2/0.05) / (2·trials)): two-sided Hoeffding for range-one variables.
pub fn ci95_halfwidth(trials: u64) -> f64 {
    ((2.0f64 / 0.05).ln() / (2.0 * trials as f64)).sqrt()
}

/// Halfwidth clamped to one for reporting (an estimate of a probability
/// never needs a wider interval).
pub fn clamp_for_report(halfwidth: f64) -> f64 {
    halfwidth.min(1.0)
}

pub fn hoeffding_ci(successes: u64, trials: u64) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::Domain("hoeffding_ci needs trials >= 1".into()));
    }
    if successes > trials {
        return Err(Error::Domain(format!(
            "{successes} successes in {trials} trials"
        )));
    }
    Ok(Estimate {
        value: successes as f64 / trials as f64,
        trials,
        ci95_halfwidth: ci95_halfwidth(trials),
        method: "hoeffding-2sided-95".into(),
    })
}

type EnsembleKey = (String, String, String, usize);
type EnsemblePair = Arc<(MixedState, MixedState)>;

static ENSEMBLE_CACHE: Lazy<Mutex<HashMap<EnsembleKey, EnsemblePair>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn kron_power(rho: &CMat, t: usize) -> CMat {
    let mut acc = CMat::identity(1, 1);
    for _ in 0..t {
        acc = linalg::kron(&acc, rho);
    }
    acc
}

/// Exact game ensembles for distinguishing encryptions of `x` and `y` given
/// `copies` public-key copies: ρ_m = avg over keys of pub^⊗t ⊗ cipher(m).
/// Requires an enumerable key space; results are memoized.
pub fn exact_ind_ensembles(
    scheme: &Arc<dyn Scheme>,
    x: &str,
    y: &str,
    copies: usize,
) -> Result<EnsemblePair> {
    let cache_key = (scheme.id(), x.to_string(), y.to_string(), copies);
    if let Some(hit) = ENSEMBLE_CACHE.lock().expect("cache poisoned").get(&cache_key) {
        return Ok(hit.clone());
    }

    let dim = scheme.ciphertext_dim();
    let joint_dim = dim
        .checked_pow(copies as u32 + 1)
        .filter(|d| d * d <= ENTRY_CAP)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "ensemble of dim {dim}^{} exceeds the entry cap",
                copies + 1
            ))
        })?;
    let keys = scheme
        .enumerate_keys()
        .ok_or_else(|| Error::Domain("key space is not enumerable".into()))?;

    let mut rho_x = CMat::zeros(joint_dim, joint_dim);
    let mut rho_y = CMat::zeros(joint_dim, joint_dim);
    for key in &keys {
        let pub_t = kron_power(scheme.exact_pubkey_density(key)?.density(), copies);
        rho_x += linalg::kron(&pub_t, scheme.exact_ciphertext_density(key, x)?.density());
        rho_y += linalg::kron(&pub_t, scheme.exact_ciphertext_density(key, y)?.density());
    }
    let w = linalg::cr(1.0 / keys.len() as f64);
    rho_x *= w;
    rho_y *= w;

    let pair = Arc::new((
        MixedState::new(rho_x, None)?,
        MixedState::new(rho_y, None)?,
    ));
    ENSEMBLE_CACHE
        .lock()
        .expect("cache poisoned")
        .insert(cache_key, pair.clone());
    Ok(pair)
}

/// Information-theoretic ceiling on any distinguisher's advantage for the
/// (x, y) pair at the given copy count.
pub fn ind_ceiling(scheme: &Arc<dyn Scheme>, x: &str, y: &str, copies: usize) -> Result<f64> {
    let pair = exact_ind_ensembles(scheme, x, y, copies)?;
    Ok(helstrom_advantage(&pair.0, &pair.1)?.0)
}

/// Exports ceiling values for a list of copy counts as a JSON fixture.
pub fn ceiling_fixture_json(
    scheme: &Arc<dyn Scheme>,
    x: &str,
    y: &str,
    copy_counts: &[usize],
) -> Result<String> {
    let mut entries = Vec::new();
    for &t in copy_counts {
        let ceiling = ind_ceiling(scheme, x, y, t)?;
        entries.push(JsonValue::obj(vec![
            ("ceiling", JsonValue::Str(fmt_sig12(ceiling))),
            ("copies", JsonValue::UInt(t as u64)),
            ("messages", JsonValue::Str(format!("{x},{y}"))),
            ("scheme", JsonValue::Str(scheme.id())),
        ]));
    }
    Ok(crate::report::render(&JsonValue::Arr(entries)))
}

/// Square-root measurement over the per-key copy ensembles, used for
/// physical key identification: outcome probabilities are exact Born values
/// of the POVM effects on the observed copies, sampled with the trial's
/// random stream.
struct KeyIdentifier {
    keys: Vec<DecryptionKey>,
    /// POVM effects over the joint space of `joint_copies` copies; empty
    /// when the key space is a singleton.
    effects: Vec<CMat>,
    joint_copies: usize,
}

impl KeyIdentifier {
    fn build(scheme: &dyn Scheme, copies_available: usize) -> Result<Self> {
        let keys = scheme
            .enumerate_keys()
            .ok_or_else(|| Error::Domain("key search needs an enumerable key space".into()))?;
        let dim = scheme.ciphertext_dim();

        // Largest joint block that stays under the dimension cap.
        let mut joint_copies = 0usize;
        let mut joint_dim = 1usize;
        while joint_copies < copies_available
            && joint_dim
                .checked_mul(dim)
                .map(|d| d <= DIM_CAP)
                .unwrap_or(false)
        {
            joint_copies += 1;
            joint_dim *= dim;
        }

        if keys.len() == 1 || joint_copies == 0 {
            return Ok(Self {
                keys,
                effects: Vec::new(),
                joint_copies: 0,
            });
        }

        let joints: Vec<CMat> = keys
            .iter()
            .map(|k| {
                scheme
                    .exact_pubkey_density(k)
                    .map(|rho| kron_power(rho.density(), joint_copies))
            })
            .collect::<Result<_>>()?;
        let mut avg = CMat::zeros(joint_dim, joint_dim);
        for j in &joints {
            avg += j;
        }
        avg *= linalg::cr(1.0 / keys.len() as f64);
        let inv_sqrt = linalg::psd_inverse_sqrt(&avg, 1e-12);
        let effects = joints
            .iter()
            .map(|j| (&inv_sqrt * j * &inv_sqrt).scale(1.0 / keys.len() as f64))
            .collect();
        Ok(Self {
            keys,
            effects,
            joint_copies,
        })
    }

    /// Measures the observed copies and returns the identified key.
    fn identify(&self, copies: &[MixedState], rng: &mut dyn RngCore) -> Result<DecryptionKey> {
        if self.effects.is_empty() {
            return Ok(self.keys[0].clone());
        }
        let mut joint = copies[0].density().clone();
        for c in copies.iter().take(self.joint_copies).skip(1) {
            joint = linalg::kron(&joint, c.density());
        }
        let probs: Vec<f64> = self
            .effects
            .iter()
            .map(|e| linalg::trace_of_product(e, &joint).re.max(0.0))
            .collect();
        let total: f64 = probs.iter().sum();
        if total < 1e-12 {
            return Ok(self.keys[0].clone());
        }
        let mut draw = rng.gen::<f64>() * total;
        let mut pick = probs.len() - 1;
        for (i, &p) in probs.iter().enumerate() {
            if draw < p {
                pick = i;
                break;
            }
        }
        Ok(self.keys[pick].clone())
    }
}

/// What the key-search adversary does with its identified key.
#[derive(Debug, Clone)]
pub enum KeySearchGoal {
    /// Output the decrypted plaintext (one-wayness and semantic games).
    RecoverPlaintext,
    /// Output "1" when the challenge decrypts to the given message.
    DistinguishFirst(String),
    /// Output the decrypted plaintext lifted to a two-dimensional basis
    /// state (|1⟩ for the second plaintext).
    RecoverAsBasisState,
    /// Re-encrypt the decrypted plaintext with a fresh public-key copy.
    Reencrypt,
}

/// Unbounded-adversary negative control: identifies the key by measuring the
/// public-key copies with the square-root measurement over the candidate-key
/// ensembles, then decrypts the challenge with the identified key's
/// decryption measurement (both sampled at exact Born values).
pub fn brute_force_key_adversary(
    scheme: Arc<dyn Scheme>,
    goal: KeySearchGoal,
) -> Result<PkAdversary> {
    // The identifier depends on how many copies arrive; build lazily per
    // observed count and reuse across trials.
    let cache: Mutex<HashMap<usize, Arc<KeyIdentifier>>> = Mutex::new(HashMap::new());
    let space = scheme.plaintext_space();

    Ok(PkAdversary::new("key-search", move |input, rng| {
        let identifier = {
            let mut cache = cache.lock().expect("identifier cache poisoned");
            match cache.get(&input.pubkeys.len()) {
                Some(hit) => hit.clone(),
                None => {
                    let built = Arc::new(KeyIdentifier::build(
                        scheme.as_ref(),
                        input.pubkeys.len(),
                    )?);
                    cache.insert(input.pubkeys.len(), built.clone());
                    built
                }
            }
        };
        let guessed_key = identifier.identify(input.pubkeys, rng)?;
        let challenge = input
            .challenge
            .ok_or_else(|| Error::Domain("key-search adversary needs a challenge".into()))?;
        let measurement = scheme.decryption_measurement(&guessed_key)?;
        let outcome = crate::qsim::measure(&measurement, &challenge.state, rng)?;
        let plaintext = outcome.label;

        Ok(match &goal {
            KeySearchGoal::RecoverPlaintext => AdversaryOutcome::Classical(plaintext),
            KeySearchGoal::DistinguishFirst(x) => AdversaryOutcome::Classical(
                if &plaintext == x { "1" } else { "0" }.to_string(),
            ),
            KeySearchGoal::RecoverAsBasisState => {
                let idx = space.index_of(&plaintext).unwrap_or(0).min(1);
                AdversaryOutcome::State(crate::qsim::PureState::basis(2, idx, None)?.into())
            }
            KeySearchGoal::Reencrypt => {
                let copy = input
                    .pubkeys
                    .last()
                    .ok_or_else(|| Error::Domain("re-encryption needs a copy".into()))?
                    .clone();
                AdversaryOutcome::Cipher(scheme.encrypt(copy.into(), &plaintext, rng)?)
            }
        })
    }))
}

#[cfg(test)]
mod tests;

