//! Deliberately broken scheme: encryption ignores the plaintext and
//! decryption always answers 0. Negative control for the correctness sweep
//! and for games whose ensembles must carry no information.

use rand::RngCore;

use crate::pke::{Ciphertext, DecryptionKey, PlaintextSpace, Scheme};
use crate::qsim::linalg::CMat;
use crate::qsim::{MixedState, ProjectiveMeasurement, QuantumState};
use crate::{Error, Result};

pub struct BrokenScheme;

impl Scheme for BrokenScheme {
    fn name(&self) -> &str {
        "broken"
    }

    fn id(&self) -> String {
        "broken".into()
    }

    fn keygen(&self, _rng: &mut dyn RngCore) -> Result<DecryptionKey> {
        Ok(DecryptionKey("none".into()))
    }

    fn derive_pub(&self, _key: &DecryptionKey, _rng: &mut dyn RngCore) -> Result<MixedState> {
        MixedState::basis(1, 0, None)
    }

    fn plaintext_space(&self) -> PlaintextSpace {
        PlaintextSpace::new(vec!["0".into(), "1".into()], "single bit").expect("non-empty")
    }

    fn ciphertext_dim(&self) -> usize {
        2
    }

    fn encrypt(
        &self,
        _copy: QuantumState,
        plaintext: &str,
        _rng: &mut dyn RngCore,
    ) -> Result<Ciphertext> {
        if plaintext != "0" && plaintext != "1" {
            return Err(Error::Domain(format!("broken scheme got {plaintext:?}")));
        }
        Ok(Ciphertext {
            state: QuantumState::Mixed(MixedState::basis(2, 0, None)?),
            classical_part: Some("0".into()),
        })
    }

    fn decryption_measurement(&self, _key: &DecryptionKey) -> Result<ProjectiveMeasurement> {
        // Everything decrypts to 0; the complement projector is empty.
        ProjectiveMeasurement::new(
            vec![CMat::identity(2, 2), CMat::zeros(2, 2)],
            vec!["0".into(), "1".into()],
        )
    }

    fn exact_ciphertext_density(
        &self,
        _key: &DecryptionKey,
        plaintext: &str,
    ) -> Result<MixedState> {
        if plaintext != "0" && plaintext != "1" {
            return Err(Error::Domain(format!("broken scheme got {plaintext:?}")));
        }
        MixedState::basis(2, 0, None)
    }

    fn exact_pubkey_density(&self, _key: &DecryptionKey) -> Result<MixedState> {
        MixedState::basis(1, 0, None)
    }

    fn enumerate_keys(&self) -> Option<Vec<DecryptionKey>> {
        Some(vec![DecryptionKey("none".into())])
    }
}
