use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::oracle::make_oracles;
use super::*;
use crate::qsim::linalg::{self, cr, CVec};
use crate::qsim::{tensor, PureState, QuantumState};
use crate::schemes::{PermScheme, ToyGmScheme};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn perm2() -> Arc<dyn Scheme> {
    Arc::new(PermScheme::new(2).unwrap())
}

fn challenge_for(scheme: &dyn Scheme, bit: &str, r: &mut ChaCha8Rng) -> (DecryptionKey, Ciphertext) {
    let (key, copies) = make_key_pair(scheme, 1, r).unwrap();
    let c = encrypt_with_copy(scheme, copies.into_iter().next().unwrap(), bit, r).unwrap();
    (key, c)
}

#[test]
fn copies_are_sampled_independently_and_unentangled() {
    // Enumeration oracle: the exact joint density of two independent copies
    // is the tensor product of the marginals.
    let scheme = PermScheme::new(3).unwrap();
    let key = DecryptionKey("pi=213".into());
    let group = scheme.group();
    let pi = scheme.perm_of(&key).unwrap();
    let n = group.order();
    let mut joint = linalg::CMat::zeros(n * n, n * n);
    for s1 in group.elements() {
        for s2 in group.elements() {
            let a = group.coset_state(s1, &pi).unwrap().to_density();
            let b = group.coset_state(s2, &pi).unwrap().to_density();
            joint += linalg::kron(a.density(), b.density());
        }
    }
    joint /= cr((n * n) as f64);
    let marginal = scheme.exact_pubkey_density(&key).unwrap();
    let product = linalg::kron(marginal.density(), marginal.density());
    assert!(linalg::frobenius_distance(&joint, &product) < 1e-8);
}

#[test]
fn make_key_pair_enforces_the_capacity_cap() {
    let scheme = ToyGmScheme::new(77, 6).unwrap();
    let mut r = rng(0);
    // 77^2 entries per copy: 200 copies exceed 2^20 total entries.
    assert!(matches!(
        make_key_pair(&scheme, 200, &mut r),
        Err(crate::Error::Capacity(_))
    ));
    assert!(matches!(
        make_key_pair(&scheme, 0, &mut r),
        Err(crate::Error::Domain(_))
    ));
}

#[test]
fn decryption_of_a_stored_state_is_reproducible() {
    let scheme = PermScheme::new(3).unwrap();
    let mut r = rng(1);
    let (key, c) = challenge_for(&scheme, "1", &mut r);
    let first = decrypt(&scheme, &key, &c).unwrap();
    for _ in 0..5 {
        assert_eq!(decrypt(&scheme, &key, &c).unwrap(), first);
    }
    assert_eq!(first, "1");
}

#[test]
fn coa_and_cpa_refuse_decryption_queries() {
    let mut r = rng(2);
    for model in [AttackModel::Coa, AttackModel::Cpa] {
        let scheme = perm2();
        let (key, c) = challenge_for(scheme.as_ref(), "0", &mut r);
        let mut oracles = make_oracles(scheme, key, model, Some(&c));
        assert!(matches!(
            oracles.decrypt_classical(&c),
            Err(crate::Error::PolicyViolation(_))
        ));
        assert_eq!(oracles.refused(), 1);
        assert!(oracles.log().is_empty());
    }
}

#[test]
fn cca1_allows_phase_one_queries_only() {
    let scheme = perm2();
    let mut r = rng(3);
    let (key, c) = challenge_for(scheme.as_ref(), "0", &mut r);
    let mut oracles = make_oracles(scheme, key, AttackModel::Cca1, None);
    assert_eq!(oracles.decrypt_classical(&c).unwrap(), "0");
    oracles.set_challenge(&c);
    assert!(matches!(
        oracles.decrypt_classical(&c),
        Err(crate::Error::PolicyViolation(_))
    ));
    let (p1, p2) = oracles.counts();
    assert_eq!((p1, p2), (1, 0));
    assert!(oracles.log().iter().all(|q| q.phase == Phase::One));
}

#[test]
fn cca2_rejects_queries_overlapping_the_challenge() {
    let scheme = perm2();
    let mut r = rng(4);
    let (key, c) = challenge_for(scheme.as_ref(), "1", &mut r);
    let mut oracles = make_oracles(scheme, key, AttackModel::Cca2, Some(&c));
    match oracles.decrypt_classical(&c) {
        Err(crate::Error::OverlapViolation { overlap }) => assert!(overlap > 0.99),
        other => panic!("expected overlap violation, got {other:?}"),
    }
    assert_eq!(oracles.refused(), 1);
}

#[test]
fn cca2_answers_queries_orthogonal_to_the_challenge_support() {
    // Gram-Schmidt oracle at k=2: the challenge is (|12⟩ − |21⟩)/√2, so
    // orthogonalizing |12⟩ against it leaves (|12⟩ + |21⟩)/√2.
    let scheme = perm2();
    let mut r = rng(5);
    let (key, c) = challenge_for(scheme.as_ref(), "1", &mut r);
    let support = c.state.to_density().support_projector();
    let basis = PureState::basis(2, 0, None).unwrap();
    let residual = basis.amplitudes() - &support * basis.amplitudes();
    let normalized = residual.clone().scale(1.0 / residual.norm());
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((normalized[0].re - s).abs() < 1e-9 && (normalized[1].re - s).abs() < 1e-9);

    let orthogonal = Ciphertext {
        state: QuantumState::Pure(
            PureState::new(normalized.iter().cloned().collect(), None).unwrap(),
        ),
        classical_part: None,
    };
    let mut oracles = make_oracles(scheme, key, AttackModel::Cca2, Some(&c));
    let answer = oracles.decrypt_classical(&orthogonal).unwrap();
    assert_eq!(answer, "0");
    let (p1, p2) = oracles.counts();
    assert_eq!((p1, p2), (0, 1));
    assert!(oracles.log().iter().all(|q| q.overlap <= 1e-9));
}

#[test]
fn superposed_queries_apply_the_reversible_decryption_map() {
    // toy-GM basis map: |c⟩|z⟩ → |c⟩|z ⊕ D(c)⟩ with D(61) = 1, D(23) = 0.
    let scheme: Arc<dyn Scheme> = Arc::new(ToyGmScheme::new(77, 6).unwrap());
    let key = DecryptionKey("p=7,q=11".into());
    let mut oracles = make_oracles(scheme, key, AttackModel::Cca2, None);

    let table = oracles.basis_decrypt_table().unwrap();
    assert_eq!(table[61], 1);
    assert_eq!(table[23], 0);
    assert_eq!(table[1], 0);

    // Query (|61⟩ + |23⟩)/√2 ⊗ |0⟩.
    let mut amps = CVec::zeros(77);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    amps[61] = cr(s);
    amps[23] = cr(s);
    let cipher = PureState::new(amps.iter().cloned().collect(), None).unwrap();
    let zero = PureState::basis(2, 0, None).unwrap();
    let query = tensor(&cipher.into(), &zero.into()).unwrap();
    let answered = oracles.decrypt_superposed(&query).unwrap();
    match answered {
        QuantumState::Pure(p) => {
            // |61⟩|1⟩ at flat index 61*2+1, |23⟩|0⟩ at 23*2.
            assert!((p.amplitudes()[61 * 2 + 1].re - s).abs() < 1e-12);
            assert!((p.amplitudes()[23 * 2].re - s).abs() < 1e-12);
        }
        _ => panic!("unitary map keeps purity"),
    }
}

#[test]
fn superposed_query_overlap_rule_uses_the_ciphertext_register() {
    let scheme = perm2();
    let mut r = rng(6);
    let (key, c) = challenge_for(scheme.as_ref(), "0", &mut r);
    let mut oracles = make_oracles(scheme, key, AttackModel::Cca2, Some(&c));
    // Ciphertext register equal to the challenge state: must be refused even
    // though the answer register is fresh.
    let query = tensor(&c.state, &PureState::basis(2, 0, None).unwrap().into()).unwrap();
    assert!(matches!(
        oracles.decrypt_superposed(&query),
        Err(crate::Error::OverlapViolation { .. })
    ));
}

#[test]
fn adversary_outcomes_expose_their_variants() {
    let adv = PkAdversary::new("probe", |input, _| {
        if let Some(ch) = input.challenge {
            input.oracles.decrypt_classical(ch)?;
        }
        Ok(AdversaryOutcome::Classical("0".into()))
    });
    assert_eq!(adv.name, "probe");
    assert!(adv.advice.is_none());
}
