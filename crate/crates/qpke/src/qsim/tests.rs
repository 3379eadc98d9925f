use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::{self, cr, CMat};
use super::*;

fn pure(amps: &[f64]) -> PureState {
    PureState::new(amps.iter().map(|&x| cr(x)).collect(), None).unwrap()
}

fn ket0() -> PureState {
    PureState::basis(2, 0, None).unwrap()
}

fn ket_plus() -> PureState {
    pure(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])
}

#[test]
fn tensor_of_basis_states_concatenates_labels() {
    let a = PureState::basis(2, 0, Some(vec!["0".into(), "1".into()])).unwrap();
    let b = PureState::basis(2, 1, Some(vec!["0".into(), "1".into()])).unwrap();
    let t = tensor(&a.into(), &b.into()).unwrap();
    match &t {
        QuantumState::Pure(p) => {
            let amps: Vec<f64> = p.amplitudes().iter().map(|c| c.re).collect();
            assert_eq!(amps, vec![0.0, 1.0, 0.0, 0.0]);
            assert_eq!(
                p.labels().unwrap(),
                &["00".to_string(), "01".into(), "10".into(), "11".into()]
            );
            assert_eq!(p.factors(), &[2, 2]);
        }
        _ => panic!("pure ⊗ pure must stay pure"),
    }
}

#[test]
fn tensor_preserves_trace_for_mixed_inputs() {
    let rho = MixedState::maximally_mixed(3).unwrap();
    let k0 = ket0().to_density();
    let t = tensor(&rho.into(), &k0.into()).unwrap();
    let d = t.to_density();
    assert!((d.density().trace().re - 1.0).abs() < 1e-12);
    assert_eq!(d.dim(), 6);
}

#[test]
fn tensor_of_uniform_superpositions_is_uniform() {
    let t = tensor(&ket_plus().into(), &ket_plus().into()).unwrap();
    match t {
        QuantumState::Pure(p) => {
            for a in p.amplitudes().iter() {
                assert!((a.re - 0.5).abs() < 1e-12 && a.im.abs() < 1e-12);
            }
        }
        _ => panic!("expected pure"),
    }
}

#[test]
fn tensor_rejects_over_cap_compositions() {
    let big = MixedState::maximally_mixed(1000).unwrap();
    let err = tensor(&big.clone().into(), &big.into()).unwrap_err();
    assert!(matches!(err, crate::Error::Capacity(_)));
}

#[test]
fn identity_leaves_state_unchanged() {
    let u = UnitaryOp::new(linalg::identity(2)).unwrap();
    let s: QuantumState = ket_plus().into();
    let out = apply_unitary(&u, &s, 0..1).unwrap();
    match (s, out) {
        (QuantumState::Pure(a), QuantumState::Pure(b)) => {
            assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
        }
        _ => panic!(),
    }
}

#[test]
fn hadamard_maps_zero_to_plus() {
    let h = UnitaryOp::new(
        CMat::from_row_slice(2, 2, &[cr(1.0), cr(1.0), cr(1.0), cr(-1.0)])
            .scale(FRAC_1_SQRT_2),
    )
    .unwrap();
    let out = apply_unitary(&h, &ket0().into(), 0..1).unwrap();
    match out {
        QuantumState::Pure(p) => {
            assert!((p.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-12);
            assert!((p.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-12);
        }
        _ => panic!(),
    }
}

#[test]
fn sign_phase_unitary_squares_to_identity_action() {
    // S: |σ⟩ → sgn(σ)|σ⟩ on the S_2 group register.
    let s_op = UnitaryOp::diagonal(&[cr(1.0), cr(-1.0)]).unwrap();
    let state: QuantumState = ket_plus().into();
    let once = apply_unitary(&s_op, &state, 0..1).unwrap();
    let twice = apply_unitary(&s_op, &once, 0..1).unwrap();
    match (state, twice) {
        (QuantumState::Pure(a), QuantumState::Pure(b)) => {
            assert!((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
        }
        _ => panic!(),
    }
}

#[test]
fn unitary_validation_rejects_non_unitary() {
    let m = CMat::from_row_slice(2, 2, &[cr(1.0), cr(1.0), cr(0.0), cr(1.0)]);
    assert!(matches!(
        UnitaryOp::new(m),
        Err(crate::Error::InvalidUnitary(_))
    ));
}

#[test]
fn measuring_eigenstate_is_deterministic() {
    let m = ProjectiveMeasurement::computational_basis(2, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let out = measure(&m, &ket0().into(), &mut rng).unwrap();
    assert_eq!(out.label, "0");
    assert!((out.probability - 1.0).abs() < 1e-12);
}

#[test]
fn measuring_uniform_superposition_has_half_probabilities() {
    let m = ProjectiveMeasurement::computational_basis(2, None).unwrap();
    let probs = m.outcome_probabilities(&ket_plus().into()).unwrap();
    assert!((probs[0] - 0.5).abs() < 1e-12 && (probs[1] - 0.5).abs() < 1e-12);
}

#[test]
fn coset_state_lies_in_plus_eigenspace_of_involution() {
    // Oracle: eigendecompose U_π for the k=2 swap by hand. U = [[0,1],[1,0]]
    // has eigenvectors (1,1)/√2 (eigenvalue +1) and (1,−1)/√2 (−1); the
    // projectors below are assembled from those eigenvectors directly rather
    // than from the (I ± U)/2 shortcut the schemes use.
    let v_plus = pure(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
    let v_minus = pure(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
    let p_plus = v_plus.amplitudes() * v_plus.amplitudes().adjoint();
    let p_minus = v_minus.amplitudes() * v_minus.amplitudes().adjoint();
    let u = CMat::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
    assert!(linalg::frobenius_distance(&(&p_plus - &p_minus), &u) < 1e-12);

    let m = ProjectiveMeasurement::new(vec![p_plus, p_minus], vec!["+1".into(), "-1".into()])
        .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let out = measure(&m, &v_plus.into(), &mut rng).unwrap();
    assert_eq!(out.label, "+1");
    assert!((out.probability - 1.0).abs() < 1e-9);
}

#[test]
fn inconsistent_measurement_is_reported() {
    // Deliberately malformed: a single projector that annihilates the state.
    let p1 = CMat::from_row_slice(2, 2, &[cr(0.0), cr(0.0), cr(0.0), cr(1.0)]);
    let m = ProjectiveMeasurement::new_unchecked(vec![p1], vec!["1".into()]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert!(matches!(
        measure(&m, &ket0().into(), &mut rng),
        Err(crate::Error::InconsistentMeasurement)
    ));
}

#[test]
fn measurement_validation_rejects_incomplete_projector_sets() {
    let p1 = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(0.0)]);
    assert!(matches!(
        ProjectiveMeasurement::new(vec![p1], vec!["0".into()]),
        Err(crate::Error::InvalidMeasurement(_))
    ));
}

#[test]
fn partial_trace_of_product_basis_state() {
    let s00 = PureState::basis(4, 0, None)
        .unwrap()
        .with_factors(vec![2, 2])
        .unwrap()
        .to_density();
    let first = partial_trace(&s00, 0..1).unwrap();
    assert!(
        linalg::frobenius_distance(first.density(), ket0().to_density().density()) < 1e-12
    );
}

#[test]
fn partial_trace_of_bell_pair_is_maximally_mixed() {
    let bell = PureState::new(
        vec![cr(FRAC_1_SQRT_2), cr(0.0), cr(0.0), cr(FRAC_1_SQRT_2)],
        None,
    )
    .unwrap()
    .with_factors(vec![2, 2])
    .unwrap()
    .to_density();
    let first = partial_trace(&bell, 0..1).unwrap();
    let expected = MixedState::maximally_mixed(2).unwrap();
    assert!(linalg::frobenius_distance(first.density(), expected.density()) < 1e-12);
}

#[test]
fn partial_trace_of_declared_product_recovers_factor() {
    let rho = MixedState::new(
        CMat::from_row_slice(
            2,
            2,
            &[cr(0.7), Complex64::new(0.1, 0.2), Complex64::new(0.1, -0.2), cr(0.3)],
        ),
        None,
    )
    .unwrap();
    let sigma = MixedState::maximally_mixed(3).unwrap();
    let joint = tensor(&rho.clone().into(), &sigma.into()).unwrap().to_density();
    let back = partial_trace(&joint, 0..1).unwrap();
    assert!(linalg::frobenius_distance(back.density(), rho.density()) < 1e-9);
}

#[test]
fn partial_trace_rejects_misaligned_range() {
    let rho = MixedState::maximally_mixed(4).unwrap();
    // Declared as a single dim-4 register: asking for factor 1 is unaligned.
    assert!(matches!(
        partial_trace(&rho, 1..2),
        Err(crate::Error::Shape(_))
    ));
}

#[test]
fn trace_distance_of_identical_states_is_zero() {
    let rho = MixedState::maximally_mixed(3).unwrap();
    assert!(trace_distance(&rho, &rho).unwrap() < 1e-12);
}

#[test]
fn trace_distance_of_orthogonal_pure_states_is_one() {
    let a = PureState::basis(2, 0, None).unwrap().to_density();
    let b = PureState::basis(2, 1, None).unwrap().to_density();
    assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn trace_distance_zero_vs_plus_is_half_sqrt_two() {
    // Hand eigendecomposition of Δ = |0⟩⟨0| − |+⟩⟨+| = [[½, −½], [−½, ½·(−1)]]:
    // tr Δ = 0, det Δ = −½, so eigenvalues ±1/√2 and the distance is √2/2.
    let a = ket0().to_density();
    let b = ket_plus().to_density();
    let d = trace_distance(&a, &b).unwrap();
    assert!((d - FRAC_1_SQRT_2).abs() < 1e-12, "got {d}");
}

#[test]
fn helstrom_on_identical_inputs_is_zero() {
    let rho = MixedState::maximally_mixed(2).unwrap();
    let (adv, m) = helstrom_advantage(&rho, &rho).unwrap();
    assert!(adv.abs() < 1e-12);
    assert_eq!(m.projectors().len(), 2);
}

#[test]
fn helstrom_on_orthogonal_pure_inputs_is_one() {
    let a = PureState::basis(2, 0, None).unwrap().to_density();
    let b = PureState::basis(2, 1, None).unwrap().to_density();
    let (adv, m) = helstrom_advantage(&a, &b).unwrap();
    assert!((adv - 1.0).abs() < 1e-12);
    let p_a = m.outcome_probabilities(&a.clone().into()).unwrap();
    let p_b = m.outcome_probabilities(&b.into()).unwrap();
    assert!((p_a[0] - 1.0).abs() < 1e-12 && p_b[0].abs() < 1e-12);
}

#[test]
fn helstrom_diagonal_example() {
    // Δ = diag(−¼, ¼): advantage = ¼ by direct eigenvalue computation.
    let a = MixedState::maximally_mixed(2).unwrap();
    let b = MixedState::new(
        CMat::from_row_slice(2, 2, &[cr(0.75), cr(0.0), cr(0.0), cr(0.25)]),
        None,
    )
    .unwrap();
    let (adv, m) = helstrom_advantage(&a, &b).unwrap();
    assert!((adv - 0.25).abs() < 1e-12);
    let pa = m.outcome_probabilities(&a.into()).unwrap()[0];
    let pb = m.outcome_probabilities(&b.into()).unwrap()[0];
    assert!(((pa - pb) - adv).abs() < 1e-9);
}

#[test]
fn measured_frequencies_match_reported_born_value() {
    // 10^4 seeded trials against the exact probability, 3σ band.
    let m = ProjectiveMeasurement::computational_basis(2, None).unwrap();
    let state: QuantumState = pure(&[0.6, 0.8]).into();
    let p_exact = m.outcome_probabilities(&state).unwrap()[0];
    assert!((p_exact - 0.36).abs() < 1e-12);
    let n = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut hits = 0usize;
    for _ in 0..n {
        let out = measure(&m, &state, &mut rng).unwrap();
        assert!((out.probability - if out.index == 0 { 0.36 } else { 0.64 }).abs() < 1e-12);
        if out.index == 0 {
            hits += 1;
        }
    }
    let freq = hits as f64 / n as f64;
    let sigma = (p_exact * (1.0 - p_exact) / n as f64).sqrt();
    assert!(
        (freq - p_exact).abs() <= 3.0 * sigma,
        "freq {freq} vs exact {p_exact}"
    );
}

#[test]
fn dump_text_round_trips_known_states() {
    let p = ket_plus();
    let expected_line = format!("{:.12e},{:.12e}", FRAC_1_SQRT_2, 0.0);
    assert_eq!(p.dump_text(), format!("{expected_line}\n{expected_line}\n"));

    let rho = ket0().to_density();
    let one = format!("{:.12e},{:.12e}", 1.0, 0.0);
    let zero = format!("{:.12e},{:.12e}", 0.0, 0.0);
    assert_eq!(
        rho.dump_text(),
        format!("{one} {zero}\n{zero} {zero}\n")
    );
}

// ---------------------------------------------------------------------------
// Property tests
// ---------------------------------------------------------------------------

/// Random density matrix of the given dimension built as GG†/tr(GG†).
fn random_density(dim: usize, entries: Vec<(f64, f64)>) -> MixedState {
    let g = CMat::from_fn(dim, dim, |i, j| {
        let (re, im) = entries[i * dim + j];
        Complex64::new(re, im)
    });
    let gram = &g * g.adjoint();
    let tr = gram.trace().re;
    // Guard against an all-zero draw.
    let rho = if tr > 1e-12 {
        gram.scale(1.0 / tr)
    } else {
        linalg::identity(dim).scale(1.0 / dim as f64)
    };
    MixedState::new(rho, None).unwrap()
}

fn density_strategy(dim: usize) -> impl Strategy<Value = MixedState> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim)
        .prop_map(move |entries| random_density(dim, entries))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn trace_distance_is_symmetric_and_triangular(
        dim in 1usize..=24,
        seed_a in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 24 * 24),
        seed_b in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 24 * 24),
        seed_c in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 24 * 24),
    ) {
        let a = random_density(dim, seed_a[..dim * dim].to_vec());
        let b = random_density(dim, seed_b[..dim * dim].to_vec());
        let c = random_density(dim, seed_c[..dim * dim].to_vec());
        let ab = trace_distance(&a, &b).unwrap();
        let ba = trace_distance(&b, &a).unwrap();
        let ac = trace_distance(&a, &c).unwrap();
        let cb = trace_distance(&c, &b).unwrap();
        prop_assert!((ab - ba).abs() < 1e-10);
        prop_assert!((0.0..=1.0 + 1e-9).contains(&ab));
        prop_assert!(ab <= ac + cb + DERIVED_TOL);
    }

    #[test]
    fn helstrom_measurement_realizes_its_advantage(
        dim in 2usize..=12,
        seed_a in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 12 * 12),
        seed_b in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 12 * 12),
    ) {
        let a = random_density(dim, seed_a[..dim * dim].to_vec());
        let b = random_density(dim, seed_b[..dim * dim].to_vec());
        let (adv, m) = helstrom_advantage(&a, &b).unwrap();
        let td = trace_distance(&a, &b).unwrap();
        prop_assert!((adv - td).abs() < 1e-9);
        let pa = m.outcome_probabilities(&a.into()).unwrap()[0];
        let pb = m.outcome_probabilities(&b.into()).unwrap()[0];
        prop_assert!(((pa - pb) - adv).abs() < 1e-9);
    }

    #[test]
    fn unitary_application_preserves_purity_and_norm(
        phase in 0.0f64..std::f64::consts::TAU,
        amps in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4),
    ) {
        let norm: f64 = amps.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let amps: Vec<Complex64> = amps
            .iter()
            .map(|&(re, im)| Complex64::new(re / norm, im / norm))
            .collect();
        let s = PureState::new(amps, None).unwrap();
        // A random two-level rotation embedded at the top-left corner.
        let (c0, s0) = (phase.cos(), phase.sin());
        let mut m = linalg::identity(4);
        m[(0, 0)] = cr(c0);
        m[(0, 1)] = cr(-s0);
        m[(1, 0)] = cr(s0);
        m[(1, 1)] = cr(c0);
        let u = UnitaryOp::new(m).unwrap();
        let out = apply_unitary(&u, &s.into(), 0..1).unwrap();
        match out {
            QuantumState::Pure(p) => {
                let norm2: f64 = p.amplitudes().iter().map(|a| a.norm_sqr()).sum();
                prop_assert!((norm2 - 1.0).abs() < 1e-9);
            }
            _ => prop_assert!(false, "purity lost"),
        }
    }

    #[test]
    fn composition_outputs_stay_valid_densities(
        dim_a in 1usize..=4,
        dim_b in 1usize..=4,
        seed_a in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
        seed_b in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
    ) {
        let a = random_density(dim_a, seed_a[..dim_a * dim_a].to_vec());
        let b = random_density(dim_b, seed_b[..dim_b * dim_b].to_vec());
        let joint = tensor(&a.clone().into(), &b.into()).unwrap().to_density();
        let tr = joint.density().trace();
        prop_assert!((tr.re - 1.0).abs() < 1e-9 && tr.im.abs() < 1e-9);
        prop_assert!(linalg::is_hermitian(joint.density(), 1e-9));
        let min = linalg::hermitian_eigenvalues(joint.density())[0];
        prop_assert!(min >= -1e-9);

        let reduced = partial_trace(&joint, 0..1).unwrap();
        prop_assert!((reduced.density().trace().re - 1.0).abs() < 1e-9);
        prop_assert!(linalg::frobenius_distance(reduced.density(), a.density()) < 1e-9);
        let min_r = linalg::hermitian_eigenvalues(reduced.density())[0];
        prop_assert!(min_r >= -1e-9);
    }
}
