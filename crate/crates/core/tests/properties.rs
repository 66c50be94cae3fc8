// Copyright 2026 The tomoinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use proptest::prelude::*;
use tomoinfo::quantum::trace_product;
use tomoinfo::{
    bloch_coords, build_mub, bz_total_error, crb_trace, direct_inversion, eigenbasis_error, error_ellipsoid,
    fisher_gaussian, fisher_multinomial, fisher_p3_closed_form, gell_mann_basis, hs_distance, mco_weights,
    ml_estimate, ortho_quorum, ortho_quorum_probabilities, project_to_physical, purity, random_state,
    random_unitary, run_trials, sample_counts, state_from_bloch, state_from_weights, DensityMatrix,
    EstimatorKind, ExperimentConfig, MlOptions, Operator, Quorum, RawState, Scheme, StateKind, StateSpec,
    C64,
};

fn dims() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(3), Just(5), Just(7)]
}

fn kinds() -> impl Strategy<Value = StateKind> {
    prop_oneof![
        Just(StateKind::HaarPure),
        Just(StateKind::HsMixed),
        (0.0..=1.0f64).prop_map(StateKind::PurityTarget),
    ]
}

/// Mixed enough that no MUB or quorum probability touches 0 or 1.
fn interior_kinds() -> impl Strategy<Value = StateKind> {
    prop_oneof![
        Just(StateKind::HsMixed),
        (0.0..=0.9f64).prop_map(StateKind::PurityTarget),
    ]
}

fn max_abs(a: &tomoinfo::CMatrix, b: &tomoinfo::CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hs_distance_is_sum_of_squared_coordinate_gaps(p in dims(), k1 in kinds(), k2 in kinds(), s1: u64, s2: u64) {
        let basis = gell_mann_basis(p).unwrap();
        let rho = random_state(p, k1, s1).unwrap();
        let sigma = random_state(p, k2, s2).unwrap();
        let a = bloch_coords(&rho, &basis).unwrap().coords;
        let b = bloch_coords(&sigma, &basis).unwrap().coords;
        let sum: f64 = a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum();
        prop_assert!((hs_distance(&rho, &sigma).unwrap() - sum).abs() <= 1e-12);
    }

    #[test]
    fn bloch_round_trip(p in dims(), k in kinds(), s: u64) {
        let basis = gell_mann_basis(p).unwrap();
        let rho = random_state(p, k, s).unwrap();
        let back = state_from_bloch(&bloch_coords(&rho, &basis).unwrap(), &basis).unwrap();
        prop_assert!(max_abs(back.matrix(), rho.matrix()) <= 1e-12);
    }

    #[test]
    fn purity_survives_rotation(p in dims(), k in kinds(), s: u64, u: u64) {
        let rho = random_state(p, k, s).unwrap();
        let rotated = rho.conjugate_by(&random_unitary(p, u).unwrap()).unwrap();
        prop_assert!((purity(&rotated) - purity(&rho)).abs() <= 1e-12);
    }

    #[test]
    fn total_error_identity_on_rotated_sets(p in dims(), k in kinds(), s: u64, u: u64) {
        let rho = random_state(p, k, s).unwrap();
        let set = build_mub(p).unwrap().rotated(&random_unitary(p, u).unwrap()).unwrap();
        let e = bz_total_error(&rho, &set).unwrap();
        prop_assert!((e.sum_form - (p as f64 - purity(&rho))).abs() <= 1e-10);
    }

    #[test]
    fn mub_weights_round_trip(p in dims(), k in kinds(), s: u64) {
        let set = build_mub(p).unwrap();
        let rho = random_state(p, k, s).unwrap();
        let back = state_from_weights(&mco_weights(&rho, &set).unwrap(), &set).unwrap();
        prop_assert!(max_abs(back.matrix(), rho.matrix()) <= 1e-12);
    }

    #[test]
    fn rotated_weights_match(p in dims(), k in kinds(), s: u64, u: u64) {
        let set = build_mub(p).unwrap();
        let uu = random_unitary(p, u).unwrap();
        let rho = random_state(p, k, s).unwrap();
        let w = mco_weights(&rho, &set).unwrap();
        let wr = mco_weights(&rho.conjugate_by(&uu).unwrap(), &set.rotated(&uu).unwrap()).unwrap();
        for (a, b) in w.weights.iter().flatten().zip(wr.weights.iter().flatten()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn direct_inversion_is_equivariant(p in prop_oneof![Just(2usize), Just(3), Just(5)], k in kinds(), s: u64, u: u64) {
        let set = build_mub(p).unwrap();
        let rho = random_state(p, k, s).unwrap();
        let probs = set.overlaps(&rho).unwrap();
        let rec = sample_counts(Scheme::Mub, p, &probs, 40, s).unwrap();
        let uu = random_unitary(p, u).unwrap();
        let plain = direct_inversion(&rec, &set).unwrap();
        let rotated = direct_inversion(&rec, &set.rotated(&uu).unwrap()).unwrap();
        let want = &uu * plain.matrix() * uu.adjoint();
        prop_assert!(max_abs(rotated.matrix(), &want) <= 1e-12);
    }

    #[test]
    fn projection_lands_on_states(p in prop_oneof![Just(2usize), Just(3), Just(5)], s: u64, scale in 0.0..4.0f64) {
        // Stretch a random state's Bloch vector, usually past the boundary.
        let basis = gell_mann_basis(p).unwrap();
        let rho = random_state(p, StateKind::HsMixed, s).unwrap();
        let mut a = bloch_coords(&rho, &basis).unwrap();
        a.coords.iter_mut().for_each(|x| *x *= scale);
        let raw = state_from_bloch(&a, &basis).unwrap();
        let proj = project_to_physical(&raw);
        prop_assert!(proj.min_eigenvalue() >= -1e-12);
        prop_assert!((proj.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(purity(&proj) <= 1.0 + 1e-12);
        if raw.is_physical() {
            prop_assert!(max_abs(proj.matrix(), raw.matrix()) <= 1e-10);
        }
        // Idempotent.
        let again = project_to_physical(&RawState::from(proj.clone()));
        prop_assert!(max_abs(again.matrix(), proj.matrix()) <= 1e-12);
    }

    #[test]
    fn qubit_projection_clips_radially(x in -3.0..3.0f64, y in -3.0..3.0f64, z in -3.0..3.0f64) {
        let basis = gell_mann_basis(2).unwrap();
        let a = tomoinfo::BlochVector { dim: 2, coords: vec![x, y, z] };
        // Physical iff Σa² ≤ 1/2 in this normalization.
        let r = (2.0 * a.norm_squared()).sqrt();
        prop_assume!(r > 1.0 + 1e-9);
        let proj = project_to_physical(&state_from_bloch(&a, &basis).unwrap());
        let b = bloch_coords(&proj, &basis).unwrap().coords;
        for (bi, ai) in b.iter().zip(&a.coords) {
            prop_assert!((bi - ai / r).abs() <= 1e-12);
        }
    }

    #[test]
    fn ml_likelihood_never_decreases(p in prop_oneof![Just(2usize), Just(3)], k in interior_kinds(), s: u64) {
        let set = build_mub(p).unwrap();
        let rho = random_state(p, k, s).unwrap();
        let probs = set.overlaps(&rho).unwrap();
        let rec = sample_counts(Scheme::Mub, p, &probs, 30, s).unwrap();
        let opts = MlOptions { record_trace: true, max_iter: 2000, ..MlOptions::default() };
        let res = ml_estimate(&rec, Quorum::Mub(&set), &opts).unwrap();
        for w in res.trace.windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        prop_assert!(res.state.min_eigenvalue() >= -1e-12);
        prop_assert!((res.state.matrix().trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ellipsoid_scales_sum_to_trace_inverse(p in prop_oneof![Just(2usize), Just(3), Just(5)], k in interior_kinds(), s: u64, n in 1u64..10_000) {
        let set = build_mub(p).unwrap();
        let basis = gell_mann_basis(p).unwrap();
        let rho = random_state(p, k, s).unwrap();
        let f = fisher_gaussian(&rho, Quorum::Mub(&set), &basis, n).unwrap();
        let crb = crb_trace(&f).unwrap().trace_inverse;
        let scales: f64 = error_ellipsoid(&f).unwrap().half_axis_scales.iter().sum();
        prop_assert!((crb - scales).abs() <= 1e-12 * crb.max(1.0));
    }

    #[test]
    fn two_outcome_quorum_fisher_forms_agree(p in prop_oneof![Just(2usize), Just(3), Just(5)], k in interior_kinds(), s: u64) {
        let basis = gell_mann_basis(p).unwrap();
        let rho = random_state(p, k, s).unwrap();
        prop_assume!(ortho_quorum_probabilities(&rho, &basis).is_ok());
        let q = ortho_quorum(&basis);
        let g = fisher_gaussian(&rho, Quorum::Ortho(&q), &basis, 1).unwrap();
        let m = fisher_multinomial(&rho, Quorum::Ortho(&q), &basis, 1).unwrap();
        prop_assert!((&g.entries - &m.entries).amax() <= 1e-10);
    }

    #[test]
    fn qubit_mub_gaussian_form_counts_each_basis_twice(k in interior_kinds(), s: u64, u: u64) {
        let basis = gell_mann_basis(2).unwrap();
        let set = build_mub(2).unwrap().rotated(&random_unitary(2, u).unwrap()).unwrap();
        let rho = random_state(2, k, s).unwrap();
        let g = fisher_gaussian(&rho, Quorum::Mub(&set), &basis, 1).unwrap();
        let m = fisher_multinomial(&rho, Quorum::Mub(&set), &basis, 1).unwrap();
        prop_assert!((&g.entries - &m.entries.scale(2.0)).amax() <= 1e-10);
    }

    #[test]
    fn qutrit_error_chain(k in interior_kinds(), s: u64, n in 1u64..100_000) {
        let set = build_mub(3).unwrap();
        let rho = random_state(3, k, s).unwrap();
        let nn = n as f64;
        let eigen = eigenbasis_error(&rho);
        let closed = fisher_p3_closed_form(&rho, &set, n).unwrap();
        let e = bz_total_error(&rho, &set).unwrap().closed_form;
        prop_assert!(nn * closed - eigen >= -1e-12);
        prop_assert!(e / nn - closed >= -1e-12 / nn);
    }
}

#[test]
fn gell_mann_gram_is_identity() {
    for p in [2, 3, 5, 7] {
        let g = gell_mann_basis(p).unwrap().gram();
        let id = nalgebra::DMatrix::<f64>::identity(p * p - 1, p * p - 1);
        assert!((g - id).amax() <= 1e-12, "p = {p}");
    }
}

#[test]
fn total_error_is_flat_across_rotations() {
    for p in [2, 3, 5, 7] {
        let set = build_mub(p).unwrap();
        let rho = random_state(p, StateKind::PurityTarget(0.6), 3).unwrap();
        let mut values = Vec::new();
        for i in 0..100 {
            let u = random_unitary(p, 500 + i).unwrap();
            values.push(
                bz_total_error(&rho.conjugate_by(&u).unwrap(), &set)
                    .unwrap()
                    .sum_form,
            );
            values.push(bz_total_error(&rho, &set.rotated(&u).unwrap()).unwrap().sum_form);
        }
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max - min <= 1e-10, "p = {p}: spread {}", max - min);
    }
}

#[test]
fn ortho_positivity_flags() {
    assert!(ortho_quorum(&gell_mann_basis(2).unwrap()).all_positive());
    for p in [3, 5, 7] {
        let q = ortho_quorum(&gell_mann_basis(p).unwrap());
        assert!(q.positivity().iter().any(|ok| !ok), "p = {p}");
    }
}

#[test]
fn identical_config_gives_identical_stats() {
    let config = ExperimentConfig {
        dim: 3,
        scheme: Scheme::Mub,
        estimator: EstimatorKind::Ml,
        shots: 40,
        trials: 300,
        state: StateSpec::Random {
            kind: StateKind::HsMixed,
            seed: 9,
        },
        base_seed: 123,
        exclude_nonconverged: false,
        ml: MlOptions::default(),
    };
    let a = run_trials(&config).unwrap();
    let b = run_trials(&config).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.mean_d.to_bits(), b.mean_d.to_bits());
}

#[test]
fn pure_state_projection_fixed_point() {
    let psi = nalgebra::DVector::from_vec(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
    let rho = DensityMatrix::pure(&psi).unwrap();
    let proj = project_to_physical(&RawState::from(rho.clone()));
    assert!(max_abs(proj.matrix(), rho.matrix()) <= 1e-12);
    assert!((trace_product(proj.matrix(), proj.matrix()).re - 1.0).abs() <= 1e-12);
}
