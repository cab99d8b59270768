//! Randomized invariant suites over the whole library.
//!
//! Every test here states a claim that holds for *arbitrary* valid inputs
//! and then checks it on seeded random states across dimensions, detector
//! dimensions, and damping-parameter grids. The proptest block at the end
//! re-checks the central identities under shrinking so a failure reports a
//! minimal counterexample.

use proptest::prelude::*;

use triality_core::bloch::{
    gellmann_decompose, gellmann_reconstruct, pauli_decompose, pauli_reconstruct,
};
use triality_core::channels::{
    amplitude_damping_qubit, cascade_ad_qutrit, compose, paper_kraus_ad_qutrit,
    phase_damping_qubit, phase_damping_qutrit, predict_ad_qubit, predict_pd_qubit,
    predict_pd_qutrit, qutrit_decay_step, DecayStep, KrausChannel,
};
use triality_core::measures::{
    duality_defect, entanglement2_pairwise, entanglement2_residual, predictability2,
    residual_from_purity, triality_triple, visibility2,
};
use triality_core::sample;
use triality_core::state::{composite_state, partial_trace_detector, reduced_density};
use triality_core::tolerances::{CPTP_TOL, DEPHASING_DIAGONAL_TOL, EXACT_TOL, ROUND_TRIP_TOL};
use triality_core::{DensityMatrix, DetectorGram, PureState};

/// Inclusive uniform grid on [0, 1].
fn gamma_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| k as f64 / (points - 1) as f64)
        .collect()
}

/// The five damping channels at a common rate (the two-rate cascade and its
/// printed three-operator variant run with equal rates here).
fn all_builders(gamma: f64) -> Vec<KrausChannel> {
    vec![
        amplitude_damping_qubit(gamma).unwrap(),
        phase_damping_qubit(gamma).unwrap(),
        cascade_ad_qutrit(gamma, gamma).unwrap(),
        paper_kraus_ad_qutrit(gamma, gamma).unwrap(),
        phase_damping_qutrit(gamma).unwrap(),
    ]
}

#[test]
fn triality_sum_holds_on_random_pure_composites() {
    let mut rng = sample::seeded_rng(101);
    for dim in [2usize, 3] {
        for _ in 0..10_000 {
            let psi = sample::pure_state(dim, &mut rng);
            let gram = sample::gram(dim, 4, &mut rng);
            let triple = triality_triple(&psi, &gram).unwrap();
            assert!(
                (triple.sum() - 1.0).abs() <= 1e-10,
                "triality defect {} at dim {dim}",
                (triple.sum() - 1.0).abs()
            );
            for value in [triple.v2, triple.p2, triple.e2] {
                assert!((-1e-12..=1.0 + 1e-12).contains(&value), "component {value}");
            }
        }
    }
}

#[test]
fn pairwise_entanglement_equals_residual_of_the_reduced_state() {
    let mut rng = sample::seeded_rng(102);
    for dim in [2usize, 3] {
        for _ in 0..10_000 {
            let psi = sample::pure_state(dim, &mut rng);
            let gram = sample::gram(dim, 4, &mut rng);
            let pairwise = entanglement2_pairwise(&psi, &gram).unwrap();
            let reduced = reduced_density(&psi, &gram).unwrap();
            let residual = entanglement2_residual(&reduced).unwrap();
            assert!(
                (pairwise - residual).abs() <= 1e-10,
                "pairwise {pairwise} vs residual {residual}"
            );
        }
    }
}

#[test]
fn hadamard_reduction_equals_partial_trace_for_detector_dims_1_through_4() {
    let mut rng = sample::seeded_rng(103);
    for dim in [2usize, 3] {
        for detector_dim in 1usize..=4 {
            for _ in 0..1250 {
                let psi = sample::pure_state(dim, &mut rng);
                let detectors = sample::detector_states(dim, detector_dim, &mut rng);
                let composite = composite_state(&psi, &detectors).unwrap();
                let traced = partial_trace_detector(&composite, dim, detector_dim).unwrap();
                let gram = DetectorGram::from_detector_states(&detectors).unwrap();
                let reduced = reduced_density(&psi, &gram).unwrap();
                for i in 0..dim {
                    for j in 0..dim {
                        let dev = (traced.entry(i, j) - reduced.entry(i, j)).norm();
                        assert!(dev <= EXACT_TOL, "entry ({i},{j}) deviates by {dev}");
                    }
                }
            }
        }
    }
}

#[test]
fn coordinate_forms_of_the_measures_match_the_direct_sums() {
    let mut rng = sample::seeded_rng(104);
    for _ in 0..10_000 {
        let rho = sample::density_matrix(2, &mut rng);
        let b = pauli_decompose(&rho).unwrap();
        let v2 = visibility2(&rho).unwrap();
        let p2 = predictability2(&rho).unwrap();
        assert!((v2 - 4.0 * (b.rho1 * b.rho1 + b.rho2 * b.rho2)).abs() <= EXACT_TOL);
        assert!((p2 - 4.0 * b.rho3 * b.rho3).abs() <= EXACT_TOL);
    }
    for _ in 0..10_000 {
        let rho = sample::density_matrix(3, &mut rng);
        let g = gellmann_decompose(&rho).unwrap();
        let v2 = visibility2(&rho).unwrap();
        let p2 = predictability2(&rho).unwrap();
        assert!((v2 - g.coherence_norm_sqr()).abs() <= EXACT_TOL);
        assert!((p2 - g.population_norm_sqr()).abs() <= EXACT_TOL);
    }
}

#[test]
fn residual_entanglement_is_the_scaled_linear_entropy() {
    let mut rng = sample::seeded_rng(105);
    for dim in [2usize, 3] {
        for _ in 0..5000 {
            let rho = sample::density_matrix(dim, &mut rng);
            let residual = entanglement2_residual(&rho).unwrap();
            let from_purity = residual_from_purity(&rho).unwrap();
            assert!(
                (residual - from_purity).abs() <= EXACT_TOL,
                "identity defect {}",
                (residual - from_purity).abs()
            );
        }
    }
    // Channel outputs sit on lower-dimensional families of states; check
    // the identity survives the pipeline as well.
    let mut rng = sample::seeded_rng(106);
    for gamma in gamma_grid(11) {
        for channel in all_builders(gamma) {
            for _ in 0..50 {
                let rho = sample::density_matrix(channel.dim(), &mut rng);
                let out = channel.apply(&rho).unwrap();
                let residual = entanglement2_residual(&out).unwrap();
                let from_purity = residual_from_purity(&out).unwrap();
                assert!((residual - from_purity).abs() <= EXACT_TOL);
            }
        }
    }
}

#[test]
fn coordinate_round_trips_are_mutual_inverses() {
    let mut rng = sample::seeded_rng(107);
    for _ in 0..2000 {
        let rho = sample::density_matrix(2, &mut rng);
        let b = pauli_decompose(&rho).unwrap();
        let back = pauli_reconstruct(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((back.entry(i, j) - rho.entry(i, j)).norm() <= ROUND_TRIP_TOL);
            }
        }
        assert!((rho.purity() - (0.5 + 2.0 * b.norm_sqr())).abs() <= EXACT_TOL);
    }
    for _ in 0..2000 {
        let rho = sample::density_matrix(3, &mut rng);
        let g = gellmann_decompose(&rho).unwrap();
        let back = gellmann_reconstruct(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((back.entry(i, j) - rho.entry(i, j)).norm() <= ROUND_TRIP_TOL);
            }
        }
        assert!((rho.purity() - (1.0 / 3.0 + 2.0 / 3.0 * g.norm_sqr())).abs() <= EXACT_TOL);
    }
}

#[test]
fn unmarked_paths_reduce_triality_to_duality() {
    let mut rng = sample::seeded_rng(108);
    for dim in [2usize, 3] {
        let gram = DetectorGram::all_ones(dim).unwrap();
        for _ in 0..2000 {
            let psi = sample::pure_state(dim, &mut rng);
            assert_eq!(entanglement2_pairwise(&psi, &gram).unwrap(), 0.0);
            let reduced = reduced_density(&psi, &gram).unwrap();
            assert!(duality_defect(&reduced).unwrap() <= EXACT_TOL);
        }
    }
}

#[test]
fn completeness_defect_stays_bounded_across_the_gamma_grid() {
    for gamma in gamma_grid(101) {
        for channel in all_builders(gamma) {
            let defect = channel.completeness_defect();
            assert!(
                defect <= CPTP_TOL,
                "{} defect {defect} at gamma {gamma}",
                channel.label()
            );
        }
    }
    // Unequal cascade rates, including the boundaries.
    for gamma1 in gamma_grid(11) {
        for gamma2 in gamma_grid(11) {
            let cascade = cascade_ad_qutrit(gamma1, gamma2).unwrap();
            let printed = paper_kraus_ad_qutrit(gamma1, gamma2).unwrap();
            assert!(cascade.completeness_defect() <= CPTP_TOL);
            assert!(printed.completeness_defect() <= CPTP_TOL);
        }
    }
}

#[test]
fn triality_persists_under_every_channel_on_random_states() {
    let mut rng = sample::seeded_rng(109);
    let qubit_states: Vec<DensityMatrix> = (0..1000)
        .map(|_| sample::density_matrix(2, &mut rng))
        .collect();
    let qutrit_states: Vec<DensityMatrix> = (0..1000)
        .map(|_| sample::density_matrix(3, &mut rng))
        .collect();
    for gamma in gamma_grid(101) {
        for channel in all_builders(gamma) {
            let inputs = if channel.dim() == 2 {
                &qubit_states
            } else {
                &qutrit_states
            };
            for rho in inputs {
                let out = channel.apply(rho).unwrap();
                let v2 = visibility2(&out).unwrap();
                let p2 = predictability2(&out).unwrap();
                let e2 = entanglement2_residual(&out).unwrap();
                let defect = (v2 + p2 + e2 - 1.0).abs();
                assert!(
                    defect <= 1e-10,
                    "{} breaks triality by {defect} at gamma {gamma}",
                    channel.label()
                );
            }
        }
    }
}

#[test]
fn dephasing_leaves_populations_exactly_in_place() {
    let mut rng = sample::seeded_rng(110);
    for gamma in gamma_grid(21) {
        let qubit_pd = phase_damping_qubit(gamma).unwrap();
        let qutrit_pd = phase_damping_qutrit(gamma).unwrap();
        for _ in 0..200 {
            let rho2 = sample::density_matrix(2, &mut rng);
            let out2 = qubit_pd.apply(&rho2).unwrap();
            for i in 0..2 {
                let dev = (out2.entry(i, i) - rho2.entry(i, i)).norm();
                assert!(
                    dev <= DEPHASING_DIAGONAL_TOL,
                    "qubit diagonal moved by {dev}"
                );
            }
            let rho3 = sample::density_matrix(3, &mut rng);
            let out3 = qutrit_pd.apply(&rho3).unwrap();
            for i in 0..3 {
                let dev = (out3.entry(i, i) - rho3.entry(i, i)).norm();
                assert!(
                    dev <= DEPHASING_DIAGONAL_TOL,
                    "qutrit diagonal moved by {dev}"
                );
            }
        }
    }
}

#[test]
fn amplitude_damping_scales_coherences_by_the_root_factors() {
    let mut rng = sample::seeded_rng(111);
    for _ in 0..500 {
        let gamma_a: f64 = rng.random_range(0.0..=1.0);
        let channel = amplitude_damping_qubit(gamma_a).unwrap();
        let rho = sample::density_matrix(2, &mut rng);
        let out = channel.apply(&rho).unwrap();
        let expected = (1.0 - gamma_a).sqrt() * rho.entry(0, 1).norm();
        assert!((out.entry(0, 1).norm() - expected).abs() <= ROUND_TRIP_TOL);
    }
    for _ in 0..500 {
        let gamma1: f64 = rng.random_range(0.0..=1.0);
        let gamma2: f64 = rng.random_range(0.0..=1.0);
        let channel = cascade_ad_qutrit(gamma1, gamma2).unwrap();
        let rho = sample::density_matrix(3, &mut rng);
        let out = channel.apply(&rho).unwrap();
        let pair_factors = [
            (0, 1, (1.0 - gamma1).sqrt()),
            (0, 2, (1.0 - gamma2).sqrt()),
            (1, 2, ((1.0 - gamma1) * (1.0 - gamma2)).sqrt()),
        ];
        for (i, j, factor) in pair_factors {
            let expected = factor * rho.entry(i, j).norm();
            let dev = (out.entry(i, j).norm() - expected).abs();
            assert!(dev <= ROUND_TRIP_TOL, "pair ({i},{j}) factor off by {dev}");
        }
    }
}

#[test]
fn visibility_strictly_decreases_with_damping_on_the_max_coherent_qubit() {
    let start = DensityMatrix::from_pure(&PureState::max_coherent(2).unwrap());
    let grid = gamma_grid(101);
    let mut previous_ad = f64::INFINITY;
    let mut previous_pd = f64::INFINITY;
    for &gamma in &grid {
        let ad = amplitude_damping_qubit(gamma)
            .unwrap()
            .apply(&start)
            .unwrap();
        let pd = phase_damping_qubit(gamma).unwrap().apply(&start).unwrap();
        let v2_ad = visibility2(&ad).unwrap();
        let v2_pd = visibility2(&pd).unwrap();
        assert!(
            v2_ad < previous_ad,
            "V^2 not decreasing under decay at {gamma}"
        );
        assert!(
            v2_pd < previous_pd,
            "V^2 not decreasing under dephasing at {gamma}"
        );
        previous_ad = v2_ad;
        previous_pd = v2_pd;
    }
}

#[test]
fn composed_decay_steps_act_like_the_cascade_builder() {
    let mut rng = sample::seeded_rng(112);
    for _ in 0..500 {
        let gamma1: f64 = rng.random_range(0.0..=1.0);
        let gamma2: f64 = rng.random_range(0.0..=1.0);
        let upper = qutrit_decay_step(DecayStep::Upper, gamma2).unwrap();
        let lower = qutrit_decay_step(DecayStep::Lower, gamma1).unwrap();
        let sequential = compose(&upper, &lower).unwrap();
        let cascade = cascade_ad_qutrit(gamma1, gamma2).unwrap();
        let rho = sample::density_matrix(3, &mut rng);
        let a = sequential.apply(&rho).unwrap();
        let b = cascade.apply(&rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((a.entry(i, j) - b.entry(i, j)).norm() <= ROUND_TRIP_TOL);
            }
        }
    }
}

#[test]
fn closed_form_predictors_match_the_kraus_pipeline() {
    let mut rng = sample::seeded_rng(113);
    let grid = gamma_grid(11);
    let triple_of = |rho: &DensityMatrix| -> (f64, f64, f64) {
        (
            visibility2(rho).unwrap(),
            predictability2(rho).unwrap(),
            entanglement2_residual(rho).unwrap(),
        )
    };
    for _ in 0..1000 {
        let rho2 = sample::density_matrix(2, &mut rng);
        let rho3 = sample::density_matrix(3, &mut rng);
        for &gamma in &grid {
            let cases = [
                (
                    predict_ad_qubit(&rho2, gamma).unwrap(),
                    amplitude_damping_qubit(gamma)
                        .unwrap()
                        .apply(&rho2)
                        .unwrap(),
                ),
                (
                    predict_pd_qubit(&rho2, gamma).unwrap(),
                    phase_damping_qubit(gamma).unwrap().apply(&rho2).unwrap(),
                ),
                (
                    predict_pd_qutrit(&rho3, gamma).unwrap(),
                    phase_damping_qutrit(gamma).unwrap().apply(&rho3).unwrap(),
                ),
            ];
            for (predicted, evolved) in cases {
                let (v2, p2, e2) = triple_of(&evolved);
                assert!((predicted.v2 - v2).abs() <= EXACT_TOL);
                assert!((predicted.p2 - p2).abs() <= EXACT_TOL);
                assert!((predicted.e2 - e2).abs() <= EXACT_TOL);
                assert!((predicted.sum() - 1.0).abs() <= EXACT_TOL);
            }
        }
    }
}

// Shrinking property checks: raw f64 draws are normalized into valid
// states inside the test body so proptest can minimize failures.

/// Complex amplitudes from raw coordinate pairs, rejected when degenerate.
fn raw_state(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("needs nonzero norm", |raw| {
            raw.iter().map(|(re, im)| re * re + im * im).sum::<f64>() > 1e-6
        })
}

fn normalize(raw: &[(f64, f64)]) -> PureState {
    let norm = raw
        .iter()
        .map(|(re, im)| re * re + im * im)
        .sum::<f64>()
        .sqrt();
    PureState::new(
        raw.iter()
            .map(|(re, im)| num_complex::Complex64::new(re / norm, im / norm))
            .collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn triality_sum_shrinks_nowhere(
        raw_psi in raw_state(3),
        raw_detectors in prop::collection::vec(raw_state(2), 3),
    ) {
        let psi = normalize(&raw_psi);
        let detectors: Vec<PureState> = raw_detectors.iter().map(|raw| normalize(raw)).collect();
        let gram = DetectorGram::from_detector_states(&detectors).unwrap();
        let triple = triality_triple(&psi, &gram).unwrap();
        prop_assert!((triple.sum() - 1.0).abs() <= 1e-10);
        let reduced = reduced_density(&psi, &gram).unwrap();
        let residual = entanglement2_residual(&reduced).unwrap();
        prop_assert!((triple.e2 - residual).abs() <= 1e-10);
    }

    #[test]
    fn serde_round_trips_pure_states_and_densities(raw in raw_state(3)) {
        let psi = normalize(&raw);
        let json = serde_json::to_string(&psi).unwrap();
        let back: PureState = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&psi, &back);

        let rho = DensityMatrix::from_pure(&psi);
        let json = serde_json::to_string(&rho).unwrap();
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&rho, &back);
    }

    #[test]
    fn damping_parameters_outside_the_unit_interval_are_rejected(
        gamma in prop_oneof![-1e3f64..-1e-9, 1.0 + 1e-9..1e3],
    ) {
        prop_assert!(amplitude_damping_qubit(gamma).is_err());
        prop_assert!(phase_damping_qubit(gamma).is_err());
        prop_assert!(phase_damping_qutrit(gamma).is_err());
        prop_assert!(cascade_ad_qutrit(gamma, 0.5).is_err());
        prop_assert!(cascade_ad_qutrit(0.5, gamma).is_err());
        prop_assert!(paper_kraus_ad_qutrit(gamma, gamma.clamp(0.0, 1.0)).is_err());
    }

    #[test]
    fn channel_outputs_remain_valid_states(
        raw in raw_state(3),
        gamma1 in 0.0f64..=1.0,
        gamma2 in 0.0f64..=1.0,
    ) {
        let rho = DensityMatrix::from_pure(&normalize(&raw));
        let out = cascade_ad_qutrit(gamma1, gamma2).unwrap().apply(&rho).unwrap();
        // Constructing the output already validated Hermiticity, trace, and
        // positivity; triality is the physics-level consequence to pin.
        let sum = visibility2(&out).unwrap()
            + predictability2(&out).unwrap()
            + entanglement2_residual(&out).unwrap();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
    }
}
