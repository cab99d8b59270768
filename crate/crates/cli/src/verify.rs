//! The randomized verification suite behind `triality verify`.
//!
//! Every suite re-checks one library invariant on seeded random inputs and
//! reports the worst deviation it saw next to the tolerance it enforces.
//! Deterministic boundary cases (damping rates 0 and 1 on canonical states)
//! run before the random cases, so they are covered even with `--cases 1`.

use std::fmt;

use rand::Rng;
use triality_core::bloch::{gellmann_decompose, pauli_decompose};
use triality_core::channels::{
    compose, predict_ad_qubit, predict_pd_qubit, predict_pd_qutrit, qutrit_decay_step, DecayStep,
    KrausChannel,
};
use triality_core::measures::{
    entanglement2_pairwise, entanglement2_residual, predictability2, residual_from_purity,
    visibility2,
};
use triality_core::sample;
use triality_core::state::{composite_state, partial_trace_detector, reduced_density};
use triality_core::tolerances::{CPTP_TOL, DEPHASING_DIAGONAL_TOL, EXACT_TOL, ROUND_TRIP_TOL};
use triality_core::{DensityMatrix, DetectorGram, PureState};

use crate::config::ChannelKind;

/// Outcome of one suite: how many checks ran, how many exceeded the
/// tolerance, and the worst deviation observed.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst_deviation: f64,
    pub tolerance: f64,
}

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            result: SuiteResult {
                name,
                cases: 0,
                failures: 0,
                worst_deviation: 0.0,
                tolerance,
            },
        }
    }

    /// Records one check; NaN counts as a failure.
    fn check(&mut self, deviation: f64) {
        self.result.cases += 1;
        if deviation > self.result.worst_deviation || deviation.is_nan() {
            self.result.worst_deviation = deviation;
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // `>` would let NaN pass
        if !(deviation <= self.result.tolerance) {
            self.result.failures += 1;
        }
    }

    fn finish(self) -> SuiteResult {
        self.result
    }
}

/// Report of a whole verification run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verification: seed {}, {} random cases per suite",
            self.seed, self.cases
        )?;
        for suite in &self.suites {
            let status = if suite.failures == 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {status} {:<26} {:>8} checks  worst {:>10.3e}  tol {:>6.0e}{}",
                suite.name,
                suite.cases,
                suite.worst_deviation,
                suite.tolerance,
                if suite.failures > 0 {
                    format!("  ({} over tolerance)", suite.failures)
                } else {
                    String::new()
                }
            )?;
        }
        let clean = self.suites.iter().filter(|s| s.failures == 0).count();
        writeln!(
            f,
            "result: {} ({clean}/{} suites clean)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suites.len()
        )
    }
}

/// The canonical states boundary cases run on.
fn boundary_states(dim: usize) -> [DensityMatrix; 3] {
    [
        DensityMatrix::from_pure(&PureState::max_coherent(dim).expect("dim 2 or 3")),
        DensityMatrix::from_pure(&PureState::basis(dim, 0).expect("dim 2 or 3")),
        DensityMatrix::max_mixed(dim).expect("dim 2 or 3"),
    ]
}

/// |V'^2 + P'^2 + e'^2 - 1| after pushing `rho` through `channel`; any
/// evaluation error counts as an unbounded deviation.
fn triality_defect(channel: &KrausChannel, rho: &DensityMatrix) -> f64 {
    let evaluated = channel.apply(rho).and_then(|out| {
        Ok(visibility2(&out)? + predictability2(&out)? + entanglement2_residual(&out)?)
    });
    match evaluated {
        Ok(sum) => (sum - 1.0).abs(),
        Err(_) => f64::INFINITY,
    }
}

fn triality_sum_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("triality-sum", 1e-10);
    for dim in [2usize, 3] {
        for _ in 0..cases {
            let psi = sample::pure_state(dim, rng);
            let gram = sample::gram(dim, 4, rng);
            match triality_core::measures::triality_triple(&psi, &gram) {
                Ok(triple) => suite.check((triple.sum() - 1.0).abs()),
                Err(_) => suite.check(f64::INFINITY),
            }
        }
    }
    suite.finish()
}

fn pairwise_residual_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("pairwise-vs-residual", 1e-10);
    for dim in [2usize, 3] {
        for _ in 0..cases {
            let psi = sample::pure_state(dim, rng);
            let gram = sample::gram(dim, 4, rng);
            let deviation = reduced_density(&psi, &gram)
                .and_then(|reduced| {
                    let pairwise = entanglement2_pairwise(&psi, &gram)?;
                    let residual = entanglement2_residual(&reduced)?;
                    Ok((pairwise - residual).abs())
                })
                .unwrap_or(f64::INFINITY);
            suite.check(deviation);
        }
    }
    suite.finish()
}

fn partial_trace_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("partial-trace-oracle", EXACT_TOL);
    for index in 0..cases.max(8) {
        let dim = if index % 2 == 0 { 2 } else { 3 };
        let detector_dim = 1 + (index / 2) % 4;
        let psi = sample::pure_state(dim, rng);
        let detectors = sample::detector_states(dim, detector_dim, rng);
        let deviation = (|| {
            let composite = composite_state(&psi, &detectors)?;
            let traced = partial_trace_detector(&composite, dim, detector_dim)?;
            let gram = DetectorGram::from_detector_states(&detectors)?;
            let reduced = reduced_density(&psi, &gram)?;
            let mut worst = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    worst = worst.max((traced.entry(i, j) - reduced.entry(i, j)).norm());
                }
            }
            Ok::<f64, triality_core::Error>(worst)
        })()
        .unwrap_or(f64::INFINITY);
        suite.check(deviation);
    }
    suite.finish()
}

fn representation_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("representation-agreement", EXACT_TOL);
    for _ in 0..cases {
        let rho = sample::density_matrix(2, rng);
        let deviation = pauli_decompose(&rho)
            .and_then(|b| {
                let v2 = visibility2(&rho)?;
                let p2 = predictability2(&rho)?;
                let dv = (v2 - 4.0 * (b.rho1 * b.rho1 + b.rho2 * b.rho2)).abs();
                let dp = (p2 - 4.0 * b.rho3 * b.rho3).abs();
                Ok(dv.max(dp))
            })
            .unwrap_or(f64::INFINITY);
        suite.check(deviation);

        let rho = sample::density_matrix(3, rng);
        let deviation = gellmann_decompose(&rho)
            .and_then(|g| {
                let dv = (visibility2(&rho)? - g.coherence_norm_sqr()).abs();
                let dp = (predictability2(&rho)? - g.population_norm_sqr()).abs();
                Ok(dv.max(dp))
            })
            .unwrap_or(f64::INFINITY);
        suite.check(deviation);
    }
    suite.finish()
}

fn residual_identity_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("residual-identity", EXACT_TOL);
    for index in 0..cases {
        let dim = if index % 2 == 0 { 2 } else { 3 };
        let rho = sample::density_matrix(dim, rng);
        // Also exercise the identity on a channel output: the states a
        // sweep actually reports live on these families.
        let kind = ChannelKind::ALL[index % ChannelKind::ALL.len()];
        let evolved = kind
            .build(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0))
            .and_then(|channel| channel.apply(&sample::density_matrix(channel.dim(), rng)));
        for state in [Ok(rho), evolved] {
            let deviation = state
                .and_then(|rho| {
                    Ok((entanglement2_residual(&rho)? - residual_from_purity(&rho)?).abs())
                })
                .unwrap_or(f64::INFINITY);
            suite.check(deviation);
        }
    }
    suite.finish()
}

fn cptp_grid_suite() -> SuiteResult {
    let mut suite = Suite::new("cptp-grid", CPTP_TOL);
    for k in 0..101 {
        let gamma = k as f64 / 100.0;
        for kind in ChannelKind::ALL {
            match kind.build(gamma, gamma) {
                Ok(channel) => suite.check(channel.completeness_defect()),
                Err(_) => suite.check(f64::INFINITY),
            }
        }
    }
    // Unequal cascade rates, including the corners.
    for i in 0..11 {
        for j in 0..11 {
            let (gamma1, gamma2) = (i as f64 / 10.0, j as f64 / 10.0);
            for kind in [ChannelKind::AdQutritCascade, ChannelKind::AdQutritPaper] {
                match kind.build(gamma1, gamma2) {
                    Ok(channel) => suite.check(channel.completeness_defect()),
                    Err(_) => suite.check(f64::INFINITY),
                }
            }
        }
    }
    suite.finish()
}

fn channel_triality_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("channel-triality", 1e-10);
    for kind in ChannelKind::ALL {
        let dim = kind.dim();
        for gamma in [0.0, 1.0] {
            let channel = kind.build(gamma, gamma).expect("boundary rates are valid");
            for rho in &boundary_states(dim) {
                suite.check(triality_defect(&channel, rho));
            }
        }
        for _ in 0..cases {
            let rate1: f64 = rng.random_range(0.0..=1.0);
            let rate2: f64 = rng.random_range(0.0..=1.0);
            match kind.build(rate1, rate2) {
                Ok(channel) => {
                    let rho = sample::density_matrix(dim, rng);
                    suite.check(triality_defect(&channel, &rho));
                }
                Err(_) => suite.check(f64::INFINITY),
            }
        }
    }
    suite.finish()
}

fn closed_form_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("closed-form-predictors", EXACT_TOL);
    type Predictor =
        fn(&DensityMatrix, f64) -> triality_core::Result<triality_core::ComplementarityTriple>;
    let predictors: [(ChannelKind, Predictor); 3] = [
        (ChannelKind::AdQubit, predict_ad_qubit),
        (ChannelKind::PdQubit, predict_pd_qubit),
        (ChannelKind::PdQutrit, predict_pd_qutrit),
    ];
    for (kind, predict) in predictors {
        let dim = kind.dim();
        let boundary: Vec<(f64, DensityMatrix)> = [0.0, 1.0]
            .iter()
            .flat_map(|&g| boundary_states(dim).map(|rho| (g, rho)))
            .collect();
        let mut run = |gamma: f64, rho: &DensityMatrix| {
            let deviation = kind
                .build(gamma, gamma)
                .and_then(|channel| channel.apply(rho))
                .and_then(|out| {
                    let predicted = predict(rho, gamma)?;
                    let dv = (predicted.v2 - visibility2(&out)?).abs();
                    let dp = (predicted.p2 - predictability2(&out)?).abs();
                    let de = (predicted.e2 - entanglement2_residual(&out)?).abs();
                    Ok(dv.max(dp).max(de))
                })
                .unwrap_or(f64::INFINITY);
            suite.check(deviation);
        };
        for (gamma, rho) in &boundary {
            run(*gamma, rho);
        }
        for _ in 0..cases {
            let gamma: f64 = rng.random_range(0.0..=1.0);
            let rho = sample::density_matrix(dim, rng);
            run(gamma, &rho);
        }
    }
    suite.finish()
}

fn dephasing_diagonal_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("dephasing-diagonals", DEPHASING_DIAGONAL_TOL);
    for kind in [ChannelKind::PdQubit, ChannelKind::PdQutrit] {
        let dim = kind.dim();
        for _ in 0..cases {
            let gamma: f64 = rng.random_range(0.0..=1.0);
            let rho = sample::density_matrix(dim, rng);
            let deviation = kind
                .build(gamma, gamma)
                .and_then(|channel| channel.apply(&rho))
                .map(|out| {
                    (0..dim)
                        .map(|i| (out.entry(i, i) - rho.entry(i, i)).norm())
                        .fold(0.0, f64::max)
                })
                .unwrap_or(f64::INFINITY);
            suite.check(deviation);
        }
    }
    suite.finish()
}

fn ad_coherence_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("ad-coherence-scaling", ROUND_TRIP_TOL);
    for _ in 0..cases {
        let gamma_a: f64 = rng.random_range(0.0..=1.0);
        let rho = sample::density_matrix(2, rng);
        let deviation = ChannelKind::AdQubit
            .build(gamma_a, gamma_a)
            .and_then(|channel| channel.apply(&rho))
            .map(|out| {
                let expected = (1.0 - gamma_a).sqrt() * rho.entry(0, 1).norm();
                (out.entry(0, 1).norm() - expected).abs()
            })
            .unwrap_or(f64::INFINITY);
        suite.check(deviation);

        let gamma1: f64 = rng.random_range(0.0..=1.0);
        let gamma2: f64 = rng.random_range(0.0..=1.0);
        let rho = sample::density_matrix(3, rng);
        let deviation = ChannelKind::AdQutritCascade
            .build(gamma1, gamma2)
            .and_then(|channel| channel.apply(&rho))
            .map(|out| {
                let factors = [
                    (0, 1, (1.0 - gamma1).sqrt()),
                    (0, 2, (1.0 - gamma2).sqrt()),
                    (1, 2, ((1.0 - gamma1) * (1.0 - gamma2)).sqrt()),
                ];
                factors
                    .iter()
                    .map(|&(i, j, f)| (out.entry(i, j).norm() - f * rho.entry(i, j).norm()).abs())
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::INFINITY);
        suite.check(deviation);
    }
    suite.finish()
}

fn compose_cascade_suite(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    let mut suite = Suite::new("compose-vs-cascade", ROUND_TRIP_TOL);
    for _ in 0..cases {
        let gamma1: f64 = rng.random_range(0.0..=1.0);
        let gamma2: f64 = rng.random_range(0.0..=1.0);
        let rho = sample::density_matrix(3, rng);
        let deviation = (|| {
            let upper = qutrit_decay_step(DecayStep::Upper, gamma2)?;
            let lower = qutrit_decay_step(DecayStep::Lower, gamma1)?;
            let sequential = compose(&upper, &lower)?.apply(&rho)?;
            let direct = ChannelKind::AdQutritCascade
                .build(gamma1, gamma2)?
                .apply(&rho)?;
            let mut worst = 0.0f64;
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((sequential.entry(i, j) - direct.entry(i, j)).norm());
                }
            }
            Ok::<f64, triality_core::Error>(worst)
        })()
        .unwrap_or(f64::INFINITY);
        suite.check(deviation);
    }
    suite.finish()
}

/// A deliberately mis-normalized copy of the qubit decay channel, applied
/// without the completeness gate. The suite must flag it; this keeps the
/// whole verification pipeline honest about its own sensitivity.
#[cfg(feature = "fault-injection")]
fn fault_injection_sentinel(cases: usize, rng: &mut impl Rng) -> SuiteResult {
    use triality_core::ComplexMatrix;

    let mut suite = Suite::new("fault-injection-sentinel", 1e-10);
    let template = ChannelKind::AdQubit
        .build(0.3, 0.3)
        .expect("valid template rate");
    let mut operators: Vec<ComplexMatrix> = template.operators().to_vec();
    operators[0] = operators[0].scale(0.995);
    for _ in 0..cases.min(100) {
        let rho = sample::density_matrix(2, rng);
        let mut accumulated = ComplexMatrix::zeros(2, 2);
        for op in &operators {
            let term = op
                .mul(rho.matrix())
                .and_then(|m| m.mul(&op.adjoint()))
                .expect("2x2 products");
            accumulated = accumulated.add(&term).expect("2x2 sums");
        }
        let trace_defect = (accumulated.trace().re - 1.0).abs();
        match DensityMatrix::new(accumulated) {
            Ok(out) => {
                let sum = visibility2(&out)
                    .and_then(|v2| Ok(v2 + predictability2(&out)? + entanglement2_residual(&out)?))
                    .unwrap_or(f64::INFINITY);
                suite.check((sum - 1.0).abs());
            }
            Err(_) => suite.check(trace_defect),
        }
    }
    suite.finish()
}

/// Runs every suite with `cases` random checks each (deterministic boundary
/// checks always included) and collects the report.
pub fn run_verify(seed: u64, cases: usize) -> VerifyReport {
    let mut rng = sample::seeded_rng(seed);
    #[cfg_attr(not(feature = "fault-injection"), allow(unused_mut))]
    let mut suites = vec![
        triality_sum_suite(cases, &mut rng),
        pairwise_residual_suite(cases, &mut rng),
        partial_trace_suite(cases, &mut rng),
        representation_suite(cases, &mut rng),
        residual_identity_suite(cases, &mut rng),
        cptp_grid_suite(),
        channel_triality_suite(cases, &mut rng),
        closed_form_suite(cases, &mut rng),
        dephasing_diagonal_suite(cases, &mut rng),
        ad_coherence_suite(cases, &mut rng),
        compose_cascade_suite(cases, &mut rng),
    ];
    #[cfg(feature = "fault-injection")]
    suites.push(fault_injection_sentinel(cases, &mut rng));
    VerifyReport {
        seed,
        cases,
        suites,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_small_run_passes_every_suite() {
        let report = run_verify(1, 8);
        assert_eq!(
            report.suites.len(),
            11 + cfg!(feature = "fault-injection") as usize
        );
        for suite in &report.suites {
            assert!(suite.cases > 0);
            if suite.name == "fault-injection-sentinel" {
                assert!(suite.failures > 0, "the sentinel must trip");
            } else {
                assert!(suite.failures == 0, "{} failed", suite.name);
                assert!(suite.worst_deviation <= suite.tolerance);
            }
        }
        assert_eq!(report.passed(), !cfg!(feature = "fault-injection"));
    }

    #[test]
    fn runs_are_deterministic_for_a_fixed_seed() {
        let a = run_verify(42, 32);
        let b = run_verify(42, 32);
        for (x, y) in a.suites.iter().zip(&b.suites) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.cases, y.cases);
            assert_eq!(x.worst_deviation, y.worst_deviation);
        }
        let c = run_verify(43, 32);
        assert!(
            a.suites
                .iter()
                .zip(&c.suites)
                .any(|(x, y)| x.worst_deviation != y.worst_deviation),
            "different seeds should draw different cases"
        );
    }

    #[test]
    fn the_report_flags_failing_suites() {
        let mut suite = Suite::new("sentinel", 1e-12);
        suite.check(0.5);
        suite.check(f64::NAN);
        suite.check(1e-13);
        let result = suite.finish();
        assert_eq!(result.cases, 3);
        assert_eq!(result.failures, 2);

        let report = VerifyReport {
            seed: 0,
            cases: 3,
            suites: vec![result],
        };
        assert!(!report.passed());
        let text = report.to_string();
        assert!(text.contains("FAIL sentinel"), "{text}");
        assert!(text.contains("(2 over tolerance)"), "{text}");
        assert!(text.contains("result: FAIL (0/1 suites clean)"), "{text}");
    }

    #[test]
    fn boundary_rates_are_covered_even_with_one_case() {
        let report = run_verify(9, 1);
        let channel = report
            .suites
            .iter()
            .find(|s| s.name == "channel-triality")
            .unwrap();
        // 5 kinds x (2 boundary rates x 3 states + 1 random case).
        assert_eq!(channel.cases, 5 * (2 * 3 + 1));
    }
}
