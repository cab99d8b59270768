//! Normalized complementarity measures for two- and three-path states.
//!
//! All three quantities are squared and normalized to [0, 1]:
//!
//! * visibility `V^2 = n/(n-1) * sum_{i != j} |rho_ij|^2` measures coherence
//!   between paths,
//! * predictability `P^2 = sum_i rho_ii^2 - 1/(n-1) * sum_{i != j} rho_ii rho_jj`
//!   measures population imbalance,
//! * entanglement `e^2` measures what the detectors learned.
//!
//! For a pure path-detector composite the three add up to exactly 1; for a
//! pure path state with no detectors the entanglement term vanishes and the
//! sum collapses to the two-term duality `V^2 + P^2 = 1`.

use crate::error::{Error, Result};
use crate::state::{reduced_density, DensityMatrix, DetectorGram, PureState};

/// The (V^2, P^2, e^2) triple for one composite state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityTriple {
    pub v2: f64,
    pub p2: f64,
    pub e2: f64,
}

// Validation band for the triple components. Wider than STATE_TOL because
// each component is itself the end of a floating-point pipeline.
const COMPONENT_TOL: f64 = 1e-9;

impl ComplementarityTriple {
    /// Accepts components inside [0, 1] up to floating-point slack; values
    /// meaningfully outside that interval indicate a broken caller and are
    /// rejected rather than clamped.
    pub fn new(v2: f64, p2: f64, e2: f64) -> Result<Self> {
        for (name, value) in [("v2", v2), ("p2", p2), ("e2", e2)] {
            if !value.is_finite() || !(-COMPONENT_TOL..=1.0 + COMPONENT_TOL).contains(&value) {
                return Err(Error::MeasureOutOfRange { name, value });
            }
        }
        Ok(Self { v2, p2, e2 })
    }

    pub fn sum(&self) -> f64 {
        self.v2 + self.p2 + self.e2
    }
}

fn check_path_count(rho: &DensityMatrix, context: &'static str) -> Result<usize> {
    match rho.dim() {
        n @ (2 | 3) => Ok(n),
        dim => Err(Error::UnsupportedDimension { context, dim }),
    }
}

/// Squared visibility of an n-path state, n in {2, 3}.
pub fn visibility2(rho: &DensityMatrix) -> Result<f64> {
    let n = check_path_count(rho, "visibility")?;
    let mut off_diag = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off_diag += rho.entry(i, j).norm_sqr();
            }
        }
    }
    Ok(n as f64 / (n as f64 - 1.0) * off_diag)
}

/// Squared predictability of an n-path state, n in {2, 3}.
pub fn predictability2(rho: &DensityMatrix) -> Result<f64> {
    let n = check_path_count(rho, "predictability")?;
    let pops: Vec<f64> = (0..n).map(|i| rho.entry(i, i).re).collect();
    let squares: f64 = pops.iter().map(|p| p * p).sum();
    let mut cross = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cross += pops[i] * pops[j];
            }
        }
    }
    Ok(squares - cross / (n as f64 - 1.0))
}

/// Entanglement measure obtained as the triality remainder `1 - V^2 - P^2`.
///
/// On any valid state this equals `n/(n-1) * (1 - Tr(rho^2))`, which ties
/// the measure to the purity lost to the detectors; the test suites check
/// that identity on both dimensions.
pub fn entanglement2_residual(rho: &DensityMatrix) -> Result<f64> {
    Ok(1.0 - visibility2(rho)? - predictability2(rho)?)
}

/// Entanglement measure built from pairwise path-detector concurrences:
/// `e^2 = n/(2(n-1)) * sum_{i<j} 4 |c_i|^2 |c_j|^2 (1 - |G_ij|^2)`.
///
/// Defined on the pure composite described by `psi` and `gram`; agrees with
/// `entanglement2_residual` of the reduced state.
pub fn entanglement2_pairwise(psi: &PureState, gram: &DetectorGram) -> Result<f64> {
    let n = psi.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedDimension {
            context: "pairwise entanglement",
            dim: n,
        });
    }
    if gram.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "overlap matrix dimension must match path count",
            expected: n,
            actual: gram.dim(),
        });
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let weight = psi.amplitude(i).norm_sqr() * psi.amplitude(j).norm_sqr();
            sum += 4.0 * weight * (1.0 - gram.overlap(i, j).norm_sqr());
        }
    }
    Ok(n as f64 / (2.0 * (n as f64 - 1.0)) * sum)
}

/// Full complementarity triple of the composite: visibility and
/// predictability of the reduced path state, entanglement from the pairwise
/// construction. For valid inputs the components sum to 1 within the state
/// tolerance.
pub fn triality_triple(psi: &PureState, gram: &DetectorGram) -> Result<ComplementarityTriple> {
    let reduced = reduced_density(psi, gram)?;
    ComplementarityTriple::new(
        visibility2(&reduced)?,
        predictability2(&reduced)?,
        entanglement2_pairwise(psi, gram)?,
    )
}

/// Checks the two-term duality for a bare path state: `V^2 + P^2 = 1` holds
/// exactly when the state is pure, and falls short by the mixedness term
/// otherwise.
pub fn duality_defect(rho: &DensityMatrix) -> Result<f64> {
    Ok(1.0 - visibility2(rho)? - predictability2(rho)?)
}

/// Purity route to the residual: `n/(n-1) * (1 - Tr(rho^2))`. Kept separate
/// so tests can compare two independent code paths.
pub fn residual_from_purity(rho: &DensityMatrix) -> Result<f64> {
    let n = check_path_count(rho, "purity residual")? as f64;
    Ok(n / (n - 1.0) * (1.0 - rho.purity()))
}
