//! Closed-form complementarity predictions for the damping channels.
//!
//! Each predictor maps an input state and a damping rate straight to the
//! output (V^2, P^2, e^2) triple, bypassing the Kraus arithmetic. They are
//! exact consequences of how the channels act entrywise, so the numeric
//! pipeline must reproduce them to near machine precision; the test suites
//! enforce that agreement.

use crate::bloch::GellMannVector;
use crate::error::{Error, Result};
use crate::measures::{predictability2, visibility2, ComplementarityTriple};
use crate::state::DensityMatrix;

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn check_rate(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange { name, value });
    }
    Ok(value)
}

fn check_dim(rho: &DensityMatrix, dim: usize, context: &'static str) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            context,
            expected: dim,
            actual: rho.dim(),
        });
    }
    Ok(())
}

/// Triple after qubit amplitude damping at rate `gamma_a`.
///
/// With populations (a, b) and coherence x = |rho_01|^2:
///
/// ```text
/// V'^2 = (1-g) * 4x
/// P'^2 = (a - b + 2 g b)^2
/// e'^2 = (1-g) * 4(ab - x) + 4 g (1-g) b^2
/// ```
///
/// The three add up to 1 identically in the rate and the state.
pub fn predict_ad_qubit(rho: &DensityMatrix, gamma_a: f64) -> Result<ComplementarityTriple> {
    check_dim(rho, 2, "qubit amplitude-damping prediction")?;
    let g = check_rate("gamma_a", gamma_a)?;
    let a = rho.entry(0, 0).re;
    let b = rho.entry(1, 1).re;
    let x = rho.entry(0, 1).norm_sqr();
    let v2 = (1.0 - g) * 4.0 * x;
    let p2 = (a - b + 2.0 * g * b).powi(2);
    let e2 = (1.0 - g) * 4.0 * (a * b - x) + 4.0 * g * (1.0 - g) * b * b;
    ComplementarityTriple::new(v2, p2, e2)
}

/// Triple after qubit phase damping at rate `gamma_p`.
///
/// Populations are untouched, so P^2 is carried over; the coherence loses a
/// factor (1-g), and the difference lands in the entanglement term:
///
/// ```text
/// V'^2 = (1-g) * 4x
/// P'^2 = (a - b)^2
/// e'^2 = 4(ab - x) + 4 g x
/// ```
pub fn predict_pd_qubit(rho: &DensityMatrix, gamma_p: f64) -> Result<ComplementarityTriple> {
    check_dim(rho, 2, "qubit phase-damping prediction")?;
    let g = check_rate("gamma_p", gamma_p)?;
    let a = rho.entry(0, 0).re;
    let b = rho.entry(1, 1).re;
    let x = rho.entry(0, 1).norm_sqr();
    let v2 = (1.0 - g) * 4.0 * x;
    let p2 = (a - b).powi(2);
    let e2 = 4.0 * (a * b - x) + 4.0 * g * x;
    ComplementarityTriple::new(v2, p2, e2)
}

/// Triple after qutrit phase damping at rate `gamma_p`.
///
/// Every coherence is damped by the same sqrt(1-g), so the whole visibility
/// scales by (1-g) while the predictability is untouched:
///
/// ```text
/// V'^2 = (1-g) V^2
/// P'^2 = P^2
/// e'^2 = 1 - P^2 - (1-g) V^2
/// ```
pub fn predict_pd_qutrit(rho: &DensityMatrix, gamma_p: f64) -> Result<ComplementarityTriple> {
    check_dim(rho, 3, "qutrit phase-damping prediction")?;
    let g = check_rate("gamma_p", gamma_p)?;
    let v2 = (1.0 - g) * visibility2(rho)?;
    let p2 = predictability2(rho)?;
    ComplementarityTriple::new(v2, p2, 1.0 - p2 - v2)
}

/// Published coordinate-space update rule for the qutrit decay cascade, as
/// printed in the reference material:
///
/// ```text
/// s1' = sqrt(1-g1) s1        s2' = sqrt(1-g1) s2
/// s4' = sqrt(1-g2) s4        s5' = sqrt(1-g2) s5
/// s6' = sqrt((1-g1)(1-g2)) s6
/// s7' = sqrt((1-g1)(1-g2)) s7
/// s3' = (1-g1) s3 + (sqrt(3)/3) g1 (1-g2) s8
/// s8' = (1-g2) s8 + g2/2
/// ```
///
/// The six coherence rows and the s8 row agree exactly with decomposing the
/// cascade output. The s3 row does not: the matrix-level channel also
/// produces a state-independent shift and a different s8 coupling, both
/// absent here. The rule is kept verbatim so `compare_paper_vs_oracle` can
/// measure that gap; it is not used by any simulation path.
pub fn gellmann_transform_ad(s: &GellMannVector, gamma1: f64, gamma2: f64) -> GellMannVector {
    let g1 = gamma1;
    let g2 = gamma2;
    let f1 = (1.0 - g1).sqrt();
    let f2 = (1.0 - g2).sqrt();
    let f12 = ((1.0 - g1) * (1.0 - g2)).sqrt();
    GellMannVector {
        s: [
            f1 * s.s[0],
            f1 * s.s[1],
            (1.0 - g1) * s.s[2] + (SQRT3 / 3.0) * g1 * (1.0 - g2) * s.s[7],
            f2 * s.s[3],
            f2 * s.s[4],
            f12 * s.s[5],
            f12 * s.s[6],
            (1.0 - g2) * s.s[7] + g2 / 2.0,
        ],
    }
}
