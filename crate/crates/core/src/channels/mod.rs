//! Kraus channels for amplitude and phase damping on qubits and qutrits.
//!
//! A channel is a finite set of operators `E_k` acting as
//! `rho' = sum_k E_k rho E_k^dagger`, trace-preserving when
//! `sum_k E_k^dagger E_k = I`. Completeness is checked before every
//! application, so a hand-built broken operator set can be constructed and
//! inspected but never applied to a state.

mod discrepancy;
mod predict;

pub use discrepancy::{
    audit_states, compare_paper_vs_oracle, DiscrepancyReport, QuantityComparison, Verdict,
};
pub use predict::{gellmann_transform_ad, predict_ad_qubit, predict_pd_qubit, predict_pd_qutrit};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;
use crate::tolerances::CPTP_TOL;

/// A quantum channel in Kraus form, together with the parameter values it
/// was built from (useful for labeling sweep output).
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    label: String,
    dim: usize,
    operators: Vec<ComplexMatrix>,
    params: Vec<(String, f64)>,
}

impl KrausChannel {
    /// Wraps an operator set. Operators must be square, finite, and share
    /// one dimension. Completeness is *not* required here: it is measured by
    /// `completeness_defect` and enforced at application time, so that
    /// deliberately broken sets can be built for diagnostics.
    pub fn new(
        label: impl Into<String>,
        operators: Vec<ComplexMatrix>,
        params: Vec<(String, f64)>,
    ) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::EmptyKrausSet);
        };
        let dim = first.rows();
        for op in &operators {
            if !op.is_square() || op.rows() != dim {
                return Err(Error::DimensionMismatch {
                    context: "Kraus operator shape",
                    expected: dim,
                    actual: op.rows().max(op.cols()),
                });
            }
            op.check_finite()?;
        }
        Ok(Self {
            label: label.into(),
            dim,
            operators,
            params,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn params(&self) -> &[(String, f64)] {
        &self.params
    }

    /// Max-norm completeness defect `max_ij |(sum_k E_k^dagger E_k - I)_ij|`.
    /// Zero for a trace-preserving set; the caller decides what to accept.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for op in &self.operators {
            let gram = op.adjoint().mul(op).expect("square by construction");
            sum = sum.add(&gram).expect("same dimension");
        }
        sum.sub(&ComplexMatrix::identity(self.dim))
            .expect("same dimension")
            .max_abs()
    }

    /// Applies the channel: `rho' = sum_k E_k rho E_k^dagger`. Rejects the
    /// call if the operator set is not complete within the CPTP tolerance or
    /// if the state dimension does not match; the output is validated as a
    /// density matrix before being returned.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "channel input dimension",
                expected: self.dim,
                actual: rho.dim(),
            });
        }
        let defect = self.completeness_defect();
        if defect > CPTP_TOL {
            return Err(Error::IncompleteKraus {
                defect,
                tolerance: CPTP_TOL,
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for op in &self.operators {
            let term = op.mul(rho.matrix())?.mul(&op.adjoint())?;
            out = out.add(&term)?;
        }
        DensityMatrix::new(out)
    }
}

/// Sequential composition: `first` acts on the state, then `second`. The
/// operator set is all pairwise products `S_j F_k`, so the result is again
/// trace-preserving when both inputs are.
pub fn compose(first: &KrausChannel, second: &KrausChannel) -> Result<KrausChannel> {
    if first.dim() != second.dim() {
        return Err(Error::DimensionMismatch {
            context: "composed channel dimensions",
            expected: first.dim(),
            actual: second.dim(),
        });
    }
    let mut operators = Vec::with_capacity(first.operators.len() * second.operators.len());
    for s in &second.operators {
        for f in &first.operators {
            operators.push(s.mul(f)?);
        }
    }
    let mut params = Vec::new();
    for (name, value) in first.params().iter().chain(second.params()) {
        params.push((name.clone(), *value));
    }
    KrausChannel::new(
        format!("{}_then_{}", first.label(), second.label()),
        operators,
        params,
    )
}

fn check_gamma(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange { name, value });
    }
    Ok(value)
}

fn r(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Qubit amplitude damping at rate `gamma_a`: decay |1> -> |0>.
///
/// Operators: `E0 = diag(1, sqrt(1-g))`, `E1 = sqrt(g) |0><1|`.
pub fn amplitude_damping_qubit(gamma_a: f64) -> Result<KrausChannel> {
    let g = check_gamma("gamma_a", gamma_a)?;
    let e0 = ComplexMatrix::diagonal(&[r(1.0), r((1.0 - g).sqrt())]);
    let mut e1 = ComplexMatrix::zeros(2, 2);
    e1.set(0, 1, r(g.sqrt()));
    KrausChannel::new("ad_qubit", vec![e0, e1], vec![("gamma_a".into(), g)])
}

/// One rung of the qutrit decay ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayStep {
    /// |2> -> |1>.
    Upper,
    /// |1> -> |0>.
    Lower,
}

/// Single qutrit decay step at rate `gamma`.
///
/// Upper: `K0 = diag(1, 1, sqrt(1-g))`, `K1 = sqrt(g) |1><2|`.
/// Lower: `K0 = diag(1, sqrt(1-g), 1)`, `K1 = sqrt(g) |0><1|`.
pub fn qutrit_decay_step(step: DecayStep, gamma: f64) -> Result<KrausChannel> {
    let g = check_gamma("gamma", gamma)?;
    let damp = r((1.0 - g).sqrt());
    let (k0, from, to, label) = match step {
        DecayStep::Upper => (
            ComplexMatrix::diagonal(&[r(1.0), r(1.0), damp]),
            2,
            1,
            "ad_qutrit_step_upper",
        ),
        DecayStep::Lower => (
            ComplexMatrix::diagonal(&[r(1.0), damp, r(1.0)]),
            1,
            0,
            "ad_qutrit_step_lower",
        ),
    };
    let mut k1 = ComplexMatrix::zeros(3, 3);
    k1.set(to, from, r(g.sqrt()));
    KrausChannel::new(label, vec![k0, k1], vec![("gamma".into(), g)])
}

/// Qutrit cascade amplitude damping: the upper step (|2> -> |1>, rate
/// `gamma2`) followed by the lower step (|1> -> |0>, rate `gamma1`),
/// flattened into one four-operator set:
///
/// ```text
/// A0 = diag(1, sqrt(1-g1), sqrt(1-g2))
/// A1 = sqrt(g2 (1-g1)) |1><2|
/// A2 = sqrt(g1)        |0><1|
/// A3 = sqrt(g1 g2)     |0><2|
/// ```
///
/// The `A3` leg carries the two-step decay |2> -> |1> -> |0> within one
/// application; dropping it (see `paper_kraus_ad_qutrit`) breaks trace
/// bookkeeping of the populations even though the coherence damping looks
/// identical.
pub fn cascade_ad_qutrit(gamma1: f64, gamma2: f64) -> Result<KrausChannel> {
    let g1 = check_gamma("gamma1", gamma1)?;
    let g2 = check_gamma("gamma2", gamma2)?;
    let a0 = ComplexMatrix::diagonal(&[r(1.0), r((1.0 - g1).sqrt()), r((1.0 - g2).sqrt())]);
    let mut a1 = ComplexMatrix::zeros(3, 3);
    a1.set(1, 2, r((g2 * (1.0 - g1)).sqrt()));
    let mut a2 = ComplexMatrix::zeros(3, 3);
    a2.set(0, 1, r(g1.sqrt()));
    let mut a3 = ComplexMatrix::zeros(3, 3);
    a3.set(0, 2, r((g1 * g2).sqrt()));
    KrausChannel::new(
        "ad_qutrit_cascade",
        vec![a0, a1, a2, a3],
        vec![("gamma1".into(), g1), ("gamma2".into(), g2)],
    )
}

/// The three-operator qutrit damping set as printed in the published
/// reference material:
///
/// ```text
/// E0 = diag(1, sqrt(1-g1), sqrt(1-g2))
/// E1 = sqrt(g1) |0><1|
/// E2 = sqrt(g2) |1><2|
/// ```
///
/// The set is complete (so it is a valid channel), but it is *not* the
/// cascade: it reroutes the |2> decay weight into |1> without the
/// `(1-g1)` survival factor and has no |2> -> |0> leg. Kept so the
/// discrepancy report can quantify exactly how its populations deviate
/// from the cascade oracle.
pub fn paper_kraus_ad_qutrit(gamma1: f64, gamma2: f64) -> Result<KrausChannel> {
    let g1 = check_gamma("gamma1", gamma1)?;
    let g2 = check_gamma("gamma2", gamma2)?;
    let e0 = ComplexMatrix::diagonal(&[r(1.0), r((1.0 - g1).sqrt()), r((1.0 - g2).sqrt())]);
    let mut e1 = ComplexMatrix::zeros(3, 3);
    e1.set(0, 1, r(g1.sqrt()));
    let mut e2 = ComplexMatrix::zeros(3, 3);
    e2.set(1, 2, r(g2.sqrt()));
    KrausChannel::new(
        "ad_qutrit_paper",
        vec![e0, e1, e2],
        vec![("gamma1".into(), g1), ("gamma2".into(), g2)],
    )
}

/// Qubit phase damping at rate `gamma_p`: populations untouched, coherence
/// scaled by `sqrt(1-g)`.
///
/// Operators: `E0 = diag(1, sqrt(1-g))`, `E1 = diag(0, sqrt(g))`.
pub fn phase_damping_qubit(gamma_p: f64) -> Result<KrausChannel> {
    let g = check_gamma("gamma_p", gamma_p)?;
    let e0 = ComplexMatrix::diagonal(&[r(1.0), r((1.0 - g).sqrt())]);
    let e1 = ComplexMatrix::diagonal(&[r(0.0), r(g.sqrt())]);
    KrausChannel::new("pd_qubit", vec![e0, e1], vec![("gamma_p".into(), g)])
}

/// Qutrit phase damping at rate `gamma_p`, built from the identity and the
/// two third-root-of-unity phase plates:
///
/// ```text
/// E0 = sqrt((1 + 2q)/3) I,              q = sqrt(1-g)
/// E1 = sqrt((1 - q)/3) diag(1, w, w^2), w = exp(2 pi i / 3)
/// E2 = sqrt((1 - q)/3) diag(1, w^2, w)
/// ```
///
/// Every off-diagonal entry picks up the same factor
/// `(1 + 2q)/3 + (w + w^2)(1 - q)/3 = q`, so all coherences damp uniformly
/// by `sqrt(1-g)` while the populations stay fixed.
pub fn phase_damping_qutrit(gamma_p: f64) -> Result<KrausChannel> {
    let g = check_gamma("gamma_p", gamma_p)?;
    let q = (1.0 - g).sqrt();
    let a0 = ((1.0 + 2.0 * q) / 3.0).sqrt();
    let a1 = ((1.0 - q) / 3.0).sqrt();
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let w2 = w * w;
    let e0 = ComplexMatrix::identity(3).scale(a0);
    let e1 = ComplexMatrix::diagonal(&[r(1.0), w, w2]).scale(a1);
    let e2 = ComplexMatrix::diagonal(&[r(1.0), w2, w]).scale(a1);
    KrausChannel::new("pd_qutrit", vec![e0, e1, e2], vec![("gamma_p".into(), g)])
}
