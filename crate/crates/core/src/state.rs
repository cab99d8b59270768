//! Path states, detector overlaps, and the composite-system constructions
//! that connect them.
//!
//! A which-path experiment couples an n-path state `sum_i c_i |i>` to one
//! detector state per path. Tracing the detector out leaves the path state
//! with its off-diagonal entries multiplied by the detector overlaps; both
//! routes to that reduced state are implemented here and must agree, which
//! is what anchors every downstream measure.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tolerances::STATE_TOL;

/// Normalized complex amplitude vector over the path basis (or over the
/// composite path-detector basis).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates finiteness and unit norm; the amplitudes are stored as
    /// given, never renormalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyState);
        }
        for (i, a) in amplitudes.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: 0 });
            }
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > STATE_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Equal-weight, equal-phase superposition of `dim` paths.
    pub fn max_coherent(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyState);
        }
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self::new(vec![amp; dim])
    }

    /// Basis state |k> in `dim` dimensions.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::DimensionMismatch {
                context: "basis state index",
                expected: dim,
                actual: k,
            });
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[k] = Complex64::ONE;
        Self::new(amplitudes)
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix over the path basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness
    /// within the state tolerance. The matrix is stored exactly as passed;
    /// a failing input is rejected with the measured defect, not repaired.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                context: "density matrix shape",
                expected: matrix.rows(),
                actual: matrix.cols(),
            });
        }
        matrix.check_finite()?;
        let defect = matrix.hermiticity_defect();
        if defect > STATE_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let min_eigenvalue = matrix.min_eigenvalue_hermitian(STATE_TOL)?;
        if min_eigenvalue < -STATE_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Projector |psi><psi|, with entries `c_i * conj(c_j)`. Valid by
    /// construction for any `PureState`, so this cannot fail.
    pub fn from_pure(psi: &PureState) -> Self {
        let c = psi.amplitudes();
        Self {
            matrix: ComplexMatrix::from_fn(c.len(), c.len(), |i, j| c[i] * c[j].conj()),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Tr(rho^2), the purity: 1 on pure states, 1/n on the maximally mixed
    /// state of dimension n.
    pub fn purity(&self) -> f64 {
        self.matrix
            .mul(&self.matrix)
            .expect("square by construction")
            .trace()
            .re
    }

    /// Maximally mixed state I/dim.
    pub fn max_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyState);
        }
        Self::new(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
    }
}

/// Pairwise detector overlaps `G_ij = sum_k d_i[k] * conj(d_j[k])`.
///
/// The matrix is Hermitian with unit diagonal and positive semidefinite;
/// those properties are exactly what make `reduced_density` produce a valid
/// state, so they are enforced here.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorGram {
    overlaps: ComplexMatrix,
}

impl DetectorGram {
    pub fn new(overlaps: ComplexMatrix) -> Result<Self> {
        if !overlaps.is_square() {
            return Err(Error::DimensionMismatch {
                context: "overlap matrix shape",
                expected: overlaps.rows(),
                actual: overlaps.cols(),
            });
        }
        overlaps.check_finite()?;
        let defect = overlaps.hermiticity_defect();
        if defect > STATE_TOL {
            return Err(Error::NotHermitian { defect });
        }
        for i in 0..overlaps.rows() {
            let d = overlaps.get(i, i);
            if (d.re - 1.0).abs() > STATE_TOL || d.im.abs() > STATE_TOL {
                return Err(Error::NotUnitDiagonal {
                    index: i,
                    value: d.re,
                });
            }
        }
        // Unit diagonal plus positive semidefiniteness already bounds every
        // off-diagonal overlap magnitude by 1.
        let min_eigenvalue = overlaps.min_eigenvalue_hermitian(STATE_TOL)?;
        if min_eigenvalue < -STATE_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self { overlaps })
    }

    /// Gram matrix of one detector state per path. All detector states must
    /// share one dimension; that dimension is otherwise free (a detector of
    /// dimension 1 carries no path information at all).
    pub fn from_detector_states(detectors: &[PureState]) -> Result<Self> {
        let Some(first) = detectors.first() else {
            return Err(Error::EmptyState);
        };
        let m = first.dim();
        for d in detectors {
            if d.dim() != m {
                return Err(Error::DimensionMismatch {
                    context: "detector state dimension",
                    expected: m,
                    actual: d.dim(),
                });
            }
        }
        let n = detectors.len();
        let overlaps = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..m)
                .map(|k| detectors[i].amplitude(k) * detectors[j].amplitude(k).conj())
                .sum()
        });
        Self::new(overlaps)
    }

    pub fn dim(&self) -> usize {
        self.overlaps.rows()
    }

    pub fn overlap(&self, i: usize, j: usize) -> Complex64 {
        self.overlaps.get(i, j)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.overlaps
    }

    /// Gram matrix of identical detectors: no path information stored.
    pub fn all_ones(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::from_fn(dim, dim, |_, _| Complex64::ONE))
    }

    /// Gram matrix of orthonormal detectors: full path information.
    pub fn orthonormal(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim))
    }
}

/// Joint path-detector state `sum_i c_i |i> (x) |d_i>`, flattened so that
/// block i holds `c_i` times the i-th detector amplitudes.
pub fn composite_state(psi: &PureState, detectors: &[PureState]) -> Result<PureState> {
    if detectors.len() != psi.dim() {
        return Err(Error::DimensionMismatch {
            context: "one detector state per path",
            expected: psi.dim(),
            actual: detectors.len(),
        });
    }
    let m = detectors[0].dim();
    for d in detectors {
        if d.dim() != m {
            return Err(Error::DimensionMismatch {
                context: "detector state dimension",
                expected: m,
                actual: d.dim(),
            });
        }
    }
    let mut amplitudes = Vec::with_capacity(psi.dim() * m);
    for (i, d) in detectors.iter().enumerate() {
        let c = psi.amplitude(i);
        amplitudes.extend(d.amplitudes().iter().map(|a| c * a));
    }
    PureState::new(amplitudes)
}

/// Traces the detector factor out of a composite pure state:
/// `rho_ij = sum_k Psi[i*m + k] * conj(Psi[j*m + k])`
/// where `m = detector_dim`. The result is a valid path state.
pub fn partial_trace_detector(
    composite: &PureState,
    paths: usize,
    detector_dim: usize,
) -> Result<DensityMatrix> {
    if paths * detector_dim != composite.dim() {
        return Err(Error::DimensionMismatch {
            context: "composite dimension must factor as paths * detector_dim",
            expected: paths * detector_dim,
            actual: composite.dim(),
        });
    }
    let amps = composite.amplitudes();
    let matrix = ComplexMatrix::from_fn(paths, paths, |i, j| {
        (0..detector_dim)
            .map(|k| amps[i * detector_dim + k] * amps[j * detector_dim + k].conj())
            .sum()
    });
    DensityMatrix::new(matrix)
}

/// Reduced path state of `psi` entangled with detectors of overlap `gram`:
/// the projector |psi><psi| with each off-diagonal entry multiplied by the
/// matching overlap. Diagonal entries are carried over unchanged.
///
/// Must agree entrywise with tracing the detector out of the explicit
/// composite state; that identity is this module's main oracle.
pub fn reduced_density(psi: &PureState, gram: &DetectorGram) -> Result<DensityMatrix> {
    if gram.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            context: "overlap matrix dimension must match path count",
            expected: psi.dim(),
            actual: gram.dim(),
        });
    }
    let pure = DensityMatrix::from_pure(psi);
    let matrix = ComplexMatrix::from_fn(psi.dim(), psi.dim(), |i, j| {
        if i == j {
            pure.entry(i, i)
        } else {
            pure.entry(i, j) * gram.overlap(i, j)
        }
    });
    DensityMatrix::new(matrix)
}

// ---- serialization ----
//
// States cross the CLI boundary as nested arrays of [re, im] pairs: a pure
// state is a list of pairs, a density matrix a list of rows of pairs.
// Deserialization funnels through the validating constructors, so a config
// file cannot smuggle in an unphysical state.

fn pair(v: Complex64) -> [f64; 2] {
    [v.re, v.im]
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|&a| pair(a)).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        let amplitudes = pairs
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        PureState::new(amplitudes).map_err(D::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| pair(self.entry(i, j))).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let entries: Vec<Vec<Complex64>> = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        let matrix = ComplexMatrix::from_rows(entries).map_err(D::Error::custom)?;
        DensityMatrix::new(matrix).map_err(D::Error::custom)
    }
}
