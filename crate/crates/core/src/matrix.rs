//! Dense complex matrices sized for path states and small composites.
//!
//! Everything in this crate lives in dimension 9 or below (three paths times
//! a detector of dimension at most 4 is the largest composite that appears),
//! so the representation is a plain row-major `Vec<Complex64>` and the
//! operations are straightforward loops.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
///
/// Entries are validated to be finite at construction; operations on
/// finite inputs of these sizes cannot overflow.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    /// Builds a matrix from nested rows. Rows must be nonempty, rectangular,
    /// and finite.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::DimensionMismatch {
                context: "matrix from rows",
                expected: 1,
                actual: 0,
            });
        }
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in &rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: n_cols,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        let m = Self {
            rows: n_rows,
            cols: n_cols,
            data,
        };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Diagonal square matrix from the given entries.
    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                actual: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Complex64::ZERO;
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_check(rhs, "matrix sum")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_check(rhs, "matrix difference")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude; the max-norm used for defect reporting.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.zip_check(rhs, "matrix comparison")?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max over `|a_ij - conj(a_ji)|`; zero for an exactly Hermitian matrix.
    /// Only meaningful for square matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of a Hermitian matrix of dimension 1 to 3.
    ///
    /// The 2x2 case is the quadratic closed form. The 3x3 case uses complex
    /// Jacobi rotations with a fixed sweep bound instead of the trigonometric
    /// closed form: the cubic route goes through acos near +-1 on degenerate
    /// spectra and loses half its digits exactly there, while rank-deficient
    /// detector overlap matrices make degenerate spectra the common case
    /// here. Jacobi keeps the error at machine scale for a handful of sweeps.
    ///
    /// Rejects matrices whose Hermiticity defect exceeds `herm_tol`; the
    /// computation itself uses the symmetrized matrix (A + A^dagger)/2.
    pub fn min_eigenvalue_hermitian(&self, herm_tol: f64) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context: "eigenvalues of non-square matrix",
                expected: self.rows,
                actual: self.cols,
            });
        }
        let defect = self.hermiticity_defect();
        if defect > herm_tol {
            return Err(Error::NotHermitian { defect });
        }
        // Symmetrized entries: h[i][j] for i <= j, with h[j][i] implied.
        let h = |i: usize, j: usize| (self.get(i, j) + self.get(j, i).conj()) * 0.5;
        match self.rows {
            1 => Ok(h(0, 0).re),
            2 => {
                let a = h(0, 0).re;
                let d = h(1, 1).re;
                let b = h(0, 1);
                let mid = 0.5 * (a + d);
                let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
                Ok(mid - radius)
            }
            3 => {
                let mut a = [[Complex64::ZERO; 3]; 3];
                for (i, row) in a.iter_mut().enumerate() {
                    for (j, entry) in row.iter_mut().enumerate() {
                        *entry = match i.cmp(&j) {
                            std::cmp::Ordering::Less => h(i, j),
                            std::cmp::Ordering::Equal => Complex64::new(h(i, i).re, 0.0),
                            std::cmp::Ordering::Greater => h(j, i).conj(),
                        };
                    }
                }
                Ok(jacobi_min_eigenvalue_3(&mut a))
            }
            dim => Err(Error::UnsupportedDimension {
                context: "closed-form eigenvalues",
                dim,
            }),
        }
    }

    fn zip_check(&self, rhs: &Self, context: &'static str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.rows * self.cols,
                actual: rhs.rows * rhs.cols,
            });
        }
        Ok(())
    }
}

/// Upper bound on Jacobi sweeps for a 3x3 Hermitian matrix. Convergence is
/// quadratic once the off-diagonal mass is small, so four or five sweeps
/// already reach the rounding floor; the bound exists to keep the loop
/// provably finite, not because it is ever approached.
const JACOBI_MAX_SWEEPS: usize = 12;

/// Diagonalizes a Hermitian 3x3 matrix in place by cyclic complex Jacobi
/// rotations and returns the smallest diagonal entry. Each rotation zeroes
/// one off-diagonal pair exactly; pivots below the rounding floor of the
/// matrix are skipped, and the loop stops on the first sweep that skips all
/// three pairs.
fn jacobi_min_eigenvalue_3(a: &mut [[Complex64; 3]; 3]) -> f64 {
    let mut fro_sqr = 0.0;
    for row in a.iter() {
        for entry in row {
            fro_sqr += entry.norm_sqr();
        }
    }
    let floor = fro_sqr.sqrt() * 1e-17;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            let abs = apq.norm();
            if abs <= floor {
                continue;
            }
            rotated = true;
            // Unitary on the (p, q) plane: a phase that makes the pivot
            // real, followed by the classic real Jacobi rotation angle.
            let phase = apq / abs;
            let tau = (a[q][q].re - a[p][p].re) / (2.0 * abs);
            let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            let app = a[p][p].re;
            let aqq = a[q][q].re;
            a[p][p] = Complex64::new(c * c * app - 2.0 * c * s * abs + s * s * aqq, 0.0);
            a[q][q] = Complex64::new(s * s * app + 2.0 * c * s * abs + c * c * aqq, 0.0);
            a[p][q] = Complex64::ZERO;
            a[q][p] = Complex64::ZERO;
            let k = 3 - p - q;
            let akp = a[k][p];
            let akq = a[k][q];
            a[k][p] = akp * c - akq * phase.conj() * s;
            a[k][q] = akp * s + akq * phase.conj() * c;
            a[p][k] = a[k][p].conj();
            a[q][k] = a[k][q].conj();
        }
        if !rotated {
            break;
        }
    }
    a[0][0].re.min(a[1][1].re).min(a[2][2].re)
}
