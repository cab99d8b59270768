//! Pauli and Gell-Mann coordinates for qubit and qutrit states.
//!
//! A qubit state is `rho = rho0*I + rho1*sx + rho2*sy + rho3*sz` with
//! `rho0 = 1/2`; a qutrit state is `rho = I/3 + (1/sqrt(3)) * sum_i s_i li`
//! with the eight Gell-Mann matrices `li`. Since `Tr(li * lj) = 2 delta_ij`,
//! the coordinates are read off as `s_i = (sqrt(3)/2) * Tr(rho * li)`.
//!
//! The index convention follows the standard Gell-Mann ordering: (l1, l2)
//! act on the path pair (1,2), (l4, l5) on (1,3), (l6, l7) on (2,3), and
//! (l3, l8) are diagonal. Coherence measures live on the six off-diagonal
//! coordinates, population measures on the two diagonal ones.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices (sx, sy, sz).
pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    let sx = ComplexMatrix::from_fn(2, 2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) });
    let mut sy = ComplexMatrix::zeros(2, 2);
    sy.set(0, 1, c(0.0, -1.0));
    sy.set(1, 0, c(0.0, 1.0));
    let sz = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    [sx, sy, sz]
}

/// The eight Gell-Mann matrices in standard order (l1 through l8).
pub fn gell_mann_matrices() -> [ComplexMatrix; 8] {
    // Off-diagonal pairs: a real and an imaginary generator per path pair.
    let real_pair = |p: usize, q: usize| {
        let mut m = ComplexMatrix::zeros(3, 3);
        m.set(p, q, c(1.0, 0.0));
        m.set(q, p, c(1.0, 0.0));
        m
    };
    let imag_pair = |p: usize, q: usize| {
        let mut m = ComplexMatrix::zeros(3, 3);
        m.set(p, q, c(0.0, -1.0));
        m.set(q, p, c(0.0, 1.0));
        m
    };
    let l3 = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
    let l8 = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]).scale(1.0 / SQRT3);
    [
        real_pair(0, 1),
        imag_pair(0, 1),
        l3,
        real_pair(0, 2),
        imag_pair(0, 2),
        real_pair(1, 2),
        imag_pair(1, 2),
        l8,
    ]
}

/// Qubit coordinates in the Pauli basis. The identity coefficient is fixed
/// at 1/2 by the unit trace and is not stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
}

impl BlochVector {
    /// Coefficient of the identity, fixed by normalization.
    pub const RHO0: f64 = 0.5;

    /// Squared Bloch radius; at most 1/4 for a physical state.
    pub fn norm_sqr(&self) -> f64 {
        self.rho1 * self.rho1 + self.rho2 * self.rho2 + self.rho3 * self.rho3
    }
}

/// Qutrit coordinates in the Gell-Mann basis; `s[i]` holds the coefficient
/// of matrix l(i+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GellMannVector {
    pub s: [f64; 8],
}

impl GellMannVector {
    /// Sum of all eight squared coordinates; determines the purity through
    /// `Tr(rho^2) = 1/3 + (2/3) * norm_sqr`.
    pub fn norm_sqr(&self) -> f64 {
        self.s.iter().map(|v| v * v).sum()
    }

    /// Squared length of the six off-diagonal (coherence) coordinates:
    /// s1, s2, s4, s5, s6, s7.
    pub fn coherence_norm_sqr(&self) -> f64 {
        [0, 1, 3, 4, 5, 6]
            .iter()
            .map(|&i| self.s[i] * self.s[i])
            .sum()
    }

    /// Squared length of the two diagonal (population) coordinates: s3, s8.
    pub fn population_norm_sqr(&self) -> f64 {
        self.s[2] * self.s[2] + self.s[7] * self.s[7]
    }
}

/// Reads the Pauli coordinates off a qubit state.
pub fn pauli_decompose(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            context: "Pauli decomposition",
            dim: rho.dim(),
        });
    }
    let lower = rho.entry(1, 0);
    Ok(BlochVector {
        rho1: lower.re,
        rho2: lower.im,
        rho3: 0.5 * (rho.entry(0, 0).re - rho.entry(1, 1).re),
    })
}

/// Rebuilds the qubit state from Pauli coordinates. Coordinates outside the
/// Bloch ball are rejected by the density-matrix validation with the
/// offending minimum eigenvalue.
pub fn pauli_reconstruct(b: &BlochVector) -> Result<DensityMatrix> {
    let matrix = ComplexMatrix::from_rows(vec![
        vec![c(0.5 + b.rho3, 0.0), c(b.rho1, -b.rho2)],
        vec![c(b.rho1, b.rho2), c(0.5 - b.rho3, 0.0)],
    ])?;
    DensityMatrix::new(matrix)
}

/// Reads the Gell-Mann coordinates off a qutrit state:
/// `s_i = (sqrt(3)/2) * Tr(rho * li)`.
pub fn gellmann_decompose(rho: &DensityMatrix) -> Result<GellMannVector> {
    if rho.dim() != 3 {
        return Err(Error::UnsupportedDimension {
            context: "Gell-Mann decomposition",
            dim: rho.dim(),
        });
    }
    let mut s = [0.0; 8];
    for (i, l) in gell_mann_matrices().iter().enumerate() {
        s[i] = 0.5 * SQRT3 * rho.matrix().mul(l).expect("3x3 by construction").trace().re;
    }
    Ok(GellMannVector { s })
}

/// Rebuilds the qutrit state `I/3 + (1/sqrt(3)) * sum_i s_i li`. Coordinate
/// vectors that leave the state space are rejected by validation.
pub fn gellmann_reconstruct(g: &GellMannVector) -> Result<DensityMatrix> {
    let mut matrix = ComplexMatrix::identity(3).scale(1.0 / 3.0);
    for (i, l) in gell_mann_matrices().iter().enumerate() {
        matrix = matrix.add(&l.scale(g.s[i] / SQRT3))?;
    }
    DensityMatrix::new(matrix)
}
