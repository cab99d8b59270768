//! Interferometric complementarity for two- and three-path systems.
//!
//! The crate models an n-path interferometer whose paths are marked by
//! detector states, computes the squared visibility / predictability /
//! entanglement triple (V^2, P^2, e^2) that always sums to 1 on pure
//! composites, and evolves states through amplitude- and phase-damping
//! Kraus channels to follow how coherence is traded for which-path
//! information. A discrepancy module audits published update formulas for
//! the qutrit decay cascade against the matrix-level channel.
//!
//! Layout:
//!
//! * [`matrix`]: the small dense complex-matrix kernel everything runs on,
//! * [`state`]: pure states, density matrices, detector overlaps, and the
//!   composite/partial-trace constructions,
//! * [`bloch`]: Pauli and Gell-Mann coordinates,
//! * [`measures`]: the complementarity measures and their identities,
//! * [`channels`]: Kraus channels, closed-form predictors, and the
//!   published-formula audit,
//! * [`sample`]: seeded random states for the property suites.

pub mod bloch;
pub mod channels;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod sample;
pub mod state;
pub mod tolerances;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use measures::ComplementarityTriple;
pub use state::{DensityMatrix, DetectorGram, PureState};
