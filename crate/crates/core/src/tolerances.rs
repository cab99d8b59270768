//! Numerical tolerances shared by validation code and the test suites.
//!
//! The bands form a ladder: the more floating-point work separates two
//! quantities, the wider the band they are compared in.

/// Validation band for physical-state properties (Hermiticity, unit trace,
/// positive semidefiniteness, state-vector norm) and for triality sums that
/// travel through a whole channel-plus-measures pipeline.
pub const STATE_TOL: f64 = 1e-10;

/// Identities that are exact in real arithmetic and cost only a handful of
/// f64 operations to evaluate, e.g. closed-form channel output vs the Kraus
/// sum, or the purity route to the residual entanglement measure.
pub const EXACT_TOL: f64 = 1e-12;

/// Round trips and self-oracle comparisons: the same quantity computed twice
/// through differently ordered arithmetic.
pub const ROUND_TRIP_TOL: f64 = 1e-13;

/// Diagonal entries under pure dephasing. The Kraus operators are diagonal,
/// so populations are touched only by real multiplications that cancel.
pub const DEPHASING_DIAGONAL_TOL: f64 = 1e-14;

/// Completeness defect above which a Kraus set is rejected as non-CPTP.
/// All builders in this crate stay near 1e-16; the gap up to 1e-12 leaves
/// room for composed channels without admitting genuinely broken ones.
pub const CPTP_TOL: f64 = 1e-12;
