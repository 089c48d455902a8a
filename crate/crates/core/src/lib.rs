//! Exact dynamics of entanglement, mixedness, and phase-space uncertainty for
//! two coupled harmonic oscillators in a static magnetic field after a sudden
//! frequency/coupling quench.
//!
//! The pipeline: [`params`] diagonalizes the coupled quadratic form into
//! normal modes; [`ermakov`] evolves each mode's scale factor through the
//! quench in closed form (cross-checked by direct integration); [`vacuum`]
//! builds the evolved two-mode Gaussian wavefunction, the reduced one-mode
//! kernel, its geometric Schmidt spectrum, and the entropy family; [`wigner`]
//! carries the same state into phase space with marginals and uncertainty
//! products; [`symplectic`] provides the covariance-matrix route to the same
//! quantities, including logarithmic negativity via partial transposition;
//! [`dynamics`] samples whole scenarios over time and across parameter
//! sweeps.
//!
//! Every closed form is falsifiable against [`oracle`], a brute-force layer
//! (grid partial trace, dense eigensolves, direct quadratures) that shares no
//! algebra with the formulas it checks; [`validate`] packages those
//! comparisons into a machine-readable suite.

pub mod dynamics;
pub mod ermakov;
pub mod error;
pub mod oracle;
pub mod params;
pub mod symplectic;
pub mod vacuum;
pub mod validate;
pub mod wigner;

pub use error::{Error, Result};
