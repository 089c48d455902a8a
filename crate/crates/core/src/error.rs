//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by parameter validation, integration, and the numeric oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A system parameter violated its domain (non-positive frequency, negative
    /// coupling, negative cyclotron frequency, non-finite input, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The two legs of a quench disagree where they must not (e.g. the static
    /// magnetic field changed across the quench).
    #[error("inconsistent quench: {0}")]
    InconsistentQuench(String),

    /// Evolution was requested at a negative time; the quench is defined on t >= 0.
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    /// The pre-quench mode frequency squared (including the magnetic shift) is not
    /// positive, so no initial ground state exists for that mode.
    #[error("invalid initial state: sigma_i^2 + omega_c^2 = {0} must be positive")]
    InvalidInitialState(f64),

    /// The post-quench mode frequency squared (including the magnetic shift) is too
    /// close to zero; the closed-form solution degenerates there.
    #[error("degenerate quench: |sigma_f^2 + omega_c^2| = {0:e} below threshold")]
    DegenerateQuench(f64),

    /// The numeric integrator drove the scale factor below its positivity guard.
    #[error("scale factor collapsed (h = {h:e} at t = {t}); integration aborted")]
    ScaleCollapse { t: f64, h: f64 },

    /// A Schmidt parameter outside [0, 1) was supplied to a spectral routine.
    #[error("Schmidt parameter gamma = {0} outside [0, 1)")]
    InvalidSchmidt(f64),

    /// An entropy order outside the valid domain (nu > 0, nu != 1).
    #[error("entropy order nu = {0} outside its domain (nu > 0, nu != 1)")]
    InvalidEntropyOrder(f64),

    /// The marginal linear entropy reached 1; the reduced state has diverged and
    /// inverse-purity quantities are undefined.
    #[error("linear entropy S_L = {0} >= 1: reduced state diverged")]
    DivergedState(f64),

    /// A matrix that must be positive definite was not.
    #[error("matrix not positive definite: {0}")]
    NotPositiveDefinite(String),

    /// Doubling the quadrature grid moved the result by more than the stability
    /// threshold; the grid parameters do not resolve the state.
    #[error("insufficient oracle grid: refinement shifted result by {shift:e} (threshold {threshold:e})")]
    InsufficientGrid { shift: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
