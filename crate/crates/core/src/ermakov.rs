//! Scale-factor dynamics: one Ermakov equation per normal mode.
//!
//! Each mode's width is carried by a scale factor h(t) obeying
//!
//! ```text
//! h'' + sigma^2(t, B) h = sigma^2(0, B) / h^3,    h(0) = 1,  h'(0) = 0,
//! ```
//!
//! with `sigma^2(t, B) = sigma^2(t, 0) + omega_c^2`. For a sudden quench
//! `sigma_i^2 -> sigma_f^2` the solution is closed-form:
//!
//! ```text
//! h^2(t) = a cos(2 sqrt(z_f) t) + b,   z = sigma^2 + omega_c^2,
//! a = (z_f - z_i) / (2 z_f),           b = (z_f + z_i) / (2 z_f),
//! ```
//!
//! which continues to `cosh`/`sinh` when `z_f < 0` (inverted post-quench mode:
//! exponential growth instead of bounded oscillation). A fixed-step RK4
//! integrator covers arbitrary frequency profiles and doubles as an independent
//! check on the closed form.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Threshold below which `|sigma_f^2 + omega_c^2|` makes the closed form degenerate.
pub const DEGENERATE_Z_TOLERANCE: f64 = 1e-12;

/// Positivity guard for the numeric integrator.
pub const H_COLLAPSE_GUARD: f64 = 1e-9;

/// Cap on the hyperbolic argument `2 sqrt(-z_f) t`; beyond it every reported
/// quantity is already saturated, and cosh/sinh would overflow.
const HYPERBOLIC_ARG_CAP: f64 = 600.0;

/// Scale factor, its velocity, and the initial-time frequency squared
/// `sigma^2(0, B)` that fixes the Ermakov invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErmakovState {
    pub h: f64,
    pub hdot: f64,
    pub sigma0_sq: f64,
}

/// Per-mode ingredients of the evolved Gaussian: the rescaled frequency
/// `sigma~ = sigma(0,B)/h^2`, the logarithmic velocity `h'/h`, and their complex
/// combination `rho = sigma~ - i h'/h` entering the wavefunction exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeScale {
    pub sigma_tilde: f64,
    pub hdot_over_h: f64,
    pub rho: Complex64,
}

impl ModeScale {
    pub fn from_state(s: &ErmakovState) -> Self {
        let sigma_tilde = s.sigma0_sq.sqrt() / (s.h * s.h);
        let hdot_over_h = s.hdot / s.h;
        ModeScale {
            sigma_tilde,
            hdot_over_h,
            rho: Complex64::new(sigma_tilde, -hdot_over_h),
        }
    }
}

/// Closed-form quench solution for one mode.
///
/// `sigma_i_sq` and `sigma_f_sq` are the field-free mode frequencies squared
/// before and after the quench; the magnetic shift `omega_c^2` is added here.
/// Fails if the pre-quench mode has no ground state (`z_i <= 0`) or the
/// post-quench frequency is degenerate (`|z_f|` below tolerance).
pub fn quench_h(sigma_i_sq: f64, sigma_f_sq: f64, omega_c: f64, t: f64) -> Result<ErmakovState> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    let wc2 = omega_c * omega_c;
    let z_i = sigma_i_sq + wc2;
    let z_f = sigma_f_sq + wc2;
    if z_i <= 0.0 {
        return Err(Error::InvalidInitialState(z_i));
    }
    if z_f.abs() < DEGENERATE_Z_TOLERANCE {
        return Err(Error::DegenerateQuench(z_f.abs()));
    }

    let a = (z_f - z_i) / (2.0 * z_f);
    let b = (z_f + z_i) / (2.0 * z_f);
    let (h_sq, dh_sq) = if z_f > 0.0 {
        let r = z_f.sqrt();
        (
            a * (2.0 * r * t).cos() + b,
            -2.0 * a * r * (2.0 * r * t).sin(),
        )
    } else {
        let r = (-z_f).sqrt();
        let u = (2.0 * r * t).min(HYPERBOLIC_ARG_CAP);
        (a * u.cosh() + b, 2.0 * a * r * u.sinh())
    };
    let h = h_sq.sqrt();
    Ok(ErmakovState {
        h,
        hdot: dh_sq / (2.0 * h),
        sigma0_sq: z_i,
    })
}

/// Fixed-step RK4 integration of the Ermakov equation along `t_grid`.
///
/// `sigma_sq_profile` is the in-evolution frequency squared `sigma^2(t, B)`,
/// evaluated as the dynamics sees it for t > 0; for a sudden quench pass the
/// post-quench value (the pre-quench data enters only through `sigma0_sq` and the
/// (h, h') = (1, 0) initial conditions). The grid must start at 0 and be strictly
/// increasing; one RK4 step is taken per interval, so the caller controls accuracy
/// through the grid spacing.
pub fn integrate_ermakov(
    sigma_sq_profile: impl Fn(f64) -> f64,
    sigma0_sq: f64,
    t_grid: &[f64],
) -> Result<Vec<ErmakovState>> {
    if sigma0_sq <= 0.0 {
        return Err(Error::InvalidInitialState(sigma0_sq));
    }
    match t_grid.first() {
        None => return Ok(Vec::new()),
        Some(&t0) if t0 != 0.0 => {
            return Err(Error::InvalidParameter(format!(
                "integration grid must start at 0, got {t0}"
            )))
        }
        _ => {}
    }

    let accel = |t: f64, h: f64, v: f64| -> [f64; 2] {
        [v, -sigma_sq_profile(t) * h + sigma0_sq / (h * h * h)]
    };

    let mut out = Vec::with_capacity(t_grid.len());
    let (mut h, mut v) = (1.0, 0.0);
    out.push(ErmakovState { h, hdot: v, sigma0_sq });

    for w in t_grid.windows(2) {
        let (t, dt) = (w[0], w[1] - w[0]);
        if dt <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "integration grid must be strictly increasing near t = {t}"
            )));
        }
        let k1 = accel(t, h, v);
        let k2 = accel(t + 0.5 * dt, h + 0.5 * dt * k1[0], v + 0.5 * dt * k1[1]);
        let k3 = accel(t + 0.5 * dt, h + 0.5 * dt * k2[0], v + 0.5 * dt * k2[1]);
        let k4 = accel(t + dt, h + dt * k3[0], v + dt * k3[1]);
        h += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        v += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        if !(h > H_COLLAPSE_GUARD) {
            return Err(Error::ScaleCollapse { t: w[1], h });
        }
        out.push(ErmakovState { h, hdot: v, sigma0_sq });
    }
    Ok(out)
}

/// Residual of the Ermakov equation, `|h'' + sigma^2 h - sigma0^2 / h^3|`, with
/// the second derivative estimated by the caller (e.g. a central finite-difference
/// stencil over the sampled trajectory).
pub fn ermakov_residual(state: &ErmakovState, hddot_estimate: f64, sigma_sq: f64) -> f64 {
    (hddot_estimate + sigma_sq * state.h - state.sigma0_sq / (state.h * state.h * state.h)).abs()
}
