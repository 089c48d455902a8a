//! System parameters, the sudden-quench protocol, and the normal-mode map.
//!
//! Two oscillators with bare frequencies `omega1`, `omega2`, bilinear coupling `J`,
//! in a static magnetic field entering only through the cyclotron frequency
//! `omega_c`. A global rotation by the mixing angle `phi` decouples the quadratic
//! form into normal modes with field-free frequencies squared
//!
//! ```text
//! sigma_{1,2}^2 = (omega1^2 + omega2^2)/2 +- kappa~ * sqrt(J^2 + d^2),
//! d = (omega1^2 - omega2^2)/2,   kappa~ = sign(omega1^2 - omega2^2)  (+1 at equality)
//! ```
//!
//! The field shifts every mode rigidly: `sigma_j^2(B) = sigma_j^2(0) + omega_c^2`.
//! The sign convention `kappa~` keeps mode 1 attached to `omega1` as `J -> 0`.

use crate::error::{Error, Result};

/// Oscillator parameters at one instant: bare frequencies, coupling, and the
/// static cyclotron frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub omega1: f64,
    pub omega2: f64,
    pub j: f64,
    pub omega_c: f64,
}

impl SystemParams {
    /// Validate and build: frequencies positive, coupling and field non-negative,
    /// everything finite.
    pub fn new(omega1: f64, omega2: f64, j: f64, omega_c: f64) -> Result<Self> {
        for (name, v) in [
            ("omega1", omega1),
            ("omega2", omega2),
            ("J", j),
            ("omega_c", omega_c),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v} is not finite")));
            }
        }
        if omega1 <= 0.0 || omega2 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "frequencies must be positive (omega1 = {omega1}, omega2 = {omega2})"
            )));
        }
        if j < 0.0 {
            return Err(Error::InvalidParameter(format!("coupling J = {j} must be >= 0")));
        }
        if omega_c < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "cyclotron frequency omega_c = {omega_c} must be >= 0"
            )));
        }
        Ok(Self { omega1, omega2, j, omega_c })
    }
}

/// Sudden quench: `initial` parameters hold at t = 0, `final_` for all t > 0.
/// The magnetic field is static, so both legs carry the same `omega_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchSpec {
    pub initial: SystemParams,
    pub final_: SystemParams,
}

impl QuenchSpec {
    pub fn new(initial: SystemParams, final_: SystemParams) -> Result<Self> {
        if initial.omega_c != final_.omega_c {
            return Err(Error::InconsistentQuench(format!(
                "omega_c changes across the quench ({} -> {}) but the field is static",
                initial.omega_c, final_.omega_c
            )));
        }
        Ok(Self { initial, final_ })
    }

    pub fn omega_c(&self) -> f64 {
        self.initial.omega_c
    }
}

/// Field-free normal-mode frequencies squared, the branch sign, and the mixing angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    /// Mode-1 frequency squared at B = 0 (tracks `omega1^2` as J -> 0). May be
    /// negative for strong coupling `J > omega1*omega2` (inverted mode).
    pub sigma1_sq: f64,
    /// Mode-2 frequency squared at B = 0; always positive.
    pub sigma2_sq: f64,
    /// Branch sign `sign(omega1^2 - omega2^2)`, +1 at equality.
    pub kappa_tilde: f64,
    /// Mixing angle, principal branch `phi` in (-pi/4, pi/4].
    pub phi: f64,
}

impl NormalModes {
    /// Mode frequencies squared including the magnetic shift `+ omega_c^2`.
    pub fn shifted(&self, omega_c: f64) -> [f64; 2] {
        let wc2 = omega_c * omega_c;
        [self.sigma1_sq + wc2, self.sigma2_sq + wc2]
    }
}

/// Mixing angle of the normal-mode rotation: `tan(2 phi) = 2J / (omega1^2 - omega2^2)`,
/// with `2 phi` on the principal branch `(-pi/2, pi/2]`. Degenerate cases:
/// `phi = pi/4` for equal frequencies with J > 0, and `phi = 0` for J = 0.
pub fn mixing_angle(p: &SystemParams) -> f64 {
    let d = p.omega1 * p.omega1 - p.omega2 * p.omega2;
    if p.j == 0.0 {
        0.0
    } else if d == 0.0 {
        std::f64::consts::FRAC_PI_4
    } else {
        0.5 * (2.0 * p.j / d).atan()
    }
}

/// Diagonalize the field-free quadratic form. The branch sign `kappa_tilde` is
/// chosen so the labels connect continuously to the bare oscillators: at J = 0,
/// `sigma1_sq = omega1^2` and `sigma2_sq = omega2^2` exactly.
pub fn normal_modes(p: &SystemParams) -> NormalModes {
    let w1sq = p.omega1 * p.omega1;
    let w2sq = p.omega2 * p.omega2;
    let mean = 0.5 * (w1sq + w2sq);
    let d = 0.5 * (w1sq - w2sq);
    let disc = p.j.hypot(d);
    let kappa_tilde = if d >= 0.0 { 1.0 } else { -1.0 };
    NormalModes {
        sigma1_sq: mean + kappa_tilde * disc,
        sigma2_sq: mean - kappa_tilde * disc,
        kappa_tilde,
        phi: mixing_angle(p),
    }
}

/// Parameters in force at time `t` of a sudden quench: the initial set exactly at
/// t = 0, the final set for every t > 0. Negative times are rejected.
pub fn params_at(q: &QuenchSpec, t: f64) -> Result<SystemParams> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    Ok(if t == 0.0 { q.initial } else { q.final_ })
}
