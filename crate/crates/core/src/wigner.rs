//! Phase-space picture: the two-mode Wigner distribution of the evolved vacuum,
//! the traced one-mode marginal, second moments, and uncertainty products.
//!
//! The distribution is the Gaussian
//!
//! ```text
//! W = (1/pi^2) exp(-eta1 x1^2 - eta2 x2^2 - beta1 p1^2 - beta2 p2^2
//!                  + 2 eta12 x1 x2 + 2 beta12 p1 p2
//!                  + 2 delta1 x1 p2 + 2 delta2 x2 p1
//!                  + 2 gamma1 x1 p1 + 2 gamma2 x2 p2)
//! ```
//!
//! with all ten coefficients determined by the mixing angle and the two mode
//! scales. The signs of the momentum-odd coefficients (`delta`, `gamma`) follow
//! the transform `W = (1/pi^2) ∫ psi*(x+q) psi(x-q) exp(+2i p·q) d²q`, so the
//! symmetric cross moment of mode i carries the sign of `gamma_i`. Tracing out
//! mode 2 leaves the Schur complement of the quadratic form,
//!
//! ```text
//! W1(x, p) = (sqrt(det)/pi) exp(-Delta1 x^2 - Delta2 p^2 + 2 Delta12 x p),
//! Delta1 = eta1/(beta2 eta2 - gamma2^2),   Delta2 = beta1/(beta2 eta2 - gamma2^2),
//! Delta12 = gamma1/(beta2 eta2 - gamma2^2),
//! ```
//!
//! whose determinant `Delta1 Delta2 - Delta12^2` equals the squared marginal
//! purity. Second moments follow from the Gaussian integral table, giving the
//! uncertainty product `Dx Dp = (1/2) sqrt(1/(1-S_L)^2 + gamma_i^2)` with lower
//! bound `(1/2) sqrt(1 + gamma_i^2)`.

use crate::error::{Error, Result};
use crate::ermakov::ModeScale;
use crate::vacuum::VacuumCoefficients;
use nalgebra::Matrix4;
use std::f64::consts::PI;

/// Exponent coefficients of the two-mode Gaussian Wigner distribution.
#[derive(Debug, Clone, Copy)]
pub struct WignerCoefficients {
    pub eta1: f64,
    pub eta2: f64,
    pub eta12: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta12: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl WignerCoefficients {
    /// Wigner value at a phase-space point.
    pub fn evaluate(&self, x1: f64, x2: f64, p1: f64, p2: f64) -> f64 {
        let exponent = -self.eta1 * x1 * x1 - self.eta2 * x2 * x2
            - self.beta1 * p1 * p1
            - self.beta2 * p2 * p2
            + 2.0 * self.eta12 * x1 * x2
            + 2.0 * self.beta12 * p1 * p2
            + 2.0 * self.delta1 * x1 * p2
            + 2.0 * self.delta2 * x2 * p1
            + 2.0 * self.gamma1 * x1 * p1
            + 2.0 * self.gamma2 * x2 * p2;
        exponent.exp() / (PI * PI)
    }

    /// The symmetric 4×4 form F over Q = (x1, p1, x2, p2) with
    /// `W = (1/pi^2) exp(-Q^T F Q)`. For a pure state `det F = 1`.
    pub fn quadratic_form(&self) -> Matrix4<f64> {
        Matrix4::new(
            self.eta1, -self.gamma1, -self.eta12, -self.delta1,
            -self.gamma1, self.beta1, -self.delta2, -self.beta12,
            -self.eta12, -self.delta2, self.eta2, -self.gamma2,
            -self.delta1, -self.beta12, -self.gamma2, self.beta2,
        )
    }
}

/// Builds the ten Wigner coefficients from the mixing angle, mode scales, and
/// the Gaussian exponents.
pub fn wigner_coefficients(
    phi: f64,
    scale1: &ModeScale,
    scale2: &ModeScale,
    vc: &VacuumCoefficients,
) -> WignerCoefficients {
    let (st1, st2) = (scale1.sigma_tilde, scale2.sigma_tilde);
    let (g1, g2) = (scale1.hdot_over_h, scale2.hdot_over_h);
    let ss = st1 * st2;
    let (sin_phi, cos_phi) = phi.sin_cos();
    let (c2, s2) = (cos_phi * cos_phi, sin_phi * sin_phi);
    let sin_2phi = (2.0 * phi).sin();
    let delta = sin_2phi * (g2 * st1 - g1 * st2) / (2.0 * ss);

    WignerCoefficients {
        eta1: (ss * vc.a1.re + st2 * g1 * g1 * c2 + st1 * g2 * g2 * s2) / ss,
        eta2: (ss * vc.a2.re + st1 * g2 * g2 * c2 + st2 * g1 * g1 * s2) / ss,
        eta12: sin_2phi * (ss * (st1 - st2) + st2 * g1 * g1 - st1 * g2 * g2) / (2.0 * ss),
        beta1: vc.a2.re / ss,
        beta2: vc.a1.re / ss,
        beta12: -sin_2phi * (st1 - st2) / (2.0 * ss),
        delta1: delta,
        delta2: delta,
        gamma1: (st2 * g1 * c2 + st1 * g2 * s2) / ss,
        gamma2: (st1 * g2 * c2 + st2 * g1 * s2) / ss,
    }
}

/// Exponent coefficients of the traced one-mode marginal Wigner distribution.
#[derive(Debug, Clone, Copy)]
pub struct MarginalWigner {
    pub delta1: f64,
    pub delta2: f64,
    pub delta12: f64,
    /// The traced-out block's determinant `beta2 eta2 - gamma2^2`.
    pub norm_det: f64,
}

impl MarginalWigner {
    /// `Delta1 Delta2 - Delta12^2` — the squared marginal purity.
    pub fn determinant(&self) -> f64 {
        self.delta1 * self.delta2 - self.delta12 * self.delta12
    }

    /// Normalized marginal Wigner value.
    pub fn evaluate(&self, x: f64, p: f64) -> f64 {
        let exponent =
            -self.delta1 * x * x - self.delta2 * p * p + 2.0 * self.delta12 * x * p;
        self.determinant().sqrt() * exponent.exp() / PI
    }
}

/// Integrates mode 2 out of the two-mode distribution.
pub fn marginal_wigner(wc: &WignerCoefficients) -> MarginalWigner {
    let norm_det = wc.beta2 * wc.eta2 - wc.gamma2 * wc.gamma2;
    MarginalWigner {
        delta1: wc.eta1 / norm_det,
        delta2: wc.beta1 / norm_det,
        delta12: wc.gamma1 / norm_det,
        norm_det,
    }
}

/// Second moments `(⟨x²⟩, ⟨p²⟩, ⟨xp⟩_sym)` of a marginal; first moments vanish.
pub fn moments(mw: &MarginalWigner) -> (f64, f64, f64) {
    let scale = 2.0 * mw.determinant();
    (mw.delta2 / scale, mw.delta1 / scale, mw.delta12 / scale)
}

/// Uncertainty data for one mode. `dx`/`dp` are available only when built from
/// moments; the closed form in `(S_L, gamma_i)` fixes their product, not the split.
#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub dx: Option<f64>,
    pub dp: Option<f64>,
    pub product: f64,
    pub u: f64,
    pub lower_bound: f64,
}

/// Closed-form uncertainty product `Dx Dp = (1/2) sqrt(1/(1-S_L)^2 + gamma_i^2)`
/// with `U = (2 Dx Dp)^2` and lower bound `(1/2) sqrt(1 + gamma_i^2)`.
///
/// Rejects `S_L >= 1` (hyperbolic blow-up; the caller records a divergence
/// instead of a value).
pub fn uncertainty_product(s_l: f64, gamma_i: f64) -> Result<UncertaintyReport> {
    if !(s_l >= 0.0) {
        return Err(Error::InvalidParameter(format!("linear entropy {s_l} < 0")));
    }
    if s_l >= 1.0 {
        return Err(Error::DivergedState(s_l));
    }
    let inv = 1.0 / (1.0 - s_l);
    let u = inv * inv + gamma_i * gamma_i;
    Ok(UncertaintyReport {
        dx: None,
        dp: None,
        product: 0.5 * u.sqrt(),
        u,
        lower_bound: 0.5 * (1.0 + gamma_i * gamma_i).sqrt(),
    })
}

/// Uncertainty data from explicit marginal moments.
pub fn uncertainty_from_moments(x2: f64, p2: f64, gamma_i: f64) -> UncertaintyReport {
    let (dx, dp) = (x2.sqrt(), p2.sqrt());
    let product = dx * dp;
    UncertaintyReport {
        dx: Some(dx),
        dp: Some(dp),
        product,
        u: 4.0 * product * product,
        lower_bound: 0.5 * (1.0 + gamma_i * gamma_i).sqrt(),
    }
}
