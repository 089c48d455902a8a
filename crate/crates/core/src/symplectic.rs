//! Covariance-matrix machinery: the two-mode standard form, partial-transpose
//! symplectic eigenvalues, and logarithmic negativity by two independent routes.
//!
//! Conventions: quadratures are ordered Q = (x1, p1, x2, p2) with commutator
//! matrix `[Q_i, Q_j] = 2i O_ij` (O the symplectic form), and the covariance
//! matrix is normalized so the vacuum of a unit oscillator has V = identity.
//! A pure two-mode Gaussian state reduces under local symplectics to the
//! standard form `diag blocks = alpha I`, `off-diagonal = diag(c, -c)` with
//! `c = sqrt(alpha^2 - 1)`; its partially transposed CM has smallest symplectic
//! eigenvalue `nu- = alpha - c`, giving negativity `max(0, -ln nu-)`.
//!
//! The diagonal element obeys
//!
//! ```text
//! alpha^2 = 1 + sin^2(2 phi) [(h'1/h1 - h'2/h2)^2 + (sigma~1 - sigma~2)^2] / (4 sigma~1 sigma~2)
//!         = 1 + |A12|^2 / (sigma~1 sigma~2) = 1 / purity^2,
//! ```
//!
//! so `alpha * purity = 1` exactly, which ties the covariance route to the
//! reduced-kernel route and yields the closed form in the linear entropy:
//! `N = -(1/2) ln((1-s)/(1+s))` with `s = sqrt(S_L (2 - S_L))`.

use crate::error::{Error, Result};
use crate::ermakov::ModeScale;
use crate::wigner::WignerCoefficients;
use nalgebra::{Complex, Matrix4};

/// Standard-form data of a pure two-mode Gaussian covariance matrix.
#[derive(Debug, Clone, Copy)]
pub struct StandardForm {
    pub alpha: f64,
    pub c: f64,
}

/// Builds the standard form from the mixing angle and mode scales.
pub fn standard_form_alpha(phi: f64, scale1: &ModeScale, scale2: &ModeScale) -> StandardForm {
    let ss = scale1.sigma_tilde * scale2.sigma_tilde;
    let sin_2phi = (2.0 * phi).sin();
    let squeeze = sin_2phi * sin_2phi
        * ((scale1.hdot_over_h - scale2.hdot_over_h).powi(2)
            + (scale1.sigma_tilde - scale2.sigma_tilde).powi(2))
        / (4.0 * ss);
    StandardForm { alpha: (1.0 + squeeze).sqrt(), c: squeeze.sqrt() }
}

/// Smallest symplectic eigenvalue of the partially transposed standard-form CM,
/// `nu- = alpha - c`, evaluated as `1/(alpha + c)` for stability at large alpha.
pub fn ptranspose_min_eig(sf: &StandardForm) -> f64 {
    1.0 / (sf.alpha + sf.c)
}

/// Logarithmic negativity `max(0, -ln nu-)` from the standard form, in nats.
pub fn log_negativity_from_alpha(sf: &StandardForm) -> f64 {
    (sf.alpha + sf.c).ln().max(0.0)
}

/// Logarithmic negativity in terms of the linear entropy,
/// `N = -(1/2) ln((1-s)/(1+s))`, `s = sqrt(S_L (2-S_L))`, in nats.
///
/// Continuous at S_L = 0 (returns 0); returns +inf for S_L >= 1 (maximally
/// mixed limit — callers in the dynamics layer record a divergence instead).
pub fn log_negativity_from_sl(s_l: f64) -> f64 {
    if s_l == 0.0 {
        return 0.0;
    }
    if s_l >= 1.0 {
        return f64::INFINITY;
    }
    let s = (s_l * (2.0 - s_l)).sqrt();
    -0.5 * ((1.0 - s) / (1.0 + s)).ln()
}

/// 4×4 covariance matrix over Q = (x1, p1, x2, p2), vacuum-=-identity scale.
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    pub v: Matrix4<f64>,
}

/// Inverts the Wigner quadratic form into a covariance matrix.
///
/// With `W ∝ exp(-Q^T F Q)` and the unit-vacuum form F = I, the scale-free
/// inverse `V = F^{-1}` already carries the vacuum-=-identity normalization.
pub fn covariance_from_moments(wc: &WignerCoefficients) -> Result<CovarianceMatrix> {
    let f = wc.quadratic_form();
    let chol = nalgebra::Cholesky::new(f).ok_or_else(|| {
        Error::NotPositiveDefinite("Wigner quadratic form is not positive definite".into())
    })?;
    Ok(CovarianceMatrix { v: chol.inverse() })
}

fn block_det(v: &Matrix4<f64>, row: usize, col: usize) -> f64 {
    v[(row, col)] * v[(row + 1, col + 1)] - v[(row, col + 1)] * v[(row + 1, col)]
}

fn williamson_pair(v: &Matrix4<f64>) -> [f64; 2] {
    let delta = block_det(v, 0, 0) + block_det(v, 2, 2) + 2.0 * block_det(v, 0, 2);
    let disc = (delta * delta - 4.0 * v.determinant()).max(0.0).sqrt();
    [
        (0.5 * (delta - disc)).max(0.0).sqrt(),
        (0.5 * (delta + disc)).sqrt(),
    ]
}

impl CovarianceMatrix {
    /// Symplectic spectrum `[nu-, nu+]` via the two-mode invariant
    /// `nu±² = (Δ ± sqrt(Δ² - 4 det V))/2`, `Δ = det A + det B + 2 det C`.
    pub fn symplectic_eigenvalues(&self) -> [f64; 2] {
        williamson_pair(&self.v)
    }

    /// Symplectic spectrum of the partially transposed state (p2 -> -p2).
    pub fn pt_symplectic_eigenvalues(&self) -> [f64; 2] {
        let mut vt = self.v;
        for i in 0..3 {
            vt[(3, i)] = -vt[(3, i)];
            vt[(i, 3)] = -vt[(i, 3)];
        }
        williamson_pair(&vt)
    }

    /// Square root of one mode's reduced-block determinant — the standard-form
    /// alpha of that marginal.
    pub fn reduced_sqrt_det(&self, mode: usize) -> f64 {
        let offset = 2 * mode.min(1);
        block_det(&self.v, offset, offset).max(0.0).sqrt()
    }

    /// Smallest eigenvalue of the Hermitian matrix V + iO — nonnegative (up to
    /// roundoff) exactly when the state satisfies the uncertainty principle.
    pub fn physicality_min_eig(&self) -> f64 {
        let omega = Matrix4::<f64>::new(
            0.0, 1.0, 0.0, 0.0,
            -1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, -1.0, 0.0,
        );
        let m = Matrix4::from_fn(|i, j| Complex::new(self.v[(i, j)], omega[(i, j)]));
        let eig = m.symmetric_eigen();
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }
}
