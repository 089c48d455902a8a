//! Evolved-vacuum Gaussian data: wavefunction exponents, the traced one-mode
//! kernel, the Schmidt spectrum, and entropy measures.
//!
//! In the rotated frame the evolved vacuum is a product of squeezed modes with
//! complex widths `rho_j = sigma~_j - i h'_j/h_j`; rotating back by the mixing
//! angle phi gives the physical-coordinate exponents
//!
//! ```text
//! psi(x1, x2) ∝ exp(-(A1 x1^2 + A2 x2^2)/2 + A12 x1 x2),
//! A1 = rho1 cos^2(phi) + rho2 sin^2(phi),
//! A2 = rho2 cos^2(phi) + rho1 sin^2(phi),
//! A12 = sin(phi) cos(phi) (rho1 - rho2),
//! ```
//!
//! with the exact identity `Re(A1) Re(A2) - Re(A12)^2 = sigma~1 sigma~2`.
//! Tracing out mode 2 yields a Gaussian kernel
//!
//! ```text
//! rho_A(x, x') = sqrt(2 alpha1 / pi) exp(-(D1 x^2 + conj(D1) x'^2)/2 + D12 x x' / 2),
//! D1  = A1 - A12^2 / (2 Re A2) = 2 (alpha1 + alpha3) - 2 i alpha2,
//! D12 = |A12|^2 / Re A2       = 4 alpha3,
//! ```
//!
//! whose spectrum is geometric, `p_n = (1 - gamma) gamma^n`, with eigenfunctions
//! that are harmonic-oscillator states of frequency `kappa` carrying a quadratic
//! phase `exp(i alpha2 x^2)`. The shape parameters
//!
//! ```text
//! kappa = 2 sqrt(alpha1 (alpha1 + 2 alpha3)),
//! gamma = alpha3 / (alpha1 + alpha3 + kappa/2)
//! ```
//!
//! depend only on the ratio alpha3/alpha1, so they are insensitive to the overall
//! factor-of-two scale of the D-decomposition; the trace identity
//! `D1 + conj(D1) - D12 = 2 sigma~1 sigma~2 / Re A2` pins that scale and is what
//! the decomposition above satisfies. All entropies are in nats.

use crate::error::{Error, Result};
use crate::ermakov::ModeScale;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Exponent coefficients of the two-mode vacuum Gaussian, together with the
/// mixing angle and per-mode scales they were built from.
#[derive(Debug, Clone, Copy)]
pub struct VacuumCoefficients {
    pub a1: Complex64,
    pub a2: Complex64,
    pub a12: Complex64,
    pub phi: f64,
    pub scale1: ModeScale,
    pub scale2: ModeScale,
}

impl VacuumCoefficients {
    /// Product sigma~1 sigma~2 — the determinant of the real part of the
    /// exponent matrix, and the square of the wavefunction normalization.
    pub fn sigma_tilde_product(&self) -> f64 {
        self.scale1.sigma_tilde * self.scale2.sigma_tilde
    }

    /// Relative residual of `Re(A1) Re(A2) - Re(A12)^2 = sigma~1 sigma~2`.
    pub fn identity_residual(&self) -> f64 {
        let lhs = self.a1.re * self.a2.re - self.a12.re * self.a12.re;
        let rhs = self.sigma_tilde_product();
        ((lhs - rhs) / rhs).abs()
    }

    /// Normalized wavefunction value at `(x1, x2)`.
    pub fn wavefunction(&self, x1: f64, x2: f64) -> Complex64 {
        let norm = (self.sigma_tilde_product() / (PI * PI)).powf(0.25);
        let exponent = -0.5 * (self.a1 * x1 * x1 + self.a2 * x2 * x2) + self.a12 * x1 * x2;
        norm * exponent.exp()
    }
}

/// Builds the three Gaussian exponents from the mixing angle and mode scales.
pub fn vacuum_coefficients(phi: f64, scale1: &ModeScale, scale2: &ModeScale) -> VacuumCoefficients {
    let (s, c) = phi.sin_cos();
    let (c2, s2) = (c * c, s * s);
    VacuumCoefficients {
        a1: scale1.rho * c2 + scale2.rho * s2,
        a2: scale2.rho * c2 + scale1.rho * s2,
        a12: (scale1.rho - scale2.rho) * (s * c),
        phi,
        scale1: *scale1,
        scale2: *scale2,
    }
}

/// Traced one-mode density kernel in exponent form plus its spectral shape
/// parameters. `d1`/`d12` define the kernel itself; `alpha1..alpha3` are the
/// scaled building blocks (`d1 = 2(alpha1+alpha3) - 2i alpha2`, `d12 = 4 alpha3`);
/// `kappa` is the eigenfunction frequency and `gamma` the geometric-spectrum ratio.
#[derive(Debug, Clone, Copy)]
pub struct ReducedKernel {
    pub d1: Complex64,
    pub d12: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub kappa: f64,
    pub gamma: f64,
}

impl ReducedKernel {
    /// Normalization constant `sqrt(2 alpha1 / pi)` (unit trace).
    pub fn prefactor(&self) -> f64 {
        (2.0 * self.alpha1 / PI).sqrt()
    }

    /// Kernel value rho_A(x, x').
    pub fn evaluate(&self, x: f64, xp: f64) -> Complex64 {
        let exponent = -0.5 * (self.d1 * x * x + self.d1.conj() * xp * xp)
            + Complex64::new(0.5 * self.d12 * x * xp, 0.0);
        self.prefactor() * exponent.exp()
    }

    /// Marginal purity `sqrt(alpha1 / (alpha1 + 2 alpha3))`, identical to the
    /// geometric-spectrum value `(1 - gamma) / (1 + gamma)`.
    pub fn purity(&self) -> f64 {
        (self.alpha1 / (self.alpha1 + 2.0 * self.alpha3)).sqrt()
    }
}

/// Traces out mode 2 and returns the reduced-kernel data.
pub fn reduced_kernel(vc: &VacuumCoefficients) -> ReducedKernel {
    let re_a2 = vc.a2.re;
    let d1 = vc.a1 - vc.a12 * vc.a12 / (2.0 * re_a2);
    let d12 = vc.a12.norm_sqr() / re_a2;

    let (s1, s2) = (vc.scale1, vc.scale2);
    let (sin_phi, cos_phi) = vc.phi.sin_cos();
    let (c2, s2sq) = (cos_phi * cos_phi, sin_phi * sin_phi);
    let alpha1 = s1.sigma_tilde * s2.sigma_tilde / (2.0 * re_a2);
    let alpha2 =
        (s1.hdot_over_h * s2.sigma_tilde * c2 + s2.hdot_over_h * s1.sigma_tilde * s2sq)
            / (2.0 * re_a2);
    let alpha3 = 0.25 * s2sq * c2
        * ((s1.sigma_tilde - s2.sigma_tilde).powi(2) + (s1.hdot_over_h - s2.hdot_over_h).powi(2))
        / re_a2;

    let kappa = 2.0 * (alpha1 * (alpha1 + 2.0 * alpha3)).sqrt();
    let gamma = alpha3 / ((alpha1 + alpha3) + 0.5 * kappa);
    ReducedKernel { d1, d12, alpha1, alpha2, alpha3, kappa, gamma }
}

/// Marginal purity straight from the vacuum coefficients:
/// `Tr(rho_A^2) = sqrt(sigma~1 sigma~2 / (sigma~1 sigma~2 + |A12|^2))`.
pub fn marginal_purity(vc: &VacuumCoefficients) -> f64 {
    let ss = vc.sigma_tilde_product();
    (ss / (ss + vc.a12.norm_sqr())).sqrt()
}

/// Schmidt parameter of a static pair of modes mixed at 45 degrees, in closed
/// form in the two mode frequencies.
pub fn static_schmidt_gamma(sigma1: f64, sigma2: f64) -> f64 {
    let root = (sigma1 * sigma2).sqrt();
    (sigma1 - sigma2).powi(2)
        / ((sigma1 + sigma2).powi(2) + 4.0 * root * (sigma1 + sigma2 + root))
}

/// Geometric spectrum p_n = (1 - gamma) gamma^n for n = 0..=n_max.
pub fn schmidt_spectrum(gamma: f64, n_max: usize) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidSchmidt(gamma));
    }
    let mut p = 1.0 - gamma;
    Ok((0..=n_max)
        .map(|_| {
            let current = p;
            p *= gamma;
            current
        })
        .collect())
}

/// von Neumann entropy of the geometric spectrum,
/// `S = -ln(1 - gamma) - gamma ln(gamma) / (1 - gamma)`, in nats.
///
/// Continuous at gamma = 0 (returns exactly 0); returns +inf for gamma >= 1
/// (maximally mixed limit).
pub fn von_neumann(gamma: f64) -> f64 {
    if gamma == 0.0 {
        return 0.0;
    }
    if gamma >= 1.0 {
        return f64::INFINITY;
    }
    -(1.0 - gamma).ln() - gamma / (1.0 - gamma) * gamma.ln()
}

/// Closed form expressing the von Neumann entropy directly in the linear
/// entropy: `-ln((1-S_L)/(1+S_L)) - (2 S_L/(1-S_L)) ln(2 S_L/(1+S_L))`.
///
/// This corresponds to substituting gamma = 2 S_L / (1 + S_L) into
/// [`von_neumann`], which is NOT the inverse of S_L = 2 gamma / (1 + gamma);
/// the two routes therefore disagree for S_L > 0 (by about 0.35 nats at
/// S_L ≈ 0.096). The spectral route [`von_neumann`] matches the brute-force
/// kernel eigensolve; this form is retained for comparison only and feeds no
/// dynamics output. The `validate` pipeline measures the gap explicitly.
pub fn von_neumann_from_linear(s_l: f64) -> f64 {
    if s_l == 0.0 {
        return 0.0;
    }
    -((1.0 - s_l) / (1.0 + s_l)).ln()
        - (2.0 * s_l / (1.0 - s_l)) * (2.0 * s_l / (1.0 + s_l)).ln()
}

/// Bastiaans–Tsallis and Rényi entropies of order nu for the geometric
/// spectrum, via `Tr rho^nu = (1 - gamma)^nu / (1 - gamma^nu)`.
///
/// Returns `(S_BT, S_R)`. Order 2 reproduces the linear entropy; nu -> 1
/// recovers the von Neumann entropy (excluded here — use [`von_neumann`]).
pub fn generalized_entropies(gamma: f64, nu: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidSchmidt(gamma));
    }
    if !(nu > 0.0) || nu == 1.0 {
        return Err(Error::InvalidEntropyOrder(nu));
    }
    let trace_nu = (1.0 - gamma).powf(nu) / (1.0 - gamma.powf(nu));
    Ok(((1.0 - trace_nu) / (nu - 1.0), trace_nu.ln() / (1.0 - nu)))
}

/// Physicist's Hermite polynomial H_n by the forward recurrence
/// `H_{n+1} = 2 xi H_n - 2 n H_{n-1}` (stable for the n <= 20 range used here).
pub fn hermite(n: usize, xi: f64) -> f64 {
    let (mut prev, mut current) = (1.0, 2.0 * xi);
    match n {
        0 => prev,
        1 => current,
        _ => {
            for k in 1..n {
                (prev, current) = (current, 2.0 * xi * current - 2.0 * k as f64 * prev);
            }
            current
        }
    }
}

/// Normalized eigenfunction of the reduced kernel:
/// `chi_n(x) = (kappa/pi)^{1/4} H_n(sqrt(kappa) x) exp(-kappa x^2/2 + i alpha2 x^2) / sqrt(2^n n!)`.
pub fn chi_eigenfunction(n: usize, kappa: f64, alpha2: f64, x: f64) -> Complex64 {
    debug_assert!(kappa > 0.0 && n <= 20);
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let norm = (kappa / PI).powf(0.25) / (2.0f64.powi(n as i32) * factorial).sqrt();
    let xi = kappa.sqrt() * x;
    let phase = Complex64::new(-0.5 * kappa * x * x, alpha2 * x * x).exp();
    norm * hermite(n, xi) * phase
}

/// Scalar mixedness/entanglement summary of one reduced state.
#[derive(Debug, Clone, Copy)]
pub struct EntropyReport {
    pub purity: f64,
    pub s_l: f64,
    pub gamma: f64,
    pub s_von: f64,
    pub negativity: f64,
}

/// Assembles purity, linear entropy, Schmidt parameter, von Neumann entropy,
/// and logarithmic negativity from a reduced kernel.
pub fn entropy_report(kernel: &ReducedKernel) -> EntropyReport {
    let purity = kernel.purity();
    let s_l = 1.0 - purity;
    EntropyReport {
        purity,
        s_l,
        gamma: kernel.gamma,
        s_von: von_neumann(kernel.gamma),
        negativity: crate::symplectic::log_negativity_from_sl(s_l),
    }
}
