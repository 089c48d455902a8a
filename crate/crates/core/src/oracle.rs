//! Brute-force verification: discretized reduced kernel, spectral solve,
//! numeric Wigner transform, and quadrature moments.
//!
//! Nothing here reuses the closed forms under test. The reduced kernel is
//! assembled by numeric partial trace of the two-mode wavefunction,
//! `K[i][j] = dx * sum_k psi(x_i, y_k) conj(psi(x_j, y_k)) dy`, its purity and
//! spectrum come from dense linear algebra, the Wigner values from direct
//! quadrature of the defining integral, and the moments from derivative
//! quadratures of the wavefunction itself. Agreement with the closed-form
//! modules is the arbitration standard for every formula in this crate.
//!
//! Quadrature is plain trapezoid-family summation on uniform grids: for
//! Gaussians that decay to below machine epsilon inside the window (the
//! automatic sizing guarantees this) the end-point weights are immaterial and
//! uniform weights are spectrally accurate.

use crate::error::{Error, Result};
use crate::vacuum::{chi_eigenfunction, VacuumCoefficients};
use crate::wigner::WignerCoefficients;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Refinement shift above which a grid is declared insufficient.
pub const GRID_SHIFT_TOLERANCE: f64 = 1e-6;

/// Uniform 1-D quadrature grid.
#[derive(Debug, Clone, Copy)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid range [{x_min}, {x_max}] is not a finite interval"
            )));
        }
        if n_points < 64 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 64 points, got {n_points}"
            )));
        }
        Ok(Grid1D { x_min, x_max, n_points })
    }

    /// Symmetric window sized to a Gaussian of width parameter
    /// `sigma_tilde_min` (position spread `1/sqrt(sigma~)`): half-span
    /// `span_factor / sqrt(sigma_tilde_min)`, at least six standard deviations.
    pub fn auto(sigma_tilde_min: f64, span_factor: f64, n_points: usize) -> Result<Self> {
        if !(sigma_tilde_min > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "nonpositive width parameter {sigma_tilde_min}"
            )));
        }
        debug_assert!(span_factor >= 6.0, "window must cover >= 6 standard deviations");
        let half = span_factor / sigma_tilde_min.sqrt();
        Grid1D::new(-half, half, n_points)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }
}

/// Discretized reduced kernel: `k[(i, j)] = rho_A(x_i, x_j) * spacing`.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub k: DMatrix<Complex64>,
    pub grid: Grid1D,
}

impl KernelMatrix {
    /// Discrete trace — approximates Tr rho_A = 1.
    pub fn trace(&self) -> f64 {
        self.k.diagonal().iter().map(|z| z.re).sum()
    }

    /// Largest absolute deviation from Hermitian symmetry.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.k.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.k[(i, j)] - self.k[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

/// Assembles the reduced kernel by numeric partial trace over mode 2, using the
/// same grid for both axes.
pub fn reduced_kernel_matrix(vc: &VacuumCoefficients, grid: &Grid1D) -> KernelMatrix {
    let n = grid.n_points;
    let points = grid.points();
    let rows: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|&x| points.iter().map(|&y| vc.wavefunction(x, y)).collect())
        .collect();
    let psi = DMatrix::from_fn(n, n, |i, k| rows[i][k]);
    let dx = grid.spacing();
    let k = (&psi * psi.adjoint()) * Complex64::new(dx * dx, 0.0);
    KernelMatrix { k, grid: *grid }
}

/// Discrete purity Tr(K²); for a Hermitian kernel this is the squared
/// Frobenius norm.
pub fn grid_purity(kernel: &KernelMatrix) -> f64 {
    kernel.k.iter().map(|z| z.norm_sqr()).sum()
}

fn accept_refinement(coarse: f64, fine: f64) -> Result<f64> {
    let shift = (fine - coarse).abs();
    if shift > GRID_SHIFT_TOLERANCE {
        return Err(Error::InsufficientGrid { shift, threshold: GRID_SHIFT_TOLERANCE });
    }
    Ok(fine)
}

/// Grid purity with an automatic window and an n -> 2n refinement check;
/// fails with `InsufficientGrid` when doubling the resolution still moves the
/// result by more than [`GRID_SHIFT_TOLERANCE`].
pub fn converged_purity(vc: &VacuumCoefficients, n_points: usize) -> Result<f64> {
    let st_min = vc.scale1.sigma_tilde.min(vc.scale2.sigma_tilde);
    let coarse = grid_purity(&reduced_kernel_matrix(vc, &Grid1D::auto(st_min, 8.0, n_points)?));
    let fine =
        grid_purity(&reduced_kernel_matrix(vc, &Grid1D::auto(st_min, 8.0, 2 * n_points)?));
    accept_refinement(coarse, fine)
}

/// The `k` largest kernel eigenvalues, descending (dense Hermitian eigensolve).
pub fn kernel_spectrum(kernel: &KernelMatrix, k: usize) -> Vec<f64> {
    let eig = kernel.k.clone().symmetric_eigen();
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values.truncate(k);
    values
}

/// Overlap magnitude between the kernel's dominant eigenvector and the
/// closed-form ground eigenfunction sampled on the grid (both l2-normalized up
/// to quadrature error); 1 when the closed form is the true eigenfunction.
pub fn ground_overlap(kernel: &KernelMatrix, kappa: f64, alpha2: f64) -> f64 {
    let eig = kernel.k.clone().symmetric_eigen();
    let mut max_idx = 0;
    for (i, &v) in eig.eigenvalues.iter().enumerate() {
        if v > eig.eigenvalues[max_idx] {
            max_idx = i;
        }
    }
    let v0 = eig.eigenvectors.column(max_idx);
    let sqrt_dx = kernel.grid.spacing().sqrt();
    let chi: DVector<Complex64> = DVector::from_iterator(
        kernel.grid.n_points,
        (0..kernel.grid.n_points)
            .map(|i| chi_eigenfunction(0, kappa, alpha2, kernel.grid.point(i)) * sqrt_dx),
    );
    v0.dotc(&chi).norm()
}

/// Wigner value at one phase-space point by direct quadrature of
/// `(1/pi^2) ∫∫ conj(psi(x+q)) psi(x-q) exp(+2i p·q) d²q` over the given grid.
pub fn numeric_wigner(vc: &VacuumCoefficients, grid: &Grid1D, point: [f64; 4]) -> f64 {
    let [x1, x2, p1, p2] = point;
    let points = grid.points();
    let sum: Complex64 = points
        .par_iter()
        .map(|&q1| {
            let mut acc = Complex64::ZERO;
            for &q2 in &points {
                let phase = Complex64::new(0.0, 2.0 * (p1 * q1 + p2 * q2)).exp();
                acc += vc.wavefunction(x1 + q1, x2 + q2).conj()
                    * vc.wavefunction(x1 - q1, x2 - q2)
                    * phase;
            }
            acc
        })
        .sum();
    let d = grid.spacing();
    (sum * d * d / (PI * PI)).re
}

/// Four-axis quadrature of the closed-form Wigner distribution over the
/// hypercube `[-half_span, half_span]^4` — 1 for a normalized coefficient set.
pub fn wigner_norm(wc: &WignerCoefficients, half_span: f64, n: usize) -> f64 {
    let d = 2.0 * half_span / (n - 1) as f64;
    let pts: Vec<f64> = (0..n).map(|i| -half_span + i as f64 * d).collect();
    let total: f64 = pts
        .par_iter()
        .map(|&x1| {
            let mut acc = 0.0;
            for &x2 in &pts {
                for &p1 in &pts {
                    for &p2 in &pts {
                        acc += wc.evaluate(x1, x2, p1, p2);
                    }
                }
            }
            acc
        })
        .sum();
    total * d.powi(4)
}

/// Second moments `(⟨x1²⟩, ⟨p1²⟩, ⟨x1 p1⟩_sym)` of mode 1 by wavefunction
/// quadrature: position from `|psi|²`, momentum from the gradient
/// `∂1 psi = (-A1 x1 + A12 x2) psi`, cross moment from `Im(conj(psi) x1 ∂1 psi)`.
pub fn wavefunction_moments(vc: &VacuumCoefficients, grid: &Grid1D) -> (f64, f64, f64) {
    let points = grid.points();
    let (a1, a12) = (vc.a1, vc.a12);
    let sums: [f64; 3] = points
        .par_iter()
        .map(|&x1| {
            let mut acc = [0.0f64; 3];
            for &x2 in &points {
                let psi = vc.wavefunction(x1, x2);
                let weight = psi.norm_sqr();
                let slope = -a1 * x1 + a12 * x2;
                acc[0] += x1 * x1 * weight;
                acc[1] += (slope * psi).norm_sqr();
                acc[2] += x1 * slope.im * weight;
            }
            acc
        })
        .reduce(
            || [0.0; 3],
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]],
        );
    let w = grid.spacing() * grid.spacing();
    (sums[0] * w, sums[1] * w, sums[2] * w)
}
