//! Self-contained validation suite: every closed form in the crate checked
//! against the brute-force oracle plus the internal consistency identities,
//! reported as machine-readable pass/fail results with measured errors.
//!
//! One check is an *expected-difference* measurement rather than an equality:
//! the crate carries a direct entropy-from-mixedness formula
//! ([`crate::vacuum::von_neumann_from_linear`]) that is documented as
//! inconsistent with the spectral route; the suite measures that gap and
//! passes when it lands where documented (≈0.353 at the reference quench
//! instant), failing only if the discrepancy *changes*.

use crate::dynamics::{critical_coupling, restoring_field, snapshot, Snapshot};
use crate::ermakov::{integrate_ermakov, quench_h};
use crate::oracle::{
    grid_purity, ground_overlap, kernel_spectrum, numeric_wigner, reduced_kernel_matrix,
    wavefunction_moments, wigner_norm, Grid1D,
};
use crate::params::{normal_modes, QuenchSpec, SystemParams};
use crate::symplectic::{
    covariance_from_moments, log_negativity_from_alpha, log_negativity_from_sl,
    standard_form_alpha,
};
use crate::vacuum::{
    marginal_purity, reduced_kernel, von_neumann, von_neumann_from_linear,
};
use crate::wigner::{
    marginal_wigner, moments, uncertainty_from_moments, uncertainty_product,
    wigner_coefficients,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one validation check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst measured error (or, for expected-difference checks, the measured gap).
    pub measured: f64,
    /// Bound the measurement is held to.
    pub threshold: f64,
    pub detail: String,
}

/// Full suite outcome.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Sample times spread over the figure window [0, 30], paired with
/// alternating field strengths so both the zero-field and in-field branches
/// are exercised.
const SAMPLE_TIMES: [f64; 10] = [0.0, 0.7, 1.3, 2.9, 5.0, 7.7, 11.0, 16.0, 23.0, 30.0];

fn field_for(index: usize) -> f64 {
    if index % 2 == 0 {
        0.0
    } else {
        0.3
    }
}

fn reference_quench(omega_c: f64) -> QuenchSpec {
    QuenchSpec::new(
        SystemParams::new(1.0, 1.5, 1.1, omega_c).expect("reference initial params"),
        SystemParams::new(1.3, 1.8, 0.9, omega_c).expect("reference final params"),
    )
    .expect("reference quench")
}

fn sampled_snapshots() -> Vec<Snapshot> {
    SAMPLE_TIMES
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            snapshot(&reference_quench(field_for(k)), t).expect("reference snapshot")
        })
        .collect()
}

fn bounded_check(name: &'static str, measured: f64, threshold: f64, detail: String) -> CheckResult {
    CheckResult { name, passed: measured.is_finite() && measured < threshold, measured, threshold, detail }
}

fn ermakov_closed_vs_rk4() -> CheckResult {
    let mut worst = 0.0f64;
    let n_steps = 12_000usize;
    let t_grid: Vec<f64> = (0..=n_steps).map(|j| 30.0 * j as f64 / n_steps as f64).collect();
    for &omega_c in &[0.0, 0.3, 0.8, 1.5] {
        let q = reference_quench(omega_c);
        let mi = normal_modes(&q.initial);
        let mf = normal_modes(&q.final_);
        for (si, sf) in [(mi.sigma1_sq, mf.sigma1_sq), (mi.sigma2_sq, mf.sigma2_sq)] {
            let z_f = sf + omega_c * omega_c;
            let integrated = integrate_ermakov(|_| z_f, si + omega_c * omega_c, &t_grid)
                .expect("RK4 integration");
            for (j, state) in integrated.iter().enumerate() {
                let closed = quench_h(si, sf, omega_c, t_grid[j]).expect("closed form");
                worst = worst.max((state.h - closed.h).abs());
            }
        }
    }
    bounded_check(
        "ermakov-closed-vs-rk4",
        worst,
        1e-8,
        "closed-form scale factor vs Runge-Kutta integration, both modes, \
         four field strengths, t in [0, 30]"
            .into(),
    )
}

fn ermakov_residual_check() -> CheckResult {
    let mut worst = 0.0f64;
    let dt = 1e-3;
    for &omega_c in &[0.0, 0.3, 0.8, 1.5] {
        let q = reference_quench(omega_c);
        let mi = normal_modes(&q.initial);
        let mf = normal_modes(&q.final_);
        for (si, sf) in [(mi.sigma1_sq, mf.sigma1_sq), (mi.sigma2_sq, mf.sigma2_sq)] {
            for &t in &[1.0, 5.0, 10.0] {
                let h = |tt: f64| quench_h(si, sf, omega_c, tt).expect("closed form").h;
                // Fourth-order central stencil for the second derivative.
                let hddot = (-h(t - 2.0 * dt) + 16.0 * h(t - dt) - 30.0 * h(t)
                    + 16.0 * h(t + dt)
                    - h(t + 2.0 * dt))
                    / (12.0 * dt * dt);
                let state = quench_h(si, sf, omega_c, t).expect("closed form");
                let residual =
                    crate::ermakov::ermakov_residual(&state, hddot, sf + omega_c * omega_c);
                worst = worst.max(residual.abs());
            }
        }
    }
    bounded_check(
        "ermakov-residual",
        worst,
        1e-6,
        "finite-difference second derivative inserted into the Ermakov equation".into(),
    )
}

fn purity_oracle_check() -> CheckResult {
    let mut worst = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let st_min = vc.scale1.sigma_tilde.min(vc.scale2.sigma_tilde);
        let grid = Grid1D::auto(st_min, 8.0, 256).expect("oracle grid");
        let kernel = reduced_kernel_matrix(vc, &grid);
        worst = worst.max((grid_purity(&kernel) - marginal_purity(vc)).abs());
    }
    bounded_check(
        "purity-oracle",
        worst,
        1e-6,
        "discretized-kernel purity vs closed form at 10 sampled times".into(),
    )
}

fn kernel_spectrum_check() -> (CheckResult, CheckResult) {
    let mut worst_eig = 0.0f64;
    let mut worst_overlap_defect = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let st_min = vc.scale1.sigma_tilde.min(vc.scale2.sigma_tilde);
        let grid = Grid1D::auto(st_min, 8.0, 256).expect("oracle grid");
        let kernel = reduced_kernel_matrix(vc, &grid);
        let rk = reduced_kernel(vc);
        for (n, &value) in kernel_spectrum(&kernel, 6).iter().enumerate() {
            let geometric = (1.0 - rk.gamma) * rk.gamma.powi(n as i32);
            worst_eig = worst_eig.max((value - geometric).abs());
        }
        worst_overlap_defect =
            worst_overlap_defect.max(1.0 - ground_overlap(&kernel, rk.kappa, rk.alpha2));
    }
    (
        bounded_check(
            "kernel-spectrum-geometric",
            worst_eig,
            1e-4,
            "kernel eigenvalues n <= 5 vs geometric spectrum (1-gamma) gamma^n".into(),
        ),
        bounded_check(
            "ground-eigenfunction-overlap",
            worst_overlap_defect,
            1e-4,
            "dominant kernel eigenvector vs closed-form squeezed ground eigenfunction".into(),
        ),
    )
}

fn numeric_wigner_check() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_816);
    let mut worst = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let st_min = vc.scale1.sigma_tilde.min(vc.scale2.sigma_tilde);
        let grid = Grid1D::auto(st_min, 7.0, 201).expect("Wigner quadrature grid");
        let wc = wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, vc);
        for _ in 0..20 {
            let point: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.5..1.5));
            let numeric = numeric_wigner(vc, &grid, point);
            let closed = wc.evaluate(point[0], point[1], point[2], point[3]);
            worst = worst.max((numeric - closed).abs());
        }
    }
    bounded_check(
        "numeric-wigner-agreement",
        worst,
        1e-5,
        "direct quadrature of the Wigner integral vs closed coefficients, \
         20 seeded random phase-space points per sampled time"
            .into(),
    )
}

fn wigner_norm_check() -> CheckResult {
    let mut worst = 0.0f64;
    for &(omega_c, t) in &[(0.0, 0.0), (0.0, 1.3), (0.3, 5.0)] {
        let snap = snapshot(&reference_quench(omega_c), t).expect("snapshot");
        let wc =
            wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, &snap.coefficients);
        let st_min = snap.scale1.sigma_tilde.min(snap.scale2.sigma_tilde);
        let norm = wigner_norm(&wc, 6.5 / st_min.sqrt(), 51);
        worst = worst.max((norm - 1.0).abs());
    }
    bounded_check(
        "wigner-normalization",
        worst,
        1e-4,
        "four-axis quadrature of the closed-form Wigner distribution".into(),
    )
}

fn moment_quadrature_check() -> CheckResult {
    let mut worst = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let st_min = vc.scale1.sigma_tilde.min(vc.scale2.sigma_tilde);
        let grid = Grid1D::auto(st_min, 8.0, 400).expect("moment grid");
        let (x2_num, p2_num, xp_num) = wavefunction_moments(vc, &grid);
        let wc = wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, vc);
        let (x2, p2, xp) = moments(&marginal_wigner(&wc));
        worst = worst
            .max((x2_num - x2).abs())
            .max((p2_num - p2).abs())
            .max((xp_num - xp).abs());
    }
    bounded_check(
        "moment-quadrature",
        worst,
        1e-6,
        "wavefunction-quadrature second moments vs marginal Wigner moments".into(),
    )
}

fn identity_suite_check() -> CheckResult {
    let mut worst = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let rk = reduced_kernel(vc);
        // Pure-state coefficient identity.
        worst = worst.max(vc.identity_residual());
        // Kernel decomposition sum rule: D1 + conj(D1) - D12 = 4 alpha1.
        let d_sum = (rk.d1 + rk.d1.conj() - rk.d12).re - 4.0 * rk.alpha1;
        worst = worst.max((d_sum / (4.0 * rk.alpha1)).abs());
        // Purity from the Schmidt parameter.
        let purity = rk.purity();
        worst = worst.max((purity - (1.0 - rk.gamma) / (1.0 + rk.gamma)).abs() / purity);
        // Marginal Wigner determinant equals squared purity.
        let wc = wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, vc);
        let mw = marginal_wigner(&wc);
        worst = worst.max((mw.determinant().sqrt() - purity).abs() / purity);
        // Closed uncertainty product vs moment route.
        let s_l = 1.0 - purity;
        let (x2, p2, _) = moments(&mw);
        let closed = uncertainty_product(s_l, wc.gamma1).expect("uncertainty").product;
        let from_moments = uncertainty_from_moments(x2, p2, wc.gamma1).product;
        worst = worst.max((closed - from_moments).abs() / closed);
    }
    bounded_check(
        "gaussian-identities",
        worst,
        1e-8,
        "coefficient identity, kernel sum rule, purity-gamma relation, \
         marginal determinant, and uncertainty-product routes (relative)"
            .into(),
    )
}

fn negativity_routes_check() -> CheckResult {
    let mut worst = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let s_l = 1.0 - marginal_purity(vc);
        if s_l >= 0.99 {
            continue;
        }
        let from_sl = log_negativity_from_sl(s_l);
        let sf = standard_form_alpha(snap.phi, &snap.scale1, &snap.scale2);
        let from_alpha = log_negativity_from_alpha(&sf);
        let wc = wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, vc);
        let cm = covariance_from_moments(&wc).expect("covariance");
        let nu_min = cm
            .pt_symplectic_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        let from_cm = (-nu_min.ln()).max(0.0);
        worst = worst.max((from_cm - from_sl).abs()).max((from_alpha - from_sl).abs());
    }
    bounded_check(
        "negativity-routes",
        worst,
        1e-8,
        "covariance-matrix partial transpose vs standard form vs mixedness route".into(),
    )
}

fn entropy_gap_check() -> CheckResult {
    let snap = snapshot(&reference_quench(0.0), 0.0).expect("quench-instant snapshot");
    let vc = &snap.coefficients;
    let rk = reduced_kernel(vc);
    let spectral = von_neumann(rk.gamma);

    // Oracle entropy from the discretized kernel's eigenvalues.
    let st_min = vc.scale1.sigma_tilde.min(vc.scale2.sigma_tilde);
    let grid = Grid1D::auto(st_min, 8.0, 256).expect("oracle grid");
    let kernel = reduced_kernel_matrix(vc, &grid);
    let oracle: f64 = kernel_spectrum(&kernel, 40)
        .into_iter()
        .filter(|&l| l > 1e-14)
        .map(|l| -l * l.ln())
        .sum();

    let s_l = 1.0 - marginal_purity(vc);
    let printed = von_neumann_from_linear(s_l);
    let gap = (printed - spectral).abs();

    let spectral_matches = (spectral - oracle).abs() < 1e-6;
    let gap_as_documented = (gap - 0.352780).abs() < 1e-3;
    CheckResult {
        name: "entropy-inverse-gap",
        passed: spectral_matches && gap_as_documented,
        measured: gap,
        threshold: 1e-3,
        detail: format!(
            "spectral route {spectral:.9} matches the kernel eigensolve {oracle:.9}; \
             the direct entropy-from-mixedness form {printed:.9} is documented as \
             inconsistent and sits {gap:.6} above it (expected 0.352780 +/- 1e-3)"
        ),
    }
}

fn physicality_check() -> CheckResult {
    let mut worst = 0.0f64;
    for snap in sampled_snapshots() {
        let wc =
            wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, &snap.coefficients);
        let cm = covariance_from_moments(&wc).expect("covariance");
        worst = worst.max((-cm.physicality_min_eig()).max(0.0));
        for nu in cm.symplectic_eigenvalues() {
            worst = worst.max((nu - 1.0).abs());
        }
    }
    bounded_check(
        "covariance-physicality",
        worst,
        1e-8,
        "uncertainty-principle matrix inequality and pure-state symplectic spectrum".into(),
    )
}

fn uncertainty_floor_check() -> CheckResult {
    let mut worst_violation = 0.0f64;
    for snap in sampled_snapshots() {
        let vc = &snap.coefficients;
        let s_l = 1.0 - marginal_purity(vc);
        let wc = wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, vc);
        for gamma_i in [wc.gamma1, wc.gamma2] {
            let report = uncertainty_product(s_l, gamma_i).expect("uncertainty");
            worst_violation = worst_violation
                .max(report.lower_bound - report.product)
                .max(0.5 - report.product);
        }
    }
    bounded_check(
        "uncertainty-floor",
        worst_violation,
        1e-12,
        "product >= shear-dependent lower bound >= 1/2 at every sampled time".into(),
    )
}

fn branch_threshold_check() -> CheckResult {
    let final_params = SystemParams::new(1.3, 1.8, 0.9, 0.0).expect("final params");
    let critical = critical_coupling(&final_params);
    let runaway = SystemParams::new(1.3, 1.8, 2.4, 0.0).expect("runaway params");
    let field = restoring_field(&runaway).unwrap_or(f64::NAN);
    let crit_err = (critical - 2.34).abs();
    let field_err = (field - 0.2391).abs();
    CheckResult {
        name: "branch-thresholds",
        passed: crit_err < 1e-10 && field_err < 1e-3,
        measured: crit_err,
        threshold: 1e-10,
        detail: format!(
            "runaway coupling threshold {critical:.12} (product rule 2.34); \
             restoring field {field:.9} for J_f = 2.4 (expected 0.2391 +/- 1e-3)"
        ),
    }
}

/// Runs the complete validation suite.
pub fn run_validation() -> ValidationReport {
    let (spectrum_check, overlap_check) = kernel_spectrum_check();
    ValidationReport {
        checks: vec![
            ermakov_closed_vs_rk4(),
            ermakov_residual_check(),
            purity_oracle_check(),
            spectrum_check,
            overlap_check,
            numeric_wigner_check(),
            wigner_norm_check(),
            moment_quadrature_check(),
            identity_suite_check(),
            negativity_routes_check(),
            entropy_gap_check(),
            physicality_check(),
            uncertainty_floor_check(),
            branch_threshold_check(),
        ],
    }
}
