//! Scenario evolution: time-sampled quench dynamics and parameter sweeps.
//!
//! A sample at time `t` chains the whole pipeline: active parameters
//! (initial at `t = 0`, final after the quench) → mixing angle → per-mode
//! Ermakov scale factors → vacuum coefficients → reduced kernel → entropies,
//! negativity, and uncertainty products. Records are emitted in time order and
//! are deterministic regardless of how the work is scheduled across threads.
//!
//! On the runaway branch (a final normal mode with negative shifted squared
//! frequency) the state stays well-defined but grows without bound; such
//! samples are flagged `diverged`, and any individual value that overflows
//! [`DIVERGENCE_CAP`] is clamped to it so downstream consumers never see
//! non-finite numbers.

use crate::ermakov::{quench_h, ErmakovState, ModeScale};
use crate::error::{Error, Result};
use crate::params::{mixing_angle, normal_modes, params_at, QuenchSpec, SystemParams};
use crate::symplectic::standard_form_alpha;
use crate::vacuum::{entropy_report, reduced_kernel, vacuum_coefficients, VacuumCoefficients};
use crate::wigner::{uncertainty_product, wigner_coefficients};
use rayon::prelude::*;

/// Exported values larger than this are clamped and the record flagged.
pub const DIVERGENCE_CAP: f64 = 1e12;

/// A quench scenario with a uniform sampling grid over `[0, t_max]`.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub quench: QuenchSpec,
    pub t_max: f64,
    pub n_samples: usize,
}

impl ScenarioConfig {
    pub fn new(quench: QuenchSpec, t_max: f64, n_samples: usize) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "t_max must be positive and finite, got {t_max}"
            )));
        }
        if n_samples < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 samples, got {n_samples}"
            )));
        }
        Ok(ScenarioConfig { quench, t_max, n_samples })
    }
}

/// Uniform sample times `0, dt, …, t_max` (both endpoints included).
pub fn time_grid(t_max: f64, n_samples: usize) -> Vec<f64> {
    let dt = t_max / (n_samples - 1) as f64;
    (0..n_samples).map(|j| j as f64 * dt).collect()
}

/// Fully resolved state at one sample time.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    /// Mixing angle of the active parameter set (initial at `t = 0`).
    pub phi: f64,
    pub state1: ErmakovState,
    pub state2: ErmakovState,
    pub scale1: ModeScale,
    pub scale2: ModeScale,
    pub coefficients: VacuumCoefficients,
    /// Final mode 1 or 2 sits on the runaway (cosh/sinh) branch.
    pub hyperbolic: bool,
}

/// Evolves the quench to time `t` and assembles the vacuum coefficients.
pub fn snapshot(quench: &QuenchSpec, t: f64) -> Result<Snapshot> {
    let active = params_at(quench, t)?;
    let phi = mixing_angle(&active);
    let mi = normal_modes(&quench.initial);
    let mf = normal_modes(&quench.final_);
    let field = quench.omega_c();
    let state1 = quench_h(mi.sigma1_sq, mf.sigma1_sq, field, t)?;
    let state2 = quench_h(mi.sigma2_sq, mf.sigma2_sq, field, t)?;
    let scale1 = ModeScale::from_state(&state1);
    let scale2 = ModeScale::from_state(&state2);
    let coefficients = vacuum_coefficients(phi, &scale1, &scale2);
    let z_final = mf.shifted(field);
    Ok(Snapshot {
        t,
        phi,
        state1,
        state2,
        scale1,
        scale2,
        coefficients,
        hyperbolic: z_final[0] < 0.0 || z_final[1] < 0.0,
    })
}

/// One emitted time sample (the canonical CSV row).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicsRecord {
    pub t: f64,
    pub s_l: f64,
    pub s_von: f64,
    pub negativity: f64,
    pub u1: f64,
    pub u2: f64,
    pub alpha: f64,
    /// Schmidt parameter of the geometric reduced spectrum.
    pub gamma: f64,
    pub diverged: bool,
}

/// A record plus the auxiliary series selectable as plot outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub record: DynamicsRecord,
    /// Phase-space shear coefficients of the two marginals.
    pub gamma1: f64,
    pub gamma2: f64,
    /// Ermakov scale factors.
    pub h1: f64,
    pub h2: f64,
}

fn cap_value(v: f64) -> (f64, bool) {
    if v.is_finite() && v <= DIVERGENCE_CAP {
        (v, false)
    } else {
        (DIVERGENCE_CAP, true)
    }
}

/// Computes one time sample of every exported quantity.
pub fn sample(quench: &QuenchSpec, t: f64) -> Result<SamplePoint> {
    let snap = snapshot(quench, t)?;
    let report = entropy_report(&reduced_kernel(&snap.coefficients));
    let sf = standard_form_alpha(snap.phi, &snap.scale1, &snap.scale2);
    let wc = wigner_coefficients(snap.phi, &snap.scale1, &snap.scale2, &snap.coefficients);
    let (u1_raw, u2_raw) = if report.s_l < 1.0 {
        (
            uncertainty_product(report.s_l, wc.gamma1)?.u,
            uncertainty_product(report.s_l, wc.gamma2)?.u,
        )
    } else {
        (f64::INFINITY, f64::INFINITY)
    };

    let (s_von, c1) = cap_value(report.s_von);
    let (negativity, c2) = cap_value(report.negativity);
    let (u1, c3) = cap_value(u1_raw);
    let (u2, c4) = cap_value(u2_raw);
    let (alpha, c5) = cap_value(sf.alpha);
    let diverged = (snap.hyperbolic && t > 0.0) || c1 || c2 || c3 || c4 || c5;
    Ok(SamplePoint {
        record: DynamicsRecord {
            t,
            s_l: report.s_l,
            s_von,
            negativity,
            u1,
            u2,
            alpha,
            gamma: report.gamma,
            diverged,
        },
        gamma1: wc.gamma1,
        gamma2: wc.gamma2,
        h1: snap.state1.h,
        h2: snap.state2.h,
    })
}

/// Evolves a scenario over its sampling grid (parallel across samples, output
/// in time order). Fails fast when the initial state itself is invalid.
pub fn evolve(config: &ScenarioConfig) -> Result<Vec<SamplePoint>> {
    let z_initial = normal_modes(&config.quench.initial).shifted(config.quench.omega_c());
    if z_initial[0] <= 0.0 || z_initial[1] <= 0.0 {
        return Err(Error::InvalidInitialState(z_initial[0].min(z_initial[1])));
    }
    time_grid(config.t_max, config.n_samples)
        .par_iter()
        .map(|&t| sample(&config.quench, t))
        .collect()
}

/// Parameter varied across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Cyclotron frequency (applied to both initial and final parameters).
    OmegaC,
    /// Final coupling J_f.
    JFinal,
    /// Final second frequency ω_{f,2}.
    OmegaF2,
}

/// One sweep value's scenario outcome; failures stay local to their value.
#[derive(Debug)]
pub struct SweepEntry {
    pub value: f64,
    pub outcome: Result<Vec<SamplePoint>>,
}

fn configure_axis(base: &ScenarioConfig, axis: SweepAxis, value: f64) -> Result<ScenarioConfig> {
    let i = &base.quench.initial;
    let f = &base.quench.final_;
    let quench = match axis {
        SweepAxis::OmegaC => QuenchSpec::new(
            SystemParams::new(i.omega1, i.omega2, i.j, value)?,
            SystemParams::new(f.omega1, f.omega2, f.j, value)?,
        )?,
        SweepAxis::JFinal => QuenchSpec::new(
            *i,
            SystemParams::new(f.omega1, f.omega2, value, f.omega_c)?,
        )?,
        SweepAxis::OmegaF2 => {
            QuenchSpec::new(*i, SystemParams::new(f.omega1, value, f.j, f.omega_c)?)?
        }
    };
    ScenarioConfig::new(quench, base.t_max, base.n_samples)
}

/// Runs one evolution per axis value (parallel across values, output ordered
/// by the input list). A failing value reports its error without disturbing
/// the other entries.
pub fn sweep(base: &ScenarioConfig, axis: SweepAxis, values: &[f64]) -> Vec<SweepEntry> {
    values
        .par_iter()
        .map(|&value| SweepEntry {
            value,
            outcome: configure_axis(base, axis, value).and_then(|config| evolve(&config)),
        })
        .collect()
}

/// Coupling strength at which final mode 1 crosses onto the runaway branch,
/// `J² = ((ω₁²+ω₂²)/2 + ω_c²)² − ((ω₁²−ω₂²)/2)²`; at zero field this is
/// exactly `ω₁ ω₂`.
pub fn critical_coupling(p: &SystemParams) -> f64 {
    let mean = (p.omega1 * p.omega1 + p.omega2 * p.omega2) / 2.0;
    let d = (p.omega1 * p.omega1 - p.omega2 * p.omega2) / 2.0;
    let m = mean + p.omega_c * p.omega_c;
    (m * m - d * d).sqrt()
}

/// Minimal cyclotron frequency that lifts runaway final parameters back onto
/// the oscillatory branch; `None` when the parameters are already oscillatory
/// at zero field.
pub fn restoring_field(p: &SystemParams) -> Option<f64> {
    let mean = (p.omega1 * p.omega1 + p.omega2 * p.omega2) / 2.0;
    let d = (p.omega1 * p.omega1 - p.omega2 * p.omega2) / 2.0;
    let deficit = d.hypot(p.j) - mean;
    if deficit > 0.0 {
        Some(deficit.sqrt())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_quench(omega_c: f64) -> QuenchSpec {
        QuenchSpec::new(
            SystemParams::new(1.0, 1.5, 1.1, omega_c).unwrap(),
            SystemParams::new(1.3, 1.8, 0.9, omega_c).unwrap(),
        )
        .unwrap()
    }

    fn quench_with_final_j(omega_c: f64, j_final: f64) -> QuenchSpec {
        QuenchSpec::new(
            SystemParams::new(1.0, 1.5, 1.1, omega_c).unwrap(),
            SystemParams::new(1.3, 1.8, j_final, omega_c).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn config_validation() {
        let q = reference_quench(0.0);
        assert!(ScenarioConfig::new(q.clone(), 0.0, 100).is_err());
        assert!(ScenarioConfig::new(q.clone(), f64::INFINITY, 100).is_err());
        assert!(ScenarioConfig::new(q.clone(), 10.0, 1).is_err());
        assert!(ScenarioConfig::new(q, 10.0, 2).is_ok());
    }

    #[test]
    fn time_grid_covers_both_endpoints() {
        let grid = time_grid(30.0, 3000);
        assert_eq!(grid.len(), 3000);
        assert_eq!(grid[0], 0.0);
        assert!((grid[2999] - 30.0).abs() < 1e-12);
        assert!((grid[1] - 30.0 / 2999.0).abs() < 1e-15);
    }

    #[test]
    fn quench_instant_sample_matches_frozen_anchors() {
        let p = sample(&reference_quench(0.0), 0.0).unwrap();
        assert!((p.record.s_l - 0.0962368826532).abs() < 1e-10);
        assert!((p.record.gamma - 0.0505508704189).abs() < 1e-10);
        assert!((p.record.s_von - 0.210789665502).abs() < 1e-10);
        assert!((p.record.negativity - 0.457485946678).abs() < 1e-10);
        assert!((p.record.u1 - 1.2244).abs() < 1e-3);
        assert!((p.record.alpha - 1.10648463165).abs() < 1e-10);
        assert_eq!(p.h1, 1.0);
        assert_eq!(p.h2, 1.0);
        assert!(!p.record.diverged);
    }

    #[test]
    fn zero_field_checkpoint_at_t_one() {
        let p = sample(&reference_quench(0.0), 1.0).unwrap();
        assert!((p.record.s_l - 0.02796984796).abs() < 1e-9);
        assert!((p.record.gamma - 0.01418327602).abs() < 1e-9);
        assert!((p.record.s_von - 0.0755128853).abs() < 1e-9);
        assert!((p.record.negativity - 0.2393228922).abs() < 1e-9);
        assert!((p.record.u1 - 1.233528608).abs() < 1e-8);
        assert!((p.h1 - 0.6421651435).abs() < 1e-9);
    }

    #[test]
    fn in_field_checkpoint() {
        let p = sample(&reference_quench(0.3), 1.7).unwrap();
        assert!((p.record.s_l - 0.0148364535882).abs() < 1e-10);
        assert!((p.record.gamma - 0.0074736681595).abs() < 1e-10);
        assert!((p.record.s_von - 0.0443711252267).abs() < 1e-10);
        assert!((p.record.negativity - 0.173333435678).abs() < 1e-10);
        assert!((p.record.u1 - 1.15439984391).abs() < 1e-10);
        assert!((p.record.u2 - 1.03264032888).abs() < 1e-10);
        assert!((p.h1 - 0.662640318834).abs() < 1e-10);
    }

    #[test]
    fn evolve_is_ordered_deterministic_and_finite() {
        let config = ScenarioConfig::new(reference_quench(0.0), 30.0, 600).unwrap();
        let a = evolve(&config).unwrap();
        let b = evolve(&config).unwrap();
        assert_eq!(a.len(), 600);
        assert_eq!(a, b);
        for w in a.windows(2) {
            assert!(w[0].record.t < w[1].record.t);
        }
        for p in &a {
            assert!(!p.record.diverged);
            assert!(p.record.s_l.is_finite() && p.record.u1.is_finite());
        }
        // The mixing angle switches from the initial to the final parameters
        // across the quench instant, so the first post-quench mixedness sits
        // below the t = 0 value for this scenario.
        assert!(a[1].record.s_l < a[0].record.s_l);
    }

    #[test]
    fn runaway_branch_is_flagged_and_clamped() {
        let config = ScenarioConfig::new(quench_with_final_j(0.2, 2.4), 30.0, 400).unwrap();
        let points = evolve(&config).unwrap();
        assert!(!points[0].record.diverged);
        for p in &points[1..] {
            assert!(p.record.diverged, "runaway sample at t={} not flagged", p.record.t);
            assert!(p.record.s_l <= 1.0);
            for v in [p.record.s_von, p.record.negativity, p.record.u1, p.record.alpha] {
                assert!(v.is_finite() && v <= DIVERGENCE_CAP);
            }
        }
        // Mixedness saturates towards 1 beyond the first turning point. The
        // second mode stays oscillatory, so the climb carries small ripples:
        // bound the retracement from the running peak instead of demanding
        // strict monotonicity.
        let tail: Vec<f64> = points[300..].iter().map(|p| p.record.s_l).collect();
        let mut peak = tail[0];
        for &v in &tail {
            assert!(v > 0.9, "tail sample fell out of the saturation band: {v}");
            assert!(v >= peak - 0.02, "tail retracement too deep: {v} vs peak {peak}");
            peak = peak.max(v);
        }
    }

    #[test]
    fn near_critical_coupling_stays_oscillatory() {
        let config = ScenarioConfig::new(quench_with_final_j(0.2, 2.33), 30.0, 400).unwrap();
        let points = evolve(&config).unwrap();
        let mut max_u1 = 0.0f64;
        for p in &points {
            assert!(!p.record.diverged);
            assert!(p.record.u1.is_finite());
            max_u1 = max_u1.max(p.record.u1);
        }
        assert!(max_u1 > 2.0, "expected large-amplitude oscillation, got {max_u1}");
    }

    #[test]
    fn sweep_orders_by_input_and_matches_standalone_runs() {
        let base = ScenarioConfig::new(reference_quench(0.0), 10.0, 50).unwrap();
        let entries = sweep(&base, SweepAxis::OmegaC, &[0.3, 0.0]);
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].value, 0.3);
        assert_eq!(entries[1].value, 0.0);
        let standalone = evolve(
            &ScenarioConfig::new(reference_quench(0.3), 10.0, 50).unwrap(),
        )
        .unwrap();
        assert_eq!(entries[0].outcome.as_ref().unwrap(), &standalone);
    }

    #[test]
    fn sweep_isolates_failing_values() {
        let base = ScenarioConfig::new(reference_quench(0.0), 5.0, 40).unwrap();
        // J exactly at the branch crossing degenerates the closed form.
        let entries = sweep(&base, SweepAxis::JFinal, &[0.9, 2.34]);
        assert!(entries[0].outcome.is_ok());
        assert!(matches!(
            entries[1].outcome,
            Err(Error::DegenerateQuench(_))
        ));
    }

    #[test]
    fn sweep_axes_reach_their_parameters() {
        let base = ScenarioConfig::new(reference_quench(0.0), 5.0, 40).unwrap();
        let cfg = configure_axis(&base, SweepAxis::OmegaC, 0.8).unwrap();
        assert_eq!(cfg.quench.initial.omega_c, 0.8);
        assert_eq!(cfg.quench.final_.omega_c, 0.8);
        let cfg = configure_axis(&base, SweepAxis::JFinal, 1.2).unwrap();
        assert_eq!(cfg.quench.final_.j, 1.2);
        assert_eq!(cfg.quench.initial.j, 1.1);
        let cfg = configure_axis(&base, SweepAxis::OmegaF2, 2.5).unwrap();
        assert_eq!(cfg.quench.final_.omega2, 2.5);
    }

    #[test]
    fn branch_thresholds_match_the_product_rule() {
        let final_params = SystemParams::new(1.3, 1.8, 0.9, 0.0).unwrap();
        assert!((critical_coupling(&final_params) - 2.34).abs() < 1e-10);

        let runaway = SystemParams::new(1.3, 1.8, 2.4, 0.0).unwrap();
        let field = restoring_field(&runaway).unwrap();
        assert!((field - 0.238805263447).abs() < 1e-10);
        assert!((field - 0.2391).abs() < 1e-3);
        assert!(restoring_field(&final_params).is_none());

        // Just beyond the restored field the evolution is oscillatory again.
        let restored = quench_with_final_j(0.24, 2.4);
        let points =
            evolve(&ScenarioConfig::new(restored, 20.0, 100).unwrap()).unwrap();
        assert!(points.iter().all(|p| !p.record.diverged));
    }
}
