//! Preset figure datasets: each produces one multi-curve panel as a family of
//! canonical CSVs plus one SVG per plotted quantity.

use crate::config::{EntropyUnits, Quantity};
use quenchosc::dynamics::{ScenarioConfig, SweepAxis};
use quenchosc::params::{QuenchSpec, SystemParams};

/// One preset panel: a base scenario swept along one axis.
pub struct Figure {
    pub number: u8,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub quantities: Vec<Quantity>,
    pub base: ScenarioConfig,
}

/// The CLI token and file-name stem for a sweep axis.
pub fn axis_token(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::OmegaC => "omega_c",
        SweepAxis::JFinal => "J_f",
        SweepAxis::OmegaF2 => "omega_f2",
    }
}

fn base_scenario(
    final_: (f64, f64, f64),
    omega_c: f64,
) -> ScenarioConfig {
    let initial = SystemParams::new(1.0, 1.5, 1.1, omega_c).unwrap();
    let final_ = SystemParams::new(final_.0, final_.1, final_.2, omega_c).unwrap();
    ScenarioConfig::new(QuenchSpec::new(initial, final_).unwrap(), 30.0, 3000).unwrap()
}

/// Returns the preset for figure `number` (1..=8).
pub fn preset(number: u8) -> Option<Figure> {
    let fig = |axis, values: &[f64], quantities: &[Quantity], base| Figure {
        number,
        axis,
        values: values.to_vec(),
        quantities: quantities.to_vec(),
        base,
    };
    Some(match number {
        // Mixedness against the magnetic field, the final coupling, and the
        // quenched partner frequency.
        1 => fig(
            SweepAxis::OmegaC,
            &[0.0, 0.3, 0.8, 1.5],
            &[Quantity::SL],
            base_scenario((1.3, 1.8, 0.9), 0.0),
        ),
        2 => fig(
            SweepAxis::JFinal,
            &[0.5, 0.9, 1.2, 2.3, 2.4],
            &[Quantity::SL],
            base_scenario((1.3, 1.8, 0.9), 0.2),
        ),
        3 => fig(
            SweepAxis::OmegaF2,
            &[0.5, 2.0, 2.5, 3.0],
            &[Quantity::SL],
            base_scenario((0.4, 2.0, 0.9), 0.1),
        ),
        // Mode-1 uncertainty product against the same three axes.
        4 => fig(
            SweepAxis::OmegaC,
            &[0.0, 0.3, 0.8, 1.5],
            &[Quantity::U1],
            base_scenario((1.3, 1.8, 0.9), 0.0),
        ),
        5 => fig(
            SweepAxis::JFinal,
            &[0.5, 0.9, 1.2, 2.3, 2.33],
            &[Quantity::U1],
            base_scenario((1.3, 1.8, 0.9), 0.2),
        ),
        6 => fig(
            SweepAxis::OmegaF2,
            &[2.3, 2.5, 3.0, 4.0],
            &[Quantity::U1],
            base_scenario((0.4, 2.0, 0.9), 0.1),
        ),
        // Entanglement measures against the magnetic field and final coupling.
        7 => fig(
            SweepAxis::OmegaC,
            &[0.0, 0.3, 0.8, 1.5, 3.0],
            &[Quantity::SVon, Quantity::Negativity],
            base_scenario((1.3, 1.8, 0.9), 0.0),
        ),
        8 => fig(
            SweepAxis::JFinal,
            &[0.5, 0.9, 1.2, 2.3, 2.33],
            &[Quantity::SVon, Quantity::Negativity],
            base_scenario((1.3, 1.8, 0.9), 0.2),
        ),
        _ => return None,
    })
}

impl Figure {
    /// File stem for the CSV of one swept value, e.g. `fig2_J_f_2.33`.
    pub fn csv_stem(&self, value: f64) -> String {
        format!("fig{}_{}_{}", self.number, axis_token(self.axis), value)
    }

    /// File stem for the SVG of one plotted quantity, e.g. `fig7_S_von`.
    pub fn svg_stem(&self, q: Quantity) -> String {
        format!("fig{}_{}", self.number, q.name())
    }

    /// Plot title, e.g. `Figure 2: S_L vs t across J_f`.
    pub fn title(&self, q: Quantity) -> String {
        format!("Figure {}: {} vs t across {}", self.number, q.name(), axis_token(self.axis))
    }

    pub fn units(&self) -> EntropyUnits {
        EntropyUnits::Nats
    }
}
