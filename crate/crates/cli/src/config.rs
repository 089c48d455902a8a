//! TOML scenario configuration: the quench tables, sampling window, requested
//! plot quantities, and entropy units.

use quenchosc::dynamics::{SamplePoint, ScenarioConfig};
use quenchosc::params::{QuenchSpec, SystemParams};
use serde::Deserialize;
use std::fmt;
use std::path::Path;

/// Unit for the logarithms in `S_von` and the negativity columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyUnits {
    #[default]
    Nats,
    Bits,
}

impl EntropyUnits {
    /// Conversion factor applied to logarithmic quantities on output.
    pub fn scale(self) -> f64 {
        match self {
            EntropyUnits::Nats => 1.0,
            EntropyUnits::Bits => 1.0 / std::f64::consts::LN_2,
        }
    }
}

/// A plottable per-sample quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    SL,
    SVon,
    Negativity,
    U1,
    U2,
    Alpha,
    Gamma1,
    Gamma2,
    H1,
    H2,
}

impl Quantity {
    pub const ALL: [Quantity; 10] = [
        Quantity::SL,
        Quantity::SVon,
        Quantity::Negativity,
        Quantity::U1,
        Quantity::U2,
        Quantity::Alpha,
        Quantity::Gamma1,
        Quantity::Gamma2,
        Quantity::H1,
        Quantity::H2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::SL => "S_L",
            Quantity::SVon => "S_von",
            Quantity::Negativity => "negativity",
            Quantity::U1 => "U1",
            Quantity::U2 => "U2",
            Quantity::Alpha => "alpha",
            Quantity::Gamma1 => "gamma1",
            Quantity::Gamma2 => "gamma2",
            Quantity::H1 => "h1",
            Quantity::H2 => "h2",
        }
    }

    pub fn parse(name: &str) -> Result<Self, ConfigError> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == name)
            .ok_or_else(|| {
                ConfigError(format!(
                    "unknown output quantity {name:?} (expected one of: {})",
                    Quantity::ALL.map(Quantity::name).join(", ")
                ))
            })
    }

    /// Extracts the quantity from one sample, in the given units.
    pub fn extract(self, p: &SamplePoint, units: EntropyUnits) -> f64 {
        match self {
            Quantity::SL => p.record.s_l,
            Quantity::SVon => p.record.s_von * units.scale(),
            Quantity::Negativity => p.record.negativity * units.scale(),
            Quantity::U1 => p.record.u1,
            Quantity::U2 => p.record.u2,
            Quantity::Alpha => p.record.alpha,
            Quantity::Gamma1 => p.gamma1,
            Quantity::Gamma2 => p.gamma2,
            Quantity::H1 => p.h1,
            Quantity::H2 => p.h2,
        }
    }
}

/// A config-layer failure: unreadable file, bad TOML, or invalid values.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsTable {
    omega1: f64,
    omega2: f64,
    #[serde(rename = "J")]
    j: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuenchTable {
    initial: ParamsTable,
    #[serde(rename = "final")]
    final_: ParamsTable,
}

fn default_t_max() -> f64 {
    30.0
}

fn default_n_samples() -> usize {
    3000
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    quench: QuenchTable,
    omega_c: f64,
    #[serde(default = "default_t_max")]
    t_max: f64,
    #[serde(default = "default_n_samples")]
    n_samples: usize,
    #[serde(default)]
    outputs: Vec<String>,
    #[serde(default)]
    entropy_units: EntropyUnits,
}

/// A fully validated run request.
#[derive(Debug)]
pub struct RunPlan {
    pub scenario: ScenarioConfig,
    pub outputs: Vec<Quantity>,
    pub units: EntropyUnits,
}

/// Reads and validates a scenario configuration file.
pub fn load_plan(path: &Path) -> Result<RunPlan, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    let file: ConfigFile = toml::from_str(&text)
        .map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))?;

    let params = |p: &ParamsTable| {
        SystemParams::new(p.omega1, p.omega2, p.j, file.omega_c)
            .map_err(|e| ConfigError(e.to_string()))
    };
    let quench = QuenchSpec::new(params(&file.quench.initial)?, params(&file.quench.final_)?)
        .map_err(|e| ConfigError(e.to_string()))?;
    let scenario = ScenarioConfig::new(quench, file.t_max, file.n_samples)
        .map_err(|e| ConfigError(e.to_string()))?;
    let outputs = file
        .outputs
        .iter()
        .map(|s| Quantity::parse(s))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(RunPlan { scenario, outputs, units: file.entropy_units })
}
