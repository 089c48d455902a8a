//! Command-line scenario runner: evolve one quench, sweep a parameter axis,
//! reproduce the preset figure datasets, or run the validation suite.
//!
//! Exit codes: 0 success, 1 configuration error, 2 numeric failure,
//! 3 validation failure.

mod config;
mod figures;
mod output;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use config::{load_plan, ConfigError, Quantity};
use figures::{axis_token, preset, Figure};
use output::{curve, write_csv, write_svg, Curve};
use quenchosc::dynamics::{evolve, sweep, SamplePoint, SweepAxis};
use quenchosc::validate::run_validation;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "quenchosc",
    version,
    about = "Entanglement, mixedness, and uncertainty dynamics of two quenched coupled \
             oscillators in a static magnetic field"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one scenario and write the canonical CSV (plus one SVG per
    /// requested output quantity).
    Evolve {
        /// TOML scenario configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve the scenario once per axis value (parallel across values,
    /// outputs ordered by the input list).
    Sweep {
        /// TOML scenario configuration for the base scenario.
        #[arg(long)]
        config: PathBuf,
        /// Swept parameter: omega_c, J_f, or omega_f2.
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values, e.g. 0.5,0.9,1.2.
        #[arg(long)]
        values: String,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce the preset figure datasets.
    Figures {
        /// Figure number 1..8, or "all".
        #[arg(long)]
        which: String,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every oracle-vs-closed-form and internal-consistency check.
    Validate {
        /// Emit the report as JSON instead of text lines.
        #[arg(long)]
        json: bool,
    },
}

/// A command failure, classified for the exit code.
enum Failure {
    Config(String),
    Numeric(String),
    Validation,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Numeric(_) => 2,
            Failure::Validation => 3,
        }
    }

    fn report(&self) {
        match self {
            Failure::Config(msg) => eprintln!("configuration error: {msg}"),
            Failure::Numeric(msg) => eprintln!("numeric failure: {msg}"),
            Failure::Validation => eprintln!("validation failed"),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

/// Whether a core error indicates a bad scenario rather than a numeric breakdown.
fn classify(e: quenchosc::Error) -> Failure {
    use quenchosc::Error as E;
    match e {
        E::InvalidParameter(_)
        | E::InconsistentQuench(_)
        | E::NegativeTime(_)
        | E::InvalidInitialState(_)
        | E::DegenerateQuench(_) => Failure::Config(e.to_string()),
        _ => Failure::Numeric(e.to_string()),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Config(format!("cannot write {}: {e}", path.display()))
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))
}

fn parse_axis(name: &str) -> Result<SweepAxis, Failure> {
    match name {
        "omega_c" => Ok(SweepAxis::OmegaC),
        "J_f" => Ok(SweepAxis::JFinal),
        "omega_f2" => Ok(SweepAxis::OmegaF2),
        _ => Err(Failure::Config(format!(
            "unknown sweep axis {name:?} (expected omega_c, J_f, or omega_f2)"
        ))),
    }
}

fn parse_values(list: &str) -> Result<Vec<f64>, Failure> {
    let values = list
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Config(format!("invalid axis value {tok:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(Failure::Config("empty axis value list".into()));
    }
    Ok(values)
}

fn parse_which(which: &str) -> Result<Vec<u8>, Failure> {
    if which == "all" {
        return Ok((1..=8).collect());
    }
    which
        .parse::<u8>()
        .ok()
        .filter(|n| (1..=8).contains(n))
        .map(|n| vec![n])
        .ok_or_else(|| Failure::Config(format!("unknown figure {which:?} (expected 1..8 or all)")))
}

fn run_evolve(config: &Path, out: &Path) -> Result<(), Failure> {
    let plan = load_plan(config)?;
    let points = evolve(&plan.scenario).map_err(classify)?;
    ensure_dir(out)?;
    let csv_path = out.join("dynamics.csv");
    write_csv(&csv_path, &points, plan.units).map_err(|e| io_failure(&csv_path, e))?;
    for &q in &plan.outputs {
        let svg_path = out.join(format!("{}.svg", q.name()));
        let curves = [curve(q.name(), &points, q, plan.units)];
        write_svg(&svg_path, &format!("{} vs t", q.name()), q.name(), &curves)
            .map_err(|e| io_failure(&svg_path, e))?;
    }
    println!("wrote {} samples to {}", points.len(), csv_path.display());
    Ok(())
}

fn run_sweep(config: &Path, axis_name: &str, values: &str, out: &Path) -> Result<(), Failure> {
    let plan = load_plan(config)?;
    let axis = parse_axis(axis_name)?;
    let values = parse_values(values)?;
    let entries = sweep(&plan.scenario, axis, &values);
    ensure_dir(out)?;

    let mut first_failure: Option<Failure> = None;
    let mut curves_by_quantity: Vec<(Quantity, Vec<Curve>)> =
        plan.outputs.iter().map(|&q| (q, Vec::new())).collect();
    for entry in &entries {
        let label = format!("{}={}", axis_token(axis), entry.value);
        match &entry.outcome {
            Ok(points) => {
                let csv_path =
                    out.join(format!("sweep_{}_{}.csv", axis_token(axis), entry.value));
                write_csv(&csv_path, points, plan.units)
                    .map_err(|e| io_failure(&csv_path, e))?;
                for (q, curves) in &mut curves_by_quantity {
                    curves.push(curve(&label, points, *q, plan.units));
                }
            }
            Err(e) => {
                eprintln!("sweep value {label} failed: {e}");
                first_failure.get_or_insert_with(|| classify(e.clone()));
            }
        }
    }
    for (q, curves) in &curves_by_quantity {
        if !curves.is_empty() {
            let svg_path = out.join(format!("{}.svg", q.name()));
            write_svg(
                &svg_path,
                &format!("{} vs t across {}", q.name(), axis_token(axis)),
                q.name(),
                curves,
            )
            .map_err(|e| io_failure(&svg_path, e))?;
        }
    }

    let failed = entries.iter().filter(|e| e.outcome.is_err()).count();
    println!(
        "swept {} across {} values ({} succeeded) into {}",
        axis_token(axis),
        entries.len(),
        entries.len() - failed,
        out.display()
    );
    match first_failure {
        Some(failure) => Err(failure),
        None => Ok(()),
    }
}

fn run_figure(fig: &Figure, out: &Path) -> Result<(), Failure> {
    let entries = sweep(&fig.base, fig.axis, &fig.values);
    let mut results: Vec<(f64, Vec<SamplePoint>)> = Vec::with_capacity(entries.len());
    for entry in entries {
        // Preset values are all evolvable; any failure here is a real defect.
        let points = entry.outcome.map_err(classify)?;
        results.push((entry.value, points));
    }
    for (value, points) in &results {
        let csv_path = out.join(format!("{}.csv", fig.csv_stem(*value)));
        write_csv(&csv_path, points, fig.units()).map_err(|e| io_failure(&csv_path, e))?;
    }
    for &q in &fig.quantities {
        let curves: Vec<Curve> = results
            .iter()
            .map(|(value, points)| {
                curve(
                    &format!("{}={}", axis_token(fig.axis), value),
                    points,
                    q,
                    fig.units(),
                )
            })
            .collect();
        let svg_path = out.join(format!("{}.svg", fig.svg_stem(q)));
        write_svg(&svg_path, &fig.title(q), q.name(), &curves)
            .map_err(|e| io_failure(&svg_path, e))?;
    }
    Ok(())
}

fn run_figures(which: &str, out: &Path) -> Result<(), Failure> {
    let numbers = parse_which(which)?;
    ensure_dir(out)?;
    for n in numbers {
        let fig = preset(n).expect("preset exists for 1..=8");
        run_figure(&fig, out)?;
        println!("figure {n} written to {}", out.display());
    }
    Ok(())
}

fn run_validate(json: bool) -> Result<(), Failure> {
    let report = run_validation();
    if json {
        let checks: Vec<serde_json::Value> = report
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "passed": c.passed,
                    "measured": c.measured,
                    "threshold": c.threshold,
                    "detail": c.detail,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "all_passed": report.all_passed(),
            "checks": checks,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            println!(
                "[{status}] {} measured={:.3e} threshold={:.3e} — {}",
                c.name, c.measured, c.threshold, c.detail
            );
        }
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Validation)
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Evolve { config, out } => run_evolve(&config, &out),
        Command::Sweep { config, axis, values, out } => {
            run_sweep(&config, &axis, &values, &out)
        }
        Command::Figures { which, out } => run_figures(&which, &out),
        Command::Validate { json } => run_validate(json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are successes; anything else is a usage error.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            failure.report();
            ExitCode::from(failure.code())
        }
    }
}
