//! Command-line harness: verification suites, correlation curves, CHSH
//! sweeps, and machine-readable reports.
//!
//! Exit codes: 0 success, 1 check or bound violation, 2 usage/config error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use epr_lab::chsh::{chsh_sweep, EvalMode, Model, SweepSummary, SWEEP_CSV_HEADER};
use epr_lab::fmt::sig12;
use epr_lab::ga::UnitVector3;
use epr_lab::models::{
    bell_joint_closed, clifford_joint_exact, derive_seed, estimate_joint, HvModel, SamplerConfig,
};
use epr_lab::pauli::singlet_expectation_joint;
use epr_lab::verify::{run_suite, Fault};

const DOMINANCE_TOLERANCE: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "epr-lab",
    about = "Cl(3,0) correlation laboratory: quantum singlet oracle, local hidden-variable models, CHSH sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the cross-validation suites and report each check.
    Verify(CommonArgs),
    /// Emit the correlation curves of all models over an angle grid.
    Correlate(CommonArgs),
    /// Sweep CHSH settings per model and report maxima against the bounds.
    Chsh(CommonArgs),
    /// Run everything and emit one combined JSON report.
    Report(CommonArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Flat key=value config file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated models: quantum, bell, clifford.
    #[arg(long)]
    model: Option<String>,
    /// Angle grid in degrees: start,stop,steps. For `chsh`, steps is the
    /// sweep resolution.
    #[arg(long)]
    grid: Option<String>,
    /// Monte Carlo sample count per estimate.
    #[arg(long)]
    samples: Option<u64>,
    /// Root RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Integration mode: exact or mc.
    #[arg(long)]
    mode: Option<String>,
    /// Output file path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Inject a named fault as a negative control (verify only).
    #[arg(long)]
    inject_fault: Option<String>,
}

/// Fully resolved run configuration: defaults, overridden by the config
/// file, overridden by command-line flags.
struct RunConfig {
    models: Vec<Model>,
    grid: (f64, f64, usize),
    samples: u64,
    seed: u64,
    mode: EvalMode,
    out: Option<PathBuf>,
    format: OutputFormat,
    fault: Option<Fault>,
}

#[derive(PartialEq, Clone, Copy)]
enum OutputFormat {
    Csv,
    Json,
}

const CONFIG_KEYS: [&str; 8] =
    ["model", "grid", "samples", "seed", "mode", "out", "format", "inject_fault"];

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got {line:?}", lineno + 1))?;
        let key = key.trim();
        if !CONFIG_KEYS.contains(&key) {
            return Err(format!("line {}: unknown key {key:?}", lineno + 1));
        }
        map.insert(key.to_owned(), value.trim().to_owned());
    }
    Ok(map)
}

fn parse_models(text: &str) -> Result<Vec<Model>, String> {
    text.split(',')
        .map(|m| match m.trim() {
            "quantum" => Ok(Model::Quantum),
            "bell" => Ok(Model::Bell),
            "clifford" => Ok(Model::Clifford),
            other => Err(format!("unknown model {other:?}")),
        })
        .collect()
}

fn parse_grid(text: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("grid must be start,stop,steps, got {text:?}"));
    }
    let start: f64 = parts[0].parse().map_err(|_| format!("bad grid start {:?}", parts[0]))?;
    let stop: f64 = parts[1].parse().map_err(|_| format!("bad grid stop {:?}", parts[1]))?;
    let steps: usize = parts[2].parse().map_err(|_| format!("bad grid steps {:?}", parts[2]))?;
    if steps < 2 {
        return Err("grid needs at least 2 steps".to_owned());
    }
    Ok((start, stop, steps))
}

fn resolve(args: &CommonArgs) -> Result<RunConfig, String> {
    let file = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    let pick = |cli: &Option<String>, key: &str| -> Option<String> {
        cli.clone().or_else(|| file.get(key).cloned())
    };

    let models = match pick(&args.model, "model") {
        Some(text) => parse_models(&text)?,
        None => vec![Model::Quantum, Model::Bell, Model::Clifford],
    };
    let grid = match pick(&args.grid, "grid") {
        Some(text) => parse_grid(&text)?,
        None => (0.0, 180.0, 37),
    };
    let samples = match args.samples {
        Some(n) => n,
        None => match file.get("samples") {
            Some(text) => text.parse().map_err(|_| format!("bad samples {text:?}"))?,
            None => 1_000_000,
        },
    };
    if samples < 1 {
        return Err("samples must be at least 1".to_owned());
    }
    let seed = match args.seed {
        Some(s) => s,
        None => match file.get("seed") {
            Some(text) => text.parse().map_err(|_| format!("bad seed {text:?}"))?,
            None => 0,
        },
    };
    let mode = match pick(&args.mode, "mode").as_deref() {
        None | Some("exact") => EvalMode::Exact,
        Some("mc") | Some("monte_carlo") => EvalMode::MonteCarlo,
        Some(other) => return Err(format!("unknown mode {other:?}")),
    };
    let out = args.out.clone().or_else(|| file.get("out").map(PathBuf::from));
    let format = match pick(&args.format, "format").as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => return Err(format!("unknown format {other:?}")),
    };
    let fault = match pick(&args.inject_fault, "inject_fault") {
        Some(name) => {
            Some(Fault::parse(&name).ok_or_else(|| format!("unknown fault {name:?}"))?)
        }
        None => None,
    };
    Ok(RunConfig { models, grid, samples, seed, mode, out, format, fault })
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run_verify(cfg: &RunConfig) -> Result<bool, String> {
    let reports = run_suite(cfg.seed, cfg.fault);
    let mut all_passed = true;
    let mut lines = String::new();
    for r in &reports {
        all_passed &= r.passed;
        lines.push_str(&format!(
            "{} {:<32} max_deviation={} tolerance={}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            sig12(r.max_deviation),
            sig12(r.tolerance),
        ));
    }
    match cfg.format {
        OutputFormat::Csv => emit(&cfg.out, &lines)?,
        OutputFormat::Json => {
            let doc: Vec<_> = reports.iter().map(check_json).collect();
            emit(&cfg.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
        }
    }
    Ok(all_passed)
}

fn check_json(r: &epr_lab::verify::CheckReport) -> serde_json::Value {
    serde_json::json!({
        "name": r.name,
        "max_deviation": r.max_deviation,
        "tolerance": r.tolerance,
        "passed": r.passed,
    })
}

struct CorrelateRow {
    theta_deg: f64,
    quantum: f64,
    bell_closed: f64,
    bell_mc: f64,
    bell_mc_stderr: f64,
    clifford_exact: f64,
}

fn correlate_rows(cfg: &RunConfig) -> Result<(Vec<CorrelateRow>, bool), String> {
    let (start, stop, steps) = cfg.grid;
    let a = UnitVector3::X;
    let mut rows = Vec::with_capacity(steps);
    let mut dominance_ok = true;
    for i in 0..steps {
        let theta_deg = start + (stop - start) * i as f64 / (steps - 1) as f64;
        let b = UnitVector3::in_plane(&UnitVector3::X, &UnitVector3::Y, theta_deg.to_radians())
            .map_err(|e| e.to_string())?;
        let mc_cfg = SamplerConfig::new(derive_seed(cfg.seed, i as u64), cfg.samples);
        let mc = estimate_joint(HvModel::Bell, &a, &b, &mc_cfg).map_err(|e| e.to_string())?;
        let row = CorrelateRow {
            theta_deg,
            quantum: singlet_expectation_joint(&a, &b),
            bell_closed: bell_joint_closed(&a, &b),
            bell_mc: mc.value.scalar_part(),
            bell_mc_stderr: mc.standard_error,
            clifford_exact: clifford_joint_exact(&a, &b).value.scalar_part(),
        };
        if row.quantum.abs() < row.bell_closed.abs() - DOMINANCE_TOLERANCE {
            dominance_ok = false;
        }
        rows.push(row);
    }
    Ok((rows, dominance_ok))
}

fn run_correlate(cfg: &RunConfig) -> Result<bool, String> {
    let (rows, dominance_ok) = correlate_rows(cfg)?;
    match cfg.format {
        OutputFormat::Csv => {
            let mut text = String::from(
                "theta_deg,E_quantum,E_bell_closed,E_bell_mc,E_bell_mc_stderr,E_clifford_exact\n",
            );
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    sig12(r.theta_deg),
                    sig12(r.quantum),
                    sig12(r.bell_closed),
                    sig12(r.bell_mc),
                    sig12(r.bell_mc_stderr),
                    sig12(r.clifford_exact),
                ));
            }
            emit(&cfg.out, &text)?;
        }
        OutputFormat::Json => {
            let doc: Vec<_> = rows.iter().map(correlate_json).collect();
            emit(&cfg.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
        }
    }
    Ok(dominance_ok)
}

fn correlate_json(r: &CorrelateRow) -> serde_json::Value {
    serde_json::json!({
        "theta_deg": r.theta_deg,
        "E_quantum": r.quantum,
        "E_bell_closed": r.bell_closed,
        "E_bell_mc": r.bell_mc,
        "E_bell_mc_stderr": r.bell_mc_stderr,
        "E_clifford_exact": r.clifford_exact,
    })
}

fn run_chsh(cfg: &RunConfig) -> Result<bool, String> {
    let resolution = cfg.grid.2.max(8);
    let sampler = SamplerConfig::new(cfg.seed, cfg.samples);
    let mut within_bounds = true;
    let mut csv = String::from(SWEEP_CSV_HEADER);
    csv.push('\n');
    let mut summaries = Vec::new();
    for model in &cfg.models {
        let report = chsh_sweep(
            *model,
            (&UnitVector3::X, &UnitVector3::Y),
            resolution,
            &sampler,
            cfg.mode,
        )
        .map_err(|e| e.to_string())?;
        if report.max_abs_s > report.bound + 5.0 * report.standard_error + DOMINANCE_TOLERANCE {
            within_bounds = false;
        }
        csv.push_str(&epr_lab::chsh::sweep_csv_row(&report));
        csv.push('\n');
        summaries.push(SweepSummary::from(&report));
    }
    let json = format!("{}\n", serde_json::to_string_pretty(&summaries).unwrap());
    match (cfg.format, &cfg.out) {
        (OutputFormat::Json, out) => emit(out, &json)?,
        (OutputFormat::Csv, None) => {
            print!("{csv}");
            print!("{json}");
        }
        (OutputFormat::Csv, Some(path)) => {
            emit(&Some(path.clone()), &csv)?;
            let mut json_path = path.clone();
            json_path.set_extension("json");
            emit(&Some(json_path), &json)?;
        }
    }
    Ok(within_bounds)
}

fn run_report(cfg: &RunConfig) -> Result<bool, String> {
    let checks = run_suite(cfg.seed, cfg.fault);
    let all_checks_pass = checks.iter().all(|r| r.passed);
    let (rows, dominance_ok) = correlate_rows(cfg)?;
    let resolution = cfg.grid.2.max(8);
    let sampler = SamplerConfig::new(cfg.seed, cfg.samples);
    let mut within_bounds = true;
    let mut summaries = Vec::new();
    for model in &cfg.models {
        let report = chsh_sweep(
            *model,
            (&UnitVector3::X, &UnitVector3::Y),
            resolution,
            &sampler,
            cfg.mode,
        )
        .map_err(|e| e.to_string())?;
        if report.max_abs_s > report.bound + 5.0 * report.standard_error + DOMINANCE_TOLERANCE {
            within_bounds = false;
        }
        summaries.push(SweepSummary::from(&report));
    }
    let doc = serde_json::json!({
        "verify": checks.iter().map(check_json).collect::<Vec<_>>(),
        "correlate": {
            "rows": rows.iter().map(correlate_json).collect::<Vec<_>>(),
            "dominance_ok": dominance_ok,
        },
        "chsh": summaries,
        "seed": cfg.seed,
        "samples": cfg.samples,
    });
    emit(&cfg.out, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
    Ok(all_checks_pass && dominance_ok && within_bounds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, runner): (&CommonArgs, fn(&RunConfig) -> Result<bool, String>) =
        match &cli.command {
            Command::Verify(a) => (a, run_verify),
            Command::Correlate(a) => (a, run_correlate),
            Command::Chsh(a) => (a, run_chsh),
            Command::Report(a) => (a, run_report),
        };
    let cfg = match resolve(args) {
        Ok(cfg) => cfg,
        Err(message) => {
            eprintln!("config error: {message}");
            return ExitCode::from(2);
        }
    };
    match runner(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("config error: {message}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0,180,37").unwrap(), (0.0, 180.0, 37));
        assert!(parse_grid("0,180").is_err());
        assert!(parse_grid("0,180,1").is_err());
        assert!(parse_grid("a,b,c").is_err());
    }

    #[test]
    fn model_parsing() {
        assert_eq!(
            parse_models("quantum, bell,clifford").unwrap(),
            vec![Model::Quantum, Model::Bell, Model::Clifford]
        );
        assert!(parse_models("einstein").is_err());
    }
}
