//! `rfso` — sweep, cross-validate and sample a dual-hop RF/FSO relay link.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration or i/o
//! error.

use clap::{Args, Parser, Subcommand};
use rfso::scenario::{Scenario, SweepAxis, SweepOutput, SweepSpec};
use rfso::sweep;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rfso", version, about = "Dual-hop RF/FSO relay link performance tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a grid sweep and write a results CSV plus a metadata sidecar.
    Sweep(SweepArgs),
    /// Cross-validate closed forms, integrals and Monte Carlo on one scenario.
    Validate(ValidateArgs),
    /// Dump raw channel/SNDR samples as CSV for external analysis.
    Sample(SampleArgs),
}

#[derive(Args)]
struct ScenarioArg {
    /// Scenario JSON path; a built-in representative scenario when omitted.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

impl ScenarioArg {
    fn load(&self) -> Result<Scenario, String> {
        match &self.scenario {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| format!("reading {}: {e}", path.display()))?;
                Scenario::from_json(&text).map_err(|e| e.to_string())
            }
            None => Ok(Scenario::representative()),
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArg,
    /// Output CSV path; metadata goes to <out>.meta.json.
    #[arg(long)]
    out: PathBuf,
    /// Monte Carlo trials per grid point.
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    /// Root seed; every grid point derives its own streams from it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sweep axis: avg_snr_db or gamma_th_db.
    #[arg(long, default_value = "avg_snr_db")]
    axis: String,
    /// Grid as start:stop:step in dB.
    #[arg(long, default_value = "0:40:2")]
    grid: String,
    /// Comma-separated outputs: op_closed, op_quad, op_mc, ec_bound,
    /// ec_approx, ec_numeric, ec_mc, ceilings.
    #[arg(long, default_value = "op_closed,op_quad,op_mc")]
    outputs: String,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    scenario: ScenarioArg,
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    scenario: ScenarioArg,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Number of samples to dump.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{text}' must be start:stop:step"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    let nums = nums.map_err(|e| format!("grid '{text}': {e}"))?;
    SweepSpec::grid_from_range(nums[0], nums[1], nums[2]).map_err(|e| e.to_string())
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<(), String> {
    let scenario = args.scenario.load()?;
    let spec = SweepSpec {
        axis: SweepAxis::parse(&args.axis).map_err(|e| e.to_string())?,
        grid: parse_grid(&args.grid)?,
        outputs: args
            .outputs
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| SweepOutput::parse(s.trim()).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?,
        trials: args.trials,
        seed: args.seed,
    };
    let result = sweep::run_sweep(&scenario, &spec).map_err(|e| e.to_string())?;
    fs::write(&args.out, sweep::to_csv(&result))
        .map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    let meta_path = args.out.with_extension("meta.json");
    fs::write(&meta_path, sweep::meta_to_json(&result))
        .map_err(|e| format!("writing {}: {e}", meta_path.display()))?;
    for w in &result.meta.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "wrote {} points to {} ({} s)",
        result.points.len(),
        args.out.display(),
        result.meta.wall_time_s.round()
    );
    Ok(())
}

fn run_validate_cmd(args: &ValidateArgs) -> Result<bool, String> {
    let scenario = args.scenario.load()?;
    let report = sweep::validate(&scenario, args.trials, args.seed).map_err(|e| e.to_string())?;
    print!("{}", report.render());
    Ok(report.passed())
}

fn run_sample_cmd(args: &SampleArgs) -> Result<(), String> {
    let scenario = args.scenario.load()?;
    let cfg = scenario.resolve().map_err(|e| e.to_string())?;
    let csv = sweep::samples_to_csv(&cfg, args.trials, args.seed);
    fs::write(&args.out, csv).map_err(|e| format!("writing {}: {e}", args.out.display()))?;
    eprintln!("wrote {} samples to {}", args.trials, args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sweep(args) => run_sweep_cmd(args).map(|()| true),
        Command::Validate(args) => run_validate_cmd(args),
        Command::Sample(args) => run_sample_cmd(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
