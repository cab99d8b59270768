//! `triality` — sweep, verify, and audit interferometric damping channels.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use triality_cli::{config, discrepancy, output, sweep, verify, CliError};

#[derive(Parser)]
#[command(
    name = "triality",
    version,
    about = "Visibility / predictability / entanglement sweeps for damped interferometers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a damping channel over a rate grid and write the results.
    Sweep {
        /// Path to a JSON sweep configuration.
        #[arg(long)]
        config: PathBuf,
        /// Directory the output files are written into.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run the randomized verification suites and report worst deviations.
    Verify {
        /// Seed for the deterministic random-case generator.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random cases per suite.
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
    },
    /// Audit the published cascade update formulas against the Kraus oracle.
    Discrepancy {
        /// Damping rate of the lower decay step.
        #[arg(long, allow_negative_numbers = true)]
        gamma1: f64,
        /// Damping rate of the upper decay step.
        #[arg(long, allow_negative_numbers = true)]
        gamma2: f64,
        /// Also write the audit as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Sweep { config, out_dir } => sweep_command(&config, &out_dir),
        Command::Verify { seed, cases } => verify_command(seed, cases),
        Command::Discrepancy {
            gamma1,
            gamma2,
            json,
        } => discrepancy_command(gamma1, gamma2, json.as_deref()),
    }
}

fn sweep_command(config_path: &Path, out_dir: &Path) -> Result<ExitCode, CliError> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", config_path.display())))?;
    let plan = config::parse_config(&text)?.plan()?;
    let records = sweep::run_sweep(&plan)?;

    let worst_sum = records
        .iter()
        .map(|r| (r.sum - 1.0).abs())
        .fold(0.0, f64::max);
    println!(
        "swept {} over {} points of {}",
        plan.kind.as_str(),
        records.len(),
        sweep::swept_axis_label(&plan)
    );
    println!("worst |v2 + p2 + e2 - 1| = {worst_sum:.3e}");
    if records.iter().any(|r| r.v2_cf.is_some()) {
        let worst_cf = records
            .iter()
            .filter_map(|r| {
                let dv = (r.v2_cf? - r.v2).abs();
                let dp = (r.p2_cf? - r.p2).abs();
                let de = (r.e2_cf? - r.e2).abs();
                Some(dv.max(dp).max(de))
            })
            .fold(0.0, f64::max);
        println!("worst closed-form deviation = {worst_cf:.3e}");
    }

    for path in output::write_outputs(&records, &plan, out_dir)? {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_command(seed: u64, cases: usize) -> Result<ExitCode, CliError> {
    if cases == 0 {
        return Err(CliError::Config("--cases must be at least 1".into()));
    }
    let report = verify::run_verify(seed, cases);
    print!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn discrepancy_command(
    gamma1: f64,
    gamma2: f64,
    json: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let audits = discrepancy::run_discrepancy(gamma1, gamma2)?;
    print!("{}", discrepancy::render_table(&audits));
    if let Some(path) = json {
        fs::write(path, discrepancy::json_text(&audits))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}
