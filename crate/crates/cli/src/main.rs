use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colloids_cli::commands::anneal::{self, AnnealConfig};
use colloids_cli::commands::energy::{self, Method};
use colloids_cli::commands::solve::{self, SolveOptions};
use colloids_cli::commands::specfun::{self, SpecialFunction};
use colloids_cli::verify::{self, Suite};
use colloids_cli::{init_threads, CliError, OutputDir, Result};
use colloids_model::ConfigFile;
use serde_json::json;

/// Interaction energies of disk colloids in a screened medium.
#[derive(Debug, Parser)]
#[command(name = "colloids", version)]
struct Cli {
    /// Report lengths in physical units (blown-up lengths times ε²).
    #[arg(long, global = true)]
    physical: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a special function, one value per line.
    Specfun {
        #[arg(long = "fn", value_enum)]
        function: SpecialFunction,
        #[arg(long, num_args = 1.., allow_negative_numbers = true, required = true)]
        args: Vec<String>,
        /// Print e^t K_m(t) instead of K_m(t).
        #[arg(long)]
        scaled: bool,
    },
    /// Asymptotic energy of a configuration, optionally over a gap sweep.
    Energy {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Smallest gap sweep, b=min:max:step (blown-up units).
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the exterior problem by collocation, optionally with the grid oracles.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        modes: usize,
        #[arg(long = "colloc")]
        points: usize,
        /// Finite-difference oracle as h,padding.
        #[arg(long)]
        fd: Option<String>,
        /// Also solve the nonlinear problem on the same grid.
        #[arg(long)]
        nonlinear: bool,
        /// Field samples on xmin:xmax:step,ymin:ymax:step (blown-up units).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulated annealing of many particles.
    Anneal {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of evenly spaced snapshots besides the initial and final state.
        #[arg(long, default_value_t = 25)]
        snapshots: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run verification suites; exits 4 if any check fails.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        /// Run only these criterion numbers from the suite.
        #[arg(long = "criterion")]
        only: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn load_particles(path: &Path) -> Result<(String, ConfigFile)> {
    let text = read(path)?;
    let config = ConfigFile::from_toml_str(&text, &path.display().to_string())?;
    Ok((text, config))
}

fn emit(out: &Option<PathBuf>, files: &[(&str, String)], subcommand: &str, resolved: serde_json::Value, seed: Option<u64>) -> Result<()> {
    match out {
        Some(dir) => {
            let mut dir = OutputDir::create(dir)?;
            for (name, contents) in files {
                dir.write(name, contents)?;
            }
            dir.finish(subcommand, resolved, seed)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (k, (_, contents)) in files.iter().enumerate() {
                if k > 0 {
                    let _ = writeln!(stdout);
                }
                let _ = write!(stdout, "{contents}");
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    init_threads()?;
    let physical = cli.physical;
    match cli.command {
        Command::Specfun { function, args, scaled } => {
            for line in specfun::evaluate(function, &args, scaled)? {
                println!("{line}");
            }
        }
        Command::Energy { config, method, sweep, out } => {
            let (text, file) = load_particles(&config)?;
            let bs = sweep.as_deref().map(energy::parse_sweep).transpose()?;
            let rows = energy::energy_table(&file, method, bs.as_deref())?;
            let scale = if physical { file.epsilon * file.epsilon } else { 1.0 };
            let resolved = json!({"config": text, "method": method, "sweep": sweep, "physical": physical});
            emit(&out, &[("energy.csv", energy::to_csv(&rows, scale, physical))], "energy", resolved, None)?;
        }
        Command::Solve { config, modes, points, fd, nonlinear, grid, out } => {
            let (text, file) = load_particles(&config)?;
            let path = config.display().to_string();
            let options = SolveOptions {
                modes,
                points,
                fd: fd.as_deref().map(solve::parse_fd).transpose()?,
                nonlinear: nonlinear.then(|| solve::nonlinear_section(&text, &path)).transpose()?,
                grid: grid.as_deref().map(solve::parse_grid).transpose()?,
            };
            let report = solve::solve(&file.to_configuration()?, &options)?;
            let scale = if physical { file.epsilon * file.epsilon } else { 1.0 };
            let mut files = vec![("summary.csv", report.summary_csv()), ("coefficients.csv", report.coefficients_csv())];
            if options.grid.is_some() {
                files.push(("field.csv", report.field_csv(scale, physical)));
            }
            let resolved = json!({"config": text, "options": options, "physical": physical});
            emit(&out, &files, "solve", resolved, None)?;
        }
        Command::Anneal { config, seed, snapshots, out } => {
            let settings = match &config {
                Some(path) => AnnealConfig::from_toml_str(&read(path)?, &path.display().to_string())?,
                None => AnnealConfig::default(),
            };
            let traj = anneal::run(&settings, seed, snapshots)?;
            let files = [
                ("trajectory.jsonl", anneal::trajectory_jsonl(&traj)),
                ("histograms.csv", anneal::histograms_csv(&traj)),
                ("summary.csv", anneal::summary_csv(&traj)),
            ];
            let resolved = json!({"anneal": settings, "snapshots": snapshots});
            emit(&Some(out), &files, "anneal", resolved, Some(seed))?;
        }
        Command::Verify { suite, only, out } => {
            let ids: Vec<u32> = suite.criteria().into_iter().filter(|id| only.is_empty() || only.contains(id)).collect();
            if ids.is_empty() {
                return Err(CliError::Config(format!("no criteria {only:?} in suite {}", suite.name())));
            }
            let criteria: Vec<_> = ids.into_iter().map(verify::run_criterion).collect();
            let report = verify::report_csv(suite, &criteria);
            emit(&out, &[("report.csv", report.clone())], "verify", json!({"suite": suite, "criteria": only}), None)?;
            if out.is_some() {
                print!("{report}");
            }
            let failed: Vec<String> =
                criteria.iter().filter(|c| !c.passed()).map(|c| c.id.to_string()).collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(format!("criteria {} failed", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("colloids: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
