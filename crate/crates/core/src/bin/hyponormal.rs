use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyponormal::config::{parse_config, ExperimentConfig, EXPERIMENTS};
use hyponormal::principal::GridFunction;
use hyponormal::run_experiment;

#[derive(Parser)]
#[command(name = "hyponormal", version, about = "Batch verification runs for hyponormal weighted-shift models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config and write its report.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the checks as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List registered experiments.
    List,
    /// Dump the principal function of an experiment's model on the polar grid.
    Grid {
        #[arg(long)]
        experiment: String,
        /// Take the model and grid from this config instead of the defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        n_r: Option<usize>,
        #[arg(long)]
        n_theta: Option<usize>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn load_config(path: &Path) -> Result<ExperimentConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(config: &Path, out: &Path, csv: Option<&Path>) -> ExitCode {
    let config = match load_config(config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let report = run_experiment(&config);
    if let Err(e) = report.write_json(out) {
        eprintln!("cannot write {}: {e}", out.display());
        return ExitCode::from(EXIT_FAIL);
    }
    if let Some(csv) = csv {
        if let Err(e) = report.write_checks_csv(csv) {
            eprintln!("cannot write {}: {e}", csv.display());
            return ExitCode::from(EXIT_FAIL);
        }
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    println!("{}: {passed}/{} checks passed", report.experiment, report.checks.len());
    for c in report.checks.iter().filter(|c| !c.pass) {
        println!("  FAIL {}", c.name);
    }
    if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn grid(experiment: &str, config: Option<&Path>, out: &Path, n_r: Option<usize>, n_theta: Option<usize>) -> ExitCode {
    let config = match config {
        Some(path) => match load_config(path) {
            Ok(c) if c.experiment == experiment => c,
            Ok(c) => {
                eprintln!("config error: config is for {:?}, not {experiment:?}", c.experiment);
                return ExitCode::from(EXIT_CONFIG);
            }
            Err(e) => {
                eprintln!("config error: {e}");
                return ExitCode::from(EXIT_CONFIG);
            }
        },
        None => {
            if !hyponormal::config::is_registered(experiment) {
                eprintln!("config error: experiment: unknown experiment {experiment:?}");
                return ExitCode::from(EXIT_CONFIG);
            }
            ExperimentConfig::for_experiment(experiment)
        }
    };
    let model = match config.shift_model() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("config error: model: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let n_r = n_r.unwrap_or(config.grid.n_r);
    let n_theta = n_theta.unwrap_or(config.grid.n_theta);
    let g = match GridFunction::from_model(&model, n_r, n_theta) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("grid error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    if let Err(e) = g.write_csv(out) {
        eprintln!("cannot write {}: {e}", out.display());
        return ExitCode::from(EXIT_FAIL);
    }
    println!("wrote {} rows to {}", n_r * n_theta, out.display());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out, csv } => run(&config, &out, csv.as_deref()),
        Command::List => {
            for (name, about) in EXPERIMENTS {
                println!("{name:<26}{about}");
            }
            ExitCode::SUCCESS
        }
        Command::Grid { experiment, config, out, n_r, n_theta } => {
            grid(&experiment, config.as_deref(), &out, n_r, n_theta)
        }
    }
}
