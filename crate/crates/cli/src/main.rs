use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use helmcauchy_core::experiments::{self, report, Example2Solver, Experiment, ExperimentConfig};
use helmcauchy_core::Result;

/// Reproduces the error tables, blow-up demonstration, bound tables and
/// figure data of the spectral cutoff method for the Helmholtz Cauchy problem.
#[derive(Parser, Debug)]
#[command(name = "helmcauchy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncation errors on the first example.
    Table1(Common),
    /// Quasi-boundary errors on the first example.
    Table2(Common),
    /// Nonlinear scheme errors on the second example.
    Table3 {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Solver::March)]
        solver: Solver,
    },
    /// Growth of the unregularized solution on the instability family.
    Blowup(Common),
    /// Moduli of the regularized and exact spectra, one CSV per (delta, z0).
    Figure(Common),
    /// Stability function and error bounds per (delta, z0).
    Bounds(Common),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Solver {
    March,
    FixedPoint,
}

#[derive(Args, Debug)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Noise levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    delta: Vec<f64>,
    /// Reporting depths, comma separated.
    #[arg(long, value_delimiter = ',')]
    z0: Vec<f64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    spacing_divisor: Option<f64>,
    #[arg(long)]
    quad_order: Option<usize>,
    #[arg(long)]
    volterra_steps: Option<usize>,
}

impl Common {
    fn config(&self, experiment: Experiment) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p, experiment)?,
            None => ExperimentConfig::default_for(experiment),
        };
        cfg.experiment = experiment;
        if !self.delta.is_empty() {
            cfg.deltas = self.delta.clone();
        }
        if !self.z0.is_empty() {
            cfg.z0 = self.z0.clone();
        }
        if let Some(v) = self.spacing_divisor {
            cfg.spacing_divisor = v;
        }
        if let Some(v) = self.quad_order {
            cfg.quad_order = v;
        }
        if let Some(v) = self.volterra_steps {
            cfg.volterra_steps = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<Vec<PathBuf>> {
    let (common, experiment) = match &cli.command {
        Command::Table1(c) => (c, Experiment::Table1),
        Command::Table2(c) => (c, Experiment::Table2),
        Command::Table3 { common, .. } => (common, Experiment::Table3),
        Command::Blowup(c) => (c, Experiment::Blowup),
        Command::Figure(c) => (c, Experiment::Figure),
        Command::Bounds(c) => (c, Experiment::Bounds),
    };
    let cfg = common.config(experiment)?;
    if let Command::Table3 { solver: Solver::FixedPoint, .. } = cli.command {
        let rep = experiments::run_table3_with(&cfg, Example2Solver::FixedPoint)?;
        let path = report::write_with_manifest(&common.out, "table3_fixed_point", &rep.to_csv(), &cfg.echo(), &cfg.hash(), &[])?;
        return Ok(vec![path]);
    }
    experiments::run_to_dir(&cfg, &common.out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("helmcauchy: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
