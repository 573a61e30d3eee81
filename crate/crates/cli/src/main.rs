use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isogeo::surface::{DerivativeMode, GaussMapKind};
use isogeo_cli::commands;
use isogeo_cli::config::{parse_param, RunConfig};
use isogeo_cli::error::Result;
use isogeo_cli::{exit_code, EXIT_INVALID, EXIT_PASS};

#[derive(Parser)]
#[command(name = "isogeo", version, about = "Gauss-map eigenvalue checks for surfaces in isotropic 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a surface and write an OBJ mesh plus JSON metadata.
    Generate(RunArgs),
    /// Check -ΔG = λG on a grid and write a JSON report.
    Verify(RunArgs),
    /// Eigenvalues of a boundary problem as CSV and JSON.
    Spectrum(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Minimal,
    Parabolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ClosedForm,
    FiniteDifference,
}

#[derive(Args)]
struct RunArgs {
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Family parameter, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    #[arg(long, num_args = 2, value_names = ["NU", "NT"])]
    grid: Option<Vec<usize>>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    gauss_map: Option<MapArg>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

impl RunArgs {
    fn into_config(self) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            family: self.family,
            params: self.params.into_iter().collect(),
            grid: self.grid.map(|g| [g[0], g[1]]),
            tol: self.tol,
            out: self.out,
            gauss_map: self.gauss_map.map(|m| match m {
                MapArg::Minimal => GaussMapKind::Minimal,
                MapArg::Parabolic => GaussMapKind::Parabolic,
            }),
            derivative_mode: self.mode.map(|m| match m {
                ModeArg::ClosedForm => DerivativeMode::ClosedForm,
                ModeArg::FiniteDifference => DerivativeMode::FiniteDifference,
            }),
        };
        Ok(base.merge(flags))
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate(args) => {
            commands::generate(&args.into_config()?)?;
            Ok(EXIT_PASS)
        }
        Command::Verify(args) => {
            let cfg = args.into_config()?;
            let report = commands::verify(&cfg)?;
            if let Some(json) = commands::write_verify(&cfg, &report)? {
                print!("{json}");
            }
            Ok(exit_code(report.outcome))
        }
        Command::Spectrum(args) => {
            let cfg = args.into_config()?;
            let report = commands::spectrum(&cfg)?;
            if let Some(json) = commands::write_spectrum(&cfg, &report)? {
                print!("{json}");
            }
            Ok(exit_code(report.outcome))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are invalid input; clap's own code 2 means inconclusive here.
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
