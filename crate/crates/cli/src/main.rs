//! `mhd-certify`: spectral MHD simulation and a-posteriori certification
//! on the d-torus.
//!
//! Exit codes: 0 success; 1 usage or configuration problems; 2 numerical
//! failures (overflow, refinement checks); 3 admissibility rejections.

mod commands;
mod config;
mod output;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use mhd_core::error::ErrorClass;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "mhd-certify",
    version,
    about = "Spectral incompressible MHD on the torus: simulate, certify a-posteriori bounds, compute stability radii, build Beltrami pairs, diagnose decay"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate the truncated MHD system and record a trajectory.
    Simulate(commands::SimulateArgs),
    /// Certify bounds on the exact solution near an approximate one.
    Certify(commands::CertifyArgs),
    /// Stability radius and perturbation envelopes of a decaying base flow.
    Radius(commands::RadiusArgs),
    /// Construct and verify a generalized Beltrami pair.
    Beltrami(commands::BeltramiArgs),
    /// Decay diagnostics (and optional decay budget) of a trajectory.
    Diagnose(commands::DiagnoseArgs),
}

fn configure_threads() -> Result<(), String> {
    if let Ok(value) = std::env::var("MHD_CERTIFY_THREADS") {
        let threads: usize = value
            .parse()
            .map_err(|_| format!("MHD_CERTIFY_THREADS must be a positive integer, got `{value}`"))?;
        if threads == 0 {
            return Err("MHD_CERTIFY_THREADS must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };

    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }

    let result = match &cli.command {
        Command::Simulate(args) => commands::cmd_simulate(args),
        Command::Certify(args) => commands::cmd_certify(args),
        Command::Radius(args) => commands::cmd_radius(args),
        Command::Beltrami(args) => commands::cmd_beltrami(args),
        Command::Diagnose(args) => commands::cmd_diagnose(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e.class() {
                ErrorClass::Input => 1,
                ErrorClass::Numerical => 2,
                ErrorClass::Admissibility => 3,
            };
            ExitCode::from(code)
        }
    }
}
