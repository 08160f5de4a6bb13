use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use polytoeplitz::cli::{run, Command, RunConfig};

/// Toeplitz operators on true polyanalytic spaces: verification suites,
/// reducers, spectra, Carleson scans and basis dumps.
#[derive(Parser)]
#[command(name = "polytoeplitz", version)]
struct Args {
    /// Command to run; overrides the config's `command` field.
    #[arg(value_enum)]
    command: Option<Command>,
    /// Flat JSON config; defaults apply to missing fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; overrides the config's `out_dir` field.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(args: &Args) -> polytoeplitz::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(c) = args.command {
        cfg.command = c;
    }
    if let Some(o) = &args.out {
        cfg.out_dir = o.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match load(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
