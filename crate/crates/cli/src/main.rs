//! `mihsim`: handover-scheme simulation, figure-data sweeps, model
//! validation and message codec tooling.
//!
//! Exit status: 0 success, 1 usage error, 2 validation failure.

mod codec_cmd;
mod figure;
mod simulate;
mod validate_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mihsim_core::config::RunConfig;

#[derive(Parser)]
#[command(name = "mihsim", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Path to a `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path (figure/metrics CSV) or stem (simulate).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Produce the CSV data behind one figure (fig10..fig17).
    Figure {
        /// Figure id: fig10..fig17.
        id: String,
    },
    /// Run one scenario (or a one-axis sweep) and write metrics + transcript.
    Simulate,
    /// Cross-validate the simulator against the closed-form model.
    Validate {
        /// Tamper one model-side message size, e.g. `M_PBU=77` (repeatable).
        #[arg(long = "override-size", value_name = "ABBREV=OCTETS")]
        override_size: Vec<String>,
    },
    /// Encode or decode wire messages.
    Codec {
        #[command(subcommand)]
        op: CodecOp,
    },
}

#[derive(Subcommand)]
enum CodecOp {
    /// Encode a field-spec text file to a hex dump.
    Encode { input: PathBuf },
    /// Decode a hex-dump file to a field listing.
    Decode { input: PathBuf },
}

/// Failures that map onto the documented exit codes.
pub enum CmdError {
    Usage(String),
    Validation(String),
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> CmdError {
        CmdError::Usage(msg.into())
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CmdError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CmdError::usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            RunConfig::parse(&text)
                .map_err(|e| CmdError::usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful terminations
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = (|| -> Result<(), CmdError> {
        let cfg = load_config(&cli)?;
        match &cli.command {
            Command::Figure { id } => figure::run(id, &cfg, cli.out.as_deref()),
            Command::Simulate => simulate::run(&cfg, cli.out.as_deref()),
            Command::Validate { override_size } => validate_cmd::run(&cfg, override_size),
            Command::Codec { op } => match op {
                CodecOp::Encode { input } => codec_cmd::encode(input, cli.out.as_deref()),
                CodecOp::Decode { input } => codec_cmd::decode(input, cli.out.as_deref()),
            },
        }
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Validation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn write_output(out: Option<&std::path::Path>, content: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
