use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use paracontact_core::pipeline::{
    cmd_check, cmd_curvature, cmd_report, cmd_soliton, SolitonMode, SolitonOptions,
};
use paracontact_core::{load_manifest, VerdictReport};

/// Exact verification of paracontact structures, curvature and conformal
/// eta-Ricci solitons described by a TOML manifest.
#[derive(Parser)]
#[command(name = "paracontact", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure axioms, normality, para-Sasakian condition and identities.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Christoffel symbols, curvature, Ricci data and signature.
    Curvature {
        file: PathBuf,
        /// Also report values in the named frame from the manifest.
        #[arg(long, value_name = "NAME")]
        frame: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Solve or evaluate the soliton equation and classify the result.
    Soliton(SolitonArgs),
    /// Every applicable pipeline in one report.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(id = "mode", multiple = false)]
struct ModeFlags {
    /// Constant lambda and mu (default).
    #[arg(long)]
    solve: bool,
    /// Allow lambda and mu to depend on the coordinates.
    #[arg(long)]
    almost: bool,
    /// Use the gradient equation with the potential f.
    #[arg(long)]
    gradient: bool,
}

#[derive(Args)]
struct SolitonArgs {
    file: PathBuf,
    #[command(flatten)]
    mode: ModeFlags,
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long)]
    json: bool,
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn run(cli: Cli) -> Result<(VerdictReport, bool), String> {
    let load = |f: &PathBuf| load_manifest(f).map_err(|e| format!("{}: {e}", f.display()));
    let err = |e: paracontact_core::pipeline::PipelineError| e.to_string();
    Ok(match cli.command {
        Command::Check { file, json } => (cmd_check(&load(&file)?).map_err(err)?, json),
        Command::Curvature { file, frame, json } => (
            cmd_curvature(&load(&file)?, frame.as_deref()).map_err(err)?,
            json,
        ),
        Command::Soliton(a) => {
            let mode = if a.mode.almost {
                SolitonMode::Almost
            } else if a.mode.gradient {
                SolitonMode::Gradient
            } else {
                SolitonMode::Solve
            };
            let opts = SolitonOptions {
                mode,
                lambda: a.lambda,
                mu: a.mu,
            };
            (cmd_soliton(&load(&a.file)?, &opts).map_err(err)?, a.json)
        }
        Command::Report { file, json } => (cmd_report(&load(&file)?).map_err(err)?, json),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.failed() {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
