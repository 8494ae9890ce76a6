mod args;
mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hypzeta_core::Report;

use args::{Cli, Command, SurfaceCommand};
use commands::{CliError, Outcome, EXIT_USAGE};
use config::FileConfig;

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Surface { .. } => "surface info",
        Command::Orders { .. } => "orders",
        Command::Kappa { .. } => "kappa",
        Command::DetLaplacian { .. } => "det-laplacian",
        Command::RuelleLeading { .. } => "ruelle-leading",
        Command::Constants { .. } => "constants",
        Command::Spectrum { .. } => "spectrum",
        Command::Zeta { .. } => "zeta",
        Command::Ruelle { .. } => "ruelle",
        Command::Verify { .. } => "verify",
    }
}

fn max_trace_override(command: &Command) -> Option<u32> {
    match command {
        Command::DetLaplacian { max_trace, .. }
        | Command::Zeta { max_trace, .. }
        | Command::Ruelle { max_trace, .. } => *max_trace,
        _ => None,
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path).map_err(CliError::Usage)?,
        None => FileConfig::default(),
    };
    let opts = config::resolve(
        &file,
        cli.rel_tol,
        cli.gamma2_cutoff,
        max_trace_override(&cli.command),
    )
    .map_err(CliError::Usage)?;
    match &cli.command {
        Command::Surface {
            command: SurfaceCommand::Info { signature },
        } => commands::surface_info(signature),
        Command::Orders { surface, from, to } => commands::orders(surface, *from, *to),
        Command::Kappa { surface, s } => commands::kappa_cmd(surface, *s, &opts),
        Command::DetLaplacian {
            surface,
            s,
            z_value,
            ..
        } => commands::det_laplacian_cmd(surface, *s, *z_value, &opts),
        Command::RuelleLeading { surface } => commands::ruelle_leading_cmd(surface),
        Command::Constants { surface } => commands::constants_cmd(surface),
        Command::Spectrum { max_trace, cache } => {
            commands::spectrum_cmd(*max_trace, cache.as_deref())
        }
        Command::Zeta { s, .. } => commands::zeta_cmd(*s, &opts),
        Command::Ruelle { s, .. } => commands::ruelle_cmd(*s, &opts),
        Command::Verify { tolerance } => commands::verify_cmd(&opts, *tolerance),
    }
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(report: &Report) {
    match serde_json::to_string_pretty(report) {
        Ok(text) => emit(&(text + "\n")),
        Err(e) => eprintln!("error: cannot serialize report: {e}"),
    }
}

fn main() -> ExitCode {
    let json_requested = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            if json_requested {
                let mut report = Report::new("usage");
                report.result("error", e.kind().to_string());
                print_json(&report);
            }
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                print_json(&outcome.report);
            } else {
                emit(&outcome.text);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                let mut report = Report::new(command_name(&cli.command));
                report.result("error", e.to_string());
                print_json(&report);
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
