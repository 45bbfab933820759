//! `twalex`: twisted Alexander polynomials and abelian cover checks from
//! JSON job files.
//!
//! Exit codes: 0 success, 1 the two sides of a cover check differ,
//! 2 invalid input, 3 twisted complex not acyclic, 4 unsupported input.

mod commands;
mod job;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use commands::{error_outcome, run, Command, Options, Outcome};
use job::Job;
use twalex_core::Error;

#[derive(Debug, Parser)]
#[command(name = "twalex", version, about)]
struct Cli {
    /// Job file (JSON); `-` reads standard input.
    #[arg(long, required_unless_present = "batch", conflicts_with = "batch")]
    input: Option<PathBuf>,

    /// File with one JSON job per line; prints one JSON result per line.
    #[arg(long)]
    batch: Option<PathBuf>,

    /// Defaults to the job's "command" field, then to compute.
    #[arg(long, value_enum)]
    command: Option<Command>,

    /// Work in Q(zeta_N) for this N instead of the smallest sufficient one.
    #[arg(long)]
    conductor: Option<u64>,

    /// Machine-readable output only.
    #[arg(long)]
    json: bool,

    /// Skip the relator and determinant checks on rho (for testing).
    #[arg(long, hide = true)]
    skip_rep_check: bool,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}

/// Writes one line to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn command_for(cli: &Cli, job: &Job) -> Result<Command, Error> {
    match (&job.command, cli.command) {
        (_, Some(c)) => Ok(c),
        (Some(name), None) => Command::parse(name),
        (None, None) => Ok(Command::Compute),
    }
}

fn run_text(cli: &Cli, text: &str, opts: Options) -> Outcome {
    let job = match Job::from_json(text) {
        Ok(j) => j,
        Err(e) => return error_outcome(cli.command, &e),
    };
    match command_for(cli, &job) {
        Ok(c) => run(c, &job, opts),
        Err(e) => error_outcome(None, &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        conductor: cli.conductor,
        skip_rep_check: cli.skip_rep_check,
    };

    if let Some(path) = &cli.batch {
        let text = match read(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        };
        let mut worst = 0;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut out = run_text(&cli, line, opts);
            out.json["line"] = (i + 1).into();
            out.json["exit"] = out.code.into();
            emit(&out.json.to_string());
            worst = worst.max(out.code);
        }
        return ExitCode::from(worst as u8);
    }

    let out = match read(cli.input.as_ref().unwrap()) {
        Ok(text) => run_text(&cli, &text, opts),
        Err(e) => error_outcome(cli.command, &e),
    };
    if cli.json {
        emit(&serde_json::to_string_pretty(&out.json).unwrap());
    } else if out.json.get("error").is_some() {
        eprintln!("{}", out.text);
    } else {
        emit(&out.text);
    }
    ExitCode::from(out.code as u8)
}
