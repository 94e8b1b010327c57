//! Command-line front end for `qf-core`: argument parsing, output formats,
//! exit codes, and the parallel scans.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command, OutputFormat};
use commands::Context;
use report::{Render, Status};

pub const EXIT_OK: i32 = 0;
/// A counterexample, table mismatch or theory violation.
pub const EXIT_VERIFICATION: i32 = 1;
/// Bad arguments or input outside a command's domain.
pub const EXIT_USAGE: i32 = 2;

/// What one invocation printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

fn emit<R: Render>(report: &R, format: OutputFormat) -> Outcome {
    let stdout = match format {
        OutputFormat::Human => report.human(),
        OutputFormat::Json => match serde_json::to_string_pretty(report) {
            Ok(mut s) => {
                s.push('\n');
                s
            }
            Err(e) => return Outcome::usage(format!("error: {e}\n")),
        },
        OutputFormat::Tsv => match report.tsv() {
            Some(s) => s,
            None => {
                return Outcome::usage("error: tsv output is only available for table1 and scan\n")
            }
        },
    };
    let code = match report.status() {
        Status::Ok => EXIT_OK,
        Status::VerificationFailed => EXIT_VERIFICATION,
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn finish<R: Render>(result: qf_core::Result<R>, format: OutputFormat) -> Outcome {
    match result {
        Ok(report) => emit(&report, format),
        Err(e) => {
            let code = if e.is_verification_failure() {
                EXIT_VERIFICATION
            } else {
                EXIT_USAGE
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let ctx = match Context::new(cli.global.threads, cli.global.rho_budget) {
        Ok(ctx) => ctx,
        Err(e) => return Outcome::usage(format!("error: cannot start thread pool: {e}\n")),
    };
    let format = cli.global.format;
    match &cli.command {
        Command::Construct { y, p, n, m, c } => {
            finish(commands::construct(y, p, *n, *m, c.as_ref(), &ctx), format)
        }
        Command::Check { z, y, n, p, m } => finish(commands::check(z, y, *n, p, *m, &ctx), format),
        Command::Xi { y, p, n, m } => finish(commands::xi(y, p, *n, *m, &ctx), format),
        Command::Crt { y, n, parts } => finish(commands::crt(y, *n, parts, &ctx), format),
        Command::Sum { p, n, m, c, r } => {
            finish(commands::sum(p, *n, *m, c, r.as_ref(), &ctx), format)
        }
        Command::Primroot { p, from } => finish(commands::primroot(p, from.as_ref(), &ctx), format),
        Command::Q { z, y, n } => finish(commands::q(z, y, *n, &ctx), format),
        Command::Factor { n } => finish(commands::factor(n, &ctx), format),
        Command::Table1 => finish(commands::table(&qf_core::scan::TABLE1, &ctx), format),
        Command::Scan {
            n,
            ymax,
            zmax,
            tsv,
            json,
        } => {
            let format = match (tsv, json) {
                (true, _) => OutputFormat::Tsv,
                (_, true) => OutputFormat::Json,
                _ => format,
            };
            finish(commands::conjecture_scan(*n, *ymax, *zmax, &ctx), format)
        }
        Command::Goormaghtigh => finish(commands::goormaghtigh(), format),
        Command::Mersenne { n } => finish(commands::mersenne(*n, &ctx), format),
        Command::Probe { n, ymax, zmax } => finish(commands::probe(*n, *ymax, *zmax, &ctx), format),
        Command::Verify { only } => {
            match verify::verify(&verify::Fixtures::default(), only.as_deref(), &ctx) {
                Some(report) => emit(&report, format),
                None => Outcome::usage(format!(
                    "error: unknown fixture {:?}; expected one of {}\n",
                    only.as_deref().unwrap_or_default(),
                    verify::FIXTURE_IDS.join(", ")
                )),
            }
        }
    }
}
