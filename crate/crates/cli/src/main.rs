use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use desing_core::continuation::Direction;
use desing_core::desing::Side;
use desing_core::Error;

mod commands;
mod selftest;

/// Exact desingularization of linear recurrence and differential operators.
///
/// Operators are written as expressions in `z` and `E` (shift, `E z = (z+1) E`)
/// or `z` and `D` (derivation, `D z = z D + 1`); pass `-` to read from stdin.
#[derive(Parser, Debug)]
#[command(name = "desing", version)]
struct Cli {
    /// Operator ring of the input expressions.
    #[arg(long, value_enum, default_value_t = Ring::Shift, global = true)]
    ring: Ring,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Ring {
    Shift,
    Diff,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular points, singularity polynomials and half-plane bounds.
    Singularities {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Decide apparentness at one singularity, or at every rational one.
    Apparent {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
        /// Trailing (t) or leading (l) singularities; lt lists both.
        #[arg(long, default_value = "t")]
        side: Side,
    },
    /// Remove the apparent trailing singularities.
    Tdesing {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Remove the apparent leading singularities.
    Ldesing {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Remove apparent singularities on both sides.
    Desingboth {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Decide whether a complete desingularization exists.
    Complete {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long, default_value = "lt")]
        side: Side,
    },
    /// Right division `a = q * b + r`.
    Rdivide {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Extend a sequence solution of the recurrence.
    Extend {
        #[arg(allow_hyphen_values = true)]
        op: String,
        /// Comma-separated initial values u(start), u(start+1), ...
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value = "right")]
        dir: Direction,
        /// Index of the first initial value.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        start: String,
        /// Drive with the desingularized operator to cross apparent singularities.
        #[arg(long)]
        desing: bool,
    },
    /// Desingularize a differential operator.
    Ddesing {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Run the built-in regression fixtures.
    Selftest,
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::WrongRing { .. } | Error::Encoding(_) => 2,
            Error::UnsupportedAlgebraicPoint(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

/// Text and JSON renderings of a command result.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// Exit status for successful runs that still report a negative outcome.
    pub code: u8,
}

fn read_arg(s: &str) -> Result<String, Failure> {
    if s != "-" {
        return Ok(s.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn run(cli: Cli) -> Result<Report, Failure> {
    use commands as c;
    let ring = cli.ring;
    match cli.cmd {
        Command::Singularities { op } => c::singularities(ring, &read_arg(&op)?),
        Command::Apparent { op, sigma, side } => c::apparent(ring, &read_arg(&op)?, sigma.as_deref(), side),
        Command::Tdesing { op } => c::tdesing(ring, &read_arg(&op)?),
        Command::Ldesing { op } => c::ldesing(ring, &read_arg(&op)?),
        Command::Desingboth { op } => c::desingboth(ring, &read_arg(&op)?),
        Command::Complete { op, side } => c::complete(ring, &read_arg(&op)?, side),
        Command::Rdivide { a, b } => c::rdivide(ring, &read_arg(&a)?, &read_arg(&b)?),
        Command::Extend {
            op,
            init,
            count,
            dir,
            start,
            desing,
        } => c::extend(ring, &read_arg(&op)?, &init, &start, count, dir, desing),
        Command::Ddesing { op } => c::ddesing(ring, &read_arg(&op)?),
        Command::Selftest => Ok(selftest::run()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            let out = if json {
                format!("{}\n", serde_json::to_string_pretty(&r.json).unwrap())
            } else {
                r.text
            };
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(r.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
