//! The `spinid` command line.
//!
//! Exit codes: 0 on success, 1 when a requested verification finds a
//! failing tuple, 2 on usage, parse or domain errors.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::charid::{
    b_coeffs, build_identity, char_coeffs, power_sum, verify_identity_jobs, Normalization,
    VerifyMode,
};
use crate::rewrite::{parse, reduce_degree, render_normal_form, Format};
use crate::spinrep::SpinRep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "spinid",
    version,
    about = "Exact spin-matrix identities and expression reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixFormat {
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExprFormat {
    Plain,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NormArg {
    Monic,
    Integral,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the spin matrices S1, S2, S3 of dimension D.
    Gen {
        dim: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
    },
    /// Print the reduction identity of dimension D, optionally verifying it.
    Identity {
        dim: usize,
        #[arg(long, value_enum, default_value = "monic")]
        normalization: NormArg,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
        /// List every similar term instead of collapsing them (LaTeX only).
        #[arg(long)]
        expanded: bool,
        /// `exhaustive` or `sampled:COUNT:SEED`.
        #[arg(long, value_parser = parse_verify_mode)]
        verify: Option<VerifyMode>,
        /// Dimension of the representation used for verification.
        #[arg(long)]
        rep_dim: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Reduce an expression to its normal form in dimension D.
    Reduce {
        expr: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: ExprFormat,
    },
    /// Characteristic-equation coefficients a_p and identity coefficients b_p.
    Coeffs {
        dim: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: TableFormat,
    },
    /// Sum of q^R for q = 0..N.
    Sums { r: usize, n: u64 },
}

fn parse_verify_mode(s: &str) -> Result<VerifyMode, String> {
    if s == "exhaustive" {
        return Ok(VerifyMode::Exhaustive);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["sampled", count, seed] => {
            let count = count
                .parse()
                .map_err(|e| format!("bad sample count: {e}"))?;
            let seed = seed.parse().map_err(|e| format!("bad seed: {e}"))?;
            Ok(VerifyMode::Sampled { count, seed })
        }
        _ => Err("expected `exhaustive` or `sampled:COUNT:SEED`".to_string()),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Gen { dim, format } => {
            let rep = SpinRep::new(dim).map_err(|e| e.to_string())?;
            match format {
                MatrixFormat::Json => writeln!(out, "{}", rep.to_json()).map_err(io)?,
                MatrixFormat::Latex => writeln!(out, "{}", rep.to_latex()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Identity {
            dim,
            normalization,
            format,
            expanded,
            verify,
            rep_dim,
            jobs,
        } => {
            let ident = build_identity(dim).map_err(|e| e.to_string())?;
            let norm = match normalization {
                NormArg::Monic => Normalization::Monic,
                NormArg::Integral => Normalization::Integral,
            };
            match format {
                MatrixFormat::Json => {
                    let j =
                        serde_json::to_string(&ident.to_json(norm)).map_err(|e| e.to_string())?;
                    writeln!(out, "{j}").map_err(io)?;
                }
                MatrixFormat::Latex => {
                    writeln!(out, "{}", ident.to_latex(norm, expanded)).map_err(io)?
                }
            }
            let Some(mode) = verify else {
                return Ok(EXIT_OK);
            };
            let rep = SpinRep::new(rep_dim.unwrap_or(dim)).map_err(|e| e.to_string())?;
            let report = verify_identity_jobs(&rep, &ident, mode, jobs.max(1));
            write!(err, "{report}").map_err(io)?;
            Ok(if report.is_verified() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Reduce { expr, dim, format } => {
            let poly = parse(&expr).map_err(|e| format!("parse error: {e}"))?;
            let nf = reduce_degree(&poly, dim).map_err(|e| e.to_string())?;
            let format = match format {
                ExprFormat::Plain => Format::Plain,
                ExprFormat::Latex => Format::Latex,
                ExprFormat::Json => Format::Json,
            };
            writeln!(out, "{}", render_normal_form(&nf, format)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Coeffs { dim, format } => {
            let cc = char_coeffs(dim).map_err(|e| e.to_string())?;
            let b = b_coeffs(dim).map_err(|e| e.to_string())?;
            match format {
                TableFormat::Plain => {
                    writeln!(out, "D = {dim}").map_err(io)?;
                    writeln!(
                        out,
                        "characteristic: {}",
                        characteristic_text(&cc.integral_dense())
                    )
                    .map_err(io)?;
                    writeln!(out, "p\ta_p\tb_p").map_err(io)?;
                    for (p, (a, b)) in cc.a.iter().zip(&b).enumerate() {
                        writeln!(out, "{}\t{a}\t{b}", p + 1).map_err(io)?;
                    }
                }
                TableFormat::Json => {
                    let j = serde_json::json!({
                        "dim": dim,
                        "a": cc.a.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "b": b.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{j}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sums { r, n } => {
            writeln!(out, "{}", power_sum(r, n)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// `16*S^4 - 40*S^2 + 9 = 0` from dense integer coefficients, highest
/// power first.
fn characteristic_text(coeffs: &[BigInt]) -> String {
    let deg = coeffs.len() - 1;
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = deg - k;
        let var = match power {
            0 => String::new(),
            1 => "S".to_string(),
            _ => format!("S^{power}"),
        };
        let mag = c.abs();
        let body = match (mag.is_one(), var.is_empty()) {
            (_, true) => mag.to_string(),
            (true, false) => var,
            (false, false) => format!("{mag}*{var}"),
        };
        parts.push((c.is_negative(), body));
    }
    let mut text = String::new();
    for (neg, body) in parts {
        if text.is_empty() {
            if neg {
                text.push('-');
            }
        } else {
            text.push_str(if neg { " - " } else { " + " });
        }
        text.push_str(&body);
    }
    text.push_str(" = 0");
    text
}
