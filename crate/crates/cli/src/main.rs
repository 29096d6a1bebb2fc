//! `elliptic-lab`: evaluate A(p, q), verify its invariance and the identities
//! behind it, compute Hall-geometry factors, and sweep parameter grids.
//!
//! Exit status: 0 on success, 1 when quadrature does not converge or a
//! verification fails, 2 on invalid input or an unwritable output path.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Outcome, RouteArg, SweepFormat};
use config::Config;
use output::Format;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, config or paths; exit status 2.
    Usage(String),
    /// Numerical breakdown; exit status 1.
    Numerical(String),
}

impl From<elliptic_lab_core::Error> for Failure {
    fn from(e: elliptic_lab_core::Error) -> Self {
        use elliptic_lab_core::Error;
        match e {
            Error::Domain { name, .. } => Failure::Usage(format!("{}: {e}", flag_for(name))),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

fn flag_for(name: &str) -> String {
    match name {
        "tolerance" | "abs_tol" | "rel_tol" => "--tol".to_string(),
        "steps" => "--p-steps/--q-steps".to_string(),
        other => format!("--{}", other.replace('_', "-")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "elliptic-lab", version, about)]
struct Cli {
    /// Flat `key = value` file supplying defaults for any flag.
    #[arg(long, global = true, env = "ELLIPTIC_LAB_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate A(p, q) by one route or all four.
    A {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        /// Quadrature tolerance (absolute and relative) [default: 1e-12]
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check an identity and exit non-zero if it fails.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Hall-geometry factor.
    Hall {
        #[command(subcommand)]
        kind: HallKind,
    },
    /// Invariance check over linspace(0.1, 0.9) grids in p and q.
    Sweep {
        #[arg(long)]
        p_steps: Option<usize>,
        #[arg(long)]
        q_steps: Option<usize>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Relative pass tolerance [default: 1e-9]
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<SweepFormat>,
    },
}

#[derive(Args, Debug)]
struct PqArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
}

#[derive(Args, Debug)]
struct LambdaArgs {
    #[arg(long, allow_negative_numbers = true)]
    lambda_f: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda_p: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// A(p, q) = A(p', q') [tol default: 1e-9]
    Invariance {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Every identity between the two forms of A [tol default: 1e-9]
    Chain {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// G/√(λ_f λ_p) unchanged by (λ_f, λ_p) -> (2/λ_f, 2/λ_p) [tol default: 1e-8]
    HallSymmetry {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand, Debug)]
enum HallKind {
    /// G(λ_f, λ_p) and G/√(λ_f λ_p).
    G {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// Quadrature tolerance [default: 1e-12]
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match cli.command {
        Command::A {
            pq,
            route,
            tol,
            format,
        } => commands::cmd_a(&cfg, pq.p, pq.q, route, tol, format),
        Command::Verify { kind } => match kind {
            VerifyKind::Invariance { pq, tol, format } => {
                commands::cmd_verify_invariance(&cfg, pq.p, pq.q, tol, format)
            }
            VerifyKind::Chain { pq, tol, format } => {
                commands::cmd_verify_chain(&cfg, pq.p, pq.q, tol, format)
            }
            VerifyKind::HallSymmetry {
                lambda,
                tol,
                format,
            } => commands::cmd_verify_hall(&cfg, lambda.lambda_f, lambda.lambda_p, tol, format),
        },
        Command::Hall {
            kind:
                HallKind::G {
                    lambda,
                    tol,
                    format,
                },
        } => commands::cmd_hall_g(&cfg, lambda.lambda_f, lambda.lambda_p, tol, format),
        Command::Sweep {
            p_steps,
            q_steps,
            out,
            tol,
            format,
        } => commands::cmd_sweep(&cfg, p_steps, q_steps, out, tol, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if let Some(note) = outcome.note {
                eprintln!("elliptic-lab: {note}");
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("elliptic-lab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("elliptic-lab: {msg}");
            ExitCode::from(1)
        }
    }
}
