//! `catsize`: effective GHZ size of the cat state |φ₁⟩^⊗N + |φ₂⟩^⊗N.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use catsize_core::decoherence::{decay_curve, linear_grid};
use catsize_core::distillation::{outcome_distribution, simulate_protocol, DistributionRecord};
use catsize_core::loss::{loss_curve, loss_grid};
use catsize_core::validation::{run_validation, TABLE_HEADER};
use catsize_core::{CatParams, EffectiveSizeReport};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "catsize",
    version,
    about = "Effective GHZ size of macroscopic superpositions"
)]
struct Cli {
    /// Write the payload here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "angle")]
struct AngleArgs {
    /// Half-angle ε between the two single-qubit states, in radians.
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,

    /// Overlap deficit 1 − |⟨φ₁|φ₂⟩|², converted via ε = asin(√·).
    #[arg(long, allow_negative_numbers = true)]
    epsilon_sq_overlap: Option<f64>,
}

#[derive(Args)]
struct StateArgs {
    /// Number of qubits N.
    #[arg(long)]
    n: u64,

    #[command(flatten)]
    angle: AngleArgs,
}

impl StateArgs {
    fn params(&self) -> catsize_core::Result<CatParams> {
        match (self.angle.epsilon, self.angle.epsilon_sq_overlap) {
            (Some(e), None) => CatParams::new(self.n, e),
            (None, Some(d)) => CatParams::from_overlap_deficit(self.n, d),
            _ => unreachable!("clap enforces exactly one angle flag"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Every effective-size measure as a JSON report.
    EffectiveSize {
        #[command(flatten)]
        state: StateArgs,
    },
    /// CSV of cat vs GHZ coherence under dephasing.
    DecoherenceCurve {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_negative_numbers = true)]
        gamma_t_max: f64,
        #[arg(long)]
        steps: usize,
        /// GHZ size to compare against [default: max(1, round(N sin²ε))].
        #[arg(long)]
        n_ref: Option<u64>,
    },
    /// Exact and Monte Carlo distillation outcome distributions as JSON.
    DistillSim {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// CSV of cat vs GHZ suppression under particle loss.
    LossCurve {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long)]
        steps: usize,
        /// GHZ size to compare against [default: max(1, round(N(1 − cos ε)))].
        #[arg(long)]
        n_ref: Option<u64>,
    },
    /// Oracle-equivalence suite; tab-separated pass/fail table.
    Validate {
        #[arg(long)]
        max_n: u64,
    },
}

/// A usage error, reported as one line with exit code 2.
struct UsageError(String);

impl From<catsize_core::Error> for UsageError {
    fn from(e: catsize_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn default_n_ref(size: f64) -> u64 {
    (size.round() as u64).max(1)
}

fn check_grid(max: f64, steps: usize, flag: &str) -> Result<(), UsageError> {
    if steps < 2 {
        return Err(UsageError(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    if !(max.is_finite() && max > 0.0) {
        return Err(UsageError(format!(
            "{flag} must be positive and finite, got {max}"
        )));
    }
    Ok(())
}

/// Payload text plus an optional validation failure to report after writing it.
fn run(command: &Command) -> Result<(String, Option<String>), UsageError> {
    let payload = match command {
        Command::EffectiveSize { state } => {
            let mut json = EffectiveSizeReport::new(&state.params()?)?.to_json();
            json.push('\n');
            json
        }
        Command::DecoherenceCurve {
            state,
            gamma_t_max,
            steps,
            n_ref,
        } => {
            let params = state.params()?;
            check_grid(*gamma_t_max, *steps, "--gamma-t-max")?;
            let n_ref =
                n_ref.unwrap_or_else(|| default_n_ref(params.n_f64() * params.sin_eps().powi(2)));
            decay_curve(&params, n_ref, &linear_grid(*gamma_t_max, *steps))?.to_csv()
        }
        Command::DistillSim {
            state,
            trials,
            seed,
        } => {
            let params = state.params()?;
            let mc = simulate_protocol(&params, *trials, *seed)?;
            let exact = DistributionRecord::exact(&params, &outcome_distribution(&params));
            let empirical = DistributionRecord::monte_carlo(&params, &mc);
            format!("[{},{}]\n", exact.to_json(), empirical.to_json())
        }
        Command::LossCurve {
            state,
            lambda_max,
            steps,
            n_ref,
        } => {
            let params = state.params()?;
            check_grid(*lambda_max, *steps, "--lambda-max")?;
            let n_ref =
                n_ref.unwrap_or_else(|| default_n_ref(params.n_f64() * params.one_minus_cos()));
            loss_curve(&params, n_ref, &loss_grid(*lambda_max, *steps))?.to_csv()
        }
        Command::Validate { max_n } => {
            let results = run_validation(*max_n)?;
            let mut table = format!("{TABLE_HEADER}\n");
            for r in &results {
                table.push_str(&format!("{r}\n"));
            }
            let first_failure = results.iter().find(|r| !r.passed()).map(|r| {
                format!(
                    "validation failed: {} (max error {:e} > tolerance {:e} at {})",
                    r.name, r.max_error, r.tolerance, r.worst_case
                )
            });
            return Ok((table, first_failure));
        }
    };
    Ok((payload, None))
}

fn emit(output: Option<&PathBuf>, payload: &str) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, payload),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(payload.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // First paragraph of clap's message, folded onto one line.
            let rendered = e.to_string();
            let line: Vec<&str> = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(2);
        }
    };
    let (payload, failure) = match run(&cli.command) {
        Ok(done) => done,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(cli.output.as_ref(), &payload) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match failure {
        Some(msg) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
