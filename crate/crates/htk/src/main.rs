//! `htk`: batch analysis of elasticity and harmonic tensors from JSON.
//!
//! Input is one `htk/1` document, or a JSON array of them, from `--input`
//! or stdin. Each result is one line of JSON on stdout (or `--output`).
//! Exit status: 0 on success, 1 on bad input, 2 when the tensor is
//! degenerate for the requested operation.

mod commands;
mod document;
mod error;
mod json;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use htk_core::classify::DEFAULT_TOL;

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "htk", version, about = "Harmonic decomposition, covariants and symmetry classes of elasticity tensors")]
struct Cli {
    /// Read documents from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Relative tolerance for classification.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Seed for every random choice (ChaCha8).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Harmonic decomposition (α, β, a′, b′, H for elasticity documents).
    Decompose,
    /// Jₖ, K₄, K₆, K₁₀, L₁₀, M₁₀, Δ₃, σ₁…σ₃, σ_eq and the Lode invariant.
    Invariants,
    /// The second-order covariants d₂…d₁₀.
    Covariants,
    /// Maxwell multipole vectors.
    Multipoles,
    /// Factor H into a harmonic product of equal-order factors.
    Factorize {
        /// Order of each factor; must divide the tensor order.
        #[arg(long, default_value_t = 2)]
        factor_order: usize,
    },
    /// H = H₁ ∗ H₁ − H₂ ∗ H₂.
    SquareDiff,
    /// Rebuild H from its second-order covariants.
    Reconstruct(ClassArgs),
    /// Transverse plus cubic split of a tetragonal or trigonal tensor.
    Split(ClassArgs),
    /// Symmetry class by reconstruction residual.
    Classify,
    /// A randomly rotated normal-form member of a symmetry class.
    Generate(GenerateArgs),
    /// Round trip and class identity residuals.
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassChoice {
    Auto,
    Transverse,
    Orthotropic,
    Tetragonal,
    Trigonal,
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// Class model to use; `auto` runs the classifier first.
    #[arg(long, value_enum, default_value_t = ClassChoice::Auto)]
    class: ClassChoice,
    /// Branch of the tetragonal or trigonal split.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    branch: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenClass {
    Transverse,
    Orthotropic,
    Tetragonal,
    Trigonal,
    Cubic,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    class: GenClass,
    /// δ for transverse, tetragonal and trigonal members; the scale of the
    /// cubic fixture for cubic ones.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// σ for tetragonal and trigonal members.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// λ₁,λ₂,λ₃ for orthotropic members.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambdas: Option<Vec<f64>>,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut s = String::new();
    match path {
        Some(p) => s = std::fs::read_to_string(p)?,
        None => {
            std::io::stdin().read_to_string(&mut s)?;
        }
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let out = match &cli.command {
        Command::Generate(g) => commands::generate(g, cli.seed)?,
        cmd => {
            let text = read_input(cli.input.as_ref())?;
            commands::for_each_document(&text, |t| commands::dispatch(cmd, t, cli))?
        }
    };
    Ok(json::to_string(&out)? + "\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version are not failures; usage errors are bad input
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(&cli).and_then(|s| {
        match &cli.output {
            Some(p) => std::fs::write(p, s)?,
            None => std::io::stdout().write_all(s.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("htk: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
