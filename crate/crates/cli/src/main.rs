//! Batch front end for the grid-calculus library: spectra, axiom checks,
//! convergence nets, time evolution, analytic oracle values, and a
//! non-Archimedean arithmetic demo.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver failure,
//! 4 validation (axiom or bound) failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(String),
    Validation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Validation(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Solver(m) | CliError::Validation(m) => m,
        }
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON configuration file; flags and --set override it
    #[arg(long, global = true)]
    config: Option<String>,

    /// Override a configuration key, e.g. --set grid.n=2001 (repeatable)
    #[arg(long = "set", global = true)]
    sets: Vec<String>,

    /// Delta strength τ (shorthand for --set potential.tau=..)
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<f64>,

    /// Grid point count (odd)
    #[arg(short, long, global = true)]
    n: Option<usize>,

    /// Grid spacing
    #[arg(long, global = true)]
    h: Option<f64>,

    /// Laplacian variant: compact | paper_literal
    #[arg(long, global = true)]
    variant: Option<String>,

    /// Box half-length for oracle comparisons (enables hard walls on grid
    /// solves)
    #[arg(long = "L", global = true)]
    half_length: Option<f64>,

    /// Oracle parity: even | odd
    #[arg(long, global = true)]
    parity: Option<String>,

    /// Oracle mode count
    #[arg(long, global = true)]
    count: Option<usize>,

    /// Output directory
    #[arg(long, global = true)]
    out: Option<String>,

    /// Worker threads for stage nets
    #[arg(long, global = true)]
    workers: Option<usize>,
}

impl CommonArgs {
    fn to_sets(&self) -> Vec<String> {
        let mut sets = Vec::new();
        if let Some(tau) = self.tau {
            sets.push(format!("potential.tau={tau}"));
            sets.push(format!("oracle.strength={}", tau.abs()));
            sets.push(format!(
                "oracle.kind={}",
                if tau < 0.0 { "\"well\"" } else { "\"barrier\"" }
            ));
        }
        if let Some(n) = self.n {
            sets.push(format!("grid.n={n}"));
        }
        if let Some(h) = self.h {
            sets.push(format!("grid.h={h}"));
        }
        if let Some(v) = &self.variant {
            sets.push(format!("laplacian=\"{v}\""));
        }
        if let Some(l) = self.half_length {
            sets.push(format!("oracle.half_length={l}"));
            sets.push(format!("walls.half_length={l}"));
            sets.push("walls.enabled=true".into());
        }
        if let Some(p) = &self.parity {
            sets.push(format!("oracle.parity=\"{p}\""));
        }
        if let Some(c) = self.count {
            sets.push(format!("oracle.count={c}"));
        }
        if let Some(o) = &self.out {
            sets.push(format!("output.dir=\"{o}\""));
        }
        if let Some(w) = self.workers {
            sets.push(format!("workers={w}"));
        }
        sets.extend(self.sets.iter().cloned());
        sets
    }

    fn build(&self) -> Result<config::RunConfig, CliError> {
        config::load(self.config.as_deref(), &self.to_sets()).map_err(CliError::Config)
    }

    /// Like `build`, but admitting an even point count for the axiom
    /// diagnostics (normal validation rejects it).
    fn build_allowing_even(&self) -> Result<config::RunConfig, CliError> {
        let mut sets = self.to_sets();
        sets.retain(|s| !s.starts_with("grid.n="));
        let mut cfg = config::load(self.config.as_deref(), &sets).map_err(CliError::Config)?;
        if let Some(n) = self.n {
            if n < 3 {
                return Err(CliError::Config(format!("grid.n = {n} must be at least 3")));
            }
            cfg.grid.n = n;
        }
        Ok(cfg)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hfqm",
    about = "Grid-calculus spectra for singular potentials, with analytic cross-checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the configured Hamiltonian and emit the spectrum next to the
    /// analytic oracle
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        /// Skip the grid solve; emit analytic values only
        #[arg(long)]
        oracle_only: bool,
        /// Export these eigenfunction indices as CSV
        #[arg(long, value_delimiter = ',')]
        eigenfunctions: Vec<usize>,
    },
    /// Run the derivative/integral axiom suite and report residuals
    Axioms {
        #[command(flatten)]
        common: CommonArgs,
        /// Admit an even point count (exhibits the nullspace failure)
        #[arg(long)]
        allow_even: bool,
    },
    /// Run a refinement net and estimate its limit
    Converge {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evolve an initial state and log norm/energy drift
    Evolve {
        #[command(flatten)]
        common: CommonArgs,
        /// Initial state: gaussian | delta | eigenstate
        #[arg(long)]
        state: Option<String>,
    },
    /// Emit analytic oracle values only
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Dump worked non-Archimedean arithmetic examples
    ScalarDemo {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Spectrum {
            common,
            oracle_only,
            eigenfunctions,
        } => {
            let mut cfg = common.build()?;
            if !eigenfunctions.is_empty() {
                cfg.output.eigenfunctions = eigenfunctions;
            }
            commands::cmd_spectrum(&cfg, oracle_only)
        }
        Command::Axioms { common, allow_even } => {
            let cfg = if allow_even {
                common.build_allowing_even()?
            } else {
                common.build()?
            };
            commands::cmd_axioms(&cfg, allow_even)
        }
        Command::Converge { common } => {
            let cfg = common.build()?;
            commands::cmd_converge(&cfg)
        }
        Command::Evolve { common, state } => {
            let mut cfg = common.build()?;
            if let Some(s) = state {
                cfg.evolve.state = s;
                cfg.validate().map_err(CliError::Config)?;
            }
            commands::cmd_evolve(&cfg)
        }
        Command::Oracle { common } => {
            let cfg = common.build()?;
            commands::cmd_oracle(&cfg)
        }
        Command::ScalarDemo { common } => {
            let cfg = common.build()?;
            commands::cmd_scalar_demo(&cfg)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
