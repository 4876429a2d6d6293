use clap::{Parser, Subcommand};
use std::path::PathBuf;

use super::config::{Format, VerifyStencil};

/// Closed-form Dirac and Klein-Gordon solutions in square wells, exported
/// as plot-ready tables.
#[derive(Debug, Parser)]
#[command(name = "relwell", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration; flags below take precedence over it.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Bound energies of the static well with plug-back residuals.
    BoundStates,
    /// Reflection and transmission over an energy sweep.
    Scatter,
    /// Klein-Gordon modes of the moving-wall well on a grid.
    KgModes,
    /// Dirac modes of the moving-wall well on a grid.
    DiracModes,
    /// Momentum expectation value with its refinement history.
    Momentum,
    /// Quick invariant suite with a pass/fail line per check.
    Verify {
        /// Stencil used by the order check.
        #[arg(long, value_enum)]
        stencil: Option<VerifyStencil>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BoundStates => "bound-states",
            Command::Scatter => "scatter",
            Command::KgModes => "kg-modes",
            Command::DiracModes => "dirac-modes",
            Command::Momentum => "momentum",
            Command::Verify { .. } => "verify",
        }
    }
}
