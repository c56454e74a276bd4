use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use johnson_core::search::DEFAULT_BUDGET;
use serde::{Deserialize, Serialize};

/// Construct, certify and verify Johnson graphs and Boolean-lattice layer graphs.
#[derive(Debug, Parser)]
#[command(name = "panconnect", version)]
pub struct Cli {
    /// Worker threads for independent checks (PANCONNECT_JOBS overrides).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph in edge-list format.
    Generate(GenerateArgs),
    /// Run checks on one graph and emit a JSON report.
    Verify(VerifyArgs),
    /// Certify the map from the square of B(n,m) onto J(n+1,m+1).
    Iso(IsoArgs),
    /// Run checks over a parameter grid and emit CSV.
    Sweep(SweepArgs),
    /// Re-check a report's counterexamples and witnesses against an edge list.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Johnson,
    Layer,
}

impl fmt::Display for FamilyArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyArg::Johnson => "johnson",
            FamilyArg::Layer => "layer",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Iso35,
    Connectivity,
    Transitivity,
    VertexTransitive,
    EdgeTransitive,
    Panconnected,
    Pancyclic,
    HamiltonConnected,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Iso35 => "iso35",
            Check::Connectivity => "connectivity",
            Check::Transitivity => "transitivity",
            Check::VertexTransitive => "vertex-transitive",
            Check::EdgeTransitive => "edge-transitive",
            Check::Panconnected => "panconnected",
            Check::Pancyclic => "pancyclic",
            Check::HamiltonConnected => "hamilton-connected",
        }
    }
}

/// Either a family with parameters or an edge-list file.
#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long, value_enum, required_unless_present = "graph", requires_all = ["n", "m"])]
    pub family: Option<FamilyArg>,
    #[arg(long, requires = "family")]
    pub n: Option<u32>,
    #[arg(long, requires = "family")]
    pub m: Option<u32>,
    /// Edge-list file to load instead of a family.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    /// Use the square of the constructed graph.
    #[arg(long)]
    pub square: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Node expansions allowed per (pair, length) search.
    #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Seed for random deletion spot-checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check one pair per distance class (Johnson graphs only).
    #[arg(long)]
    pub symmetry_reduced: bool,
    /// Record wall-clock times (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Checks to run, comma-separated.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub check: Vec<Check>,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Keep every path/cycle witness in the report.
    #[arg(long)]
    pub witnesses: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct IsoArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n_min: u32,
    #[arg(long)]
    pub n_max: u32,
    #[arg(long)]
    pub m_min: Option<u32>,
    #[arg(long)]
    pub m_max: Option<u32>,
    /// Skip instances with more vertices than this.
    #[arg(long)]
    pub max_vertices: Option<u64>,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub check: Vec<Check>,
    /// Square each graph before checking.
    #[arg(long)]
    pub square: bool,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
    pub format: SweepFormat,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Edge-list file of the graph the report was produced for.
    #[arg(long)]
    pub graph: PathBuf,
    /// JSON report from `verify`.
    #[arg(long)]
    pub report: PathBuf,
}
