use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Two-qubit local-unitary invariants, separability boundary geometry and
/// Poincaré series of the invariant algebra.
///
/// States are read as JSON in either encoding: {"dim":4,"re":[[..]],"im":[[..]]}
/// (row-major) or {"s":[..],"p":[..],"beta":[[..]]}. Pass `-` to read stdin.
///
/// Exit status: 0 when every requested check passes, 1 when a check fails,
/// 2 on usage or input errors.
#[derive(Debug, Parser)]
#[command(name = "twoqubit", version)]
pub struct Cli {
    /// Worker threads for sample-parallel commands (default: all cores).
    /// Output does not depend on this value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print I1 … I14 and det ρ^Γ with 17 significant digits.
    Invariants {
        state: PathBuf,
    },
    /// Locate a state relative to the state space and the separable set.
    Classify {
        state: PathBuf,
        /// Absolute tolerance for determinants and eigenvalues.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Bisect the segment from an entangled state toward a separable one
    /// (default I/4) down to det ρ^Γ = 0.
    BoundaryPoint {
        state: PathBuf,
        /// Separable endpoint with positive det ρ^Γ.
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Required |det ρ^Γ| at the returned point.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Encoding of the returned state.
        #[arg(long, value_enum, default_value_t = StateEncoding::Matrix)]
        emit: StateEncoding,
    },
    /// Acceptance checks.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Smoothness audit of the separable boundary inside the state space.
    /// Emits one JSON line per sample, in index order:
    /// {"index","tag","det","det_pt","zero_count",...}.
    AuditSmoothness {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Candidates need min-eig(ρ) above this.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        /// Bisection target for |det ρ^Γ|.
        #[arg(long, default_value_t = 1e-12)]
        root_tol: f64,
        /// Gradient norms at or below this count as singular.
        #[arg(long, default_value_t = 1e-9)]
        gradient_tol: f64,
    },
    /// Exact Poincaré series.
    Series {
        #[command(subcommand)]
        which: SeriesCommand,
    },
    /// Invariant dimensions from the torus constant-term formula.
    Molien {
        #[command(subcommand)]
        which: MolienCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Compare det ρ^Γ computed directly and from the invariants on random
    /// states: N Hilbert–Schmidt, N/10 rank-deficient and N/10 separable.
    DetFormula {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run every acceptance criterion and print a pass/fail table.
    All {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
        /// Include wall-clock times, which makes the output vary between runs.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeriesCommand {
    /// Expand the series up to a total degree. Coefficients are decimal strings.
    ///
    /// CSV columns: `degree,coefficient` for grading 1 and
    /// `d1,d2,d3,coefficient` for grading 3 (degrees in s, p, β̂).
    Expand(ExpandArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// 1 for the total-degree series, 3 for the trigraded one.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["1", "3"]))]
    pub grading: String,
    #[arg(long)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t = SeriesFormat::Json)]
    pub format: SeriesFormat,
}

#[derive(Debug, Subcommand)]
pub enum MolienCommand {
    /// Dimension of invariants of degrees (d1, d2, d3) in (s, p, β̂).
    Dim {
        d1: u32,
        d2: u32,
        d3: u32,
    },
    /// Compare constant terms, series coefficients and Lie-kernel dimensions
    /// for every multidegree up to a total degree.
    CrossCheck {
        #[arg(long)]
        max_degree: u32,
        /// Run the Lie-kernel oracle up to this total degree.
        #[arg(long, default_value_t = 4)]
        lie_max_degree: u32,
        /// Skip the Lie oracle above this many monomials.
        #[arg(long, default_value_t = twoqubit::molien::DEFAULT_LIE_CAP)]
        lie_cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateEncoding {
    Matrix,
    Coordinates,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesFormat {
    Json,
    Csv,
}
