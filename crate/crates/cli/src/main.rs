//! `topodef` — construct defect field configurations, compute their
//! topological charges, and check the rotation-field identities from the
//! command line.
//!
//! Exit codes: 0 success (charge quantized / identity holds), 2 for a
//! cleanly computed but negative verdict (non-quantized charge, failed
//! convergence, non-conserved sector), 1 on runtime errors, 64 on usage
//! errors.  Identical configurations produce byte-identical reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod cmds;
mod config;
mod output;

#[derive(Parser)]
#[command(
    name = "topodef",
    version,
    about = "Topological defect fields: construct, integrate, classify"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a topological charge for a preset field configuration
    Charge(ChargeArgs),
    /// Check the compatibility identity over a refinement ladder
    Compat(CompatArgs),
    /// Integrate the 1+1d scalar wave equation and track the kink sector
    Evolve(EvolveArgs),
    /// Classify defects of a given dimension in a given medium
    Classify(ClassifyArgs),
    /// Sample a preset field onto a grid
    DumpField(DumpArgs),
}

#[derive(Args)]
pub struct OutputArgs {
    /// Report format
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    pub output: String,
    /// Write the report (for evolve: the CSV snapshots) to this file
    #[arg(long)]
    pub out_file: Option<PathBuf>,
    /// Print nothing; communicate through the exit code only
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Args)]
pub struct ChargeArgs {
    /// Preset (vortex|vacuum|hedgehog|n3|skyrme|monopole) or key=value file
    #[arg(long)]
    pub config: String,
    /// Winding number of the constructor
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i32>,
    /// Gauge coupling (monopole preset)
    #[arg(long)]
    pub g: Option<f64>,
    /// Radial profile: skyrme-exp | skyrme-arctan (skyrme preset)
    #[arg(long)]
    pub profile: Option<String>,
    /// Length scale of the profile / monopole core
    #[arg(long)]
    pub scale: Option<f64>,
    /// Contour or flux-surface radius (cube half-width for volume methods)
    #[arg(long)]
    pub radius: Option<f64>,
    /// Quadrature order for contours and flux surfaces
    #[arg(long)]
    pub n_quad: Option<usize>,
    /// Points per axis for volume-density grids
    #[arg(long)]
    pub n_grid: Option<usize>,
    /// contour | surface-flux | volume-density | asymptotic-phase
    #[arg(long)]
    pub method: Option<String>,
    /// Volume formula: b-determinant | nye-determinant | contortion-trace
    /// (also spelled det-B | det-Gamma | tr-CCC)
    #[arg(long)]
    pub formula: Option<String>,
    /// Grid as "lo,hi,n" per axis, axes separated by ';' (skyrme preset)
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Quantization tolerance on |value - nearest integer|
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct CompatArgs {
    /// Optional key=value config file
    #[arg(long)]
    pub config: Option<String>,
    /// Rotation field: twist | skyrme | constant | random (negative control)
    #[arg(long)]
    pub field: Option<String>,
    /// Comma-separated points-per-axis for the refinement ladder
    #[arg(long)]
    pub levels: Option<String>,
    /// Base grid "lo,hi,n" (bounds; point counts come from --levels)
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Seed for the random control field
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct EvolveArgs {
    /// Optional key=value config file
    #[arg(long)]
    pub config: Option<String>,
    /// Initial state: kink | vacuum | pair
    #[arg(long)]
    pub initial: Option<String>,
    /// Mass parameter of the wave equation
    #[arg(long)]
    pub mass: Option<f64>,
    /// Strength of the second-harmonic term
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Kink velocity
    #[arg(long, allow_negative_numbers = true)]
    pub velocity: Option<f64>,
    /// Kink center (for pair: half the separation)
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    /// Target time step (adjusted to divide --t-final exactly)
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Snapshot interval in steps (0 = final state only)
    #[arg(long)]
    pub snap_every: Option<usize>,
    /// Spatial grid "lo,hi,n"
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Allowed drift of the sector charge
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Dimension of the medium
    #[arg(long)]
    pub m: u32,
    /// Dimension of the defect
    #[arg(long)]
    pub d: u32,
    /// Order-parameter space: S1|S2|S3|RP2|RP3|SO3|CP1|SU2/U1|SU2/SO3|S<k>
    #[arg(long)]
    pub space: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct DumpArgs {
    /// Preset (vortex|vacuum|hedgehog|n3|skyrme) or key=value file
    #[arg(long)]
    pub config: String,
    /// Winding number of the constructor
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i32>,
    /// Radial profile: skyrme-exp | skyrme-arctan (skyrme preset)
    #[arg(long)]
    pub profile: Option<String>,
    /// Length scale of the profile
    #[arg(long)]
    pub scale: Option<f64>,
    /// Grid as "lo,hi,n" per axis, axes separated by ';'
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(64);
        }
    };
    let result = match &cli.cmd {
        Cmd::Charge(a) => cmds::cmd_charge(a),
        Cmd::Compat(a) => cmds::cmd_compat(a),
        Cmd::Evolve(a) => cmds::cmd_evolve(a),
        Cmd::Classify(a) => cmds::cmd_classify(a),
        Cmd::DumpField(a) => cmds::cmd_dump_field(a),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
