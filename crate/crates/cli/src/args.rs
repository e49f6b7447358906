use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rotkep::linearized::Orientation;

use crate::format::Format;

#[derive(Debug, Parser)]
#[command(
    name = "rotkep",
    version,
    about = "Periodic orbits, Conley-Zehnder indices and convexity checks for the rotating Kepler problem"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit table at one Jacobi energy and the three index assertions.
    Catalog(CatalogArgs),
    /// Index of an N-fold covered circular orbit.
    CzIndex(CzIndexArgs),
    /// Data behind the energy-Jacobi diagram or the torus lifetimes.
    Diagram(DiagramArgs),
    /// Random search for negative tangential Hessian eigenvalues.
    ConvexityScan(ScanArgs),
    /// Run every acceptance check and print a table.
    Verify,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    #[arg(long, default_value_t = 10)]
    pub k_max: u32,
    /// Drop torus families with Kepler energy below this value.
    #[arg(long, allow_negative_numbers = true)]
    pub e_floor: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Retrograde,
    Direct,
}

impl From<Sign> for Orientation {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Retrograde => Orientation::Retrograde,
            Sign::Direct => Orientation::Direct,
        }
    }
}

#[derive(Debug, Args)]
pub struct CzIndexArgs {
    /// Kepler energy.
    #[arg(long = "E", allow_negative_numbers = true)]
    pub energy: f64,
    #[arg(long, value_enum)]
    pub sign: Sign,
    /// Covering number.
    #[arg(long = "N", default_value_t = 1)]
    pub covering: u32,
    /// Also compute the index from crossing forms and compare.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiagramKind {
    EnergyJacobi,
    LifeOfTori,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[arg(value_enum)]
    pub kind: DiagramKind,
    #[arg(long, default_value_t = 1.5)]
    pub c_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub c_max: f64,
    /// Number of intervals in the Jacobi energy sweep.
    #[arg(long, default_value_t = 250)]
    pub steps: u32,
    #[arg(long, default_value_t = 10)]
    pub k_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
