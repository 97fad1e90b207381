use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "jacobi-zak",
    version,
    about = "Spectral and topological data of periodic Jacobi operators"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Preset model; `custom` reads the cell from --file.
    #[arg(long, global = true, value_enum)]
    pub model: Option<ModelName>,
    /// Cell document (JSON or TOML with keys a, b and optional name).
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Momentum grid for Zak-phase engines (at least 16).
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Suppress informational messages on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Run configuration (JSON or TOML); flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub t2: Option<f64>,
    /// Staggered on-site energy (Rice-Mele) or on-site energy (monatomic).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Band edges, isolation flags and sampled dispersion.
    Bands {
        /// Momenta per band on [-pi, pi].
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Zak phase of one band or all bands by either or both engines.
    Zak {
        #[arg(long)]
        band: Option<BandSelection>,
        #[arg(long, value_enum)]
        method: Option<MethodChoice>,
        #[arg(long, value_enum)]
        quadrature: Option<QuadratureChoice>,
    },
    /// Compare both engines over a parameter lattice.
    Sweep {
        #[arg(long)]
        band: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        ratio_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        ratio_max: Option<f64>,
        #[arg(long)]
        ratio_steps: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        delta_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        delta_max: Option<f64>,
        #[arg(long)]
        delta_steps: Option<usize>,
    },
    /// Weyl function m+ along the real axis or a shifted line.
    Mweyl {
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Imaginary part of the energy; 0 gives boundary values.
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<f64>,
        /// Sample the interior of this band.
        #[arg(long)]
        band: Option<usize>,
    },
    /// Right and left surface impedances in the gaps.
    Impedance {
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Mirror symmetry, boundary unimodularity and quantised Zak phases.
    CheckSymmetry {
        /// Interior samples per band for the unimodularity check.
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    Ssh,
    RiceMele,
    Trimer,
    Monatomic,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodChoice {
    Wilson,
    Weyl,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureChoice {
    KMidpoint,
    LambdaTrapezoid,
    LambdaTanhSinh,
}

impl From<QuadratureChoice> for jacobi_zak::Quadrature {
    fn from(q: QuadratureChoice) -> Self {
        match q {
            QuadratureChoice::KMidpoint => jacobi_zak::Quadrature::KMidpoint,
            QuadratureChoice::LambdaTrapezoid => jacobi_zak::Quadrature::LambdaTrapezoid,
            QuadratureChoice::LambdaTanhSinh => jacobi_zak::Quadrature::LambdaTanhSinh,
        }
    }
}

/// A 1-based band index or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandSelection {
    One(usize),
    All,
}

impl FromStr for BandSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(BandSelection::All);
        }
        s.parse::<usize>()
            .map(BandSelection::One)
            .map_err(|_| format!("band must be a positive integer or \"all\", got {s:?}"))
    }
}

impl fmt::Display for BandSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandSelection::One(n) => write!(f, "{n}"),
            BandSelection::All => f.write_str("all"),
        }
    }
}

impl<'de> Deserialize<'de> for BandSelection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Index(usize),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Index(n) => Ok(BandSelection::One(n)),
            Raw::Word(w) => w.parse().map_err(serde::de::Error::custom),
        }
    }
}
