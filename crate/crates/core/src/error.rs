use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("hopping amplitudes must be strictly positive, got {0}")]
    NonPositiveHopping(f64),

    #[error("invalid unit cell: {0}")]
    Validation(String),

    #[error("could not parse cell document: {0}")]
    Parse(String),

    #[error("band index {band} out of range 1..={period}")]
    BandIndex { band: usize, period: usize },

    #[error("energy {re}{im:+}i lies in the lower half-plane")]
    IllPlacedEnergy { re: f64, im: f64 },

    #[error("root finding failed: {0}")]
    RootFindingFailure(String),

    #[error("band {band} is not isolated (gap below {tolerance:e})")]
    IsolatedBandViolation { band: usize, tolerance: f64 },

    #[error("eigenvalue {band} is degenerate at k = {k} (gap {gap:e})")]
    DegenerateEigenvalue { band: usize, k: f64, gap: f64 },

    #[error("energy {0} is a band edge; the Weyl function has a branch point there")]
    BandEdgeSingularity(f64),

    #[error("energy {0} is a Dirichlet eigenvalue; the Weyl function has a pole there")]
    DirichletPole(f64),

    #[error("Im m+ vanishes at the band-interior energy {0}")]
    DirichletPoleOnBand(f64),

    #[error(
        "quadrature did not reach tolerance {tolerance:e} (estimate {estimate:e} at grid {grid})"
    )]
    QuadratureFailure {
        tolerance: f64,
        estimate: f64,
        grid: usize,
    },

    #[error("energy {0} is not inside a spectral band")]
    NotInBand(f64),

    #[error("energy {0} is not inside a spectral gap")]
    NotInGap(f64),

    #[error("unit cell is not mirror symmetric")]
    SymmetryViolation,

    #[error("edge phase {phase} is not within {tolerance:e} of 0 or pi")]
    SnapFailure { phase: f64, tolerance: f64 },
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::NonPositiveHopping(_)
                | Error::Validation(_)
                | Error::Parse(_)
                | Error::BandIndex { .. }
                | Error::IllPlacedEnergy { .. }
        )
    }
}
