//! Spectral and topological quantities of periodic Jacobi operators: band
//! structure, Weyl m-functions, surface impedances and Zak phases.

pub mod cell;
pub mod error;
pub mod exec;
pub mod impedance;
pub mod quad;
pub mod roots;
pub mod sweep;
pub mod symbol;
pub mod transfer;
pub mod weyl;
pub mod zak;

pub use sweep::{linspace, rice_mele_sweep, ssh_sweep, sweep_lattice, SweepPoint, SweepResult};

pub use cell::{
    make_monatomic, make_rice_mele, make_ssh, make_trimer, parse_cell, BlochMomentum,
    ComplexEnergy, UnitCell,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use impedance::{
    is_mirror_symmetric, surface_impedance, surface_impedance_direct, symmetrize,
    verify_unimodularity, Impedance, UnimodularityReport,
};
pub use symbol::{
    band_eigenpair, build_symbol, zak_wilson, zak_wilson_with, BandEigenpair, BlochSymbol,
};
pub use transfer::{
    band_edges, discriminant, discriminant_derivative, dispersion, dispersion_derivative,
    isolated_band, one_period_transfer, Band, EdgeKind, TransferMatrix,
};
pub use weyl::{
    dirichlet_eigenvalues, is_weyl_pole, m_minus, m_minus_cf, m_plus, m_plus_cf, m_plus_derivative,
    spectral_density, Branch, WeylValue,
};
pub use zak::{
    berry_connection_weyl, circle_distance, compare_methods, compare_methods_with, wrap_phase,
    zak_quantised_symmetric, zak_weyl, zak_weyl_with, BerryConnectionSample, Method,
    MethodComparison, Quadrature, QuantisedZak, ZakOptions, ZakPhaseResult,
};
