//! Zak phase from the Weyl m-function.
//!
//! For an isolated band the Berry connection, in the gauge of the decaying
//! half-line solution, is
//!
//! ```text
//! A(k) = |lambda'(k)| / 2 * Re m+'(lambda + i0) / Im m+(lambda + i0) - 1/2,
//! ```
//!
//! evaluated at `lambda = lambda_n(k)`. It differs from the periodic-gauge
//! connection by the constant `-1`, which leaves the phase unchanged mod
//! `2 pi`. It is even in `k` and bounded, so the
//! default rule integrates it with the midpoint rule on `(0, pi)`. Changing
//! variables gives the band integral
//!
//! ```text
//! gamma = int_{lambda_min}^{lambda_max} Re m+' / Im m+ dlambda - pi,
//! ```
//!
//! offered with a uniform trapezoid rule and with tanh-sinh quadrature.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cell::{BlochMomentum, ComplexEnergy, UnitCell};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::impedance::is_mirror_symmetric;
use crate::quad::tanh_sinh;
use crate::symbol::zak_wilson_with;
use crate::transfer::{dispersion_derivative_at, dispersion_in, isolated_band, Band, EdgeKind};
use crate::weyl::{m_plus, m_plus_derivative};

/// `Im m+` below which a band-interior energy is treated as a Dirichlet pole.
pub const IM_TOLERANCE: f64 = 1e-14;

/// Maximum distance of an extrapolated edge phase from `0` or `pi`.
pub const SNAP_TOLERANCE: f64 = 1e-3;

pub const DEFAULT_GRID: usize = 501;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Wilson,
    WeylIntegral,
    /// Edge-phase formula for mirror-symmetric cells.
    WeylQuantised,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quadrature {
    /// Midpoint rule for the Berry connection on `(0, pi)`.
    #[default]
    KMidpoint,
    /// Trapezoid rule on the band interval, `grid` equally spaced energies
    /// with both band edges dropped.
    LambdaTrapezoid,
    /// Tanh-sinh quadrature of the band integral.
    LambdaTanhSinh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZakPhaseResult {
    /// Canonical representative in `(-pi, pi]`.
    pub value: f64,
    pub method: Method,
    pub n: usize,
    pub grid: usize,
    pub err_estimate: f64,
    #[serde(serialize_with = "as_hex")]
    pub cell_fingerprint: u64,
}

fn as_hex<S: serde::Serializer>(x: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:016x}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerryConnectionSample {
    pub k: BlochMomentum,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZakOptions {
    pub quadrature: Quadrature,
    pub execution: Execution,
    /// Refine (doubling the grid up to three times) until the error
    /// estimate is below this, else fail with `QuadratureFailure`.
    pub tolerance: Option<f64>,
}

impl Default for ZakOptions {
    fn default() -> Self {
        Self {
            quadrature: Quadrature::KMidpoint,
            execution: Execution::default(),
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MethodComparison {
    pub wilson: ZakPhaseResult,
    pub weyl: ZakPhaseResult,
    pub discrepancy_mod_2pi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantisedZak {
    pub gamma: ZakPhaseResult,
    pub phi_min: f64,
    pub phi_max: f64,
}

/// Reduce to `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x - 2.0 * PI * ((x + PI) / (2.0 * PI)).floor();
    if r <= -PI {
        r + 2.0 * PI
    } else if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Distance on the circle `R / 2 pi Z`.
pub fn circle_distance(x: f64, y: f64) -> f64 {
    wrap_phase(x - y).abs()
}

/// `Re m+' / Im m+` at a band-interior energy.
fn band_integrand(cell: &UnitCell, lambda: f64) -> Result<f64> {
    let z = ComplexEnergy::real(lambda);
    let m = m_plus(cell, z)?.m_plus;
    if m.im <= IM_TOLERANCE {
        return Err(Error::DirichletPoleOnBand(lambda));
    }
    let dm = m_plus_derivative(cell, z)?;
    Ok(dm.re / m.im)
}

fn connection_in(cell: &UnitCell, band: &Band, k: f64) -> Result<f64> {
    if k == 0.0 || k.abs() == PI {
        return Err(Error::BandEdgeSingularity(dispersion_in(cell, band, k)?));
    }
    let lambda = dispersion_in(cell, band, k)?;
    if !band.contains(lambda) {
        return Err(Error::BandEdgeSingularity(lambda));
    }
    let slope = dispersion_derivative_at(cell, lambda, k);
    Ok(0.5 * slope.abs() * band_integrand(cell, lambda)? - 0.5)
}

/// Berry connection of band `n` at the interior momentum `k`.
pub fn berry_connection_weyl(
    cell: &UnitCell,
    n: usize,
    k: BlochMomentum,
) -> Result<BerryConnectionSample> {
    let band = isolated_band(cell, n)?;
    Ok(BerryConnectionSample {
        k,
        value: connection_in(cell, &band, k.value())?,
    })
}

fn k_midpoint(cell: &UnitCell, band: &Band, grid: usize, exec: Execution) -> Result<f64> {
    let half = grid.div_ceil(2);
    let h = PI / half as f64;
    let values = exec.try_map(half, |j| connection_in(cell, band, (j as f64 + 0.5) * h))?;
    Ok(2.0 * h * values.iter().sum::<f64>())
}

fn lambda_trapezoid(cell: &UnitCell, band: &Band, grid: usize, exec: Execution) -> Result<f64> {
    let step = band.width() / (grid - 1) as f64;
    let values = exec.try_map(grid - 2, |j| {
        band_integrand(cell, band.lambda_min + (j + 1) as f64 * step)
    })?;
    let inner: f64 = values.iter().sum();
    let ends = 0.5 * (values[0] + values[values.len() - 1]);
    Ok(step * (inner - ends) - PI)
}

fn lambda_tanh_sinh(cell: &UnitCell, band: &Band, tol: f64) -> Result<(f64, f64, usize)> {
    let mut failure = None;
    let est = tanh_sinh(
        |x| match band_integrand(cell, x) {
            Ok(v) => v,
            // nodes within rounding of an edge carry negligible weight
            Err(Error::BandEdgeSingularity(_)) => 0.0,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        band.lambda_min,
        band.lambda_max,
        tol,
        12,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((est.value - PI, est.error, est.evaluations))
}

fn integrate(cell: &UnitCell, band: &Band, grid: usize, opts: &ZakOptions) -> Result<(f64, f64)> {
    match opts.quadrature {
        Quadrature::KMidpoint => {
            let fine = k_midpoint(cell, band, grid, opts.execution)?;
            let coarse = k_midpoint(cell, band, grid / 2, opts.execution)?;
            Ok((fine, circle_distance(fine, coarse)))
        }
        Quadrature::LambdaTrapezoid => {
            let fine = lambda_trapezoid(cell, band, grid, opts.execution)?;
            let coarse = lambda_trapezoid(cell, band, grid / 2, opts.execution)?;
            Ok((fine, circle_distance(fine, coarse)))
        }
        Quadrature::LambdaTanhSinh => {
            let (value, err, _) = lambda_tanh_sinh(cell, band, opts.tolerance.unwrap_or(1e-10))?;
            Ok((value, err))
        }
    }
}

/// Zak phase of band `n` from the Weyl function, default options.
pub fn zak_weyl(cell: &UnitCell, n: usize, grid: usize) -> Result<ZakPhaseResult> {
    zak_weyl_with(cell, n, grid, &ZakOptions::default())
}

pub fn zak_weyl_with(
    cell: &UnitCell,
    n: usize,
    grid: usize,
    opts: &ZakOptions,
) -> Result<ZakPhaseResult> {
    if grid < 16 {
        return Err(Error::Validation(format!(
            "Weyl quadrature grid {grid} is below 16"
        )));
    }
    let band = isolated_band(cell, n)?;
    let mut grid = grid;
    let (mut value, mut err) = integrate(cell, &band, grid, opts)?;
    if let Some(tol) = opts.tolerance {
        let mut doublings = 0;
        while err > tol && opts.quadrature != Quadrature::LambdaTanhSinh && doublings < 3 {
            grid *= 2;
            (value, err) = integrate(cell, &band, grid, opts)?;
            doublings += 1;
        }
        if err > tol {
            return Err(Error::QuadratureFailure {
                tolerance: tol,
                estimate: err,
                grid,
            });
        }
    }
    Ok(ZakPhaseResult {
        value: wrap_phase(value),
        method: Method::WeylIntegral,
        n,
        grid,
        err_estimate: err,
        cell_fingerprint: cell.fingerprint(),
    })
}

/// Both engines on the same grid.
pub fn compare_methods(cell: &UnitCell, n: usize, grid: usize) -> Result<MethodComparison> {
    compare_methods_with(cell, n, grid, &ZakOptions::default())
}

pub fn compare_methods_with(
    cell: &UnitCell,
    n: usize,
    grid: usize,
    opts: &ZakOptions,
) -> Result<MethodComparison> {
    let wilson = zak_wilson_with(cell, n, grid, opts.execution)?;
    let weyl = zak_weyl_with(cell, n, grid, opts)?;
    Ok(MethodComparison {
        wilson,
        weyl,
        discrepancy_mod_2pi: circle_distance(wilson.value, weyl.value),
    })
}

/// `arg m+` near a band edge, extrapolated linearly in the momentum offset.
fn edge_phase(cell: &UnitCell, band: &Band, kind: EdgeKind) -> Result<f64> {
    let delta = 1e-3;
    let at = |d: f64| -> Result<f64> {
        let k = match kind {
            EdgeKind::K0 => d,
            EdgeKind::KPi => PI - d,
        };
        let lambda = dispersion_in(cell, band, k)?;
        Ok(m_plus(cell, ComplexEnergy::real(lambda))?.m_plus.arg())
    };
    Ok(2.0 * at(delta)? - at(2.0 * delta)?)
}

fn snap(phase: f64) -> Result<f64> {
    for target in [0.0, PI] {
        if (phase - target).abs() <= SNAP_TOLERANCE {
            return Ok(target);
        }
    }
    Err(Error::SnapFailure {
        phase,
        tolerance: SNAP_TOLERANCE,
    })
}

/// Quantised Zak phase of a mirror-symmetric cell from the phases of `m+`
/// at the two band edges: `gamma = phi(lambda_min) - phi(lambda_max) - pi`.
pub fn zak_quantised_symmetric(cell: &UnitCell, n: usize) -> Result<QuantisedZak> {
    if !is_mirror_symmetric(cell) {
        return Err(Error::SymmetryViolation);
    }
    let band = isolated_band(cell, n)?;
    let phi_min = snap(edge_phase(cell, &band, band.edge_kind_min)?)?;
    let phi_max = snap(edge_phase(cell, &band, band.edge_kind_max)?)?;
    Ok(QuantisedZak {
        gamma: ZakPhaseResult {
            value: wrap_phase(phi_min - phi_max - PI),
            method: Method::WeylQuantised,
            n,
            grid: 0,
            err_estimate: 0.0,
            cell_fingerprint: cell.fingerprint(),
        },
        phi_min,
        phi_max,
    })
}
