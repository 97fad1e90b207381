//! Parameter sweeps comparing the two Zak-phase engines.

use serde::Serialize;

use crate::cell::{make_rice_mele, make_ssh, UnitCell};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::transfer::band_edges;
use crate::zak::{compare_methods_with, ZakOptions};

/// Gap width below which a lattice point is marked degenerate.
pub const CLOSURE_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub param1: f64,
    pub param2: f64,
    pub zak_wilson: Option<f64>,
    pub zak_weyl: Option<f64>,
    pub discrepancy: Option<f64>,
    pub degenerate: bool,
    /// Numerical failure at this point, if any.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub band: usize,
    pub grid: usize,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    /// Largest discrepancy over non-degenerate points.
    pub fn max_discrepancy(&self) -> f64 {
        self.points
            .iter()
            .filter_map(|p| p.discrepancy)
            .fold(0.0, f64::max)
    }
}

/// `n` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Smallest gap adjacent to band `n`, infinite for a band with no
/// neighbour on either side.
fn adjacent_gap(cell: &UnitCell, n: usize) -> Result<f64> {
    let bands = band_edges(cell)?;
    let i = n - 1;
    let mut gap = f64::INFINITY;
    if i > 0 {
        gap = gap.min(bands[i].lambda_min - bands[i - 1].lambda_max);
    }
    if i + 1 < bands.len() {
        gap = gap.min(bands[i + 1].lambda_min - bands[i].lambda_max);
    }
    Ok(gap)
}

/// Evaluate both engines for band `band` on every point of
/// `axis1 x axis2` (row-major, `axis2` fastest). Points whose gap is below
/// [`CLOSURE_TOLERANCE`] are marked degenerate and skipped; numerical
/// failures are recorded on the point instead of aborting the sweep.
pub fn sweep_lattice<F>(
    axis1: &[f64],
    axis2: &[f64],
    build: F,
    band: usize,
    grid: usize,
    exec: Execution,
) -> Result<SweepResult>
where
    F: Fn(f64, f64) -> Result<UnitCell> + Sync + Send,
{
    let inner = ZakOptions {
        execution: Execution::Sequential,
        ..ZakOptions::default()
    };
    let points = exec.try_map(axis1.len() * axis2.len(), |idx| {
        let (p1, p2) = (axis1[idx / axis2.len()], axis2[idx % axis2.len()]);
        let cell = build(p1, p2)?;
        if band == 0 || band > cell.period() {
            return Err(Error::BandIndex {
                band,
                period: cell.period(),
            });
        }
        if adjacent_gap(&cell, band)? < CLOSURE_TOLERANCE {
            return Ok(SweepPoint {
                param1: p1,
                param2: p2,
                zak_wilson: None,
                zak_weyl: None,
                discrepancy: None,
                degenerate: true,
                error: None,
            });
        }
        Ok(match compare_methods_with(&cell, band, grid, &inner) {
            Ok(cmp) => SweepPoint {
                param1: p1,
                param2: p2,
                zak_wilson: Some(cmp.wilson.value),
                zak_weyl: Some(cmp.weyl.value),
                discrepancy: Some(cmp.discrepancy_mod_2pi),
                degenerate: false,
                error: None,
            },
            Err(e) if e.is_numerical() => SweepPoint {
                param1: p1,
                param2: p2,
                zak_wilson: None,
                zak_weyl: None,
                discrepancy: None,
                degenerate: false,
                error: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        })
    })?;
    Ok(SweepResult { band, grid, points })
}

/// Rice-Mele lattice over `(t2/t1, delta)` with `t1 = 1`.
pub fn rice_mele_sweep(
    ratios: &[f64],
    deltas: &[f64],
    band: usize,
    grid: usize,
    exec: Execution,
) -> Result<SweepResult> {
    sweep_lattice(
        ratios,
        deltas,
        |r, d| make_rice_mele(1.0, r, d),
        band,
        grid,
        exec,
    )
}

/// SSH line over `t2/t1` with `t1 = 1`; `param2` is always 0.
pub fn ssh_sweep(ratios: &[f64], band: usize, grid: usize, exec: Execution) -> Result<SweepResult> {
    sweep_lattice(ratios, &[0.0], |r, _| make_ssh(1.0, r), band, grid, exec)
}
