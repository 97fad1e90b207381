//! Bloch symbol `f(k)` and the discrete Wilson-loop Zak phase.
//!
//! ```text
//! f(k) = tridiag(b; a_1..a_{p-1}) + a_p (E_{1,p} e^{-ik} + E_{p,1} e^{ik})
//! ```
//!
//! Eigenvectors are taken in the periodic gauge: no intracell position
//! phases are attached.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cell::{BlochMomentum, UnitCell};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::transfer::isolated_band;
use crate::zak::{circle_distance, wrap_phase, Method, ZakPhaseResult};

/// Eigenvalue gap below which an eigenpair is refused.
pub const DEGENERACY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochSymbol {
    cell: UnitCell,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandEigenpair {
    pub k: BlochMomentum,
    pub lambda: f64,
    pub v: Vec<Complex64>,
}

pub fn build_symbol(cell: &UnitCell) -> BlochSymbol {
    BlochSymbol { cell: cell.clone() }
}

impl BlochSymbol {
    pub fn cell(&self) -> &UnitCell {
        &self.cell
    }

    pub fn evaluate(&self, k: f64) -> DMatrix<Complex64> {
        let p = self.cell.period();
        let (a, b) = (self.cell.hoppings(), self.cell.onsite());
        let mut f = DMatrix::<Complex64>::zeros(p, p);
        if p == 1 {
            f[(0, 0)] = Complex64::new(b[0] + 2.0 * a[0] * k.cos(), 0.0);
            return f;
        }
        for i in 0..p {
            f[(i, i)] = Complex64::new(b[i], 0.0);
        }
        for i in 0..p - 1 {
            f[(i, i + 1)] = Complex64::new(a[i], 0.0);
            f[(i + 1, i)] = Complex64::new(a[i], 0.0);
        }
        let corner = Complex64::from_polar(a[p - 1], -k);
        f[(0, p - 1)] += corner;
        f[(p - 1, 0)] += corner.conj();
        f
    }

    /// Sorted eigenvalues and matching unit eigenvectors (columns) of `f(k)`.
    pub fn eigen(&self, k: f64) -> (Vec<f64>, Vec<Vec<Complex64>>) {
        let eig = self.evaluate(k).symmetric_eigen();
        let p = self.cell.period();
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        (values, vectors)
    }

    pub fn eigenvalues(&self, k: f64) -> Vec<f64> {
        self.eigen(k).0
    }
}

/// Rotate `v` so its largest-modulus entry (lowest index on ties) is real
/// and positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.norm() > v[best].norm() {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() == 0.0 {
        return;
    }
    let rot = pivot.conj() / pivot.norm();
    for x in v.iter_mut() {
        *x *= rot;
    }
    v[best] = Complex64::new(v[best].norm(), 0.0);
}

/// Eigenpair of band `n` at `k` without the isolation check.
pub(crate) fn eigenpair_unchecked(symbol: &BlochSymbol, n: usize, k: f64) -> Result<BandEigenpair> {
    let (values, mut vectors) = symbol.eigen(k);
    let i = n - 1;
    let mut gap = f64::INFINITY;
    if i > 0 {
        gap = gap.min(values[i] - values[i - 1]);
    }
    if i + 1 < values.len() {
        gap = gap.min(values[i + 1] - values[i]);
    }
    if gap < DEGENERACY_TOLERANCE {
        return Err(Error::DegenerateEigenvalue { band: n, k, gap });
    }
    let mut v = vectors.swap_remove(i);
    fix_phase(&mut v);
    Ok(BandEigenpair {
        k: BlochMomentum::new(k),
        lambda: values[i],
        v,
    })
}

/// `n`-th smallest eigenpair of `f(k)`, phase fixed for reproducible output.
pub fn band_eigenpair(symbol: &BlochSymbol, n: usize, k: BlochMomentum) -> Result<BandEigenpair> {
    isolated_band(symbol.cell(), n)?;
    eigenpair_unchecked(symbol, n, k.value())
}

/// `<u, v>`, conjugate-linear in the first argument.
pub fn overlap(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

/// `-arg prod_j <v_j, v_{j+1}>` over a closed loop of vectors.
pub fn wilson_loop_phase(vectors: &[Vec<Complex64>]) -> f64 {
    let n = vectors.len();
    let product = (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| {
        let z = acc * overlap(&vectors[j], &vectors[(j + 1) % n]);
        // keep the running product O(1); only its phase matters
        z / z.norm()
    });
    wrap_phase(-product.arg())
}

fn loop_vectors(
    symbol: &BlochSymbol,
    n: usize,
    grid: usize,
    exec: Execution,
) -> Result<Vec<Vec<Complex64>>> {
    exec.try_map(grid, |j| {
        let k = -PI + 2.0 * PI * j as f64 / grid as f64;
        eigenpair_unchecked(symbol, n, k).map(|e| e.v)
    })
}

/// Band-`n` eigenvectors on the Wilson-loop grid `k_j = -pi + 2 pi j / grid`.
pub fn wilson_loop_vectors(cell: &UnitCell, n: usize, grid: usize) -> Result<Vec<Vec<Complex64>>> {
    isolated_band(cell, n)?;
    loop_vectors(&build_symbol(cell), n, grid, Execution::default())
}

fn wilson_phase(symbol: &BlochSymbol, n: usize, grid: usize, exec: Execution) -> Result<f64> {
    Ok(wilson_loop_phase(&loop_vectors(symbol, n, grid, exec)?))
}

/// Zak phase of band `n` from the Wilson loop on `grid` equally spaced
/// momenta `k_j = -pi + 2 pi j / grid`.
pub fn zak_wilson(cell: &UnitCell, n: usize, grid: usize) -> Result<ZakPhaseResult> {
    zak_wilson_with(cell, n, grid, Execution::default())
}

pub fn zak_wilson_with(
    cell: &UnitCell,
    n: usize,
    grid: usize,
    exec: Execution,
) -> Result<ZakPhaseResult> {
    if grid < 8 {
        return Err(Error::Validation(format!(
            "Wilson loop grid {grid} is below 8"
        )));
    }
    isolated_band(cell, n)?;
    let symbol = build_symbol(cell);
    let value = wilson_phase(&symbol, n, grid, exec)?;
    let coarse = wilson_phase(&symbol, n, grid / 2, exec)?;
    Ok(ZakPhaseResult {
        value,
        method: Method::Wilson,
        n,
        grid,
        err_estimate: circle_distance(value, coarse),
        cell_fingerprint: cell.fingerprint(),
    })
}
