//! One-period transfer matrices, the Floquet discriminant and band structure.
//!
//! The single-site factor for site `j` maps `(u(j), u(j-1))` to
//! `(u(j+1), u(j))`:
//!
//! ```text
//! A_j(z) = [ (z - b_j)/a_j   -a_{j-1}/a_j ]
//!          [       1               0      ]
//! ```
//!
//! with `a_0 = a_p`, so `det A_j = a_{j-1}/a_j` and the period product
//! `M = A_p ... A_1` is unimodular.

use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cell::{BlochMomentum, ComplexEnergy, UnitCell};
use crate::error::{Error, Result};
use crate::roots::bisect;

/// Minimum gap width for a band to count as isolated.
pub const GAP_TOLERANCE: f64 = 1e-9;

/// `sum x_i y_i` in roughly twice working precision (products split with
/// FMA, Neumaier summation of the pieces).
fn compensated_dot(terms: &[(f64, f64)]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut add = |x: f64| {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    };
    for &(x, y) in terms {
        let p = x * y;
        add(p);
        add(x.mul_add(y, -p));
    }
    sum + comp
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Mat2([[o, z], [z, o]])
    }

    pub fn zero() -> Self {
        Mat2([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// `m11 m22 - m12 m21` with error-free products and compensated
    /// summation, so the cancellation near `det = 1` costs no digits.
    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.0;
        let re = compensated_dot(&[(a.re, d.re), (-a.im, d.im), (-b.re, c.re), (b.im, c.im)]);
        let im = compensated_dot(&[(a.re, d.im), (a.im, d.re), (-b.re, c.im), (-b.im, c.re)]);
        Complex64::new(re, im)
    }

    /// Max-abs entry norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += other.0[i][j];
            }
        }
        out
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (l, r) = (&self.0, &rhs.0);
        Mat2(std::array::from_fn(|i| {
            std::array::from_fn(|j| l[i][0] * r[0][j] + l[i][1] * r[1][j])
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub entries: Mat2,
    pub det: Complex64,
}

impl TransferMatrix {
    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

fn site_factor(cell: &UnitCell, j: usize, z: Complex64) -> Mat2 {
    let a = cell.hoppings()[j];
    let left = cell.left_hopping(j);
    let b = cell.onsite()[j];
    Mat2([
        [(z - b) / a, Complex64::new(-left / a, 0.0)],
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    ])
}

/// Period transfer matrix at an arbitrary complex energy.
pub(crate) fn transfer_at(cell: &UnitCell, z: Complex64) -> Mat2 {
    (0..cell.period()).fold(Mat2::identity(), |m, j| site_factor(cell, j, z) * m)
}

/// Period transfer matrix and its energy derivative (product rule).
pub(crate) fn transfer_with_derivative(cell: &UnitCell, z: Complex64) -> (Mat2, Mat2) {
    let mut m = Mat2::identity();
    let mut dm = Mat2::zero();
    for j in 0..cell.period() {
        let f = site_factor(cell, j, z);
        let mut df = Mat2::zero();
        df.0[0][0] = Complex64::new(1.0 / cell.hoppings()[j], 0.0);
        dm = (df * m).add(&(f * dm));
        m = f * m;
    }
    (m, dm)
}

pub fn one_period_transfer(cell: &UnitCell, z: ComplexEnergy) -> TransferMatrix {
    let entries = transfer_at(cell, z.as_complex());
    TransferMatrix {
        entries,
        det: entries.det(),
    }
}

/// Real transfer matrix entries `[[m11, m12], [m21, m22]]` and their
/// derivatives at a real energy.
pub(crate) fn real_transfer_with_derivative(cell: &UnitCell, lambda: f64) -> ([f64; 4], [f64; 4]) {
    let (a, b) = (cell.hoppings(), cell.onsite());
    let mut m = [1.0, 0.0, 0.0, 1.0];
    let mut dm = [0.0; 4];
    for j in 0..cell.period() {
        let f11 = (lambda - b[j]) / a[j];
        let f12 = -cell.left_hopping(j) / a[j];
        let df11 = 1.0 / a[j];
        // rows of F*M with F = [[f11, f12], [1, 0]]
        let nm = [f11 * m[0] + f12 * m[2], f11 * m[1] + f12 * m[3], m[0], m[1]];
        let ndm = [
            df11 * m[0] + f11 * dm[0] + f12 * dm[2],
            df11 * m[1] + f11 * dm[1] + f12 * dm[3],
            dm[0],
            dm[1],
        ];
        m = nm;
        dm = ndm;
    }
    (m, dm)
}

/// Floquet discriminant: the trace of the period transfer matrix.
pub fn discriminant(cell: &UnitCell, lambda: f64) -> f64 {
    let (a, b) = (cell.hoppings(), cell.onsite());
    let (mut u1, mut u0) = (1.0, 0.0);
    let (mut v1, mut v0) = (0.0, 1.0);
    for j in 0..cell.period() {
        let f11 = (lambda - b[j]) / a[j];
        let f12 = -cell.left_hopping(j) / a[j];
        (u1, u0) = (f11 * u1 + f12 * u0, u1);
        (v1, v0) = (f11 * v1 + f12 * v0, v1);
    }
    u1 + v0
}

pub fn discriminant_derivative(cell: &UnitCell, lambda: f64) -> f64 {
    let (_, dm) = real_transfer_with_derivative(cell, lambda);
    dm[0] + dm[3]
}

/// Which end of the Brillouin zone attains a band edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// `k = 0`, discriminant `+2`.
    #[serde(rename = "k0")]
    K0,
    /// `k = +-pi`, discriminant `-2`.
    #[serde(rename = "kpi")]
    KPi,
}

impl EdgeKind {
    pub fn momentum(self) -> f64 {
        match self {
            EdgeKind::K0 => 0.0,
            EdgeKind::KPi => std::f64::consts::PI,
        }
    }

    fn target(self) -> f64 {
        match self {
            EdgeKind::K0 => 2.0,
            EdgeKind::KPi => -2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    /// 1-based band index.
    pub n: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub isolated: bool,
    pub edge_kind_min: EdgeKind,
    pub edge_kind_max: EdgeKind,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.lambda_max - self.lambda_min
    }

    pub fn contains(&self, lambda: f64) -> bool {
        lambda > self.lambda_min && lambda < self.lambda_max
    }
}

/// Symbol `f(k)` at `k = 0` (periodic) or `k = pi` (antiperiodic); both are
/// real symmetric.
fn edge_matrix(cell: &UnitCell, kind: EdgeKind) -> DMatrix<f64> {
    let p = cell.period();
    let (a, b) = (cell.hoppings(), cell.onsite());
    let phase = kind.target() / 2.0;
    let mut f = DMatrix::<f64>::zeros(p, p);
    for i in 0..p {
        f[(i, i)] = b[i];
    }
    for i in 0..p.saturating_sub(1) {
        f[(i, i + 1)] = a[i];
        f[(i + 1, i)] = a[i];
    }
    if p == 1 {
        f[(0, 0)] += 2.0 * a[0] * phase;
    } else {
        f[(0, p - 1)] += a[p - 1] * phase;
        f[(p - 1, 0)] += a[p - 1] * phase;
    }
    f
}

/// Band edges of the periodic operator.
///
/// The roots of `Delta = +2` and `Delta = -2` are the spectra of the
/// periodic and antiperiodic `p x p` problems. They are taken from a
/// symmetric eigensolver so double roots at closed gaps are never missed,
/// then polished by bisection on the discriminant wherever a sign change
/// brackets them.
pub fn band_edges(cell: &UnitCell) -> Result<Vec<Band>> {
    let p = cell.period();
    let scale = 1.0 + cell.scale();
    let mut edges: Vec<(f64, EdgeKind)> = Vec::with_capacity(2 * p);
    for kind in [EdgeKind::K0, EdgeKind::KPi] {
        let eig = edge_matrix(cell, kind).symmetric_eigenvalues();
        for &e in eig.iter() {
            if !e.is_finite() {
                return Err(Error::RootFindingFailure(format!(
                    "non-finite band edge for {cell}"
                )));
            }
            edges.push((polish_edge(cell, e, kind.target(), scale), kind));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut bands: Vec<Band> = edges
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| Band {
            n: i + 1,
            lambda_min: pair[0].0,
            lambda_max: pair[1].0,
            isolated: true,
            edge_kind_min: pair[0].1,
            edge_kind_max: pair[1].1,
        })
        .collect();
    for i in 0..p {
        let below = i == 0 || bands[i].lambda_min - bands[i - 1].lambda_max > GAP_TOLERANCE;
        let above = i + 1 == p || bands[i + 1].lambda_min - bands[i].lambda_max > GAP_TOLERANCE;
        bands[i].isolated = below && above && bands[i].width() > GAP_TOLERANCE;
    }
    Ok(bands)
}

fn polish_edge(cell: &UnitCell, seed: f64, target: f64, scale: f64) -> f64 {
    let delta = 1e-8 * scale;
    let f = |x: f64| discriminant(cell, x) - target;
    let (lo, hi) = (seed - delta, seed + delta);
    if f(lo) * f(hi) < 0.0 {
        bisect(f, lo, hi, 1e-15 * scale).unwrap_or(seed)
    } else {
        seed
    }
}

/// Band `n` (1-based) after checking the index and its isolation.
pub fn isolated_band(cell: &UnitCell, n: usize) -> Result<Band> {
    let bands = band_edges(cell)?;
    let band = *bands.get(n.wrapping_sub(1)).ok_or(Error::BandIndex {
        band: n,
        period: cell.period(),
    })?;
    if !band.isolated {
        return Err(Error::IsolatedBandViolation {
            band: n,
            tolerance: GAP_TOLERANCE,
        });
    }
    Ok(band)
}

/// Solve `Delta(lambda) = 2 cos k` inside a known band.
pub(crate) fn dispersion_in(cell: &UnitCell, band: &Band, k: f64) -> Result<f64> {
    let c = 2.0 * k.cos();
    if k == 0.0 {
        return Ok(edge_for(band, EdgeKind::K0));
    }
    if k.abs() == std::f64::consts::PI {
        return Ok(edge_for(band, EdgeKind::KPi));
    }
    let f = |x: f64| discriminant(cell, x) - c;
    if let Some(x) = bisect(f, band.lambda_min, band.lambda_max, 0.0) {
        return Ok(x);
    }
    // k within rounding of a zone edge: the polished edge is the root
    let (flo, fhi) = (f(band.lambda_min).abs(), f(band.lambda_max).abs());
    let (x, r) = if flo <= fhi {
        (band.lambda_min, flo)
    } else {
        (band.lambda_max, fhi)
    };
    if r <= 1e-8 {
        return Ok(x);
    }
    Err(Error::RootFindingFailure(format!(
        "no dispersion root for k = {k} in band {}",
        band.n
    )))
}

fn edge_for(band: &Band, kind: EdgeKind) -> f64 {
    if band.edge_kind_min == kind {
        band.lambda_min
    } else {
        band.lambda_max
    }
}

/// `lambda_n(k)`, the unique energy in band `n` with `Delta = 2 cos k`.
pub fn dispersion(cell: &UnitCell, n: usize, k: BlochMomentum) -> Result<f64> {
    let band = isolated_band(cell, n)?;
    dispersion_in(cell, &band, k.value())
}

pub(crate) fn dispersion_derivative_at(cell: &UnitCell, lambda: f64, k: f64) -> f64 {
    let s = k.sin();
    if k == 0.0 || k.abs() == std::f64::consts::PI {
        return 0.0;
    }
    -2.0 * s / discriminant_derivative(cell, lambda)
}

/// `d lambda_n / dk` by implicit differentiation of `Delta(lambda(k)) = 2 cos k`.
pub fn dispersion_derivative(cell: &UnitCell, n: usize, k: BlochMomentum) -> Result<f64> {
    let band = isolated_band(cell, n)?;
    let lambda = dispersion_in(cell, &band, k.value())?;
    Ok(dispersion_derivative_at(cell, lambda, k.value()))
}
