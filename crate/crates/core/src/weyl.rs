//! Weyl m-functions of the half-line operators.
//!
//! For `Im z > 0` the Floquet multiplier `rho` of the period transfer matrix
//! with `|rho| < 1` picks the solution that is square-summable at `+inf`;
//! its eigenvector `(u(1), u(0))` gives
//!
//! ```text
//! m+(z) = -u(1) / (a_0 u(0)),     m-(z) = -u(0) / (a_0 u(1)),
//! ```
//!
//! `m-` taking the `|rho| > 1` branch. Writing `r = u(1)/u(0) = -a_0 m+`,
//! the eigenvector condition becomes the quadratic
//!
//! ```text
//! a_0^2 M21 m^2 + a_0 (M11 - M22) m - M12 = 0,
//! ```
//!
//! whose leading coefficient vanishes exactly at the Dirichlet eigenvalues.
//! On the real axis the branch is the limit from the upper half-plane: inside
//! a band the two roots are complex conjugates and `Im m+ > 0` selects one,
//! inside a gap the decaying real multiplier does.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cell::{ComplexEnergy, UnitCell};
use crate::error::{Error, Result};
use crate::roots::bisect;
use crate::transfer::{
    band_edges, real_transfer_with_derivative, transfer_at, transfer_with_derivative, Mat2,
};

/// Relative size of `u(0)` (or `u(1)` for `m-`) below which the Weyl
/// function is treated as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// `|2 a m + b|` below which the derivative is refused.
pub const BRANCH_POINT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `Im z > 0`: the multiplier lies strictly inside the unit disk.
    InteriorDisk,
    /// Real energy: boundary value taken as the limit from above.
    HerglotzLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylValue {
    pub z: ComplexEnergy,
    pub m_plus: Complex64,
    pub m_minus: Option<Complex64>,
    /// Multiplier of the branch the value was built from.
    pub floquet_multiplier: Complex64,
    pub branch: Branch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralDensitySample {
    pub lambda: f64,
    pub density: f64,
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Plus,
    Minus,
}

/// Eigenvector `(u(1), u(0))` of `m` for the eigenvalue `rho`, taken from
/// whichever row of `m - rho` is better conditioned.
fn eigenvector(m: &Mat2, rho: Complex64) -> Option<(Complex64, Complex64)> {
    let e = &m.0;
    let from_row1 = (e[0][1], rho - e[0][0]);
    let from_row2 = (rho - e[1][1], e[1][0]);
    let n1 = from_row1.0.norm() + from_row1.1.norm();
    let n2 = from_row2.0.norm() + from_row2.1.norm();
    let best = if n1 >= n2 { from_row1 } else { from_row2 };
    if n1.max(n2) <= 1e-300 {
        return None;
    }
    Some(best)
}

fn weyl_ratio(m: &Mat2, rho: Complex64, a0: f64, side: Side, lambda: f64) -> Result<Complex64> {
    let (u1, u0) = eigenvector(m, rho).ok_or(Error::BandEdgeSingularity(lambda))?;
    let norm = u1.norm().max(u0.norm());
    match side {
        Side::Plus => {
            if u0.norm() < POLE_TOLERANCE * norm {
                return Err(Error::DirichletPole(lambda));
            }
            Ok(-u1 / (a0 * u0))
        }
        Side::Minus => {
            if u1.norm() < POLE_TOLERANCE * norm {
                return Err(Error::DirichletPole(lambda));
            }
            Ok(-u0 / (a0 * u1))
        }
    }
}

/// Floquet multipliers ordered `(decaying, growing)` towards `+inf`.
fn multipliers_off_axis(m: &Mat2) -> (Complex64, Complex64) {
    let tr = m.trace();
    let s = (tr * tr - 4.0).sqrt();
    let big = if (tr + s).norm() >= (tr - s).norm() {
        (tr + s) * 0.5
    } else {
        (tr - s) * 0.5
    };
    (big.inv(), big)
}

fn evaluate(
    cell: &UnitCell,
    z: ComplexEnergy,
    side: Side,
) -> Result<(Complex64, Complex64, Branch)> {
    if z.im < 0.0 {
        return Err(Error::IllPlacedEnergy { re: z.re, im: z.im });
    }
    let a0 = cell.boundary_hopping();
    let m = transfer_at(cell, z.as_complex());
    if z.im > 0.0 {
        let (small, big) = multipliers_off_axis(&m);
        let rho = if side == Side::Plus { small } else { big };
        let w = weyl_ratio(&m, rho, a0, side, z.re)?;
        return Ok((w, rho, Branch::InteriorDisk));
    }

    let lambda = z.re;
    let delta = m.trace().re;
    let disc = 4.0 - delta * delta;
    if disc.abs() < 1e-13 {
        return Err(Error::BandEdgeSingularity(lambda));
    }
    if disc > 0.0 {
        // band interior: conjugate multipliers on the unit circle
        let root = disc.sqrt();
        let mut best: Option<(Complex64, Complex64)> = None;
        for sign in [1.0, -1.0] {
            let rho = Complex64::new(0.5 * delta, 0.5 * sign * root);
            let w = weyl_ratio(&m, rho, a0, side, lambda)?;
            if best.is_none_or(|(bw, _)| w.im > bw.im) {
                best = Some((w, rho));
            }
        }
        let (w, rho) = best.expect("two candidates evaluated");
        if w.im <= 0.0 {
            return Err(Error::DirichletPoleOnBand(lambda));
        }
        Ok((w, rho, Branch::HerglotzLimit))
    } else {
        let s = (delta * delta - 4.0).sqrt();
        let big = 0.5 * (delta + delta.signum() * s);
        let rho = if side == Side::Plus { 1.0 / big } else { big };
        let rho = Complex64::new(rho, 0.0);
        let w = weyl_ratio(&m, rho, a0, side, lambda)?;
        Ok((Complex64::new(w.re, 0.0), rho, Branch::HerglotzLimit))
    }
}

/// Weyl function `m+` at an energy in the closed upper half-plane.
pub fn m_plus(cell: &UnitCell, z: ComplexEnergy) -> Result<WeylValue> {
    let (m, rho, branch) = evaluate(cell, z, Side::Plus)?;
    let m_minus = evaluate(cell, z, Side::Minus).ok().map(|v| v.0);
    Ok(WeylValue {
        z,
        m_plus: m,
        m_minus,
        floquet_multiplier: rho,
        branch,
    })
}

/// Weyl function `m-`, built from the solution square-summable at `-inf`.
/// `m_plus` is filled in as well, or set to infinity at a pole of `m+`.
pub fn m_minus(cell: &UnitCell, z: ComplexEnergy) -> Result<WeylValue> {
    let (m, rho, branch) = evaluate(cell, z, Side::Minus)?;
    let plus = evaluate(cell, z, Side::Plus)
        .map(|v| v.0)
        .unwrap_or(Complex64::new(f64::INFINITY, 0.0));
    Ok(WeylValue {
        z,
        m_plus: plus,
        m_minus: Some(m),
        floquet_multiplier: rho,
        branch,
    })
}

/// Continued fraction for `m+`, truncated after `depth` levels with a zero
/// tail:
///
/// `m = 1/(b_1 - z - a_1^2/(b_2 - z - a_2^2/(...)))`.
pub fn m_plus_cf(cell: &UnitCell, z: ComplexEnergy, depth: usize) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::IllPlacedEnergy { re: z.re, im: z.im });
    }
    if depth == 0 {
        return Err(Error::Validation(
            "continued fraction depth must be >= 1".into(),
        ));
    }
    let (a, b) = (cell.hoppings(), cell.onsite());
    let p = cell.period();
    let z = z.as_complex();
    let mut tail = Complex64::new(0.0, 0.0);
    for level in (0..depth).rev() {
        let j = level % p;
        let coupling = if level + 1 < depth { a[j] * a[j] } else { 0.0 };
        tail = (b[j] - z - coupling * tail).inv();
    }
    Ok(tail)
}

/// Continued fraction for `m-`, running leftwards from site `p`.
pub fn m_minus_cf(cell: &UnitCell, z: ComplexEnergy, depth: usize) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::IllPlacedEnergy { re: z.re, im: z.im });
    }
    if depth == 0 {
        return Err(Error::Validation(
            "continued fraction depth must be >= 1".into(),
        ));
    }
    let b = cell.onsite();
    let p = cell.period();
    let z = z.as_complex();
    let mut tail = Complex64::new(0.0, 0.0);
    for level in (0..depth).rev() {
        let j = p - 1 - level % p;
        let coupling = if level + 1 < depth {
            let left = cell.left_hopping(j);
            left * left
        } else {
            0.0
        };
        tail = (b[j] - z - coupling * tail).inv();
    }
    Ok(tail)
}

/// Coefficients `(a, b, c)` of the quadratic satisfied by `m+` and their
/// energy derivatives.
pub fn quadratic_coefficients(cell: &UnitCell, z: Complex64) -> ([Complex64; 3], [Complex64; 3]) {
    let a0 = cell.boundary_hopping();
    let (m, dm) = transfer_with_derivative(cell, z);
    let coeffs = |t: &Mat2| {
        let e = &t.0;
        [a0 * a0 * e[1][0], a0 * (e[0][0] - e[1][1]), -e[0][1]]
    };
    (coeffs(&m), coeffs(&dm))
}

/// `dm+/dz` by implicit differentiation of the quadratic.
pub fn m_plus_derivative(cell: &UnitCell, z: ComplexEnergy) -> Result<Complex64> {
    let m = m_plus(cell, z)?.m_plus;
    let ([a, b, _], [da, db, dc]) = quadratic_coefficients(cell, z.as_complex());
    let denom = 2.0 * a * m + b;
    if denom.norm() < BRANCH_POINT_TOLERANCE {
        return Err(Error::BandEdgeSingularity(z.re));
    }
    Ok(-(da * m * m + db * m + dc) / denom)
}

/// Absolutely continuous spectral density `Im m+(lambda + i0) / pi`.
pub fn spectral_density(cell: &UnitCell, lambda: f64) -> Result<SpectralDensitySample> {
    let inside = band_edges(cell)?.iter().any(|b| b.contains(lambda));
    if !inside {
        return Err(Error::NotInBand(lambda));
    }
    let m = m_plus(cell, ComplexEnergy::real(lambda))?.m_plus;
    Ok(SpectralDensitySample {
        lambda,
        density: (m.im / std::f64::consts::PI).max(0.0),
    })
}

/// Zeros of the leading coefficient `M21(lambda)`: the spectrum of the
/// cell's interior block with Dirichlet conditions at sites `0` and `p`.
pub fn dirichlet_eigenvalues(cell: &UnitCell) -> Result<Vec<f64>> {
    let p = cell.period();
    if p == 1 {
        return Ok(Vec::new());
    }
    let n = p - 1;
    let (a, b) = (cell.hoppings(), cell.onsite());
    let mut t = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        t[(i, i)] = b[i];
        if i + 1 < n {
            t[(i, i + 1)] = a[i];
            t[(i + 1, i)] = a[i];
        }
    }
    let scale = 1.0 + cell.scale();
    let m21 = |x: f64| real_transfer_with_derivative(cell, x).0[2];
    let mut roots: Vec<f64> = t
        .symmetric_eigenvalues()
        .iter()
        .map(|&e| {
            let d = 1e-8 * scale;
            if m21(e - d) * m21(e + d) < 0.0 {
                bisect(m21, e - d, e + d, 0.0).unwrap_or(e)
            } else {
                e
            }
        })
        .collect();
    roots.sort_by(f64::total_cmp);

    let bands = band_edges(cell)?;
    for &mu in &roots {
        if !mu.is_finite() {
            return Err(Error::RootFindingFailure(
                "non-finite Dirichlet eigenvalue".into(),
            ));
        }
        let slack = 1e-8 * scale;
        if bands
            .iter()
            .any(|bd| mu > bd.lambda_min + slack && mu < bd.lambda_max - slack)
        {
            return Err(Error::RootFindingFailure(format!(
                "Dirichlet eigenvalue {mu} lies inside a band"
            )));
        }
    }
    Ok(roots)
}

/// Whether the Dirichlet eigenvalue `mu` is an actual pole of `m+`, i.e. the
/// decaying solution vanishes at site 0. Otherwise the zero of the leading
/// coefficient belongs to the other root of the quadratic.
pub fn is_weyl_pole(cell: &UnitCell, mu: f64) -> bool {
    let (m, _) = real_transfer_with_derivative(cell, mu);
    m[0].abs() < 1.0
}
