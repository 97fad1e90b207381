//! Surface impedances in spectral gaps and mirror symmetry of cells.
//!
//! With `a_0 = a_p` and the real gap values of the Weyl functions,
//!
//! ```text
//! Z_R = 1 / (a_0 + a_0^2 m+),     Z_L = a_0 m- / (a_0 + a_0^2 m-).
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::cell::{ComplexEnergy, UnitCell};
use crate::error::{Error, Result};
use crate::transfer::{band_edges, dispersion_in, isolated_band, transfer_at};
use crate::weyl::{m_minus, m_plus};

/// `|1 + a_0 m|` below which an impedance is reported as a pole.
const DENOMINATOR_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Impedance {
    pub lambda: f64,
    pub z_right: f64,
    pub z_left: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnimodularityReport {
    pub n: usize,
    pub samples: usize,
    pub max_deviation: f64,
    /// Energy of the largest deviation.
    pub worst_lambda: f64,
    /// Set when the largest deviation exceeds `UNIMODULARITY_TOLERANCE`.
    pub offending_lambda: Option<f64>,
}

pub const UNIMODULARITY_TOLERANCE: f64 = 1e-8;

fn require_gap(cell: &UnitCell, lambda: f64) -> Result<()> {
    let in_band = band_edges(cell)?
        .iter()
        .any(|b| lambda >= b.lambda_min && lambda <= b.lambda_max);
    if in_band || !lambda.is_finite() {
        return Err(Error::NotInGap(lambda));
    }
    Ok(())
}

fn ratio(num: f64, den: f64, lambda: f64) -> Result<f64> {
    if den.abs() < DENOMINATOR_TOLERANCE * num.abs().max(1.0) {
        return Err(Error::DirichletPole(lambda));
    }
    Ok(num / den)
}

/// Impedances from the Weyl functions. At a pole of `m+` (resp. `m-`) the
/// limiting value `Z_R = 0` (resp. `Z_L = 1/a_0`) is returned.
pub fn surface_impedance(cell: &UnitCell, lambda: f64) -> Result<Impedance> {
    require_gap(cell, lambda)?;
    let a0 = cell.boundary_hopping();
    let z = ComplexEnergy::real(lambda);
    let z_right = match m_plus(cell, z) {
        Ok(v) => ratio(1.0, a0 + a0 * a0 * v.m_plus.re, lambda)?,
        Err(Error::DirichletPole(_)) => 0.0,
        Err(e) => return Err(e),
    };
    let z_left = match m_minus(cell, z) {
        Ok(v) => {
            let m = v.m_minus.expect("m_minus is always filled");
            ratio(a0 * m.re, a0 + a0 * a0 * m.re, lambda)?
        }
        Err(Error::DirichletPole(_)) => 1.0 / a0,
        Err(e) => return Err(e),
    };
    Ok(Impedance {
        lambda,
        z_right,
        z_left,
    })
}

/// Impedances straight from the Floquet eigenvectors `(u(1), u(0))` of the
/// decaying (right) and growing (left) solutions:
/// `Z = u(0) / (a_0 (u(0) - u(1)))`.
pub fn surface_impedance_direct(cell: &UnitCell, lambda: f64) -> Result<Impedance> {
    require_gap(cell, lambda)?;
    let a0 = cell.boundary_hopping();
    let m = transfer_at(cell, Complex64::new(lambda, 0.0));
    let e = m.0.map(|row| row.map(|x| x.re));
    let delta = e[0][0] + e[1][1];
    let big = 0.5 * (delta + delta.signum() * (delta * delta - 4.0).sqrt());
    let vector = |rho: f64| {
        let r1 = (e[0][1], rho - e[0][0]);
        let r2 = (rho - e[1][1], e[1][0]);
        if r1.0.abs() + r1.1.abs() >= r2.0.abs() + r2.1.abs() {
            r1
        } else {
            r2
        }
    };
    let (u1, u0) = vector(1.0 / big);
    let (v1, v0) = vector(big);
    Ok(Impedance {
        lambda,
        z_right: ratio(u0, a0 * (u0 - u1), lambda)?,
        z_left: ratio(v0, a0 * (v0 - v1), lambda)?,
    })
}

/// `b_i = b_{p-i+1}` and `a_i = a_{p-i}` for `i = 1..p-1`, exactly.
pub fn is_mirror_symmetric(cell: &UnitCell) -> bool {
    let (a, b) = (cell.hoppings(), cell.onsite());
    let p = cell.period();
    (0..p).all(|i| b[i] == b[p - 1 - i]) && (0..p.saturating_sub(1)).all(|i| a[i] == a[p - 2 - i])
}

/// Nearest mirror-symmetric cell: paired entries are replaced by their mean.
pub fn symmetrize(cell: &UnitCell) -> UnitCell {
    let (a, b) = (cell.hoppings(), cell.onsite());
    let p = cell.period();
    let nb = (0..p).map(|i| 0.5 * (b[i] + b[p - 1 - i])).collect();
    let mut na: Vec<f64> = (0..p - 1).map(|i| 0.5 * (a[i] + a[p - 2 - i])).collect();
    na.push(a[p - 1]);
    let out = UnitCell::new(na, nb).expect("means of valid coefficients are valid");
    match cell.name() {
        Some(n) => out.with_name(n),
        None => out,
    }
}

/// Largest deviation of `|a_p m+(lambda + i0)|` from 1 over `samples`
/// momenta `k_j = (j + 1/2) pi / samples` in band `n`.
pub fn verify_unimodularity(
    cell: &UnitCell,
    n: usize,
    samples: usize,
) -> Result<UnimodularityReport> {
    if !is_mirror_symmetric(cell) {
        return Err(Error::SymmetryViolation);
    }
    if samples == 0 {
        return Err(Error::Validation("at least one sample is required".into()));
    }
    let band = isolated_band(cell, n)?;
    let a0 = cell.boundary_hopping();
    let mut max_deviation = 0.0;
    let mut worst_lambda = f64::NAN;
    for j in 0..samples {
        let k = (j as f64 + 0.5) * PI / samples as f64;
        let lambda = dispersion_in(cell, &band, k)?;
        let m = m_plus(cell, ComplexEnergy::real(lambda))?.m_plus;
        let dev = (a0 * m.norm() - 1.0).abs();
        if dev > max_deviation || worst_lambda.is_nan() {
            max_deviation = dev;
            worst_lambda = lambda;
        }
    }
    Ok(UnimodularityReport {
        n,
        samples,
        max_deviation,
        worst_lambda,
        offending_lambda: (max_deviation > UNIMODULARITY_TOLERANCE).then_some(worst_lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{make_monatomic, make_ssh, make_trimer};

    #[test]
    fn symmetry_detection() {
        assert!(is_mirror_symmetric(&make_trimer()));
        assert!(is_mirror_symmetric(&make_ssh(1.0, 2.0).unwrap()));
        assert!(is_mirror_symmetric(&make_monatomic(1.0, 0.5).unwrap()));
        let c = UnitCell::new(vec![1.0, 2.0, 3.0], vec![0.0; 3]).unwrap();
        assert!(!is_mirror_symmetric(&c));
        let s = symmetrize(&c);
        assert!(is_mirror_symmetric(&s));
        assert_eq!(s.hoppings(), &[1.5, 1.5, 3.0]);
    }

    #[test]
    fn ssh_gap_centre_routes_agree() {
        let c = make_ssh(2.0, 1.0).unwrap();
        let a = surface_impedance(&c, 0.0).unwrap();
        let b = surface_impedance_direct(&c, 0.0).unwrap();
        assert!(a.z_right.is_finite());
        assert!((a.z_right - b.z_right).abs() < 1e-10);
        assert!((a.z_left - b.z_left).abs() < 1e-10);
        assert!(matches!(
            surface_impedance(&c, 2.0),
            Err(Error::NotInGap(_))
        ));
    }

    #[test]
    fn pole_limit() {
        // m+ has a pole at the SSH(1,2) zero mode
        let c = make_ssh(1.0, 2.0).unwrap();
        let z = surface_impedance(&c, 0.0).unwrap();
        assert_eq!(z.z_right, 0.0);
        let d = surface_impedance_direct(&c, 0.0).unwrap();
        assert!(d.z_right.abs() < 1e-12);
    }

    #[test]
    fn trimer_unimodular() {
        let t = make_trimer();
        for n in 1..=3 {
            let r = verify_unimodularity(&t, n, 200).unwrap();
            assert!(r.offending_lambda.is_none(), "{r:?}");
        }
        let asym = UnitCell::new(vec![1.0, 2.0, 3.0], vec![0.0; 3]).unwrap();
        assert_eq!(
            verify_unimodularity(&asym, 1, 10),
            Err(Error::SymmetryViolation)
        );
    }
}
