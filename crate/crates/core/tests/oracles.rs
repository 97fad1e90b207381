//! Weyl functions and spectral data against independent constructions:
//! continued fractions, closed forms and truncated half-line matrices.

mod common;

use std::f64::consts::PI;

use jacobi_zak::quad::tanh_sinh;
use jacobi_zak::weyl::quadratic_coefficients;
use jacobi_zak::{
    band_edges, discriminant, discriminant_derivative, m_minus, m_minus_cf, m_plus, m_plus_cf,
    m_plus_derivative, make_monatomic, make_rice_mele, make_ssh, spectral_density, ComplexEnergy,
    UnitCell,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_energy<R: Rng>(rng: &mut R) -> ComplexEnergy {
    ComplexEnergy::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.1..10.0)).unwrap()
}

#[test]
fn floquet_branch_matches_continued_fraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let p = rng.gen_range(1..=5);
        let cell = common::random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        let m = m_plus(&cell, z).unwrap().m_plus;
        let cf = m_plus_cf(&cell, z, 400).unwrap();
        worst = worst.max((m - cf).norm());
    }
    assert!(worst <= 1e-9, "worst {worst:e}");
}

#[test]
fn m_minus_matches_backward_fraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let p = rng.gen_range(1..=5);
        let cell = common::random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        let m = m_minus(&cell, z).unwrap().m_minus.unwrap();
        let cf = m_minus_cf(&cell, z, 400).unwrap();
        assert!((m - cf).norm() <= 1e-9, "{cell} {z:?}: {m} vs {cf}");
    }
}

#[test]
fn quadratic_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let p = rng.gen_range(1..=5);
        let cell = common::random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        let m = m_plus(&cell, z).unwrap().m_plus;
        let ([a, b, c], _) = quadratic_coefficients(&cell, z.as_complex());
        let res = (a * m * m + b * m + c).norm();
        let scale = a.norm() * m.norm_sqr() + b.norm() * m.norm() + c.norm();
        assert!(res <= 1e-10 * scale, "{res:e} vs {scale:e}");
    }
}

#[test]
fn recursion_across_rotations() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let p = rng.gen_range(1..=5);
        let cell = common::random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        for s in 0..p {
            let here = cell.rotate(s);
            let next = cell.rotate(s + 1);
            let m = m_plus(&here, z).unwrap().m_plus;
            let m1 = m_plus(&next, z).unwrap().m_plus;
            let (a1, b1) = (here.hoppings()[0], here.onsite()[0]);
            let rhs = (b1 - z.as_complex() - a1 * a1 * m1).inv();
            assert!((m - rhs).norm() <= 1e-10 * m.norm().max(1.0));
        }
    }
}

#[test]
fn derivative_matches_finite_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let p = rng.gen_range(1..=4);
        let cell = common::random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        let h = 1e-5;
        let f = |dx: f64| {
            m_plus(&cell, ComplexEnergy::new(z.re + dx, z.im).unwrap())
                .unwrap()
                .m_plus
        };
        let fd = (f(h) - f(-h)) / (2.0 * h);
        let d = m_plus_derivative(&cell, z).unwrap();
        assert!((fd - d).norm() <= 1e-6 * d.norm().max(1.0), "{fd} vs {d}");
    }
}

/// Momentum in `(-pi, pi)` of band energy `lambda` with `lambda'(k) > 0`.
fn increasing_momentum(cell: &UnitCell, lambda: f64) -> f64 {
    let k = (0.5 * discriminant(cell, lambda)).acos();
    if -2.0 * k.sin() / discriminant_derivative(cell, lambda) > 0.0 {
        k
    } else {
        -k
    }
}

#[test]
fn rice_mele_closed_form() {
    let (t1, t2, delta) = (1.0, 2.0, 0.5);
    let cell = make_rice_mele(t1, t2, delta).unwrap();
    let mut sign = None;
    for band in band_edges(&cell).unwrap() {
        for j in 0..100 {
            let lambda = band.lambda_min + (j as f64 + 0.5) / 100.0 * band.width();
            let k = increasing_momentum(&cell, lambda);
            let e = Complex64::from_polar(1.0, k);
            let closed = -(delta + lambda) * e / ((t1 + t2 * e) * t2);
            let m = m_plus(&cell, ComplexEnergy::real(lambda)).unwrap().m_plus;
            let s = *sign.get_or_insert((closed / m).re.signum());
            assert!((m * s - closed).norm() <= 1e-8, "{lambda}: {m} vs {closed}");
        }
    }
}

#[test]
fn ssh_closed_form_upper_band() {
    let (t1, t2) = (1.0, 2.0);
    let cell = make_ssh(t1, t2).unwrap();
    let band = band_edges(&cell).unwrap()[1];
    for j in 0..100 {
        let lambda = band.lambda_min + (j as f64 + 0.5) / 100.0 * band.width();
        let k = increasing_momentum(&cell, lambda);
        let phi = (Complex64::new(t1, 0.0) + Complex64::from_polar(t2, -k)).arg();
        let closed = -Complex64::from_polar(1.0, phi + k) / t2;
        let m = m_plus(&cell, ComplexEnergy::real(lambda)).unwrap().m_plus;
        assert!((m - closed).norm() <= 1e-8, "{lambda}: {m} vs {closed}");
    }
}

#[test]
fn ssh_closed_form_general() {
    // both bands: m+ = -(t1 + t2 e^{-ik}) e^{ik} / (t2 lambda)
    let (t1, t2) = (1.0, 2.0);
    let cell = make_ssh(t1, t2).unwrap();
    for band in band_edges(&cell).unwrap() {
        for j in 0..100 {
            let lambda = band.lambda_min + (j as f64 + 0.5) / 100.0 * band.width();
            let k = increasing_momentum(&cell, lambda);
            let h = Complex64::new(t1, 0.0) + Complex64::from_polar(t2, -k);
            let closed = -h * Complex64::from_polar(1.0, k) / (t2 * lambda);
            let m = m_plus(&cell, ComplexEnergy::real(lambda)).unwrap().m_plus;
            assert!((m - closed).norm() <= 1e-8);
        }
    }
}

#[test]
fn monatomic_density_closed_form() {
    for (a, b) in [(1.0, 0.0), (0.7, 0.4), (2.0, -1.0)] {
        let cell = make_monatomic(a, b).unwrap();
        for j in 1..50 {
            let x = b - 2.0 * a + 4.0 * a * j as f64 / 50.0;
            let d = spectral_density(&cell, x).unwrap().density;
            let s = (x - b) / a;
            let expect = (4.0 - s * s).sqrt() / (2.0 * PI * a);
            assert!((d - expect).abs() < 1e-12, "{x}: {d} vs {expect}");
        }
    }
}

/// Spectral measure of `e_1` for the half-line operator truncated at `len`
/// sites: `mu((-inf, x]) = sum_{eig <= x} |v(1)|^2`.
fn truncated_measure(cell: &UnitCell, len: usize, x: f64) -> f64 {
    let p = cell.period();
    let (a, b) = (cell.hoppings(), cell.onsite());
    let mut t = DMatrix::<f64>::zeros(len, len);
    for i in 0..len {
        t[(i, i)] = b[i % p];
        if i + 1 < len {
            t[(i, i + 1)] = a[i % p];
            t[(i + 1, i)] = a[i % p];
        }
    }
    let eig = t.symmetric_eigen();
    (0..len)
        .filter(|&j| eig.eigenvalues[j] <= x)
        .map(|j| eig.eigenvectors[(0, j)].powi(2))
        .sum()
}

#[test]
fn density_integrates_to_truncated_measure() {
    // no Dirichlet pole below the band: the measure up to a mid-band point is
    // purely absolutely continuous
    let cell = make_rice_mele(1.0, 2.0, 0.5).unwrap();
    let band = band_edges(&cell).unwrap()[0];
    let x = band.lambda_min + 0.6 * band.width();
    let n = 4000;
    let h = (x - band.lambda_min) / n as f64;
    let integral: f64 = (0..n)
        .map(|j| {
            let l = band.lambda_min + (j as f64 + 0.5) * h;
            spectral_density(&cell, l).unwrap().density * h
        })
        .sum();
    let reference = truncated_measure(&cell, 1200, x);
    assert!(
        (integral - reference).abs() < 5e-3,
        "{integral} vs {reference}"
    );
}

#[test]
fn mirror_symmetric_m_minus_unimodular() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let p = rng.gen_range(1..=5);
        let cell = common::random_symmetric_cell(&mut rng, p);
        let a0 = cell.boundary_hopping();
        for n in common::separated_bands(&cell, 1e-3) {
            let band = band_edges(&cell).unwrap()[n - 1];
            for j in 1..20 {
                let lambda = band.lambda_min + j as f64 / 20.0 * band.width();
                let v = m_minus(&cell, ComplexEnergy::real(lambda)).unwrap();
                let m = v.m_minus.unwrap();
                assert!((a0 * m.norm() - 1.0).abs() < 1e-8, "{cell} {lambda}");
            }
        }
    }
}

#[test]
fn reflectionless_m_minus_from_conjugate() {
    // u- = conj(u+) on the spectrum gives m- = conj(1 / (a0^2 m+))
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let p = rng.gen_range(1..=5);
        let cell = common::random_cell(&mut rng, p);
        let a0 = cell.boundary_hopping();
        for n in common::separated_bands(&cell, 1e-3) {
            let band = band_edges(&cell).unwrap()[n - 1];
            for j in 1..20 {
                let lambda = band.lambda_min + j as f64 / 20.0 * band.width();
                let (Ok(plus), Ok(minus)) = (
                    m_plus(&cell, ComplexEnergy::real(lambda)),
                    m_minus(&cell, ComplexEnergy::real(lambda)),
                ) else {
                    continue;
                };
                let rebuilt = (a0 * a0 * plus.m_plus).inv().conj();
                let m = minus.m_minus.unwrap();
                assert!(
                    (m - rebuilt).norm() <= 1e-8 * m.norm().max(1.0),
                    "{cell} {lambda}"
                );
            }
        }
    }
}

#[test]
fn derivative_matches_density_integral() {
    // no Dirichlet pole: dmu = density dt, and m'(z) = int dmu(t) / (t - z)^2
    let cell = make_ssh(2.0, 1.0).unwrap();
    let bands = band_edges(&cell).unwrap();
    for (lambda, eps) in [(-2.2, 1e-4), (1.5, 1e-4), (0.0, 0.5)] {
        let z = Complex64::new(lambda, eps);
        let mut total = Complex64::new(0.0, 0.0);
        for b in &bands {
            let mut cuts = vec![b.lambda_min, b.lambda_max];
            if b.lambda_min < lambda && lambda < b.lambda_max {
                cuts.insert(1, lambda);
            }
            for w in cuts.windows(2) {
                let part = |t: f64| {
                    let d = spectral_density(&cell, t).map(|s| s.density).unwrap_or(0.0);
                    (Complex64::new(t, 0.0) - z).powi(-2) * d
                };
                let re = tanh_sinh(|t| part(t).re, w[0], w[1], 1e-12, 14).value;
                let im = tanh_sinh(|t| part(t).im, w[0], w[1], 1e-12, 14).value;
                total += Complex64::new(re, im);
            }
        }
        let d = m_plus_derivative(&cell, ComplexEnergy::new(lambda, eps).unwrap()).unwrap();
        assert!(
            (d.re - total.re).abs() <= 1e-4 * d.norm().max(1.0),
            "{lambda}: {d} vs {total}"
        );
    }
}
