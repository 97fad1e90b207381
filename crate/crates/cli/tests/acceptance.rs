//! Acceptance suite: one PASS/FAIL line per criterion on standard output.
//! The process exits non-zero when any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use jacobi_zak::symbol::{wilson_loop_phase, wilson_loop_vectors};
use jacobi_zak::weyl::quadratic_coefficients;
use jacobi_zak::{
    band_edges, berry_connection_weyl, circle_distance, compare_methods, discriminant,
    discriminant_derivative, linspace, m_plus, m_plus_cf, make_rice_mele, make_ssh, make_trimer,
    one_period_transfer, rice_mele_sweep, spectral_density, surface_impedance,
    surface_impedance_direct, verify_unimodularity, BlochMomentum, ComplexEnergy, EdgeKind, Error,
    Execution, UnitCell,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_jacobi-zak");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(BIN)
        .arg("--quiet")
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_json(args: &[&str]) -> Value {
    let (code, out) = cli(args);
    assert_eq!(code, 0, "{args:?} exited {code}");
    serde_json::from_slice(&out).expect("valid JSON")
}

fn random_cell<R: Rng>(rng: &mut R, p: usize) -> UnitCell {
    let a = (0..p).map(|_| rng.gen_range(0.5..2.0)).collect();
    let b = (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect();
    UnitCell::new(a, b).unwrap()
}

/// `b_i = b_{p-i+1}`, `a_i = a_{p-i}` for `i < p`; `a_p` free.
fn random_symmetric_cell<R: Rng>(rng: &mut R, p: usize) -> UnitCell {
    let mut a: Vec<f64> = (0..p).map(|_| rng.gen_range(0.5..2.0)).collect();
    let mut b: Vec<f64> = (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for i in 0..p / 2 {
        b[p - 1 - i] = b[i];
    }
    for i in 0..(p - 1) / 2 {
        a[p - 2 - i] = a[i];
    }
    UnitCell::new(a, b).unwrap()
}

fn random_energy<R: Rng>(rng: &mut R) -> ComplexEnergy {
    ComplexEnergy::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.1..10.0)).unwrap()
}

fn weyl_value(v: &Value) -> f64 {
    v["results"][0]["weyl"]["value"].as_f64().unwrap()
}

fn wilson_value(v: &Value) -> f64 {
    v["results"][0]["wilson"]["value"].as_f64().unwrap()
}

fn criterion_1() -> Outcome {
    let base = ["zak", "--model", "trimer", "--band", "1", "--grid", "500"];
    let with = |m: &str| {
        let mut args = base.to_vec();
        args.extend(["--method", m]);
        cli_json(&args)
    };
    let weyl = weyl_value(&with("weyl"));
    let wilson = wilson_value(&with("wilson"));
    let both = with("both");
    let disc = both["results"][0]["discrepancy"].as_f64().unwrap();
    let ok_weyl = (weyl - 3.1284).abs() <= 0.01;
    let ok_wilson = circle_distance(wilson, PI) <= 1e-3;
    let ok_disc = (disc - 0.0132).abs() <= 0.01;
    outcome(
        ok_weyl && ok_wilson && ok_disc,
        format!(
            "weyl {weyl:.6} (target 3.1284 +- 0.01: {}), wilson {wilson:.6} (pi +- 1e-3: {}), discrepancy {disc:.3e} (0.0132 +- 0.01: {})",
            ok_weyl, ok_wilson, ok_disc
        ),
    )
}

fn criterion_2() -> Outcome {
    let params = [(1.0, 2.0), (2.0, 1.0), (0.5, 3.0), (3.0, 0.5)];
    let mut notes = Vec::new();
    let mut pass = true;
    let mut values = Vec::new();
    for (t1, t2) in params {
        let cmp = compare_methods(&make_ssh(t1, t2).unwrap(), 1, 501).unwrap();
        let (w, z) = (cmp.wilson.value, cmp.weyl.value);
        let quantised = |x: f64| circle_distance(x, 0.0).min(circle_distance(x, PI)) <= 1e-3;
        let agree = circle_distance(w, z) <= 1e-3;
        pass &= quantised(w) && quantised(z) && agree;
        notes.push(format!("({t1},{t2}) wilson {w:.4} weyl {z:.4}"));
        values.push(w);
    }
    for pair in [(0, 1), (2, 3)] {
        let swapped = (circle_distance(values[pair.0], values[pair.1]) - PI).abs() <= 1e-3;
        pass &= swapped;
    }
    outcome(pass, notes.join(", "))
}

fn criterion_3() -> Outcome {
    let ratios = linspace(0.2, 5.0, 21);
    let deltas = linspace(-1.0, 1.0, 21);
    let r = rice_mele_sweep(&ratios, &deltas, 1, 501, Execution::default()).unwrap();
    let max = r.max_discrepancy();
    let failed = r.points.iter().filter(|p| p.error.is_some()).count();
    let skipped = r.points.iter().filter(|p| p.degenerate).count();
    outcome(
        max <= 5e-2 && failed == 0,
        format!(
            "max discrepancy {max:.3e} over {} points ({skipped} near closure, {failed} failed)",
            r.points.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cells = vec![make_trimer()];
    cells.extend((0..25).map(|_| {
        let p = rng.gen_range(1..=5);
        random_symmetric_cell(&mut rng, p)
    }));
    let mut worst: f64 = 0.0;
    let mut bands = 0;
    for cell in &cells {
        for b in band_edges(cell).unwrap().iter().filter(|b| b.isolated) {
            let report = verify_unimodularity(cell, b.n, 200).unwrap();
            worst = worst.max(report.max_deviation);
            bands += 1;
        }
    }
    outcome(
        worst <= 1e-8,
        format!(
            "max | |a_p m+| - 1 | = {worst:.3e} over {bands} isolated bands of {} cells",
            cells.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut cf, mut quad, mut rec): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..500 {
        let p = rng.gen_range(1..=5);
        let cell = random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        let m = m_plus(&cell, z).unwrap().m_plus;
        cf = cf.max((m - m_plus_cf(&cell, z, 400).unwrap()).norm());
        let ([a, b, c], _) = quadratic_coefficients(&cell, z.as_complex());
        let scale = a.norm() * m.norm_sqr() + b.norm() * m.norm() + c.norm();
        quad = quad.max((a * m * m + b * m + c).norm() / scale);
        for s in 0..p {
            let here = cell.rotate(s);
            let next = cell.rotate(s + 1);
            let mh = m_plus(&here, z).unwrap().m_plus;
            let mn = m_plus(&next, z).unwrap().m_plus;
            let (a1, b1) = (here.hoppings()[0], here.onsite()[0]);
            let rhs = (b1 - z.as_complex() - a1 * a1 * mn).inv();
            rec = rec.max((mh - rhs).norm() / mh.norm());
        }
    }
    outcome(
        cf <= 1e-9 && quad <= 1e-10 && rec <= 1e-10,
        format!("continued fraction {cf:.2e}, quadratic residual {quad:.2e}, recursion residual {rec:.2e}"),
    )
}

fn criterion_6() -> Outcome {
    let (t1, t2) = (1.0, 2.0);
    let cell = make_ssh(t1, t2).unwrap();
    let residuals: Vec<f64> = (0..100)
        .map(|j| {
            let k = -PI + 2.0 * PI * (j as f64 + 0.5) / 100.0;
            let a = berry_connection_weyl(&cell, 1, BlochMomentum::new(k))
                .unwrap()
                .value;
            let dphi =
                -(t2 * t2 + t1 * t2 * k.cos()) / (t1 * t1 + t2 * t2 + 2.0 * t1 * t2 * k.cos());
            a + 0.5 * dphi
        })
        .collect();
    let worst = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let (lo, hi) = residuals
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &r| {
            (l.min(r), h.max(r))
        });
    outcome(
        worst <= 1e-4,
        format!("max |A(k) + phi'(k)/2| = {worst:.6e} over 100 momenta; residual lies in [{lo:.12}, {hi:.12}]"),
    )
}

/// Momentum of a band energy on the branch with `lambda'(k) > 0`.
fn increasing_momentum(cell: &UnitCell, lambda: f64) -> f64 {
    let k = (0.5 * discriminant(cell, lambda)).acos();
    if -2.0 * k.sin() / discriminant_derivative(cell, lambda) > 0.0 {
        k
    } else {
        -k
    }
}

/// Largest deviation from `closed` over 50 interior energies of each band,
/// with one sign fixed by the first sample.
fn boundary_mismatch(cell: &UnitCell, closed: impl Fn(f64, f64) -> Complex64) -> f64 {
    let mut sign = None;
    let mut worst: f64 = 0.0;
    for band in band_edges(cell).unwrap() {
        for j in 0..50 {
            let lambda = band.lambda_min + (j as f64 + 0.5) / 50.0 * band.width();
            let k = increasing_momentum(cell, lambda);
            let c = closed(lambda, k);
            let m = m_plus(cell, ComplexEnergy::real(lambda)).unwrap().m_plus;
            let s = *sign.get_or_insert(if (c / m).re < 0.0 { -1.0 } else { 1.0 });
            worst = worst.max((s * m - c).norm());
        }
    }
    worst
}

fn criterion_7() -> Outcome {
    let (t1, t2, delta) = (1.0, 2.0, 0.5);
    let ssh = boundary_mismatch(&make_ssh(t1, t2).unwrap(), |_, k| {
        let phi = (Complex64::new(t1, 0.0) + Complex64::from_polar(t2, -k)).arg();
        -Complex64::from_polar(1.0, phi + k) / t2
    });
    let rm = boundary_mismatch(&make_rice_mele(t1, t2, delta).unwrap(), |lambda, k| {
        let e = Complex64::from_polar(1.0, k);
        -(delta + lambda) * e / ((t1 + t2 * e) * t2)
    });
    outcome(
        ssh <= 1e-8 && rm <= 1e-8,
        format!("SSH display max deviation {ssh:.3e}, Rice-Mele display max deviation {rm:.3e} (single global sign each)"),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    let mut herglotz = 0;
    let mut det_worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = rng.gen_range(1..=5);
        let cell = random_cell(&mut rng, p);
        let z = random_energy(&mut rng);
        let v = m_plus(&cell, z).unwrap();
        if v.m_plus.im <= 0.0 || v.m_minus.is_none_or(|m| m.im <= 0.0) {
            herglotz += 1;
        }
        let m = one_period_transfer(&cell, z);
        det_worst = det_worst.max((m.det - 1.0).norm() / m.entries.norm());
    }
    if herglotz > 0 {
        failures.push(format!("{herglotz} Herglotz violations"));
    }
    if det_worst > 1e-12 {
        failures.push(format!("|det M - 1| / |M| reached {det_worst:.2e}"));
    }

    let mut edge_worst: f64 = 0.0;
    let mut negative_density = 0;
    let mut wilson_worst: f64 = 0.0;
    for _ in 0..200 {
        let p = rng.gen_range(1..=5);
        let cell = random_cell(&mut rng, p);
        let bands = band_edges(&cell).unwrap();
        for b in &bands {
            for (x, kind) in [
                (b.lambda_min, b.edge_kind_min),
                (b.lambda_max, b.edge_kind_max),
            ] {
                let target = if kind == EdgeKind::K0 { 2.0 } else { -2.0 };
                let scale = discriminant_derivative(&cell, x).abs().max(1.0);
                edge_worst = edge_worst.max((discriminant(&cell, x) - target).abs() / scale);
            }
            if b.width() > 1e-6 {
                for j in 1..10 {
                    let x = b.lambda_min + j as f64 / 10.0 * b.width();
                    match spectral_density(&cell, x) {
                        Ok(d) if d.density < 0.0 => negative_density += 1,
                        _ => {}
                    }
                }
            }
            if b.isolated {
                let vs = wilson_loop_vectors(&cell, b.n, 64).unwrap();
                let rephased: Vec<Vec<Complex64>> = vs
                    .iter()
                    .map(|v| {
                        let r = Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
                        v.iter().map(|x| x * r).collect()
                    })
                    .collect();
                wilson_worst = wilson_worst.max(circle_distance(
                    wilson_loop_phase(&vs),
                    wilson_loop_phase(&rephased),
                ));
            }
        }
        let alternating = bands
            .windows(2)
            .all(|w| w[0].edge_kind_max == w[1].edge_kind_min)
            && bands[bands.len() - 1].edge_kind_max == EdgeKind::K0;
        if !alternating {
            failures.push(format!("edge kinds out of order for {cell}"));
        }
    }
    if edge_worst > 1e-8 {
        failures.push(format!("band-edge residual {edge_worst:.2e}"));
    }
    if negative_density > 0 {
        failures.push(format!("{negative_density} negative densities"));
    }
    if wilson_worst >= 1e-12 {
        failures.push(format!(
            "Wilson rephasing changed the phase by {wilson_worst:.2e}"
        ));
    }

    let mut routes_worst: f64 = 0.0;
    let mut gap_points = 0;
    while gap_points < 100 {
        let p = rng.gen_range(1..=5);
        let cell = random_cell(&mut rng, p);
        let bands = band_edges(&cell).unwrap();
        let mut gaps = vec![(bands[0].lambda_min - 3.0, bands[0].lambda_min)];
        gaps.extend(
            bands
                .windows(2)
                .filter(|w| w[1].lambda_min - w[0].lambda_max > 1e-6)
                .map(|w| (w[0].lambda_max, w[1].lambda_min)),
        );
        let (lo, hi) = gaps[rng.gen_range(0..gaps.len())];
        let lambda = lo + rng.gen_range(0.01..0.99) * (hi - lo);
        match (
            surface_impedance(&cell, lambda),
            surface_impedance_direct(&cell, lambda),
        ) {
            (Ok(a), Ok(b)) => {
                let d = ((a.z_right - b.z_right).abs() / a.z_right.abs().max(1.0))
                    .max((a.z_left - b.z_left).abs() / a.z_left.abs().max(1.0));
                routes_worst = routes_worst.max(d);
                gap_points += 1;
            }
            (Err(Error::DirichletPole(_)), _) | (_, Err(Error::DirichletPole(_))) => {}
            (a, b) => {
                failures.push(format!("impedance routes: {a:?} / {b:?}"));
                gap_points += 1;
            }
        }
    }
    if routes_worst > 1e-10 {
        failures.push(format!("impedance routes differ by {routes_worst:.2e}"));
    }

    let summary = format!(
        "Herglotz 1000, det 1000 (worst {det_worst:.1e}), edges (worst {edge_worst:.1e}), density, impedance routes 100 (worst {routes_worst:.1e}), Wilson gauge (worst {wilson_worst:.1e})"
    );
    if failures.is_empty() {
        outcome(true, summary)
    } else {
        outcome(false, format!("{summary}; {}", failures.join("; ")))
    }
}

fn criterion_9() -> Outcome {
    let commands: &[&[&str]] = &[
        &[
            "zak", "--model", "trimer", "--band", "1", "--grid", "500", "--method", "weyl",
        ],
        &[
            "zak", "--model", "trimer", "--band", "1", "--grid", "500", "--method", "wilson",
        ],
        &["zak", "--model", "trimer", "--band", "1", "--grid", "500"],
        &[
            "zak",
            "--model",
            "rice-mele",
            "--t1",
            "1",
            "--t2",
            "2",
            "--delta",
            "0.5",
            "--band",
            "1",
        ],
        &["bands", "--model", "ssh", "--t1", "1", "--t2", "2"],
        &["bands", "--model", "trimer", "--format", "json"],
        &["sweep", "--model", "rice-mele"],
        &["sweep", "--model", "rice-mele", "--format", "json"],
        &["sweep", "--model", "ssh"],
        &["mweyl", "--model", "trimer", "--band", "1"],
        &[
            "mweyl", "--model", "ssh", "--t1", "1", "--t2", "2", "--lambda", "0", "--eps", "0",
        ],
        &["impedance", "--model", "trimer"],
        &["impedance", "--model", "ssh", "--format", "json"],
        &["check-symmetry", "--model", "trimer"],
    ];
    let mut differing = Vec::new();
    for args in commands {
        let (c1, first) = cli(args);
        let (c2, second) = cli(args);
        if c1 != 0 || c2 != 0 || first != second || first.is_empty() {
            differing.push(args.join(" "));
        }
    }
    let (_, serial) = cli(&["sweep", "--model", "rice-mele", "--jobs", "1"]);
    let (_, parallel) = cli(&["sweep", "--model", "rice-mele", "--jobs", "8"]);
    if serial != parallel {
        differing.push("sweep --jobs 1 vs --jobs 8".into());
    }
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!(
                "{} commands byte-identical across two runs; sweep identical for 1 and 8 jobs",
                commands.len()
            )
        } else {
            format!("differing output: {}", differing.join(" | "))
        },
    )
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "trimer Zak phase by both engines",
            criterion_1,
            Duration::from_secs(1),
        ),
        ("SSH quantisation", criterion_2, Duration::from_secs(1)),
        (
            "Rice-Mele 21x21 sweep agreement",
            criterion_3,
            Duration::from_secs(30),
        ),
        (
            "boundary unimodularity for mirror-symmetric cells",
            criterion_4,
            Duration::from_secs(10),
        ),
        (
            "m+ against continued fraction, quadratic and recursion",
            criterion_5,
            Duration::from_secs(10),
        ),
        (
            "Weyl Berry connection on the SSH lower band",
            criterion_6,
            Duration::from_secs(1),
        ),
        (
            "SSH and Rice-Mele boundary-value displays",
            criterion_7,
            Duration::from_secs(1),
        ),
        ("property suite", criterion_8, Duration::from_secs(30)),
        ("CLI determinism", criterion_9, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = result.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name}: {}; {:.3}s (budget {}s{})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", exceeded" }
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
