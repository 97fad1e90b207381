use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use jacobi_zak::{
    band_edges, build_symbol, compare_methods_with, dirichlet_eigenvalues, is_mirror_symmetric,
    is_weyl_pole, linspace, m_plus, make_monatomic, make_rice_mele, make_ssh, make_trimer,
    parse_cell, rice_mele_sweep, ssh_sweep, surface_impedance, symmetrize, verify_unimodularity,
    zak_quantised_symmetric, zak_weyl_with, zak_wilson_with, Band, ComplexEnergy, Error, Execution,
    QuantisedZak, UnimodularityReport, UnitCell, ZakOptions, ZakPhaseResult,
};
use serde::Serialize;

use crate::args::{
    BandSelection, Cli, Command, Format, Global, MethodChoice, ModelName, QuadratureChoice,
};
use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::output::{csv, emit, float, json, opt_float};
use crate::svg::{heat_map, line_plot, Series};

const DEFAULT_GRID: usize = 501;
const MIN_GRID: usize = 16;

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

struct Ctx {
    g: Global,
    cfg: ConfigFile,
}

impl Ctx {
    fn quiet(&self) -> bool {
        self.g.quiet || self.cfg.quiet.unwrap_or(false)
    }

    fn info(&self, msg: impl AsRef<str>) {
        if !self.quiet() {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn output(&self) -> Option<PathBuf> {
        self.g.output.clone().or_else(|| self.cfg.output.clone())
    }

    fn format(&self, default: Format) -> Format {
        pick(self.g.format, self.cfg.format, default)
    }

    fn grid(&self) -> CliResult<usize> {
        let grid = pick(self.g.grid, self.cfg.grid, DEFAULT_GRID);
        if grid < MIN_GRID {
            return Err(input(format!(
                "--grid must be at least {MIN_GRID}, got {grid}"
            )));
        }
        Ok(grid)
    }

    fn t1(&self) -> f64 {
        pick(self.g.t1, self.cfg.t1, 1.0)
    }

    fn t2(&self) -> f64 {
        pick(self.g.t2, self.cfg.t2, 2.0)
    }

    fn delta(&self) -> f64 {
        pick(self.g.delta, self.cfg.delta, 0.0)
    }

    fn model(&self) -> Option<ModelName> {
        self.g.model.or(self.cfg.model)
    }

    fn file(&self) -> Option<&Path> {
        self.g.file.as_deref().or(self.cfg.file.as_deref())
    }

    fn cell(&self) -> CliResult<UnitCell> {
        let model = match (self.model(), self.file()) {
            (Some(ModelName::Custom) | None, Some(path)) => return read_cell(path),
            (Some(ModelName::Custom), None) => return Err(input("--model custom needs --file")),
            (Some(m), Some(_)) => {
                return Err(input(format!(
                    "--file conflicts with preset model {m:?}; use --model custom"
                )))
            }
            (None, None) => return Err(input("no model given: pass --model or --file")),
            (Some(m), None) => m,
        };
        Ok(match model {
            ModelName::Ssh => make_ssh(self.t1(), self.t2())?,
            ModelName::RiceMele => make_rice_mele(self.t1(), self.t2(), self.delta())?,
            ModelName::Trimer => make_trimer(),
            ModelName::Monatomic => make_monatomic(self.t1(), self.delta())?,
            ModelName::Custom => unreachable!("handled above"),
        })
    }
}

fn read_cell(path: &Path) -> CliResult<UnitCell> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read cell {}: {e}", path.display())))?;
    parse_cell(&text).map_err(|e| match e {
        Error::Parse(msg) => input(format!("cell {}: {msg}", path.display())),
        other => other.into(),
    })
}

pub fn run(cli: Cli) -> CliResult<()> {
    let cfg = match &cli.global.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let ctx = Ctx { g: cli.global, cfg };
    let jobs = ctx.g.jobs.or(ctx.cfg.jobs);
    let bytes = match jobs {
        Some(0) => return Err(input("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| input(format!("cannot start {n} workers: {e}")))?
            .install(|| dispatch(&ctx, &cli.command))?,
        None => dispatch(&ctx, &cli.command)?,
    };
    emit(&bytes, ctx.output().as_deref())
}

fn dispatch(ctx: &Ctx, command: &Command) -> CliResult<Vec<u8>> {
    match *command {
        Command::Bands { samples } => bands(ctx, samples),
        Command::Zak {
            band,
            method,
            quadrature,
        } => zak(ctx, band, method, quadrature),
        Command::Sweep {
            band,
            ratio_min,
            ratio_max,
            ratio_steps,
            delta_min,
            delta_max,
            delta_steps,
        } => {
            let c = &ctx.cfg;
            let lattice = Lattice {
                ratio: (
                    pick(ratio_min, c.ratio_min, 0.2),
                    pick(ratio_max, c.ratio_max, 5.0),
                    pick(ratio_steps, c.ratio_steps, 21),
                ),
                delta: (
                    pick(delta_min, c.delta_min, -1.0),
                    pick(delta_max, c.delta_max, 1.0),
                    pick(delta_steps, c.delta_steps, 21),
                ),
            };
            let band = band.or(match c.band {
                Some(BandSelection::One(n)) => Some(n),
                _ => None,
            });
            sweep(ctx, band.unwrap_or(1), lattice)
        }
        Command::Mweyl {
            lambda,
            lambda_min,
            lambda_max,
            points,
            eps,
            band,
        } => {
            let c = &ctx.cfg;
            let band = band.or(match c.band {
                Some(BandSelection::One(n)) => Some(n),
                _ => None,
            });
            mweyl(
                ctx,
                MweylArgs {
                    lambda: lambda.or(c.lambda),
                    range: (lambda_min.or(c.lambda_min), lambda_max.or(c.lambda_max)),
                    points: points.or(c.points),
                    eps: pick(eps, c.eps, 0.0),
                    band,
                },
            )
        }
        Command::Impedance {
            lambda_min,
            lambda_max,
            points,
        } => {
            let c = &ctx.cfg;
            impedance(
                ctx,
                (lambda_min.or(c.lambda_min), lambda_max.or(c.lambda_max)),
                pick(points, c.points, 401),
            )
        }
        Command::CheckSymmetry { samples } => {
            check_symmetry(ctx, pick(samples, ctx.cfg.samples, 200))
        }
    }
}

fn no_svg(command: &str) -> CliError {
    input(format!(
        "{command} has no SVG output; use --format csv or json"
    ))
}

#[derive(Serialize)]
struct DispersionSample {
    band: usize,
    k: f64,
    lambda: f64,
}

#[derive(Serialize)]
struct BandsReport<'a> {
    cell: &'a UnitCell,
    bands: &'a [Band],
    dispersion: Vec<DispersionSample>,
}

fn bands(ctx: &Ctx, samples: Option<usize>) -> CliResult<Vec<u8>> {
    let cell = ctx.cell()?;
    let samples = pick(samples, ctx.cfg.samples, 65);
    if samples < 2 {
        return Err(input("--samples must be at least 2"));
    }
    let edges = band_edges(&cell)?;
    for b in &edges {
        let flag = if b.isolated { "isolated" } else { "touching" };
        ctx.info(format!(
            "band {}: [{}, {}] {flag}",
            b.n, b.lambda_min, b.lambda_max
        ));
    }
    let symbol = build_symbol(&cell);
    let ks = linspace(-PI, PI, samples);
    let spectra: Vec<Vec<f64>> = ks.iter().map(|&k| symbol.eigenvalues(k)).collect();
    let dispersion: Vec<DispersionSample> = (0..cell.period())
        .flat_map(|n| {
            ks.iter()
                .zip(&spectra)
                .map(move |(&k, ev)| DispersionSample {
                    band: n + 1,
                    k,
                    lambda: ev[n],
                })
        })
        .collect();
    match ctx.format(Format::Csv) {
        Format::Csv => csv(
            &["band", "k", "lambda"],
            dispersion
                .iter()
                .map(|s| vec![s.band.to_string(), float(s.k), float(s.lambda)]),
        ),
        Format::Json => json(&BandsReport {
            cell: &cell,
            bands: &edges,
            dispersion,
        }),
        Format::Svg => {
            let series: Vec<Series> = (1..=cell.period())
                .map(|n| Series {
                    label: format!("band {n}"),
                    points: dispersion
                        .iter()
                        .filter(|s| s.band == n)
                        .map(|s| Some((s.k, s.lambda)))
                        .collect(),
                })
                .collect();
            Ok(line_plot("Dispersion", "k", "lambda", &series).into_bytes())
        }
    }
}

#[derive(Serialize)]
struct ZakRecord {
    band: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wilson: Option<ZakPhaseResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weyl: Option<ZakPhaseResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancy: Option<f64>,
}

#[derive(Serialize)]
struct ZakReport<'a> {
    cell: &'a UnitCell,
    grid: usize,
    method: MethodChoice,
    quadrature: QuadratureChoice,
    results: Vec<ZakRecord>,
}

fn zak(
    ctx: &Ctx,
    band: Option<BandSelection>,
    method: Option<MethodChoice>,
    quadrature: Option<QuadratureChoice>,
) -> CliResult<Vec<u8>> {
    let cell = ctx.cell()?;
    let grid = ctx.grid()?;
    let method = pick(method, ctx.cfg.method, MethodChoice::Both);
    let quadrature = pick(quadrature, ctx.cfg.quadrature, QuadratureChoice::KMidpoint);
    let format = ctx.format(Format::Json);
    if format == Format::Svg {
        return Err(no_svg("zak"));
    }
    let bands: Vec<usize> = match pick(band, ctx.cfg.band, BandSelection::One(1)) {
        BandSelection::One(n) => vec![n],
        BandSelection::All => (1..=cell.period()).collect(),
    };
    let opts = ZakOptions {
        quadrature: quadrature.into(),
        execution: Execution::default(),
        tolerance: None,
    };
    let mut results = Vec::with_capacity(bands.len());
    for n in bands {
        let record = match method {
            MethodChoice::Both => {
                let cmp = compare_methods_with(&cell, n, grid, &opts)?;
                ZakRecord {
                    band: n,
                    discrepancy: Some(cmp.discrepancy_mod_2pi),
                    wilson: Some(cmp.wilson),
                    weyl: Some(cmp.weyl),
                }
            }
            MethodChoice::Wilson => ZakRecord {
                band: n,
                wilson: Some(zak_wilson_with(&cell, n, grid, opts.execution)?),
                weyl: None,
                discrepancy: None,
            },
            MethodChoice::Weyl => ZakRecord {
                band: n,
                wilson: None,
                weyl: Some(zak_weyl_with(&cell, n, grid, &opts)?),
                discrepancy: None,
            },
        };
        results.push(record);
    }
    for r in &results {
        let show = |z: &Option<ZakPhaseResult>| {
            z.as_ref()
                .map_or("-".to_string(), |z| format!("{:.6}", z.value))
        };
        ctx.info(format!(
            "band {}: wilson {} weyl {}",
            r.band,
            show(&r.wilson),
            show(&r.weyl)
        ));
    }
    if format == Format::Csv {
        let rows = results.iter().flat_map(|r| {
            [("wilson", &r.wilson), ("weyl", &r.weyl)]
                .into_iter()
                .filter_map(move |(name, z)| {
                    z.as_ref().map(|z| {
                        vec![
                            r.band.to_string(),
                            name.to_string(),
                            float(z.value),
                            z.grid.to_string(),
                            float(z.err_estimate),
                            opt_float(r.discrepancy),
                        ]
                    })
                })
        });
        return csv(
            &[
                "band",
                "method",
                "value",
                "grid",
                "err_estimate",
                "discrepancy",
            ],
            rows,
        );
    }
    json(&ZakReport {
        cell: &cell,
        grid,
        method,
        quadrature,
        results,
    })
}

struct Lattice {
    ratio: (f64, f64, usize),
    delta: (f64, f64, usize),
}

#[derive(Serialize)]
struct SweepReport<'a> {
    model: &'a str,
    max_discrepancy: f64,
    #[serde(flatten)]
    result: &'a jacobi_zak::SweepResult,
}

fn sweep(ctx: &Ctx, band: usize, lattice: Lattice) -> CliResult<Vec<u8>> {
    if ctx.file().is_some() {
        return Err(input(
            "sweep runs over preset families; use --model ssh or rice-mele",
        ));
    }
    let model = ctx.model().unwrap_or(ModelName::RiceMele);
    let grid = ctx.grid()?;
    let (r, d) = (lattice.ratio, lattice.delta);
    if r.2 == 0 || d.2 == 0 {
        return Err(input("sweep steps must be at least 1"));
    }
    let ratios = linspace(r.0, r.1, r.2);
    let (name, result) = match model {
        ModelName::Ssh => ("ssh", ssh_sweep(&ratios, band, grid, Execution::default())?),
        ModelName::RiceMele => (
            "rice-mele",
            rice_mele_sweep(
                &ratios,
                &linspace(d.0, d.1, d.2),
                band,
                grid,
                Execution::default(),
            )?,
        ),
        other => {
            return Err(input(format!(
                "sweep supports ssh and rice-mele, not {other:?}"
            )))
        }
    };
    let degenerate = result.points.iter().filter(|p| p.degenerate).count();
    let failed = result.points.iter().filter(|p| p.error.is_some()).count();
    ctx.info(format!(
        "{} points, {degenerate} degenerate, {failed} failed, max discrepancy {:.3e}",
        result.points.len(),
        result.max_discrepancy()
    ));
    match ctx.format(Format::Csv) {
        Format::Csv => csv(
            &[
                "param1",
                "param2",
                "zak_wilson",
                "zak_weyl",
                "discrepancy",
                "degenerate",
                "error",
            ],
            result.points.iter().map(|p| {
                vec![
                    float(p.param1),
                    float(p.param2),
                    opt_float(p.zak_wilson),
                    opt_float(p.zak_weyl),
                    opt_float(p.discrepancy),
                    p.degenerate.to_string(),
                    p.error.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Json => json(&SweepReport {
            model: name,
            max_discrepancy: result.max_discrepancy(),
            result: &result,
        }),
        Format::Svg if model == ModelName::Ssh => {
            let line = |label: &str, f: fn(&jacobi_zak::SweepPoint) -> Option<f64>| Series {
                label: label.to_string(),
                points: result
                    .points
                    .iter()
                    .map(|p| f(p).map(|v| (p.param1, v)))
                    .collect(),
            };
            let series = [
                line("wilson", |p| p.zak_wilson),
                line("weyl", |p| p.zak_weyl),
            ];
            Ok(line_plot("Zak phase, SSH", "t2/t1", "phase", &series).into_bytes())
        }
        Format::Svg => {
            let values: Vec<Option<f64>> = result.points.iter().map(|p| p.zak_weyl).collect();
            let deltas = linspace(d.0, d.1, d.2);
            Ok(heat_map(
                "Zak phase, Rice-Mele",
                "t2/t1",
                "delta",
                &ratios,
                &deltas,
                &values,
                (-PI, PI),
            )
            .into_bytes())
        }
    }
}

struct MweylArgs {
    lambda: Option<f64>,
    range: (Option<f64>, Option<f64>),
    points: Option<usize>,
    eps: f64,
    band: Option<usize>,
}

#[derive(Serialize)]
struct MweylPoint {
    lambda: f64,
    re_m: Option<f64>,
    im_m: Option<f64>,
    abs_m: Option<f64>,
    in_band: bool,
}

#[derive(Serialize)]
struct MweylReport<'a> {
    cell: &'a UnitCell,
    eps: f64,
    points: Vec<MweylPoint>,
}

fn spectrum_window(edges: &[Band]) -> (f64, f64) {
    (
        edges[0].lambda_min - 1.0,
        edges[edges.len() - 1].lambda_max + 1.0,
    )
}

fn mweyl(ctx: &Ctx, args: MweylArgs) -> CliResult<Vec<u8>> {
    let cell = ctx.cell()?;
    // reject a lower half-plane line before doing any work
    ComplexEnergy::new(0.0, args.eps)?;
    let edges = band_edges(&cell)?;
    let points = args.points.unwrap_or(201);
    if points == 0 {
        return Err(input("--points must be at least 1"));
    }
    let lambdas = if let Some(l) = args.lambda {
        vec![l]
    } else if let (None, None, Some(n)) = (args.range.0, args.range.1, args.band) {
        let b = edges.get(n.wrapping_sub(1)).ok_or(Error::BandIndex {
            band: n,
            period: cell.period(),
        })?;
        (0..points)
            .map(|j| b.lambda_min + (j as f64 + 0.5) / points as f64 * b.width())
            .collect()
    } else {
        let (lo, hi) = spectrum_window(&edges);
        linspace(
            args.range.0.unwrap_or(lo),
            args.range.1.unwrap_or(hi),
            points,
        )
    };
    let mut samples = Vec::with_capacity(lambdas.len());
    for &lambda in &lambdas {
        let in_band = edges.iter().any(|b| b.contains(lambda));
        let m = match m_plus(&cell, ComplexEnergy::new(lambda, args.eps)?) {
            Ok(v) => Some(v.m_plus),
            Err(
                Error::DirichletPole(_)
                | Error::DirichletPoleOnBand(_)
                | Error::BandEdgeSingularity(_),
            ) => None,
            Err(e) => return Err(e.into()),
        };
        samples.push(MweylPoint {
            lambda,
            re_m: m.map(|m| m.re),
            im_m: m.map(|m| m.im),
            abs_m: m.map(|m| m.norm()),
            in_band,
        });
    }
    match ctx.format(Format::Csv) {
        Format::Csv => csv(
            &["lambda", "re_m", "im_m", "abs_m", "in_band"],
            samples.iter().map(|s| {
                vec![
                    float(s.lambda),
                    opt_float(s.re_m),
                    opt_float(s.im_m),
                    opt_float(s.abs_m),
                    s.in_band.to_string(),
                ]
            }),
        ),
        Format::Json => json(&MweylReport {
            cell: &cell,
            eps: args.eps,
            points: samples,
        }),
        Format::Svg => {
            let series = [
                Series {
                    label: "|m+|".into(),
                    points: samples
                        .iter()
                        .map(|s| s.abs_m.map(|v| (s.lambda, v)))
                        .collect(),
                },
                Series {
                    label: "arg m+".into(),
                    points: samples
                        .iter()
                        .map(|s| s.re_m.zip(s.im_m).map(|(re, im)| (s.lambda, im.atan2(re))))
                        .collect(),
                },
            ];
            Ok(line_plot("Weyl function m+", "lambda", "", &series).into_bytes())
        }
    }
}

#[derive(Serialize)]
struct ImpedancePoint {
    lambda: f64,
    z_right: Option<f64>,
    z_left: Option<f64>,
    status: &'static str,
}

#[derive(Serialize)]
struct DirichletPoint {
    mu: f64,
    pole_of: &'static str,
}

#[derive(Serialize)]
struct ImpedanceReport<'a> {
    cell: &'a UnitCell,
    dirichlet: Vec<DirichletPoint>,
    points: Vec<ImpedancePoint>,
}

fn impedance(ctx: &Ctx, range: (Option<f64>, Option<f64>), points: usize) -> CliResult<Vec<u8>> {
    let cell = ctx.cell()?;
    if points == 0 {
        return Err(input("--points must be at least 1"));
    }
    let edges = band_edges(&cell)?;
    let (lo, hi) = spectrum_window(&edges);
    let lambdas = linspace(range.0.unwrap_or(lo), range.1.unwrap_or(hi), points);
    let mut samples = Vec::with_capacity(points);
    for &lambda in &lambdas {
        let (z_right, z_left, status) = match surface_impedance(&cell, lambda) {
            Ok(z) => (Some(z.z_right), Some(z.z_left), "ok"),
            Err(Error::NotInGap(_)) => (None, None, "band"),
            Err(Error::DirichletPole(_)) => (None, None, "pole"),
            Err(e) => return Err(e.into()),
        };
        samples.push(ImpedancePoint {
            lambda,
            z_right,
            z_left,
            status,
        });
    }
    let dirichlet: Vec<DirichletPoint> = dirichlet_eigenvalues(&cell)?
        .into_iter()
        .map(|mu| DirichletPoint {
            mu,
            pole_of: if is_weyl_pole(&cell, mu) {
                "m_plus"
            } else {
                "m_minus"
            },
        })
        .collect();
    for d in &dirichlet {
        ctx.info(format!(
            "Dirichlet eigenvalue {} (pole of {})",
            d.mu, d.pole_of
        ));
    }
    match ctx.format(Format::Csv) {
        Format::Csv => csv(
            &["lambda", "z_right", "z_left", "status"],
            samples.iter().map(|s| {
                vec![
                    float(s.lambda),
                    opt_float(s.z_right),
                    opt_float(s.z_left),
                    s.status.to_string(),
                ]
            }),
        ),
        Format::Json => json(&ImpedanceReport {
            cell: &cell,
            dirichlet,
            points: samples,
        }),
        Format::Svg => {
            let series = [
                Series {
                    label: "Z_R".into(),
                    points: samples
                        .iter()
                        .map(|s| s.z_right.map(|v| (s.lambda, v)))
                        .collect(),
                },
                Series {
                    label: "Z_L".into(),
                    points: samples
                        .iter()
                        .map(|s| s.z_left.map(|v| (s.lambda, v)))
                        .collect(),
                },
            ];
            Ok(line_plot("Surface impedance", "lambda", "Z", &series).into_bytes())
        }
    }
}

#[derive(Serialize)]
struct SymmetryBand {
    band: usize,
    isolated: bool,
    unimodularity: Option<UnimodularityReport>,
    zak_quantised: Option<QuantisedZak>,
    error: Option<String>,
}

#[derive(Serialize)]
struct SymmetryReport<'a> {
    cell: &'a UnitCell,
    mirror_symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    nearest_symmetric: Option<UnitCell>,
    bands: Vec<SymmetryBand>,
}

fn check_symmetry(ctx: &Ctx, samples: usize) -> CliResult<Vec<u8>> {
    let cell = ctx.cell()?;
    if samples == 0 {
        return Err(input("--samples must be at least 1"));
    }
    let symmetric = is_mirror_symmetric(&cell);
    let edges = band_edges(&cell)?;
    let mut bands = Vec::new();
    if symmetric {
        for b in &edges {
            let mut entry = SymmetryBand {
                band: b.n,
                isolated: b.isolated,
                unimodularity: None,
                zak_quantised: None,
                error: None,
            };
            if b.isolated {
                let outcome = verify_unimodularity(&cell, b.n, samples)
                    .and_then(|u| zak_quantised_symmetric(&cell, b.n).map(|q| (u, q)));
                match outcome {
                    Ok((u, q)) => {
                        entry.unimodularity = Some(u);
                        entry.zak_quantised = Some(q);
                    }
                    Err(e) if e.is_numerical() => entry.error = Some(e.to_string()),
                    Err(e) => return Err(e.into()),
                }
            }
            bands.push(entry);
        }
    }
    ctx.info(if symmetric {
        "mirror symmetric"
    } else {
        "not mirror symmetric"
    });
    match ctx.format(Format::Json) {
        Format::Json => json(&SymmetryReport {
            cell: &cell,
            mirror_symmetric: symmetric,
            nearest_symmetric: (!symmetric).then(|| symmetrize(&cell)),
            bands,
        }),
        Format::Csv => csv(
            &[
                "band",
                "isolated",
                "max_deviation",
                "worst_lambda",
                "zak_quantised",
                "error",
            ],
            bands.iter().map(|b| {
                vec![
                    b.band.to_string(),
                    b.isolated.to_string(),
                    opt_float(b.unimodularity.as_ref().map(|u| u.max_deviation)),
                    opt_float(b.unimodularity.as_ref().map(|u| u.worst_lambda)),
                    opt_float(b.zak_quantised.as_ref().map(|q| q.gamma.value)),
                    b.error.clone().unwrap_or_default(),
                ]
            }),
        ),
        Format::Svg => Err(no_svg("check-symmetry")),
    }
}
