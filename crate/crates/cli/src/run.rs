//! Command dispatch: flag validation, engine construction, sampling,
//! and rendering. Every failure maps onto one of four exit codes so
//! scripts can tell bad invocations, bad data, numeric failures, and
//! failed verifications apart.

use std::fmt::Write as _;
use std::fs;

use mlspline::{
    brute_force_minimize, verify_curve_equivalence, verify_surface_equivalence, Curve, GridSearch,
    KnotVector, MlsProblem, ReportSample, Surface, VerificationReport, WeightSpec,
};
use thiserror::Error;

use crate::args::{
    BasisArgs, Cli, Command, CurveArgs, CurveDataArgs, DatasetArgs, Format, InterpArgs, KnotsArgs,
    MlsArgs, OutputArgs, SurfaceArgs, SurfaceDataArgs, VerifyCurveArgs, VerifyMinArgs,
    VerifySurfaceArgs, WeightArgs, WeightKind,
};
use crate::data::{self, DataError, Dataset};
use crate::svg::{Frame, Plot, LINE, MARKER, PALETTE};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Numeric(#[from] mlspline::Error),
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::VerificationFailed => 5,
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Knots(args) => knots(args),
        Command::Basis(args) => basis(args),
        Command::Curve(args) => curve(args),
        Command::Surface(args) => surface(args),
        Command::Mls(args) => mls(args),
        Command::Interp(args) => interp(args),
        Command::VerifyCurve(args) => verify_curve(args),
        Command::VerifySurface(args) => verify_surface(args),
        Command::VerifyMin(args) => verify_min(args),
        Command::Dataset(args) => dataset(args),
    }
}

fn check_samples(samples: usize) -> Result<(), CliError> {
    if samples < 2 {
        return Err(usage(format!("--samples must be at least 2, got {samples}")));
    }
    Ok(())
}

fn check_order(r: usize, n: usize) -> Result<(), CliError> {
    if r < 1 || r > n + 1 {
        return Err(usage(format!(
            "--r must satisfy 1 <= r <= n + 1 (n = {n}), got {r}"
        )));
    }
    Ok(())
}

fn check_degree(degree: u32) -> Result<(), CliError> {
    if degree > 2 {
        return Err(usage(format!("--degree must be at most 2, got {degree}")));
    }
    Ok(())
}

fn weight_spec(args: &WeightArgs, order: usize) -> Result<WeightSpec, CliError> {
    if !(args.alpha.is_finite() && args.alpha > 0.0) {
        return Err(usage(format!(
            "--alpha must be positive and finite, got {}",
            args.alpha
        )));
    }
    Ok(match args.weight {
        WeightKind::Exp => WeightSpec::exponential(args.alpha),
        WeightKind::Shepard => WeightSpec::shepard(args.alpha),
        WeightKind::Mclain => WeightSpec::mclain(args.alpha),
        WeightKind::Levin => WeightSpec::levin(args.alpha),
        WeightKind::Cardinal => WeightSpec::cardinal(order)?,
    })
}

fn resolve_curve_values(data: &CurveDataArgs) -> Result<(String, Vec<f64>), CliError> {
    let dataset = match &data.input {
        Some(path) => data::load(path)?,
        None => data::builtin(&data.dataset)?,
    };
    let label = dataset.label().to_string();
    Ok((label, dataset.into_curve()?))
}

fn resolve_surface_heights(data: &SurfaceDataArgs) -> Result<(String, Vec<Vec<f64>>), CliError> {
    let dataset = match &data.input {
        Some(path) => data::load(path)?,
        None => data::builtin(&data.dataset)?,
    };
    let label = dataset.label().to_string();
    Ok((label, dataset.into_surface()?))
}

fn node_problem(values: &[f64], degree: u32, weight: WeightSpec) -> Result<MlsProblem, CliError> {
    let xs: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
    Ok(MlsProblem::univariate(&xs, degree, weight)?)
}

/// The widest interval where the compactly supported default weight
/// keeps a full window; sensible for the other weights too.
fn default_fit_domain(n: usize) -> Result<(f64, f64), CliError> {
    if n < 2 {
        return Err(usage(
            "dataset too small for the default domain; pass --domain LO:HI",
        ));
    }
    Ok((1.0, (n - 1) as f64))
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let step = (hi - lo) / (count - 1) as f64;
    (0..count).map(|k| lo + step * k as f64).collect()
}

fn write_output(out: &OutputArgs, content: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, content).map_err(|source| {
            CliError::Data(DataError::WriteFailed {
                path: path.display().to_string(),
                source,
            })
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn node_points(values: &[f64]) -> Vec<(f64, f64)> {
    values.iter().enumerate().map(|(i, &v)| (i as f64, v)).collect()
}

fn knots(args: KnotsArgs) -> Result<(), CliError> {
    check_order(args.r, args.n)?;
    let knots = KnotVector::uniform(args.n, args.r)?;
    let content = match args.out.format {
        Format::Csv => {
            let mut text = String::new();
            for (k, &t) in knots.knots().iter().enumerate() {
                let _ = writeln!(text, "{k},{}", data::number(t));
            }
            text
        }
        Format::Svg => {
            let points: Vec<(f64, f64)> = knots.knots().iter().map(|&t| (t, 0.0)).collect();
            let mut plot = Plot::new(Frame::around(points.iter().copied()));
            plot.polyline(&[(points[0].0, 0.0), (points[points.len() - 1].0, 0.0)], LINE);
            plot.dots(&points, 3.0, MARKER);
            plot.finish()
        }
    };
    write_output(&args.out, &content)
}

fn basis(args: BasisArgs) -> Result<(), CliError> {
    check_order(args.r, args.n)?;
    check_samples(args.samples)?;
    let knots = KnotVector::uniform(args.n, args.r)?;
    let (lo, hi) = args.domain.unwrap_or((0.0, (args.n + args.r) as f64));
    let ts = linspace(lo, hi, args.samples);
    let content = match args.out.format {
        Format::Csv => {
            let mut text = String::new();
            for i in 0..=args.n {
                for &t in &ts {
                    let v = knots.basis(i, args.r, t)?;
                    let _ = writeln!(text, "{i},{},{}", data::number(t), data::number(v));
                }
            }
            text
        }
        Format::Svg => {
            let mut lines = Vec::with_capacity(args.n + 1);
            for i in 0..=args.n {
                let pts: Vec<(f64, f64)> = ts
                    .iter()
                    .map(|&t| Ok((t, knots.basis(i, args.r, t)?)))
                    .collect::<Result<_, mlspline::Error>>()?;
                lines.push(pts);
            }
            let mut plot = Plot::new(Frame::around(lines.iter().flatten().copied()));
            for (i, pts) in lines.iter().enumerate() {
                plot.polyline(pts, PALETTE[i % PALETTE.len()]);
            }
            plot.finish()
        }
    };
    write_output(&args.out, &content)
}

fn curve(args: CurveArgs) -> Result<(), CliError> {
    let (_, values) = resolve_curve_values(&args.data)?;
    let n = values.len() - 1;
    check_order(args.r, n)?;
    check_samples(args.samples)?;
    let curve = Curve::from_heights(args.r, &values)?;
    let (lo, hi) = args.domain.unwrap_or_else(|| curve.knots().domain());
    let ts = linspace(lo, hi, args.samples);
    let points = ts
        .iter()
        .map(|&t| curve.eval(t))
        .collect::<Result<Vec<_>, _>>()?;
    let content = match args.out.format {
        Format::Csv => {
            let mut text = String::new();
            for (t, p) in ts.iter().zip(&points) {
                let _ = writeln!(
                    text,
                    "{},{},{}",
                    data::number(*t),
                    data::number(p[0]),
                    data::number(p[1])
                );
            }
            text
        }
        Format::Svg => {
            let line: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
            let nodes = node_points(&values);
            let mut plot =
                Plot::new(Frame::around(line.iter().chain(nodes.iter()).copied()));
            plot.polyline(&line, LINE);
            plot.dots(&nodes, 3.0, MARKER);
            plot.finish()
        }
    };
    write_output(&args.out, &content)
}

fn surface(args: SurfaceArgs) -> Result<(), CliError> {
    let (_, heights) = resolve_surface_heights(&args.data)?;
    let n = heights.len() - 1;
    check_order(args.r, n)?;
    check_samples(args.samples)?;
    let surface = Surface::from_heights(args.r, &heights)?;
    let (lo, hi) = args.domain.unwrap_or_else(|| surface.knots_u().domain());
    let axis = linspace(lo, hi, args.samples);
    let mut grid = Vec::with_capacity(axis.len());
    for &u in &axis {
        let mut row = Vec::with_capacity(axis.len());
        for &v in &axis {
            row.push(surface.eval(u, v)?);
        }
        grid.push(row);
    }
    let content = match args.out.format {
        Format::Csv => {
            let mut text = String::new();
            for (u, row) in axis.iter().zip(&grid) {
                for (v, p) in axis.iter().zip(row) {
                    let _ = writeln!(
                        text,
                        "{},{},{},{},{}",
                        data::number(*u),
                        data::number(*v),
                        data::number(p[0]),
                        data::number(p[1]),
                        data::number(p[2])
                    );
                }
            }
            text
        }
        Format::Svg => {
            let z: Vec<Vec<f64>> = grid
                .iter()
                .map(|row| row.iter().map(|p| p[2]).collect())
                .collect();
            let mut plot = Plot::new(Frame::around([(lo, lo), (hi, hi)]));
            plot.heatmap(&axis, &axis, &z);
            let shift = args.r as f64 / 2.0;
            let marks: Vec<(f64, f64)> = (0..=n)
                .flat_map(|i| (0..=n).map(move |j| (i as f64 + shift, j as f64 + shift)))
                .filter(|&(u, v)| u >= lo && u <= hi && v >= lo && v <= hi)
                .collect();
            plot.dots(&marks, 1.5, "#222222");
            plot.finish()
        }
    };
    write_output(&args.out, &content)
}

fn sampled_fit(
    problem: &MlsProblem,
    values: &[f64],
    xs: &[f64],
) -> Result<Vec<(f64, f64)>, CliError> {
    xs.iter()
        .map(|&x| Ok((x, problem.apply(values, &[x])?)))
        .collect()
}

fn render_fit(
    out: &OutputArgs,
    samples: &[(f64, f64)],
    nodes: &[(f64, f64)],
) -> Result<(), CliError> {
    let content = match out.format {
        Format::Csv => {
            let mut text = String::new();
            for (x, v) in samples {
                let _ = writeln!(text, "{},{}", data::number(*x), data::number(*v));
            }
            text
        }
        Format::Svg => {
            let mut plot =
                Plot::new(Frame::around(samples.iter().chain(nodes.iter()).copied()));
            plot.polyline(samples, LINE);
            plot.dots(nodes, 3.0, MARKER);
            plot.finish()
        }
    };
    write_output(out, &content)
}

fn mls(args: MlsArgs) -> Result<(), CliError> {
    let (_, values) = resolve_curve_values(&args.data)?;
    let n = values.len() - 1;
    check_order(args.r, n)?;
    check_samples(args.samples)?;
    check_degree(args.degree)?;
    let weight = weight_spec(&args.weight, args.r)?;
    let problem = node_problem(&values, args.degree, weight)?;
    let (lo, hi) = match args.domain {
        Some(d) => d,
        None => default_fit_domain(n)?,
    };
    let xs = linspace(lo, hi, args.samples);
    let samples = sampled_fit(&problem, &values, &xs)?;
    render_fit(&args.out, &samples, &node_points(&values))
}

fn interp(args: InterpArgs) -> Result<(), CliError> {
    if !(args.delta.is_finite() && args.delta > 0.0) {
        return Err(usage(format!(
            "--delta must be positive and finite, got {}",
            args.delta
        )));
    }
    let (_, values) = resolve_curve_values(&args.data)?;
    let n = values.len() - 1;
    let weight = WeightSpec::interpolatory(WeightSpec::cardinal(4)?, args.delta)?;
    let problem = node_problem(&values, 0, weight)?;
    let xs: Vec<f64> = (0..=100 * n).map(|l| l as f64 / 100.0).collect();
    let samples = sampled_fit(&problem, &values, &xs)?;
    render_fit(&args.out, &samples, &node_points(&values))
}

fn verify_curve(args: VerifyCurveArgs) -> Result<(), CliError> {
    let (_, values) = resolve_curve_values(&args.data)?;
    check_order(args.r, values.len() - 1)?;
    check_samples(args.samples)?;
    let report = verify_curve_equivalence(&values, args.r, args.samples, args.tol)?;
    finish_report(report)
}

fn verify_surface(args: VerifySurfaceArgs) -> Result<(), CliError> {
    let (_, heights) = resolve_surface_heights(&args.data)?;
    check_order(args.r, heights.len() - 1)?;
    check_samples(args.samples)?;
    let report = verify_surface_equivalence(&heights, args.r, args.samples, args.tol)?;
    finish_report(report)
}

fn verify_min(args: VerifyMinArgs) -> Result<(), CliError> {
    let (_, values) = resolve_curve_values(&args.data)?;
    let n = values.len() - 1;
    check_order(args.r, n)?;
    check_samples(args.samples)?;
    check_degree(args.degree)?;
    let weight = weight_spec(&args.weight, args.r)?;
    let problem = node_problem(&values, args.degree, weight)?;
    let (lo, hi) = match args.domain {
        Some(d) => d,
        None => default_fit_domain(n)?,
    };
    let search = GridSearch::default();
    let mut samples = Vec::with_capacity(args.samples);
    for k in 0..args.samples {
        // Midpoint offsets keep queries off the nodes, where
        // interpolating weights would pin both routes trivially.
        let x = lo + (hi - lo) * (k as f64 + 0.5) / args.samples as f64;
        if weight.interpolates_at_zero()
            && (0..=n).any(|i| (x - i as f64).abs() < 1e-9)
        {
            continue;
        }
        let fitted = problem.apply(&values, &[x])?;
        let searched = brute_force_minimize(&problem, &values, &[x], &search)?;
        samples.push(ReportSample::new(vec![x], fitted, searched));
    }
    let report = VerificationReport::from_samples("solver vs search oracle", 0.0, args.tol, samples)?;
    finish_report(report)
}

fn finish_report(report: VerificationReport) -> Result<(), CliError> {
    println!("{report}");
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn dataset(args: DatasetArgs) -> Result<(), CliError> {
    let dataset = match &args.input {
        Some(path) => data::load(path)?,
        None => data::builtin(&args.dataset)?,
    };
    let content = match args.out.format {
        Format::Csv => data::emit_dataset(&dataset),
        Format::Svg => match &dataset {
            Dataset::Curve { values, .. } => {
                let nodes = node_points(values);
                let mut plot = Plot::new(Frame::around(nodes.iter().copied()));
                plot.dots(&nodes, 3.0, MARKER);
                plot.finish()
            }
            Dataset::Surface { heights, .. } => {
                let n = heights.len() - 1;
                let axis: Vec<f64> = (0..=n).map(|i| i as f64).collect();
                let mut plot = Plot::new(Frame::around([(-0.5, -0.5), (n as f64 + 0.5, n as f64 + 0.5)]));
                plot.heatmap(&axis, &axis, heights);
                plot.finish()
            }
        },
    };
    write_output(&args.out, &content)
}
