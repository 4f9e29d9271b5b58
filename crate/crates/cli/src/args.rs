//! Command-line surface: subcommands, shared flag groups, and the
//! small parsers they need.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mlspline",
    version,
    about = "Uniform B-spline curves, moving least-squares fits, and their certification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the uniform knot vector for the given size and order.
    Knots(KnotsArgs),
    /// Sample every basis function of the given order.
    Basis(BasisArgs),
    /// Sample the spline curve through a dataset's values.
    Curve(CurveArgs),
    /// Sample the tensor spline surface over a grid dataset.
    Surface(SurfaceArgs),
    /// Sample the moving least-squares fit of a dataset.
    Mls(MlsArgs),
    /// Sample the interpolatory fit on the hundredths grid.
    Interp(InterpArgs),
    /// Check that curve and fit trace the same graph; nonzero exit on failure.
    VerifyCurve(VerifyCurveArgs),
    /// Check the surface analogue of the curve identity.
    VerifySurface(VerifySurfaceArgs),
    /// Check the solver against the brute-force search oracle.
    VerifyMin(VerifyMinArgs),
    /// Emit a dataset, built-in or loaded, in the chosen format.
    Dataset(DatasetArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightKind {
    /// Gaussian bell, never zero.
    Exp,
    /// Inverse power of the distance, interpolating.
    Shepard,
    /// Gaussian-damped square reciprocal, interpolating.
    Mclain,
    /// Exponential-minus-one reciprocal, interpolating.
    Levin,
    /// Spline bump with compact support.
    Cardinal,
}

/// Accepts "a:b" with a < b.
pub fn parse_domain(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {text:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {text:?}"));
    }
    Ok((lo, hi))
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CurveDataArgs {
    /// Built-in dataset name.
    #[arg(value_name = "DATASET", default_value = "xi0-curve")]
    pub dataset: String,
    /// Load the dataset from a CSV file instead (rows "i,value").
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SurfaceDataArgs {
    /// Built-in dataset name.
    #[arg(value_name = "DATASET", default_value = "xi0-surface")]
    pub dataset: String,
    /// Load the dataset from a CSV file instead (rows "i,j,value").
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    /// Weight function for the fit.
    #[arg(long, value_enum, default_value_t = WeightKind::Cardinal)]
    pub weight: WeightKind,
    /// Sharpness parameter for the exp, shepard, mclain, and levin weights.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Args, Debug)]
pub struct KnotsArgs {
    /// Largest control index n; knots run 0..n+r.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Spline order r (degree r - 1).
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    /// Largest basis index n.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Spline order r.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Sample count across the domain.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Sampling interval, default 0:n+r.
    #[arg(long, value_parser = parse_domain, value_name = "LO:HI")]
    pub domain: Option<(f64, f64)>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[command(flatten)]
    pub data: CurveDataArgs,
    /// Spline order r.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Sample count across the domain.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Sampling interval, default r-1:n+1 (the curve domain).
    #[arg(long, value_parser = parse_domain, value_name = "LO:HI")]
    pub domain: Option<(f64, f64)>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub data: SurfaceDataArgs,
    /// Spline order r in both directions.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Samples per axis.
    #[arg(long, default_value_t = 40)]
    pub samples: usize,
    /// Sampling interval for both axes, default r-1:n+1.
    #[arg(long, value_parser = parse_domain, value_name = "LO:HI")]
    pub domain: Option<(f64, f64)>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MlsArgs {
    #[command(flatten)]
    pub data: CurveDataArgs,
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Order of the cardinal weight's spline bump.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Polynomial degree of the local fit (at most 2).
    #[arg(long, default_value_t = 0)]
    pub degree: u32,
    /// Sample count across the domain.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Sampling interval, default 1:n-1 (where the cardinal window is full).
    #[arg(long, value_parser = parse_domain, value_name = "LO:HI")]
    pub domain: Option<(f64, f64)>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct InterpArgs {
    #[command(flatten)]
    pub data: CurveDataArgs,
    /// Positive shift added to the cubic cardinal weight.
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyCurveArgs {
    #[command(flatten)]
    pub data: CurveDataArgs,
    /// Spline order r.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Sample count across the curve domain.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Largest residual accepted.
    #[arg(long, default_value_t = mlspline::EQUIVALENCE_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct VerifySurfaceArgs {
    #[command(flatten)]
    pub data: SurfaceDataArgs,
    /// Spline order r in both directions.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Samples per axis.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Largest residual accepted.
    #[arg(long, default_value_t = mlspline::EQUIVALENCE_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct VerifyMinArgs {
    #[command(flatten)]
    pub data: CurveDataArgs,
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Order of the cardinal weight's spline bump.
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// Polynomial degree of the local fit (at most 2).
    #[arg(long, default_value_t = 0)]
    pub degree: u32,
    /// Query count across the domain.
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    /// Query interval, default 1:n-1.
    #[arg(long, value_parser = parse_domain, value_name = "LO:HI")]
    pub domain: Option<(f64, f64)>,
    /// Largest solver-vs-oracle gap accepted.
    #[arg(long, default_value_t = mlspline::MINIMIZER_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct DatasetArgs {
    /// Built-in dataset name, xi0-curve or xi0-surface.
    #[arg(value_name = "DATASET", default_value = "xi0-curve")]
    pub dataset: String,
    /// Load the dataset from a CSV file instead, either row shape.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}
