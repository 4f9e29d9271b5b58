//! Numerical certification of the identities the library is built on.
//!
//! Every check here computes the same quantity along two independent
//! routes (spline evaluation vs. weighted fit, direct weighted sum vs.
//! normalized fit, linear-algebra solve vs. brute-force search) and
//! reports the worst absolute residual against a pinned tolerance.

use std::fmt;

use crate::bspline::Curve;
use crate::error::{Error, Result};
use crate::mls::MlsProblem;
use crate::surface::{separable_mls_sum, Surface};
use crate::weight::WeightSpec;

/// Budget for the curve and surface identity checks. Both routes are
/// short sums of products and accumulate only rounding error, a few
/// hundred ulps at data scale, so 1e-10 leaves wide headroom while
/// still catching any indexing or shift mistake outright.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

/// Budget for interpolation checks. Nodal queries hit the coincidence
/// branch and are exact; the near-node limit samples divide by a
/// reciprocal weight of order 1e-12, which amplifies rounding in the
/// weight evaluation a few orders beyond machine precision.
pub const INTERPOLATION_TOL: f64 = 1e-8;

/// Budget against the brute-force search oracle. The coefficient grid
/// after the final refinement quantizes values to under 1e-7 times the
/// data span; the parabolic polish normally lands far below that, but
/// the bound keeps the coarser guarantee.
pub const MINIMIZER_TOL: f64 = 1e-7;

/// Offset used for the one-sided limit samples next to each node.
const LIMIT_OFFSET: f64 = 1e-6;

/// One compared sample: a query point and the two values obtained for
/// it along the two routes.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportSample {
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl ReportSample {
    /// Records |lhs - rhs|; any non-finite comparison counts as an
    /// infinite residual so it can never pass silently.
    pub fn new(point: Vec<f64>, lhs: f64, rhs: f64) -> Self {
        let diff = (lhs - rhs).abs();
        let residual = if diff.is_nan() { f64::INFINITY } else { diff };
        Self {
            point,
            lhs,
            rhs,
            residual,
        }
    }
}

/// Outcome of one certification run over a batch of samples.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub label: String,
    /// Offset applied between the two routes' arguments, r/2 for the
    /// spline identities, 0 when both routes share the abscissa.
    pub shift: f64,
    pub tolerance: f64,
    pub samples: Vec<ReportSample>,
    pub max_residual: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn from_samples(
        label: impl Into<String>,
        shift: f64,
        tolerance: f64,
        samples: Vec<ReportSample>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        let max_residual = samples
            .iter()
            .map(|s| s.residual)
            .fold(0.0, f64::max);
        Ok(Self {
            label: label.into(),
            shift,
            tolerance,
            samples,
            max_residual,
            passed: max_residual <= tolerance,
        })
    }

    /// Sample with the largest residual.
    pub fn worst(&self) -> &ReportSample {
        self.samples
            .iter()
            .max_by(|a, b| a.residual.total_cmp(&b.residual))
            .expect("reports hold at least one sample")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{}: {}", self.label, verdict)?;
        writeln!(
            f,
            "  samples {}  shift {}  tolerance {:.1e}",
            self.samples.len(),
            self.shift,
            self.tolerance
        )?;
        let worst = self.worst();
        let point = worst
            .point
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join(", ");
        write!(
            f,
            "  max residual {:.3e} at ({point})",
            self.max_residual
        )
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: count,
        });
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count).map(|k| lo + step * k as f64).collect())
}

fn node_problem(values: &[f64], degree: u32, weight: WeightSpec) -> Result<MlsProblem> {
    if values.is_empty() {
        return Err(Error::ValueCountMismatch {
            expected: 1,
            got: 0,
        });
    }
    let xs: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
    MlsProblem::univariate(&xs, degree, weight)
}

/// Confirms that the spline curve through control points (i, f(i)) and
/// the constant-degree weighted fit of the same values trace the same
/// graph once the parameter is shifted by half the order.
pub fn verify_curve_equivalence(
    values: &[f64],
    order: usize,
    sample_count: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let curve = Curve::from_heights(order, values)?;
    let problem = node_problem(values, 0, WeightSpec::cardinal(order)?)?;
    let shift = order as f64 / 2.0;
    let (lo, hi) = curve.knots().domain();
    let mut samples = Vec::with_capacity(sample_count);
    for t in linspace(lo, hi, sample_count)? {
        let lhs = curve.eval(t)?[1];
        let rhs = problem.apply(values, &[t - shift])?;
        samples.push(ReportSample::new(vec![t], lhs, rhs));
    }
    VerificationReport::from_samples("curve equivalence", shift, tol, samples)
}

/// Confirms that the plain weighted sum of the data equals the
/// normalized fit, which holds wherever the translated weights sum
/// to one across the node range.
pub fn verify_whole_interval(
    values: &[f64],
    order: usize,
    sample_count: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let weight = WeightSpec::cardinal(order)?;
    let problem = node_problem(values, 0, weight)?;
    let n = (values.len() - 1) as f64;
    let half = order as f64 / 2.0;
    let mut samples = Vec::with_capacity(sample_count);
    for x in linspace(half - 1.0, n + 1.0 - half, sample_count)? {
        let lhs: f64 = values
            .iter()
            .enumerate()
            .map(|(i, &f)| weight.eval(x - i as f64) * f)
            .sum();
        let rhs = problem.apply(values, &[x])?;
        samples.push(ReportSample::new(vec![x], lhs, rhs));
    }
    VerificationReport::from_samples("whole-interval weighted sum", 0.0, tol, samples)
}

/// Confirms that the shifted cubic weight reproduces the data at every
/// node, exactly on the node and within tolerance just next to it.
pub fn verify_interpolation(values: &[f64], delta: f64, tol: f64) -> Result<VerificationReport> {
    let weight = WeightSpec::interpolatory(WeightSpec::cardinal(4)?, delta)?;
    let problem = node_problem(values, 0, weight)?;
    let n = values.len() - 1;
    let mut samples = Vec::new();
    for (i, &f) in values.iter().enumerate() {
        let x = i as f64;
        let lhs = problem.apply(values, &[x])?;
        samples.push(ReportSample::new(vec![x], lhs, f));
        if i > 0 && i < n {
            for x in [x - LIMIT_OFFSET, x + LIMIT_OFFSET] {
                let lhs = problem.apply(values, &[x])?;
                samples.push(ReportSample::new(vec![x], lhs, f));
            }
        }
    }
    VerificationReport::from_samples("nodal interpolation", 0.0, tol, samples)
}

/// Confirms the surface analogue of the curve identity: the tensor
/// spline height over control points (i, j, f(i, j)) equals the
/// separable weighted sum at both coordinates shifted by half the
/// order.
pub fn verify_surface_equivalence(
    heights: &[Vec<f64>],
    order: usize,
    samples_per_axis: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let surface = Surface::from_heights(order, heights)?;
    let weight = WeightSpec::cardinal(order)?;
    let shift = order as f64 / 2.0;
    let (lo, hi) = surface.knots_u().domain();
    let axis = linspace(lo, hi, samples_per_axis)?;
    let mut samples = Vec::with_capacity(axis.len() * axis.len());
    for &u in &axis {
        for &v in &axis {
            let lhs = surface.eval(u, v)?[2];
            let rhs = separable_mls_sum(heights, weight, u - shift, v - shift)?;
            samples.push(ReportSample::new(vec![u, v], lhs, rhs));
        }
    }
    VerificationReport::from_samples("surface equivalence", shift, tol, samples)
}

/// Shape of the brute-force coefficient search.
#[derive(Clone, Copy, Debug)]
pub struct GridSearch {
    /// Candidates per line scan.
    pub points: usize,
    /// Narrowing rounds after the initial full-bracket round.
    pub refinements: usize,
    /// Factor dividing the scan width when entering a narrowing round.
    pub shrink: f64,
    /// Coordinate sweeps per round.
    pub sweeps: usize,
}

impl Default for GridSearch {
    fn default() -> Self {
        Self {
            points: 2001,
            refinements: 2,
            shrink: 100.0,
            sweeps: 8,
        }
    }
}

/// Minimizes the weighted squared error over the problem's polynomial
/// space by coordinate-wise grid scans with parabolic polish, entirely
/// through objective evaluations, and returns the minimizer's value at
/// x. Serves as the independent check on the linear-algebra solver.
///
/// Residuals are weighted by the same per-node factor 1/(2w) that
/// defines the fit functional. For most weight kinds that is just the
/// weight value rescaled, but the shifted interpolatory kind defines
/// its functional through the reciprocal, where the two differ.
///
/// The coefficient bracket spans the data envelope widened by the data
/// span (at least one unit); a scan that walks off the bracket edge in
/// the opening round means the minimizer was never contained and is
/// reported as a grid failure.
pub fn brute_force_minimize(
    problem: &MlsProblem,
    values: &[f64],
    x: &[f64],
    search: &GridSearch,
) -> Result<f64> {
    if values.len() != problem.nodes().len() {
        return Err(Error::ValueCountMismatch {
            expected: problem.nodes().len(),
            got: values.len(),
        });
    }
    let basis = problem.basis();
    if x.len() != basis.dim() {
        return Err(Error::PointDimensionMismatch {
            expected: basis.dim(),
            got: x.len(),
        });
    }
    if search.points < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: search.points,
        });
    }
    let l = basis.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut targets: Vec<f64> = Vec::new();
    for (node, &f) in problem.nodes().iter().zip(values) {
        let offset: Vec<f64> = node.iter().zip(x).map(|(a, b)| a - b).collect();
        let dist = offset.iter().map(|d| d * d).sum::<f64>().sqrt();
        let w = problem.weight().normal_diag(dist);
        if !w.is_finite() {
            return Err(Error::NonFiniteWeight { s: dist });
        }
        if w > 0.0 {
            rows.push((0..l).map(|k| basis.eval(k, &offset)).collect());
            weights.push(w);
            targets.push(f);
        }
    }
    if rows.is_empty() {
        return Err(Error::RankDeficient { rank: 0, needed: l });
    }
    let objective = |c: &[f64]| -> f64 {
        rows.iter()
            .zip(&weights)
            .zip(&targets)
            .map(|((row, &w), &f)| {
                let p: f64 = row.iter().zip(c).map(|(a, b)| a * b).sum();
                w * (p - f) * (p - f)
            })
            .sum()
    };
    let (fmin, fmax) = targets
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let margin = (fmax - fmin).max(1.0);
    let bracket = (fmin - margin, fmax + margin);
    let mut c = vec![0.5 * (bracket.0 + bracket.1); l];
    let mut best = objective(&c);
    let mut width = bracket.1 - bracket.0;
    for round in 0..=search.refinements {
        let mut previous: Option<Vec<f64>> = None;
        for _ in 0..search.sweeps {
            for k in 0..l {
                let (lo, hi) = if round == 0 {
                    bracket
                } else {
                    (
                        (c[k] - 0.5 * width).max(bracket.0),
                        (c[k] + 0.5 * width).min(bracket.1),
                    )
                };
                line_minimize(&mut c, &mut best, k, lo, hi, search.points, round == 0, &objective)?;
            }
            if let Some(prev) = previous.replace(c.clone()) {
                accelerate(&mut c, &mut best, &prev, bracket, &objective);
            }
        }
        width /= search.shrink;
    }
    let origin = vec![0.0; basis.dim()];
    Ok((0..l).map(|k| c[k] * basis.eval(k, &origin)).sum())
}

/// Scans coordinate k over [lo, hi], keeps the best candidate if it
/// improves, then polishes with the parabola through the winning
/// triple. `strict` marks the opening round, where winning on the
/// bracket edge is a containment failure.
#[allow(clippy::too_many_arguments)]
fn line_minimize(
    c: &mut [f64],
    best: &mut f64,
    k: usize,
    lo: f64,
    hi: f64,
    points: usize,
    strict: bool,
    objective: &impl Fn(&[f64]) -> f64,
) -> Result<()> {
    let step = (hi - lo) / (points - 1) as f64;
    let original = c[k];
    let mut best_idx = None;
    let mut best_val = *best;
    for idx in 0..points {
        c[k] = lo + step * idx as f64;
        let v = objective(c);
        if v < best_val {
            best_val = v;
            best_idx = Some(idx);
        }
    }
    let Some(idx) = best_idx else {
        c[k] = original;
        return Ok(());
    };
    if strict && (idx == 0 || idx == points - 1) {
        return Err(Error::GridTooCoarse);
    }
    c[k] = lo + step * idx as f64;
    *best = best_val;
    if idx > 0 && idx + 1 < points {
        let center = c[k];
        c[k] = center - step;
        let below = objective(c);
        c[k] = center + step;
        let above = objective(c);
        let denom = below - 2.0 * best_val + above;
        c[k] = center;
        if denom > 0.0 && denom.is_finite() {
            let candidate = (center + 0.5 * step * (below - above) / denom).clamp(lo, hi);
            c[k] = candidate;
            let v = objective(c);
            if v <= best_val {
                *best = v;
            } else {
                c[k] = center;
            }
        }
    }
    Ok(())
}

/// One parabolic step along the displacement of the last full sweep.
/// Successive sweep endpoints head toward the minimizer of a quadratic
/// objective, so this line search removes the slow crawl that plain
/// coordinate descent suffers on correlated coefficients.
fn accelerate(
    c: &mut [f64],
    best: &mut f64,
    prev: &[f64],
    bracket: (f64, f64),
    objective: &impl Fn(&[f64]) -> f64,
) {
    let dir: Vec<f64> = c.iter().zip(prev).map(|(a, b)| a - b).collect();
    if dir.iter().all(|&d| d == 0.0) {
        return;
    }
    let shifted = |c: &[f64], alpha: f64| -> Vec<f64> {
        c.iter()
            .zip(&dir)
            .map(|(a, d)| (a + alpha * d).clamp(bracket.0, bracket.1))
            .collect()
    };
    let below = objective(&shifted(c, -1.0));
    let above = objective(&shifted(c, 1.0));
    let denom = below - 2.0 * *best + above;
    if denom <= 0.0 || !denom.is_finite() {
        return;
    }
    let alpha = 0.5 * (below - above) / denom;
    let candidate = shifted(c, alpha);
    let v = objective(&candidate);
    if v <= *best {
        c.copy_from_slice(&candidate);
        *best = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn report_requires_samples_and_flags_non_finite_residuals() {
        assert!(matches!(
            VerificationReport::from_samples("empty", 0.0, 1.0, vec![]),
            Err(Error::TooFewSamples { .. })
        ));
        let bad = ReportSample::new(vec![0.0], f64::NAN, 1.0);
        assert_eq!(bad.residual, f64::INFINITY);
        let report =
            VerificationReport::from_samples("bad", 0.0, 1.0, vec![bad]).unwrap();
        assert!(!report.passed);
        assert!(format!("{report}").contains("FAIL"));
    }

    #[test]
    fn report_display_shows_the_verdict_and_worst_sample() {
        let samples = vec![
            ReportSample::new(vec![1.0], 2.0, 2.0),
            ReportSample::new(vec![3.0], 2.0, 2.5),
        ];
        let report = VerificationReport::from_samples("demo", 2.0, 1.0, samples).unwrap();
        assert!(report.passed);
        assert_eq!(report.worst().point, vec![3.0]);
        let text = format!("{report}");
        assert!(text.contains("PASS"));
        assert!(text.contains("3.000000"));
    }

    #[test]
    fn constant_data_passes_the_curve_identity_exactly() {
        let report = verify_curve_equivalence(&[2.5; 9], 4, 50, 1e-13).unwrap();
        assert!(report.passed, "max residual {}", report.max_residual);
    }

    #[test]
    fn linear_data_traces_the_shifted_diagonal() {
        let values: Vec<f64> = (0..=9).map(|i| i as f64).collect();
        let report = verify_curve_equivalence(&values, 4, 200, 1e-12).unwrap();
        assert!(report.passed, "max residual {}", report.max_residual);
        // Both routes must equal t - 2 on the curve domain.
        let sample = &report.samples[100];
        assert_abs_diff_eq!(sample.lhs, sample.point[0] - 2.0, epsilon = 1e-12);
    }

    #[test]
    fn whole_interval_sum_matches_the_normalized_fit() {
        let values = [1.0, -0.5, 2.25, 0.75, 1.5, -1.0, 0.25];
        let report = verify_whole_interval(&values, 4, 101, 1e-12).unwrap();
        assert!(report.passed, "max residual {}", report.max_residual);
        assert_eq!(report.shift, 0.0);
    }

    #[test]
    fn constant_data_is_interpolated_everywhere() {
        let report = verify_interpolation(&[4.0; 7], 0.1, 1e-12).unwrap();
        assert!(report.passed, "max residual {}", report.max_residual);
    }

    #[test]
    fn small_surface_passes_the_tensor_identity() {
        let heights: Vec<Vec<f64>> = (0..=4)
            .map(|i| (0..=4).map(|j| (i as f64 * 0.9).sin() + j as f64).collect())
            .collect();
        let report = verify_surface_equivalence(&heights, 4, 9, EQUIVALENCE_TOL).unwrap();
        assert!(report.passed, "max residual {}", report.max_residual);
    }

    #[test]
    fn symmetric_two_node_search_finds_the_midpoint() {
        let problem =
            MlsProblem::univariate(&[0.0, 1.0], 0, WeightSpec::exponential(1.0)).unwrap();
        let value =
            brute_force_minimize(&problem, &[0.0, 1.0], &[0.5], &GridSearch::default()).unwrap();
        assert_abs_diff_eq!(value, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn linear_data_is_recovered_by_the_degree_one_search() {
        let f = |x: f64| 0.2 + 0.3 * x;
        let nodes = [0.0, 1.0, 2.0];
        let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
        let problem = MlsProblem::univariate(&nodes, 1, WeightSpec::exponential(0.9)).unwrap();
        let value =
            brute_force_minimize(&problem, &values, &[0.7], &GridSearch::default()).unwrap();
        assert_abs_diff_eq!(value, f(0.7), epsilon = 1e-9);
    }

    #[test]
    fn search_agrees_with_the_solver_off_the_node_grid() {
        let nodes = [0.0, 1.0, 2.0, 3.0];
        let values = [0.3, 0.9, 0.1, 0.6];
        let problem = MlsProblem::univariate(&nodes, 0, WeightSpec::exponential(1.1)).unwrap();
        let via_search =
            brute_force_minimize(&problem, &values, &[1.4], &GridSearch::default()).unwrap();
        let via_solver = problem.apply(&values, &[1.4]).unwrap();
        assert_abs_diff_eq!(via_search, via_solver, epsilon = 1e-9);
    }

    #[test]
    fn steep_slopes_escape_the_bracket_and_are_reported() {
        let problem =
            MlsProblem::univariate(&[0.0, 0.1], 1, WeightSpec::exponential(1.0)).unwrap();
        assert!(matches!(
            brute_force_minimize(&problem, &[0.0, 0.9], &[0.05], &GridSearch::default()),
            Err(Error::GridTooCoarse)
        ));
    }

    #[test]
    fn coincident_query_with_interpolating_weight_is_rejected_by_the_search() {
        let problem =
            MlsProblem::univariate(&[0.0, 1.0], 0, WeightSpec::shepard(1.0)).unwrap();
        assert!(matches!(
            brute_force_minimize(&problem, &[0.4, 0.8], &[1.0], &GridSearch::default()),
            Err(Error::NonFiniteWeight { .. })
        ));
    }
}
