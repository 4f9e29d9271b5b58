//! Acceptance gate, library half: one test per numbered criterion,
//! each printing a single verdict line with its measured margin.
//! Tolerances and budgets are pinned here, not configurable.

use std::time::{Duration, Instant};

use mlspline::{
    brute_force_minimize, cubic_basis_closed, demo, verify_curve_equivalence,
    verify_surface_equivalence, Error, GridSearch, KnotVector, MlsProblem, Side, WeightSpec,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(number: u32, label: &str, margin: &str, elapsed: Duration) {
    println!(
        "criterion {number} ({label}): PASS  {margin}  [{:.2}s]",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_1_partition_of_unity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for order in 1..=6 {
        let n = order + 6;
        let knots = KnotVector::uniform(n, order).unwrap();
        let (lo, hi) = knots.domain();
        for k in 0..1000 {
            let t = lo + (hi - lo) * (k as f64 + 0.5) / 1000.0;
            let total: f64 = (0..=n).map(|i| knots.basis(i, order, t).unwrap()).sum();
            worst = worst.max((total - 1.0).abs());
        }
    }
    assert!(worst <= 1e-12, "max partition residual {worst}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    verdict(1, "partition of unity", &format!("max residual {worst:.2e}"), elapsed);
}

#[test]
fn criterion_2_closed_form_matches_recursion() {
    let start = Instant::now();
    let knots = KnotVector::uniform(10, 4).unwrap();
    let mut worst = 0.0f64;
    for k in 0..10_000 {
        let t = 14.0 * k as f64 / 9_999.0;
        for i in 0..=10 {
            let diff = (cubic_basis_closed(i as i64, t) - knots.basis(i, 4, t).unwrap()).abs();
            worst = worst.max(diff);
        }
    }
    assert!(worst <= 1e-13, "max difference {worst}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    verdict(2, "closed form vs recursion", &format!("max difference {worst:.2e}"), elapsed);
}

#[test]
fn criterion_3_pinned_constants() {
    let start = Instant::now();
    let peak_err = (cubic_basis_closed(0, 2.0) - 2.0 / 3.0).abs();
    assert!(peak_err <= 1e-12, "peak value off by {peak_err}");
    let xs: Vec<f64> = (0..=10).map(|i| i as f64).collect();
    let problem = MlsProblem::univariate(&xs, 0, WeightSpec::cardinal(4).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cell = rng.random_range(1..=8) as f64;
        let x = cell + rng.random_range(0.0..1.0);
        let sol = problem.solution(&[x]).unwrap();
        let scalar = sol.normal.as_ref().unwrap()[0][0];
        worst = worst.max((scalar - 0.5).abs());
    }
    assert!(worst <= 1e-12, "normal scalar off by {worst}");
    let elapsed = start.elapsed();
    verdict(
        3,
        "peak 2/3 and normal scalar 1/2",
        &format!("peak err {peak_err:.1e}, scalar err {worst:.2e}"),
        elapsed,
    );
}

#[test]
fn criterion_4_curve_equivalence() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let report = verify_curve_equivalence(&demo::curve_values(), 4, 1000, 1e-10).unwrap();
    assert!(report.passed, "demo profile residual {}", report.max_residual);
    worst = worst.max(report.max_residual);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for order in [2, 3, 5] {
        let values: Vec<f64> = (0..=10).map(|_| rng.random_range(-1.0..2.0)).collect();
        let report = verify_curve_equivalence(&values, order, 1000, 1e-10).unwrap();
        assert!(
            report.passed,
            "order {order} residual {}",
            report.max_residual
        );
        worst = worst.max(report.max_residual);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    verdict(4, "curve equivalence", &format!("max residual {worst:.2e}"), elapsed);
}

#[test]
fn criterion_5_minimizer_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let search = GridSearch::default();
    let mut accepted = 0;
    let mut attempts = 0;
    let mut worst = 0.0f64;
    while accepted < 50 {
        attempts += 1;
        assert!(attempts < 1000, "instance generation stalled");
        let m = rng.random_range(2..=6);
        let degree = rng.random_range(0..=1u32);
        let nodes: Vec<f64> = (0..m)
            .map(|i| i as f64 + rng.random_range(-0.3..0.3))
            .collect();
        let weight = match rng.random_range(0..6) {
            0 => WeightSpec::exponential(rng.random_range(0.5..1.5)),
            1 => WeightSpec::cardinal(4).unwrap(),
            2 => WeightSpec::shepard(1.0),
            3 => WeightSpec::mclain(1.0),
            4 => WeightSpec::levin(1.0),
            _ => WeightSpec::interpolatory(WeightSpec::cardinal(4).unwrap(), 0.1).unwrap(),
        };
        let values: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0)).collect();
        let x = rng.random_range(0.0..(m as f64 - 1.0));
        if nodes.iter().any(|&xi| (xi - x).abs() < 1e-2) {
            continue;
        }
        let problem = match MlsProblem::univariate(&nodes, degree, weight) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let fitted = match problem.apply(&values, &[x]) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let searched = match brute_force_minimize(&problem, &values, &[x], &search) {
            Ok(v) => v,
            Err(Error::GridTooCoarse) => continue,
            Err(e) => panic!("oracle failed: {e}"),
        };
        let diff = (fitted - searched).abs();
        assert!(diff <= 1e-7, "instance {attempts}: |{fitted} - {searched}| = {diff}");
        worst = worst.max(diff);
        accepted += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    verdict(
        5,
        "solver vs search oracle",
        &format!("50 instances, max gap {worst:.2e}"),
        elapsed,
    );
}

#[test]
fn criterion_6_interpolation() {
    let start = Instant::now();
    let values = demo::curve_values();
    let xs: Vec<f64> = (0..=10).map(|i| i as f64).collect();
    let shifted = MlsProblem::univariate(
        &xs,
        0,
        WeightSpec::interpolatory(WeightSpec::cardinal(4).unwrap(), 0.1).unwrap(),
    )
    .unwrap();
    let mut worst = 0.0f64;
    for i in 1..10 {
        let got = shifted.apply(&values, &[i as f64]).unwrap();
        let diff = (got - values[i]).abs();
        assert!(diff <= 1e-8, "node {i} residual {diff}");
        worst = worst.max(diff);
    }
    let shepard = MlsProblem::univariate(&xs, 0, WeightSpec::shepard(1.0)).unwrap();
    for (i, &f) in values.iter().enumerate() {
        let got = shepard.apply(&values, &[i as f64]).unwrap();
        assert_eq!(got.to_bits(), f.to_bits(), "node {i} not returned verbatim");
    }
    let elapsed = start.elapsed();
    verdict(
        6,
        "nodal interpolation",
        &format!("shifted-weight residual {worst:.1e}, coincidence exact"),
        elapsed,
    );
}

#[test]
fn criterion_7_surface_equivalence() {
    let start = Instant::now();
    let report = verify_surface_equivalence(&demo::surface_heights(), 4, 50, 1e-10).unwrap();
    assert!(report.passed, "max residual {}", report.max_residual);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    verdict(
        7,
        "surface equivalence",
        &format!("max residual {:.2e}", report.max_residual),
        elapsed,
    );
}

#[test]
fn criterion_8_continuity_class() {
    let start = Instant::now();
    let knots = KnotVector::uniform(10, 4).unwrap();
    let mut worst = 0.0f64;
    for knot in [1.0, 2.0, 3.0] {
        for order in 0..=2 {
            let left = knots.derivative_side(0, 4, knot, order, Side::Left).unwrap();
            let right = knots.derivative_side(0, 4, knot, order, Side::Right).unwrap();
            let diff = (left - right).abs();
            assert!(diff <= 1e-6, "order {order} jump {diff} at {knot}");
            worst = worst.max(diff);
        }
    }
    let mut largest_jump = 0.0f64;
    for knot in [1.0, 2.0, 3.0] {
        let left = knots.derivative_side(0, 4, knot, 3, Side::Left).unwrap();
        let right = knots.derivative_side(0, 4, knot, 3, Side::Right).unwrap();
        largest_jump = largest_jump.max((left - right).abs());
    }
    assert!(largest_jump >= 0.5, "third derivative jump only {largest_jump}");
    let elapsed = start.elapsed();
    verdict(
        8,
        "curvature continuity",
        &format!("order<=2 mismatch {worst:.1e}, third-derivative jump {largest_jump:.2}"),
        elapsed,
    );
}
