//! Shared fixtures for the benchmark targets.

use mlspline::{Curve, MlsProblem, Surface, WeightSpec};

pub fn profile() -> Vec<f64> {
    mlspline::demo::curve_values()
}

pub fn heights() -> Vec<Vec<f64>> {
    mlspline::demo::surface_heights()
}

pub fn cubic_curve() -> Curve {
    Curve::from_heights(4, &profile()).expect("demo curve")
}

pub fn cubic_surface() -> Surface {
    Surface::from_heights(4, &heights()).expect("demo surface")
}

pub fn fit_problem(degree: u32, weight: WeightSpec) -> MlsProblem {
    let nodes: Vec<f64> = (0..profile().len()).map(|i| i as f64).collect();
    MlsProblem::univariate(&nodes, degree, weight).expect("demo fit")
}
