//! Built-in sample data: Gaussian-mixture profiles sampled on the
//! integer grid, used by the command-line tool and the test suite.

/// Three-bump profile with peaks near 0, 4, and 8.
pub fn curve_profile(x: f64) -> f64 {
    (-x * x).exp() + 3.0 * (-(x - 4.0) * (x - 4.0)).exp()
        + 1.7 * (-(x - 8.0) * (x - 8.0)).exp()
}

/// `curve_profile` sampled at the nodes 0..=10.
pub fn curve_values() -> Vec<f64> {
    (0..=10).map(|i| curve_profile(i as f64)).collect()
}

/// Ridge along y = 1 plus bumps at the origin and at (6, 6).
pub fn surface_profile(x: f64, y: f64) -> f64 {
    (-x * x).exp() + 3.0 * (-(y - 1.0) * (y - 1.0)).exp()
        + (-(x - 6.0) * (x - 6.0) - (y - 6.0) * (y - 6.0)).exp()
}

/// `surface_profile` sampled on the 11 x 11 integer grid.
pub fn surface_heights() -> Vec<Vec<f64>> {
    (0..=10)
        .map(|i| (0..=10).map(|j| surface_profile(i as f64, j as f64)).collect())
        .collect()
}
