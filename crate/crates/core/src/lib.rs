//! Uniform B-spline evaluation and moving least-squares fitting, plus
//! the numerical certification that ties the two together.
//!
//! The library covers three layers:
//!
//! * [`bspline`] and [`surface`]: basis functions on integer knots by
//!   recurrence and by the cubic closed form, curves through control
//!   points (i, f(i)), and tensor-product surfaces.
//! * [`weight`] and [`mls`]: a catalog of radial weights and the
//!   weighted local polynomial fit they induce, solved through the
//!   normal equations with explicit diagnostics.
//! * [`verify`]: residual reports comparing independent computation
//!   routes, including a brute-force minimization oracle for the
//!   solver.
//!
//! The central identity, checked rather than assumed: the spline curve
//! through control points (i, f(i)) coincides with the constant-degree
//! moving fit of the same values under the cardinal weight, once the
//! parameter is shifted by half the order.

pub mod bspline;
pub mod demo;
mod error;
mod linalg;
pub mod mls;
pub mod surface;
pub mod verify;
pub mod weight;

pub use bspline::{cubic_basis_closed, Curve, KnotVector, Side};
pub use error::{Error, Result};
pub use mls::{Assembly, H1Report, MlsProblem, MlsSolution, PolynomialBasis};
pub use surface::{separable_mls_sum, Surface};
pub use verify::{
    brute_force_minimize, verify_curve_equivalence, verify_interpolation,
    verify_surface_equivalence, verify_whole_interval, GridSearch, ReportSample,
    VerificationReport, EQUIVALENCE_TOL, INTERPOLATION_TOL, MINIMIZER_TOL,
};
pub use weight::WeightSpec;
