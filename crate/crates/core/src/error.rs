//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The curve domain [r-1, n+1] is empty unless 1 <= r <= n+1.
    #[error("spline order {order} invalid for n = {n}: need 1 <= order <= n + 1")]
    OrderOutOfRange { n: usize, order: usize },

    #[error("basis index ({i}, {j}) out of range for n = {n}, order {order}")]
    BasisIndexOutOfRange {
        i: usize,
        j: usize,
        n: usize,
        order: usize,
    },

    #[error("derivative order {order} unsupported for basis order {basis_order}")]
    UnsupportedDerivative { order: usize, basis_order: usize },

    #[error("parameter {t} outside the domain [{lo}, {hi}]")]
    ParameterOutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("expected {expected} control points, got {got}")]
    ControlCountMismatch { expected: usize, got: usize },

    #[error("control grid is not square: row {row} has {got} entries, expected {expected}")]
    GridNotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },

    #[error("surface knot vectors must share n and order in both directions")]
    SurfaceKnotMismatch,

    #[error("cardinal weight order must be at least 1")]
    WeightOrderZero,

    #[error("interpolatory shift requires the cubic cardinal base (peak 2/3)")]
    UnsupportedBase,

    #[error("interpolatory shift must be positive, got {delta}")]
    NonPositiveShift { delta: f64 },

    #[error("weight vanishes at distance {s}; reciprocal undefined")]
    ZeroWeight { s: f64 },

    #[error("weight not finite at distance {s}")]
    NonFiniteWeight { s: f64 },

    #[error("polynomial basis needs at least one variable")]
    EmptyBasisDimension,

    #[error("nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },

    #[error("polynomial basis has {basis} elements but only {nodes} nodes")]
    BasisLargerThanNodes { basis: usize, nodes: usize },

    #[error("point has {got} coordinates, expected {expected}")]
    PointDimensionMismatch { expected: usize, got: usize },

    #[error("value vector has {got} entries, expected {expected}")]
    ValueCountMismatch { expected: usize, got: usize },

    #[error("design matrix rank {rank} < {needed} over the active nodes")]
    RankDeficient { rank: usize, needed: usize },

    #[error("normal matrix numerically singular (rcond {rcond:.2e})")]
    SingularNormalMatrix { rcond: f64 },

    #[error("minimizer search stopped on the coefficient bracket edge; optimum outside bracket or grid too coarse")]
    GridTooCoarse,

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
