//! Weight catalog for the moving least squares solver.
//!
//! Weights are radial: W applies to the distance s = ||x - x_i||. The
//! reciprocal w = 1/W is what actually enters the normal equations, and
//! two catalog entries are defined through w rather than W, so both
//! directions are explicit here instead of one being derived from the
//! other at call sites. Entries whose reciprocal vanishes at s = 0 make
//! the fit interpolate; entries with compact support deactivate far
//! nodes. Divergent values are represented as +inf, never hidden.

use crate::bspline::{cubic_basis_closed, grid_basis, Side};
use crate::error::{Error, Result};

/// Peak value W(0) of the cubic cardinal weight. The interpolatory shift
/// is defined relative to this peak and refuses other bases.
const CUBIC_PEAK: f64 = 2.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    /// W(s) = exp(-(alpha s)^2), positive everywhere.
    Exponential { alpha: f64 },
    /// W(s) = s^(-alpha^2); diverges at 0, so the fit interpolates.
    Shepard { alpha: f64 },
    /// Reciprocal form w(s) = s^2 exp(-(alpha s)^2).
    McLain { alpha: f64 },
    /// Reciprocal form w(s) = exp((alpha s)^2) - 1.
    Levin { alpha: f64 },
    /// W(s) = B_{0,r}(s + r/2): the centered uniform B-spline bump of
    /// order r, supported on (-r/2, r/2).
    Cardinal { order: usize },
    /// Cubic cardinal weight raised by delta, with the reciprocal
    /// recentered so it vanishes at 0: the weight stays finite but the
    /// fit interpolates.
    Interpolatory { delta: f64 },
}

/// One entry of the weight catalog.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightSpec {
    kind: Kind,
}

impl WeightSpec {
    pub fn exponential(alpha: f64) -> Self {
        Self {
            kind: Kind::Exponential { alpha },
        }
    }

    pub fn shepard(alpha: f64) -> Self {
        Self {
            kind: Kind::Shepard { alpha },
        }
    }

    pub fn mclain(alpha: f64) -> Self {
        Self {
            kind: Kind::McLain { alpha },
        }
    }

    pub fn levin(alpha: f64) -> Self {
        Self {
            kind: Kind::Levin { alpha },
        }
    }

    /// Centered B-spline bump of the given order (must be >= 1).
    pub fn cardinal(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::WeightOrderZero);
        }
        Ok(Self {
            kind: Kind::Cardinal { order },
        })
    }

    /// Shifts the cubic cardinal weight up by delta > 0 and recenters its
    /// reciprocal so the result interpolates. Other bases are refused:
    /// the recentering constant is tied to the cubic peak 2/3.
    pub fn interpolatory(base: WeightSpec, delta: f64) -> Result<Self> {
        if base.kind != (Kind::Cardinal { order: 4 }) {
            return Err(Error::UnsupportedBase);
        }
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::NonPositiveShift { delta });
        }
        Ok(Self {
            kind: Kind::Interpolatory { delta },
        })
    }

    /// W(s). Divergent entries return +inf explicitly.
    pub fn eval(&self, s: f64) -> f64 {
        let a = s.abs();
        match self.kind {
            Kind::Exponential { alpha } => (-(alpha * a).powi(2)).exp(),
            Kind::Shepard { alpha } => {
                if a == 0.0 {
                    f64::INFINITY
                } else {
                    a.powf(-(alpha * alpha))
                }
            }
            Kind::McLain { .. } | Kind::Levin { .. } => {
                let w = self.reciprocal_raw(a);
                if w == 0.0 {
                    f64::INFINITY
                } else {
                    w.recip()
                }
            }
            Kind::Cardinal { order } => cardinal_bump(order, a),
            Kind::Interpolatory { delta } => cardinal_bump(4, a) + delta,
        }
    }

    /// Reciprocal weight w(s). For the interpolatory kind this is not
    /// 1/W: the recentered form vanishes at 0 exactly. Errors where the
    /// weight itself vanishes (outside a compact support).
    pub fn reciprocal(&self, s: f64) -> Result<f64> {
        let a = s.abs();
        Ok(match self.kind {
            Kind::Exponential { alpha } => ((alpha * a).powi(2)).exp(),
            Kind::Shepard { alpha } => {
                if a == 0.0 {
                    0.0
                } else {
                    a.powf(alpha * alpha)
                }
            }
            Kind::McLain { .. } | Kind::Levin { .. } => self.reciprocal_raw(a),
            Kind::Cardinal { .. } => {
                let w = self.eval(a);
                if w == 0.0 {
                    return Err(Error::ZeroWeight { s });
                }
                w.recip()
            }
            Kind::Interpolatory { delta } => shifted_reciprocal(a, delta),
        })
    }

    /// Diagonal entry 1/(2 w(s)) of D^{-1} at distance s: 0 for inactive
    /// nodes (W = 0) and +inf where the reciprocal vanishes. Computed
    /// from whichever direction is native to the kind, so inactive nodes
    /// never divide by zero.
    pub fn normal_diag(&self, s: f64) -> f64 {
        let a = s.abs();
        match self.kind {
            Kind::Exponential { alpha } => 0.5 * (-(alpha * a).powi(2)).exp(),
            Kind::Shepard { alpha } => {
                if a == 0.0 {
                    f64::INFINITY
                } else {
                    0.5 * a.powf(-(alpha * alpha))
                }
            }
            Kind::McLain { .. } | Kind::Levin { .. } => {
                let w = self.reciprocal_raw(a);
                if w == 0.0 {
                    f64::INFINITY
                } else {
                    0.5 / w
                }
            }
            Kind::Cardinal { .. } => 0.5 * self.eval(a),
            Kind::Interpolatory { delta } => {
                let w = shifted_reciprocal(a, delta);
                if w == 0.0 {
                    f64::INFINITY
                } else {
                    0.5 / w
                }
            }
        }
    }

    /// Radius beyond which W vanishes identically, if any.
    pub fn support_radius(&self) -> Option<f64> {
        match self.kind {
            Kind::Cardinal { order } => Some(order as f64 / 2.0),
            _ => None,
        }
    }

    /// True when w(0) = 0, i.e. the induced fit passes through the data.
    pub fn interpolates_at_zero(&self) -> bool {
        matches!(
            self.kind,
            Kind::Shepard { .. } | Kind::McLain { .. } | Kind::Levin { .. } | Kind::Interpolatory { .. }
        )
    }

    fn reciprocal_raw(&self, a: f64) -> f64 {
        match self.kind {
            Kind::McLain { alpha } => a * a * (-(alpha * a).powi(2)).exp(),
            Kind::Levin { alpha } => ((alpha * a).powi(2)).exp_m1(),
            _ => unreachable!("reciprocal_raw only serves reciprocal-form kinds"),
        }
    }
}

fn cardinal_bump(order: usize, a: f64) -> f64 {
    if order == 4 {
        cubic_basis_closed(0, a + 2.0)
    } else {
        grid_basis(0, order, a + order as f64 / 2.0, Side::Right)
    }
}

/// w~(s) = 1/(W(s)+delta) - 1/(W(0)+delta), written in the cancelling
/// form so it is exactly 0 at s = 0 and never negative: the bump never
/// exceeds its peak, and the max(0) guard absorbs the one-ulp cases.
fn shifted_reciprocal(a: f64, delta: f64) -> f64 {
    let w = cardinal_bump(4, a);
    (CUBIC_PEAK - w).max(0.0) / ((w + delta) * (CUBIC_PEAK + delta))
}
