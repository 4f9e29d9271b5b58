//! Tensor-product spline surfaces over a square control grid, plus the
//! separable weighted sum they coincide with on the shared domain.

use crate::bspline::{active_window, KnotVector, Side};
use crate::error::{Error, Result};
use crate::weight::WeightSpec;

/// Surface point sum_{i,j} B_{i,r}(u) B_{j,r}(v) p_ij on a uniform
/// integer grid in both directions.
#[derive(Clone, Debug)]
pub struct Surface {
    knots_u: KnotVector,
    knots_v: KnotVector,
    control: Vec<Vec<[f64; 3]>>,
}

impl Surface {
    /// Both directions must share the same index range and order, and the
    /// control grid must be square with n + 1 points per side.
    pub fn new(
        knots_u: KnotVector,
        knots_v: KnotVector,
        control: Vec<Vec<[f64; 3]>>,
    ) -> Result<Self> {
        if knots_u.n() != knots_v.n() || knots_u.order() != knots_v.order() {
            return Err(Error::SurfaceKnotMismatch);
        }
        let side = knots_u.n() + 1;
        if control.len() != side {
            return Err(Error::ControlCountMismatch {
                expected: side,
                got: control.len(),
            });
        }
        for (row, points) in control.iter().enumerate() {
            if points.len() != side {
                return Err(Error::GridNotSquare {
                    row,
                    got: points.len(),
                    expected: side,
                });
            }
        }
        Ok(Self {
            knots_u,
            knots_v,
            control,
        })
    }

    /// Graph-style surface with control points (i, j, h_ij).
    pub fn from_heights(order: usize, heights: &[Vec<f64>]) -> Result<Self> {
        let side = heights.len();
        if side == 0 {
            return Err(Error::ControlCountMismatch { expected: 1, got: 0 });
        }
        let n = side - 1;
        let control = heights
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != side {
                    return Err(Error::GridNotSquare {
                        row: i,
                        got: row.len(),
                        expected: side,
                    });
                }
                Ok(row
                    .iter()
                    .enumerate()
                    .map(|(j, &h)| [i as f64, j as f64, h])
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            KnotVector::uniform(n, order)?,
            KnotVector::uniform(n, order)?,
            control,
        )
    }

    pub fn knots_u(&self) -> &KnotVector {
        &self.knots_u
    }

    pub fn knots_v(&self) -> &KnotVector {
        &self.knots_v
    }

    pub fn control(&self) -> &[Vec<[f64; 3]>] {
        &self.control
    }

    /// Surface point at (u, v); both parameters live on the curve domain
    /// [r - 1, n + 1], closed at the top end by the left limit.
    pub fn eval(&self, u: f64, v: f64) -> Result<[f64; 3]> {
        let (lo, hi) = self.knots_u.domain();
        for t in [u, v] {
            if !(t >= lo && t <= hi) {
                return Err(Error::ParameterOutOfDomain { t, lo, hi });
            }
        }
        let side_u = if u == hi { Side::Left } else { Side::Right };
        let side_v = if v == hi { Side::Left } else { Side::Right };
        let order = self.knots_u.order();
        let n = self.knots_u.n();
        let iw = active_window(u, side_u, order, n);
        let jw = active_window(v, side_v, order, n);
        let bv: Vec<f64> = jw
            .clone()
            .map(|j| self.knots_v.basis_side(j, order, v, side_v).unwrap())
            .collect();
        let mut point = [0.0; 3];
        for i in iw {
            let bu = self.knots_u.basis_side(i, order, u, side_u).unwrap();
            if bu == 0.0 {
                continue;
            }
            for (j, &bvj) in jw.clone().zip(&bv) {
                let w = bu * bvj;
                let p = self.control[i][j];
                point[0] += w * p[0];
                point[1] += w * p[1];
                point[2] += w * p[2];
            }
        }
        Ok(point)
    }
}

/// Separable weighted sum sum_i W(x - i) sum_j W(y - j) h_ij over a
/// square grid of heights indexed 0..=n.
///
/// Compactly supported weights restrict each axis sum to the indices
/// inside the support window; everything else is skipped untouched.
pub fn separable_mls_sum(
    heights: &[Vec<f64>],
    weight: WeightSpec,
    x: f64,
    y: f64,
) -> Result<f64> {
    let side = heights.len();
    if side == 0 {
        return Err(Error::ControlCountMismatch { expected: 1, got: 0 });
    }
    for (row, r) in heights.iter().enumerate() {
        if r.len() != side {
            return Err(Error::GridNotSquare {
                row,
                got: r.len(),
                expected: side,
            });
        }
    }
    let n = (side - 1) as i64;
    let window = |c: f64| -> std::ops::RangeInclusive<i64> {
        match weight.support_radius() {
            Some(radius) => {
                let lo = ((c - radius).floor() as i64 + 1).clamp(0, n);
                let hi = ((c + radius).ceil() as i64 - 1).clamp(0, n);
                lo..=hi
            }
            None => 0..=n,
        }
    };
    let axis_weights = |c: f64, range: std::ops::RangeInclusive<i64>| -> Result<Vec<(usize, f64)>> {
        range
            .map(|i| {
                let w = weight.eval(c - i as f64);
                if !w.is_finite() {
                    return Err(Error::NonFiniteWeight { s: c - i as f64 });
                }
                Ok((i as usize, w))
            })
            .collect()
    };
    let wx = axis_weights(x, window(x))?;
    let wy = axis_weights(y, window(y))?;
    let mut total = 0.0;
    for &(i, wxi) in &wx {
        if wxi == 0.0 {
            continue;
        }
        let inner: f64 = wy.iter().map(|&(j, wyj)| wyj * heights[i][j]).sum();
        total += wxi * inner;
    }
    Ok(total)
}
