//! Uniform B-spline basis functions and spline curves on integer knots.
//!
//! The knot vector is t_i = i for i = 0..=n+r, so every basis function of
//! order j is an integer translate of the one anchored at zero. `basis`
//! walks the two-term recurrence bottom-up over the support window;
//! `cubic_basis_closed` is the six-piece polynomial fast path for order 4.
//! Derivatives are finite differences with pinned steps, with one-sided
//! variants for probing the two limits at a knot.

use crate::error::{Error, Result};

/// Limit direction used when an evaluation point sits on a knot.
///
/// The order-1 indicators are half-open on the right, so plain evaluation
/// is continuous from the right. `Side::Left` flips the indicators to
/// (k, k+1] and yields the limit from below instead; curves use it to
/// close their domain at the right endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Finite-difference steps by derivative order (1, 2, then 3 and up).
/// First and second derivatives use O(h^2) central stencils; higher
/// orders take a wider step because the h^-d amplification of rounding
/// error dominates the truncation term.
const FD_STEP: [f64; 3] = [1e-5, 1e-4, 1e-2];

fn fd_step(order: usize) -> f64 {
    FD_STEP[(order - 1).min(2)]
}

/// Cox-de Boor recurrence on the integer knot grid, evaluated bottom-up
/// over the support window of B_{i,j}. The denominator guards keep the
/// recurrence total, although uniform knots never actually repeat.
pub(crate) fn grid_basis(i: i64, j: usize, t: f64, side: Side) -> f64 {
    debug_assert!(j >= 1);
    let knot = |k: usize| (i + k as i64) as f64;
    let inside = match side {
        Side::Right => knot(0) <= t && t < knot(j),
        Side::Left => knot(0) < t && t <= knot(j),
    };
    if !inside {
        return 0.0;
    }
    // Order-1 indicator row over the support window.
    let mut row = vec![0.0; j];
    for (s, v) in row.iter_mut().enumerate() {
        let hit = match side {
            Side::Right => knot(s) <= t && t < knot(s + 1),
            Side::Left => knot(s) < t && t <= knot(s + 1),
        };
        if hit {
            *v = 1.0;
        }
    }
    for q in 2..=j {
        for s in 0..=(j - q) {
            let left_den = knot(s + q - 1) - knot(s);
            let right_den = knot(s + q) - knot(s + 1);
            let left = if left_den == 0.0 {
                0.0
            } else {
                (t - knot(s)) / left_den * row[s]
            };
            let right = if right_den == 0.0 {
                0.0
            } else {
                (knot(s + q) - t) / right_den * row[s + 1]
            };
            row[s] = left + right;
        }
    }
    row[0]
}

/// Closed-form cubic basis function B_{i,4}: six polynomial pieces over
/// the support [i, i+4). Any integer anchor is accepted.
pub fn cubic_basis_closed(i: i64, t: f64) -> f64 {
    let u = t - i as f64;
    let cube = |x: f64| x * x * x;
    if !(0.0..4.0).contains(&u) {
        0.0
    } else if u < 1.0 {
        cube(u) / 6.0
    } else if u < 2.0 {
        -2.0 / 3.0 * cube(u - 1.0) + cube(u) / 6.0
    } else if u < 3.0 {
        cube(u - 2.0) - 2.0 / 3.0 * cube(u - 1.0) + cube(u) / 6.0
    } else {
        -2.0 / 3.0 * cube(u - 3.0) + cube(u - 2.0) - 2.0 / 3.0 * cube(u - 1.0) + cube(u) / 6.0
    }
}

/// Indices i whose order-r basis function is nonzero at t, clamped to
/// [0, n]. `side` matters only when t is a knot.
pub(crate) fn active_window(t: f64, side: Side, order: usize, n: usize) -> std::ops::RangeInclusive<usize> {
    let anchor = match side {
        Side::Right => t.floor() as i64,
        Side::Left => t.ceil() as i64 - 1,
    };
    let first = (anchor - order as i64 + 1).max(0) as usize;
    let last = anchor.clamp(0, n as i64) as usize;
    first..=last
}

/// Uniform knot vector t_i = i for i = 0..=n+r.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotVector {
    n: usize,
    order: usize,
    knots: Vec<f64>,
}

impl KnotVector {
    /// Builds the knot vector for n+1 control points and spline order r.
    pub fn uniform(n: usize, order: usize) -> Result<Self> {
        if order == 0 || order > n + 1 {
            return Err(Error::OrderOutOfRange { n, order });
        }
        let knots = (0..=n + order).map(|k| k as f64).collect();
        Ok(Self { n, order, knots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Curve parameter domain [r-1, n+1].
    pub fn domain(&self) -> (f64, f64) {
        ((self.order - 1) as f64, (self.n + 1) as f64)
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if j == 0 || j > self.order || i + j > self.n + self.order {
            return Err(Error::BasisIndexOutOfRange {
                i,
                j,
                n: self.n,
                order: self.order,
            });
        }
        Ok(())
    }

    /// Basis function B_{i,j}(t). Zero outside the support [i, i+j).
    pub fn basis(&self, i: usize, j: usize, t: f64) -> Result<f64> {
        self.basis_side(i, j, t, Side::Right)
    }

    /// Basis function with an explicit limit direction at knots.
    pub fn basis_side(&self, i: usize, j: usize, t: f64, side: Side) -> Result<f64> {
        self.check_index(i, j)?;
        Ok(grid_basis(i as i64, j, t, side))
    }

    /// Finite-difference derivative of B_{i,j} at t. Central stencils;
    /// at a knot, orders >= j-2 see the one-sided mismatch, for which
    /// `derivative_side` exists. Order 0 is the plain value.
    pub fn derivative(&self, i: usize, j: usize, t: f64, order: usize) -> Result<f64> {
        self.check_index(i, j)?;
        if order >= j {
            return Err(Error::UnsupportedDerivative {
                order,
                basis_order: j,
            });
        }
        let f = |u: f64| grid_basis(i as i64, j, u, Side::Right);
        if order == 0 {
            return Ok(f(t));
        }
        let h = fd_step(order);
        Ok(match order {
            1 => (f(t + h) - f(t - h)) / (2.0 * h),
            2 => (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
            _ => central_difference(&f, t, order, h),
        })
    }

    /// One-sided derivative at t: every sample, including t itself, is
    /// taken from the chosen side, so left/right values at a knot are the
    /// genuine one-sided limits. Orders 1 and 2 use stencils exact for
    /// cubics; higher orders use the plain one-sided difference.
    pub fn derivative_side(
        &self,
        i: usize,
        j: usize,
        t: f64,
        order: usize,
        side: Side,
    ) -> Result<f64> {
        self.check_index(i, j)?;
        if order >= j {
            return Err(Error::UnsupportedDerivative {
                order,
                basis_order: j,
            });
        }
        let f = |u: f64| grid_basis(i as i64, j, u, side);
        if order == 0 {
            return Ok(f(t));
        }
        let h = fd_step(order);
        let s = match side {
            Side::Right => h,
            Side::Left => -h,
        };
        Ok(match order {
            1 => (-3.0 * f(t) + 4.0 * f(t + s) - f(t + 2.0 * s)) / (2.0 * s),
            2 => (2.0 * f(t) - 5.0 * f(t + s) + 4.0 * f(t + 2.0 * s) - f(t + 3.0 * s)) / (h * h),
            _ => one_sided_difference(&f, t, order, s),
        })
    }
}

fn central_difference(f: &dyn Fn(f64) -> f64, t: f64, order: usize, h: f64) -> f64 {
    // d-th central difference: sum_k (-1)^k C(d,k) f(t + (d/2 - k) h).
    let mut acc = 0.0;
    let mut coef = 1.0;
    for k in 0..=order {
        let offset = (order as f64 / 2.0 - k as f64) * h;
        acc += coef * f(t + offset);
        coef *= -((order - k) as f64) / (k as f64 + 1.0);
    }
    acc / h.powi(order as i32)
}

fn one_sided_difference(f: &dyn Fn(f64) -> f64, t: f64, order: usize, step: f64) -> f64 {
    // d-th forward difference with signed step; exact through degree d.
    let mut acc = 0.0;
    for k in 0..=order {
        let sign = if (order - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * binomial(order, k) * f(t + k as f64 * step);
    }
    acc / step.powi(order as i32)
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut c = 1.0;
    for q in 0..k {
        c = c * (n - q) as f64 / (q + 1) as f64;
    }
    c
}

/// Planar spline curve: control points p_i paired with a uniform knot
/// vector, evaluated as sum_i B_{i,r}(t) p_i.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    knots: KnotVector,
    control: Vec<[f64; 2]>,
}

impl Curve {
    /// Requires exactly n+1 control points for the knot vector's n.
    pub fn new(knots: KnotVector, control: Vec<[f64; 2]>) -> Result<Self> {
        if control.len() != knots.n() + 1 {
            return Err(Error::ControlCountMismatch {
                expected: knots.n() + 1,
                got: control.len(),
            });
        }
        Ok(Self { knots, control })
    }

    /// Curve with control points (i, values[i]), i = 0..values.len().
    pub fn from_heights(order: usize, values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ControlCountMismatch {
                expected: 1,
                got: 0,
            });
        }
        let knots = KnotVector::uniform(values.len() - 1, order)?;
        let control = values
            .iter()
            .enumerate()
            .map(|(i, &v)| [i as f64, v])
            .collect();
        Ok(Self { knots, control })
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn control(&self) -> &[[f64; 2]] {
        &self.control
    }

    /// Point on the curve at parameter t in [r-1, n+1]. The right
    /// endpoint takes the limit from below, closing the domain; only the
    /// r basis functions supported at t enter the sum.
    pub fn eval(&self, t: f64) -> Result<[f64; 2]> {
        let (lo, hi) = self.knots.domain();
        if !(t >= lo && t <= hi) {
            return Err(Error::ParameterOutOfDomain { t, lo, hi });
        }
        let side = if t == hi { Side::Left } else { Side::Right };
        let r = self.knots.order();
        let mut point = [0.0, 0.0];
        for i in active_window(t, side, r, self.knots.n()) {
            let b = grid_basis(i as i64, r, t, side);
            point[0] += b * self.control[i][0];
            point[1] += b * self.control[i][1];
        }
        Ok(point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_knots_are_consecutive_integers() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert_eq!(kv.knots().len(), 15);
        assert_eq!(kv.knots()[0], 0.0);
        assert_eq!(kv.knots()[14], 14.0);
        assert_eq!(kv.domain(), (3.0, 11.0));

        let tiny = KnotVector::uniform(0, 1).unwrap();
        assert_eq!(tiny.knots(), &[0.0, 1.0]);
    }

    #[test]
    fn order_must_fit_the_control_count() {
        assert_eq!(
            KnotVector::uniform(2, 4),
            Err(Error::OrderOutOfRange { n: 2, order: 4 })
        );
        assert!(KnotVector::uniform(3, 4).is_ok());
        assert_eq!(
            KnotVector::uniform(5, 0),
            Err(Error::OrderOutOfRange { n: 5, order: 0 })
        );
    }

    #[test]
    fn order_one_is_the_half_open_indicator() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert_eq!(kv.basis(0, 1, 0.5).unwrap(), 1.0);
        assert_eq!(kv.basis(0, 1, 0.0).unwrap(), 1.0);
        assert_eq!(kv.basis(0, 1, 1.0).unwrap(), 0.0);
        assert_eq!(kv.basis(0, 1, -0.2).unwrap(), 0.0);
    }

    #[test]
    fn one_recurrence_step_from_indicators() {
        // B_{0,2}(1) combines the two indicators with weights 1 and 0.
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert_eq!(kv.basis(0, 2, 1.0).unwrap(), 1.0);
        assert_eq!(kv.basis(0, 2, 0.5).unwrap(), 0.5);
    }

    #[test]
    fn cubic_peak_value() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert_abs_diff_eq!(kv.basis(0, 4, 2.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn support_is_respected() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert_eq!(kv.basis(3, 4, 2.0).unwrap(), 0.0);
        assert_eq!(kv.basis(3, 4, 7.0).unwrap(), 0.0);
        assert!(kv.basis(3, 4, 5.0).unwrap() > 0.0);
    }

    #[test]
    fn index_bounds_are_enforced() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert!(matches!(
            kv.basis(11, 4, 5.0),
            Err(Error::BasisIndexOutOfRange { .. })
        ));
        assert!(matches!(
            kv.basis(0, 5, 5.0),
            Err(Error::BasisIndexOutOfRange { .. })
        ));
        assert!(matches!(
            kv.basis(0, 0, 5.0),
            Err(Error::BasisIndexOutOfRange { .. })
        ));
        assert!(kv.basis(10, 4, 12.0).is_ok());
    }

    #[test]
    fn closed_form_matches_hand_values() {
        assert_abs_diff_eq!(cubic_basis_closed(0, 1.0), 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cubic_basis_closed(0, 2.0), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(cubic_basis_closed(0, 2.5), 23.0 / 48.0, epsilon = 1e-15);
        assert_eq!(cubic_basis_closed(5, 9.1), 0.0);
        assert_eq!(cubic_basis_closed(0, 4.0), 0.0);
        assert_eq!(cubic_basis_closed(0, -0.1), 0.0);
    }

    #[test]
    fn closed_form_is_translation_invariant() {
        for i in [-3i64, 0, 2, 7] {
            for k in 0..40 {
                let u = -0.5 + 0.125 * k as f64;
                assert_abs_diff_eq!(
                    cubic_basis_closed(i, i as f64 + u),
                    cubic_basis_closed(0, u),
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_recurrence() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        for i in 0..=10usize {
            for k in 0..=1400 {
                let t = k as f64 / 100.0;
                let diff = (kv.basis(i, 4, t).unwrap() - cubic_basis_closed(i as i64, t)).abs();
                assert!(diff <= 1e-13, "i={i} t={t} diff={diff:e}");
            }
        }
    }

    #[test]
    fn partition_of_unity_inside_the_domain() {
        for r in 1..=6usize {
            let n = r + 6;
            let kv = KnotVector::uniform(n, r).unwrap();
            let (lo, hi) = kv.domain();
            for k in 0..200 {
                let t = lo + (hi - lo) * (k as f64 + 0.5) / 200.0;
                let sum: f64 = (0..=n).map(|i| kv.basis(i, r, t).unwrap()).sum();
                assert!((sum - 1.0).abs() <= 1e-12, "r={r} t={t} sum={sum}");
            }
        }
    }

    #[test]
    fn left_side_takes_the_limit_from_below() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        // Order 1 at a knot: right limit 0, left limit 1.
        assert_eq!(kv.basis_side(0, 1, 1.0, Side::Left).unwrap(), 1.0);
        assert_eq!(kv.basis_side(0, 1, 1.0, Side::Right).unwrap(), 0.0);
        // Continuous orders agree from both sides.
        for t in [1.0, 2.0, 3.0] {
            assert_abs_diff_eq!(
                kv.basis_side(0, 4, t, Side::Left).unwrap(),
                kv.basis_side(0, 4, t, Side::Right).unwrap(),
                epsilon = 1e-12
            );
        }
        // At the right support edge only the left limit sees the value 0
        // continuously; both sides must still report 0 for the cubic.
        assert_abs_diff_eq!(kv.basis_side(0, 4, 4.0, Side::Left).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn derivative_at_the_peak_vanishes() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        let d = kv.derivative(0, 4, 2.0, 1).unwrap();
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn derivative_of_the_hat_rise_is_one() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        let d = kv.derivative(0, 2, 0.5, 1).unwrap();
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn second_derivative_at_the_peak() {
        // Piecewise form gives B''_{0,4}(2) = -2; the central stencil
        // straddles the knot, so accuracy drops to O(h).
        let kv = KnotVector::uniform(10, 4).unwrap();
        let d = kv.derivative(0, 4, 2.0, 2).unwrap();
        assert_abs_diff_eq!(d, -2.0, epsilon = 1e-3);
    }

    #[test]
    fn derivative_order_must_stay_below_basis_order() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        assert!(matches!(
            kv.derivative(0, 4, 2.0, 4),
            Err(Error::UnsupportedDerivative { .. })
        ));
        assert!(kv.derivative(0, 4, 2.0, 3).is_ok());
        assert_eq!(kv.derivative(0, 4, 2.0, 0).unwrap(), kv.basis(0, 4, 2.0).unwrap());
    }

    #[test]
    fn sided_derivatives_agree_where_continuous() {
        let kv = KnotVector::uniform(10, 4).unwrap();
        for knot in 1..=3 {
            let t = knot as f64;
            for order in 0..=2 {
                let left = kv.derivative_side(0, 4, t, order, Side::Left).unwrap();
                let right = kv.derivative_side(0, 4, t, order, Side::Right).unwrap();
                assert!(
                    (left - right).abs() <= 1e-6,
                    "order {order} at t={t}: left {left} right {right}"
                );
            }
        }
    }

    #[test]
    fn third_derivative_jumps_at_interior_knots() {
        // Piece third derivatives of B_{0,4} are 1, -3, 3, -1, so the
        // jumps at t = 1, 2, 3 are -4, +6, -4.
        let kv = KnotVector::uniform(10, 4).unwrap();
        let expected = [-4.0, 6.0, -4.0];
        for (knot, want) in (1..=3).zip(expected) {
            let t = knot as f64;
            let left = kv.derivative_side(0, 4, t, 3, Side::Left).unwrap();
            let right = kv.derivative_side(0, 4, t, 3, Side::Right).unwrap();
            assert_abs_diff_eq!(right - left, want, epsilon = 1e-6);
        }
    }

    #[test]
    fn constant_control_values_reproduce_the_constant() {
        let curve = Curve::from_heights(4, &[2.5; 11]).unwrap();
        for k in 0..=40 {
            let t = 3.0 + 8.0 * k as f64 / 40.0;
            assert_abs_diff_eq!(curve.eval(t).unwrap()[1], 2.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn first_coordinate_is_the_shifted_parameter() {
        let values: Vec<f64> = (0..=10).map(|i| (i as f64 * 0.7).sin()).collect();
        for r in 2..=5usize {
            let curve = Curve::from_heights(r, &values).unwrap();
            let (lo, hi) = curve.knots().domain();
            for k in 0..=50 {
                let t = lo + (hi - lo) * k as f64 / 50.0;
                let p = curve.eval(t).unwrap();
                assert_abs_diff_eq!(p[0], t - r as f64 / 2.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn local_sum_equals_full_sum() {
        let values: Vec<f64> = (0..=10).map(|i| 1.0 + (i as f64).cos()).collect();
        let curve = Curve::from_heights(4, &values).unwrap();
        let kv = curve.knots().clone();
        for k in 0..=32 {
            let t = 3.0 + 8.0 * k as f64 / 32.0;
            let full: f64 = (0..=10)
                .map(|i| kv.basis(i, 4, t).unwrap() * values[i])
                .sum();
            let local = curve.eval(t).unwrap()[1];
            assert_abs_diff_eq!(local, full, epsilon = 1e-13);
        }
    }

    #[test]
    fn domain_is_closed_via_the_left_limit() {
        let values: Vec<f64> = (0..=10).map(|i| i as f64 * 0.3).collect();
        let curve = Curve::from_heights(4, &values).unwrap();
        assert!(curve.eval(2.999).is_err());
        assert!(curve.eval(11.001).is_err());
        assert!(curve.eval(f64::NAN).is_err());
        let end = curve.eval(11.0).unwrap();
        let near = curve.eval(11.0 - 1e-9).unwrap();
        assert_abs_diff_eq!(end[1], near[1], epsilon = 1e-8);
        assert_abs_diff_eq!(end[0], 9.0, epsilon = 1e-12);
    }

    #[test]
    fn control_count_must_match() {
        let kv = KnotVector::uniform(3, 2).unwrap();
        assert!(matches!(
            Curve::new(kv, vec![[0.0, 0.0]; 3]),
            Err(Error::ControlCountMismatch { .. })
        ));
    }
}
