//! Confocal ellipsoidal coordinates.
//!
//! For a point `x` in the positive cone, the coordinates `t_0 > a_k` and
//! `t_i in (a_(i-1), a_i)` are the roots of `f(t) = sum_j x_j^2/(t - a_j) - 1`.
//! `f` is strictly decreasing between consecutive poles, so each root is
//! bracketed and found by bisection followed by safeguarded Newton steps.
//! Points on coordinate hyperplanes collide a root with a pole; those roots
//! are returned with an explicit boundary flag.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::model::{EllipsoidAxes, Point};
use crate::Result;

/// Ellipsoidal coordinates of a point: `t[0]` is the exterior coordinate,
/// `t[i]` lies in the closure of `(a_(i-1), a_i)`. `boundary[i] = Some(j)`
/// records that the root collided with the pole `a_j` because `x_j = 0`.
#[derive(Debug, Clone)]
pub struct EllipsoidalCoords {
    pub t: Vec<f64>,
    pub boundary: Vec<Option<usize>>,
}

impl EllipsoidalCoords {
    pub fn is_interior_point(&self) -> bool {
        self.boundary.iter().all(Option::is_none)
    }
}

fn defining(axes: &EllipsoidAxes<f64>, x: &[f64], t: f64) -> f64 {
    let mut acc = -1.0;
    for (&aj, &xj) in axes.a().iter().zip(x) {
        if xj != 0.0 {
            acc += xj * xj / (t - aj);
        }
    }
    acc
}

fn defining_derivative(axes: &EllipsoidAxes<f64>, x: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for (&aj, &xj) in axes.a().iter().zip(x) {
        if xj != 0.0 {
            acc -= xj * xj / ((t - aj) * (t - aj));
        }
    }
    acc
}

/// Safeguarded root of the defining function inside a bracket with
/// `f(lo) > 0 > f(hi)`: bisection down to a narrow bracket, then Newton with
/// bisection fallback near the poles where the derivative blows up.
fn refine_root(axes: &EllipsoidAxes<f64>, x: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let spread = axes.spread();
    while hi - lo > 1e-3 * spread {
        let mid = 0.5 * (lo + hi);
        if defining(axes, x, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..80 {
        let f = defining(axes, x, t);
        if f > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let near_pole = axes.a().iter().any(|&aj| (t - aj).abs() < 1e-8 * spread);
        let df = defining_derivative(axes, x, t);
        let newton = t - f / df;
        let t_next = if !near_pole && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (t_next - t).abs() <= 1e-15 * t.abs().max(spread) {
            return t_next;
        }
        t = t_next;
    }
    t
}

/// All k+1 ellipsoidal coordinates of `x`.
///
/// Interior coordinates require `x_j >= 0`; coordinates are even in each
/// `x_j`, so callers with general sign patterns pass `|x_j|`. Zero components
/// are handled by collapsing the adjacent root onto the pole: with `x_j = 0`
/// the root of the interval left or right of `a_j` lands on `a_j`, the side
/// decided by the sign of the defining function at the pole.
pub fn cartesian_to_ellipsoidal(
    axes: &EllipsoidAxes<f64>,
    x: &Point,
) -> Result<EllipsoidalCoords> {
    let dim = axes.a().len();
    if x.len() != dim {
        return Err(Error::invalid("point dimension mismatch"));
    }
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::domain(
            "ellipsoidal coordinates are computed in the closed positive cone",
        ));
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::domain("the origin has no ellipsoidal coordinates"));
    }
    let a = axes.a();
    let mut t = alloc::vec![0.0; dim];
    let mut boundary = alloc::vec![None; dim];

    // exterior root
    t[0] = t0_exterior(axes, x)?;

    // interval i = (a_(i-1), a_i), i = 1..k
    for i in 1..dim {
        let (lo_pole, hi_pole) = (a[i - 1], a[i]);
        let lo_present = x[i - 1] != 0.0;
        let hi_present = x[i] != 0.0;
        if lo_present && hi_present {
            // f: +inf -> -inf, interior root
            let eps = 1e-13 * axes.spread();
            t[i] = refine_root(axes, x, lo_pole + eps, hi_pole - eps);
        } else if !lo_present {
            // pole at the left endpoint missing
            let f_lo = defining(axes, x, lo_pole);
            if f_lo > 0.0 && hi_present {
                let eps = 1e-13 * axes.spread();
                t[i] = refine_root(axes, x, lo_pole + eps, hi_pole - eps);
            } else {
                t[i] = lo_pole;
                boundary[i] = Some(i - 1);
            }
        } else {
            // pole at the right endpoint missing
            let f_hi = defining(axes, x, hi_pole);
            if f_hi < 0.0 {
                let eps = 1e-13 * axes.spread();
                t[i] = refine_root(axes, x, lo_pole + eps, hi_pole - eps);
            } else {
                t[i] = hi_pole;
                boundary[i] = Some(i);
            }
        }
    }
    Ok(EllipsoidalCoords { t, boundary })
}

/// Inverse map: `x_j = sqrt( prod_i (t_i - a_j) / prod_{i != j} (a_i - a_j) )`,
/// which lands in the closed positive cone.
pub fn ellipsoidal_to_cartesian(axes: &EllipsoidAxes<f64>, t: &[f64]) -> Result<Point> {
    let a = axes.a();
    let dim = a.len();
    if t.len() != dim {
        return Err(Error::invalid("coordinate dimension mismatch"));
    }
    if !(t[0] >= a[dim - 1]) {
        return Err(Error::domain("t_0 must be at least a_k"));
    }
    for i in 1..dim {
        if !(t[i] >= a[i - 1] && t[i] <= a[i]) {
            return Err(Error::domain(alloc::format!(
                "t_{i} must lie in [{}, {}], got {}",
                a[i - 1],
                a[i],
                t[i]
            )));
        }
    }
    let mut x = alloc::vec![0.0; dim];
    for j in 0..dim {
        let mut num = 1.0;
        for &ti in t {
            num *= ti - a[j];
        }
        let mut den = 1.0;
        for (i, &ai) in a.iter().enumerate() {
            if i != j {
                den *= ai - a[j];
            }
        }
        let ratio = num / den;
        // interval constraints force the ratio nonnegative; tiny negative
        // values only appear through rounding at the boundary
        x[j] = math::sqrt(ratio.max(0.0));
    }
    Ok(x)
}

/// The exterior coordinate `t_0 > a_k` for an arbitrary point (any sign
/// pattern; the defining function depends on `x_j^2` only). Fails on the
/// degenerate focal ellipsoid where the root collides with `a_k`.
pub fn t0_exterior(axes: &EllipsoidAxes<f64>, x: &[f64]) -> Result<f64> {
    let a = axes.a();
    let a_k = a[a.len() - 1];
    if on_degenerate_set(axes, x) {
        return Err(Error::domain(
            "point lies on the degenerate focal ellipsoid (x_k = 0 and \
             sum_{j<k} x_j^2/(a_k - a_j) <= 1); the exterior coordinate is undefined",
        ));
    }
    let norm_sq = math::hypot_sq(x);
    let hi = a_k + norm_sq + axes.spread();
    if *x.last().unwrap() != 0.0 {
        let eps = 1e-13 * axes.spread();
        Ok(refine_root(axes, x, a_k + eps, hi))
    } else {
        // defining function is finite at a_k and exceeds zero off the
        // degenerate set, so the root still lies strictly beyond a_k
        Ok(refine_root(axes, x, a_k, hi))
    }
}

/// Membership in the degenerate (focal) ellipsoid.
pub fn on_degenerate_set(axes: &EllipsoidAxes<f64>, x: &[f64]) -> bool {
    let a = axes.a();
    let k = a.len() - 1;
    if x[k] != 0.0 {
        return false;
    }
    let mut acc = 0.0;
    for j in 0..k {
        acc += x[j] * x[j] / (a[k] - a[j]);
    }
    acc <= 1.0
}

/// Semi-axes `d_j = sqrt(t - a_j)` of the coordinate ellipsoid at `t > a_k`.
pub fn semi_axes(axes: &EllipsoidAxes<f64>, t: f64) -> Result<Vec<f64>> {
    let a = axes.a();
    if !(t > a[a.len() - 1]) {
        return Err(Error::domain(alloc::format!(
            "semi-axes need t > a_k = {}, got {t}",
            a[a.len() - 1]
        )));
    }
    Ok(a.iter().map(|&aj| math::sqrt(t - aj)).collect())
}

/// Surface weight on the coordinate ellipsoid:
/// `w(y) = (sum_j y_j^2/(t-a_j)^2)^(-1/2)`.
///
/// This is the distance from the center to the tangent plane at `y`. It is
/// the weight for which both the pullback identity
/// `int_Sk f dS = prod d_j^(-1) int_J w g dJ` and the normal-derivative
/// relation `d/dnu = 2 w d/dt_0` hold: the transformation of the surface
/// measure under `y = d x` contributes the factor `(sum x_j^2/d_j^2)^(1/2)`,
/// whose square is what the reciprocal weight must cancel.
pub fn w_weight(axes: &EllipsoidAxes<f64>, t: f64, y: &[f64]) -> Result<f64> {
    let a = axes.a();
    if !(t > a[a.len() - 1]) {
        return Err(Error::domain("surface weight needs t > a_k"));
    }
    let inv_sq: f64 = a
        .iter()
        .zip(y)
        .map(|(&aj, &yj)| yj * yj / ((t - aj) * (t - aj)))
        .sum();
    Ok(1.0 / math::sqrt(inv_sq))
}

/// Closed-form planar coordinates for the axes `(-1, 1)`: the two roots of
/// `t^2 - (x_0^2 + x_1^2) t - (1 - x_0^2 + x_1^2) = 0`, derived from the
/// defining quadratic and certified against the general root finder.
pub fn planar_t0_t1(x0: f64, x1: f64) -> Result<(f64, f64)> {
    if x0 == 0.0 && x1 == 0.0 {
        return Err(Error::domain("the origin has no ellipsoidal coordinates"));
    }
    let r_sq = x0 * x0 + x1 * x1;
    let disc = 0.25 * r_sq * r_sq + 1.0 - x0 * x0 + x1 * x1;
    debug_assert!(disc >= 0.0, "discriminant is a sum of squares plus sin^2 terms");
    let root = math::sqrt(disc);
    Ok((0.5 * r_sq + root, 0.5 * r_sq - root))
}
