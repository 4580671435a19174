//! Adaptive evaluation of weighted tail integrals
//! `int_t^inf  prod_j (s - a_j)^(-beta_j) * prod_i (s - theta_i)^(-2) ds`.
//!
//! This one kernel backs both the decaying second solution of the Fuchsian
//! equation and the Jacobi function of the second kind. The integral is split
//! at a point `T` chosen large enough that the substitution `s = T/u` maps
//! the unbounded part onto `u in (0, 1]` with all singularities of the
//! transformed integrand pushed to `|u| >= 4`; the endpoint behavior
//! `u^(eta - 2)` is absorbed into a Gauss-Jacobi weight, which restores
//! spectral accuracy. The bounded part `[t, T]` is covered by geometrically
//! graded Gauss-Legendre panels so that accuracy is uniform even when `t`
//! sits close to the largest pole.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::quad::{gauss_jacobi, gauss_legendre, integrate_legendre};
use crate::Result;

/// Relative agreement required between successive escalation levels.
const TOL: f64 = 1e-12;
/// Largest per-panel quadrature order tried before giving up.
const MAX_ORDER: usize = 512;

/// The integrand data: simple poles with real exponents plus double zeros.
#[derive(Debug, Clone)]
pub struct TailIntegral {
    poles: Vec<f64>,
    exponents: Vec<f64>,
    zeros: Vec<f64>,
    /// decay rate eta = sum beta_j + 2 * #zeros; the integrand is
    /// asymptotic to s^(-eta) and eta > 1 is required for convergence
    eta: f64,
    /// largest pole or zero, the left boundary of the domain
    edge: f64,
}

impl TailIntegral {
    pub fn new(poles: Vec<f64>, exponents: Vec<f64>, zeros: Vec<f64>) -> Result<Self> {
        if poles.len() != exponents.len() {
            return Err(Error::invalid("one exponent per pole required"));
        }
        let eta = exponents.iter().sum::<f64>() + 2.0 * zeros.len() as f64;
        if eta <= 1.0 {
            return Err(Error::invalid(alloc::format!(
                "tail integral diverges: decay exponent {eta} <= 1"
            )));
        }
        let edge = poles
            .iter()
            .chain(zeros.iter())
            .fold(f64::NEG_INFINITY, |m, &v| m.max(v));
        Ok(TailIntegral {
            poles,
            exponents,
            zeros,
            eta,
            edge,
        })
    }

    /// The integrand `rho(s)` itself; `s` must lie beyond every pole.
    pub fn integrand(&self, s: f64) -> f64 {
        let mut v = 1.0;
        for (&a, &b) in self.poles.iter().zip(&self.exponents) {
            v *= math::powf(s - a, -b);
        }
        for &z in &self.zeros {
            let d = s - z;
            v /= d * d;
        }
        v
    }

    /// `int_t^inf rho(s) ds` with order escalation; `t` must exceed every
    /// pole and zero.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > self.edge) {
            return Err(Error::domain(alloc::format!(
                "tail integral needs t > {}, got {t}",
                self.edge
            )));
        }
        let scale = self
            .poles
            .iter()
            .chain(self.zeros.iter())
            .fold(1.0f64, |m, &v| m.max(v.abs()));
        let big_t = t.max(4.0 * scale);

        let mut prev = f64::NAN;
        let mut order = 16;
        while order <= MAX_ORDER {
            let value = self.at_order(t, big_t, order)?;
            if prev.is_finite() {
                let diff = (value - prev).abs();
                if diff <= TOL * value.abs().max(f64::MIN_POSITIVE) {
                    return Ok(value);
                }
            }
            prev = value;
            order *= 2;
        }
        Err(Error::non_convergence(alloc::format!(
            "tail integral did not stabilize to {TOL} by order {MAX_ORDER} (last value {prev})"
        )))
    }

    fn at_order(&self, t: f64, big_t: f64, order: usize) -> Result<f64> {
        let mut total = 0.0;

        if big_t > t {
            // graded panels from t toward big_t, doubling the distance to the
            // nearest singularity each step
            let legendre = gauss_legendre(order)?;
            let mut lo = t;
            let gap0 = t - self.edge;
            let mut gap = gap0;
            loop {
                let hi = (self.edge + 2.0 * gap).min(big_t);
                total += integrate_legendre(&legendre, lo, hi, |s| self.integrand(s));
                if hi >= big_t {
                    break;
                }
                lo = hi;
                gap *= 2.0;
            }
        }

        // tail beyond big_t: s = T/u pushes singularities to |u| >= 4
        let b_exp = self.eta - 2.0;
        let rule = gauss_jacobi(order, 0.0, b_exp)?;
        let tail = rule.integrate(|x| {
            let u = 0.5 * (1.0 + x);
            self.transformed(big_t, u)
        }) * math::powf(2.0, -(self.eta - 1.0));
        total += tail;
        Ok(total)
    }

    /// `rho(T/u) T / u^2` with the factor `u^(eta-2)` divided out:
    /// `T prod_j (T - a_j u)^(-beta_j) prod_i (T - theta_i u)^(-2)`.
    fn transformed(&self, big_t: f64, u: f64) -> f64 {
        let mut v = big_t;
        for (&a, &b) in self.poles.iter().zip(&self.exponents) {
            v *= math::powf(big_t - a * u, -b);
        }
        for &z in &self.zeros {
            let d = big_t - z * u;
            v /= d * d;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_q0_closed_form() {
        // int_t^inf ds/(s^2-1) = (1/2) ln((t+1)/(t-1))
        let ti = TailIntegral::new(alloc::vec![-1.0, 1.0], alloc::vec![1.0, 1.0], alloc::vec![])
            .unwrap();
        for &t in &[1.3, 2.0, 5.0, 40.0] {
            let got = ti.eval(t).unwrap();
            let want = 0.5 * ((t + 1.0) / (t - 1.0)).ln();
            assert!((got - want).abs() < 1e-13 * want.abs(), "t = {t}");
        }
    }

    #[test]
    fn power_tail() {
        // int_t^inf s^(-3) ds = 1/(2 t^2), pole at 0 with exponent 3
        let ti = TailIntegral::new(alloc::vec![0.0], alloc::vec![3.0], alloc::vec![]).unwrap();
        for &t in &[0.5, 1.0, 7.0] {
            let got = ti.eval(t).unwrap();
            assert!((got - 0.5 / (t * t)).abs() < 1e-13 / (t * t));
        }
    }

    #[test]
    fn with_double_zero() {
        // int_t^inf ds / ((s-1)(s-2)^2) = ln((t-2)/(t-1)) + 1/(t-2)
        let ti =
            TailIntegral::new(alloc::vec![1.0], alloc::vec![1.0], alloc::vec![2.0]).unwrap();
        let exact = |t: f64| ((t - 2.0) / (t - 1.0)).ln() + 1.0 / (t - 2.0);
        for &t in &[2.5, 4.0, 10.0] {
            let got = ti.eval(t).unwrap();
            let want = exact(t);
            assert!(
                (got - want).abs() < 1e-12 * want.abs(),
                "t = {t}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn domain_enforced() {
        let ti = TailIntegral::new(alloc::vec![1.0], alloc::vec![2.0], alloc::vec![]).unwrap();
        assert!(ti.eval(0.5).is_err());
        assert!(ti.eval(1.0).is_err());
    }

    #[test]
    fn divergent_rejected() {
        assert!(TailIntegral::new(alloc::vec![0.0], alloc::vec![0.5], alloc::vec![]).is_err());
    }

    #[test]
    fn negative_poles_and_negative_t() {
        // all poles negative; t between edge and zero exercises the T > 0 split
        let ti = TailIntegral::new(alloc::vec![-3.0, -2.0], alloc::vec![1.0, 1.0], alloc::vec![])
            .unwrap();
        // int_t^inf ds/((s+3)(s+2)) = ln((t+3)/(t+2))
        for &t in &[-1.5, -0.5, 0.0, 2.0] {
            let got = ti.eval(t).unwrap();
            let want = ((t + 3.0) / (t + 2.0)).ln();
            assert!((got - want).abs() < 1e-13 * want.abs().max(1.0), "t = {t}");
        }
    }
}
