//! Stieltjes quasi-polynomials of the two-point Fuchsian problem and their
//! decaying second solutions.
//!
//! A quasi-polynomial `E(t) = prod_i (t - theta_i) prod_j (t - a_j)^(p_j/2)`
//! with `n_j` zeros in the j-th open interval `(a_(j-1), a_j)` solves the
//! Fuchsian equation for one specific spectral vector `lambda`. Substituting
//! the ansatz and demanding a vanishing residue at every simple zero yields
//! the classical electrostatic equations
//!
//! `sum_{l != i} 2/(theta_i - theta_l) + sum_j (alpha_j + p_j + 1/2)/(theta_i - a_j) = 0`,
//!
//! solved by a damped Newton iteration; `lambda` then follows by linear
//! coefficient matching, and the division remainder doubles as a certificate.
//!
//! The second solution is built by reduction of order,
//! `Ecal(t) = (mu + m) E(t) int_t^inf prod_j (s-a_j)^(-alpha_j-1/2) E(s)^(-2) ds`,
//! which bakes in the normalization `t^(mu+m/2) Ecal(t) -> 1` at infinity.

use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg;
use crate::math;
use crate::model::{DunklParams, EllipsoidAxes, HarmonicIndex};
use crate::scalar::Coeff;
use crate::tail::TailIntegral;
use crate::univar;
use crate::Result;

const NEWTON_MAX_ITER: usize = 200;

/// Coefficient polynomials of the Fuchsian operator acting on the polynomial
/// part `u` of the quasi-polynomial ansatz:
/// `Pi u'' + Q u' + (S + Lambda) u = 0` with `Pi = prod (t - a_j)`,
/// `Q = sum_j (alpha_j + p_j + 1/2) prod_{i != j} (t - a_i)`, and `S` the
/// degree-(k-1) polynomial produced by pulling the parity factors through.
pub(crate) struct FuchsOperator<S: Coeff> {
    pub pi: Vec<S>,
    pub q: Vec<S>,
    pub s: Vec<S>,
}

pub(crate) fn fuchs_operator<S: Coeff>(
    params: &DunklParams<S>,
    axes: &EllipsoidAxes<S>,
    parity: &[u8],
) -> FuchsOperator<S> {
    let a = axes.a();
    let dim = a.len();
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);

    let pi = univar::from_roots(a);

    let mut q = Vec::new();
    for j in 0..dim {
        let others: Vec<S> = (0..dim).filter(|&i| i != j).map(|i| a[i].clone()).collect();
        let cj = params.alpha()[j].clone() + S::from_int(parity[j] as i64) + half.clone();
        q = univar::add(&q, &univar::scale(&univar::from_roots(&others), &cj));
    }

    let mut s = Vec::new();
    for j in 0..dim {
        if parity[j] == 0 {
            continue;
        }
        // (prod_{i != j} (t - a_i) - A_j) / (t - a_j), an exact division
        let others: Vec<S> = (0..dim).filter(|&i| i != j).map(|i| a[i].clone()).collect();
        let mut num = univar::from_roots(&others);
        num[0] = num[0].clone() - axes.big_a()[j].clone();
        let (r_j, rem) = univar::div_monic(&num, &univar::from_roots(&[a[j].clone()]));
        debug_assert!(rem.iter().all(|c| c.to_f64().abs() < 1e-9));
        let cj = params.alpha()[j].clone() * half.clone();
        s = univar::add(&s, &univar::scale(&r_j, &cj));
    }
    for i in 0..dim {
        if parity[i] == 0 {
            continue;
        }
        for j in 0..dim {
            if i == j {
                continue;
            }
            let rest: Vec<S> = (0..dim)
                .filter(|&l| l != i && l != j)
                .map(|l| a[l].clone())
                .collect();
            // p_i (p_j + 2 alpha_j + 1) / 4
            let c = quarter.clone()
                * (S::from_int(parity[j] as i64)
                    + S::from_int(2) * params.alpha()[j].clone()
                    + S::one());
            s = univar::add(&s, &univar::scale(&univar::from_roots(&rest), &c));
        }
    }

    FuchsOperator { pi, q, s }
}

/// The solved quasi-polynomial: zeros grouped by interval, spectral vector,
/// and the division remainder of the coefficient matching as a certificate.
#[derive(Debug, Clone)]
pub struct StieltjesPolynomial {
    params: DunklParams<f64>,
    axes: EllipsoidAxes<f64>,
    index: HarmonicIndex,
    zeros_by_interval: Vec<Vec<f64>>,
    zeros: Vec<f64>,
    lambda: Vec<f64>,
    matching_remainder: f64,
}

impl StieltjesPolynomial {
    pub fn params(&self) -> &DunklParams<f64> {
        &self.params
    }

    pub fn axes(&self) -> &EllipsoidAxes<f64> {
        &self.axes
    }

    pub fn index(&self) -> &HarmonicIndex {
        &self.index
    }

    /// All zeros, ascending.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Zeros of interval j (counting from 1) as group j-1.
    pub fn zeros_by_interval(&self) -> &[Vec<f64>] {
        &self.zeros_by_interval
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// Max-norm of the remainder left by the spectral coefficient matching,
    /// relative to the operator scale; near machine epsilon for a converged
    /// solve.
    pub fn matching_remainder(&self) -> f64 {
        self.matching_remainder
    }

    /// `mu + m`, the Wronskian constant.
    pub fn mu_plus_m(&self) -> f64 {
        self.params.mu() + self.index.degree() as f64
    }

    fn a(&self) -> &[f64] {
        self.axes.a()
    }

    fn a_k(&self) -> f64 {
        *self.a().last().unwrap()
    }

    /// Monic polynomial part `u(t) = prod (t - theta_i)`.
    pub fn poly_part(&self, t: f64) -> f64 {
        self.zeros.iter().map(|&z| t - z).product()
    }

    fn poly_part_log_derivative(&self, t: f64) -> f64 {
        self.zeros.iter().map(|&z| 1.0 / (t - z)).sum()
    }

    /// `E(t)` for `t >= a_k`, where every parity factor is nonnegative.
    pub fn eval_exterior(&self, t: f64) -> Result<f64> {
        if !(t >= self.a_k()) {
            return Err(Error::domain(alloc::format!(
                "exterior evaluation needs t >= a_k = {}, got {t}; \
                 use eval_abs for interior intervals",
                self.a_k()
            )));
        }
        Ok(self.eval_abs(t))
    }

    /// `E(t)` with the parity factors taken as `|t - a_j|^(p_j/2)`, the
    /// sign convention under which `F = prod_j E(t_j)` is the internal
    /// harmonic with positive leading coefficient.
    pub fn eval_abs(&self, t: f64) -> f64 {
        let mut v = self.poly_part(t);
        for (j, &pj) in self.index.p().iter().enumerate() {
            if pj == 1 {
                v *= math::sqrt((t - self.a()[j]).abs());
            }
        }
        v
    }

    /// `E'(t)` on the exterior interval `t > a_k`.
    pub fn eval_prime_exterior(&self, t: f64) -> Result<f64> {
        if !(t > self.a_k()) {
            return Err(Error::domain(alloc::format!(
                "derivative evaluation needs t > a_k = {}, got {t}",
                self.a_k()
            )));
        }
        let log_deriv: f64 = self.poly_part_log_derivative(t)
            + self
                .index
                .p()
                .iter()
                .enumerate()
                .filter(|(_, &pj)| pj == 1)
                .map(|(j, _)| 0.5 / (t - self.a()[j]))
                .sum::<f64>();
        Ok(self.eval_abs(t) * log_deriv)
    }

    /// Residual of the Fuchsian equation at `t`, relative to the local term
    /// scale; the certificate that (zeros, lambda) really solve the problem.
    pub fn ode_residual(&self, t: f64) -> f64 {
        let op = fuchs_operator(&self.params, &self.axes, self.index.p());
        let u = univar::from_roots(&self.zeros);
        let du = univar::derivative(&u);
        let ddu = univar::derivative(&du);
        let mut lam_poly = self.lambda.clone();
        univar::trim(&mut lam_poly);
        let term1 = univar::eval_f64(&op.pi, t) * univar::eval_f64(&ddu, t);
        let term2 = univar::eval_f64(&op.q, t) * univar::eval_f64(&du, t);
        let term3 = (univar::eval_f64(&op.s, t) + univar::eval_f64(&lam_poly, t))
            * univar::eval_f64(&u, t);
        let scale = term1.abs() + term2.abs() + term3.abs();
        if scale == 0.0 {
            0.0
        } else {
            (term1 + term2 + term3).abs() / scale
        }
    }

    /// The tail-integral description of `prod_j (s - a_j)^(-alpha_j - 1/2) E(s)^(-2)`
    /// with the parity factors folded into the pole exponents.
    fn tail(&self) -> Result<TailIntegral> {
        let exps: Vec<f64> = self
            .params
            .alpha()
            .iter()
            .zip(self.index.p())
            .map(|(&al, &pj)| al + pj as f64 + 0.5)
            .collect();
        TailIntegral::new(self.a().to_vec(), exps, self.zeros.clone())
    }
}

/// Solve for the quasi-polynomial with the prescribed zero counts.
///
/// Zeros start equispaced in their intervals; the Newton step on the
/// electrostatic equations is damped so no zero ever leaves its interval.
pub fn solve_stieltjes(
    params: &DunklParams<f64>,
    axes: &EllipsoidAxes<f64>,
    index: &HarmonicIndex,
) -> Result<StieltjesPolynomial> {
    if index.k() != params.k() || axes.k() != params.k() {
        return Err(Error::invalid("dimension mismatch between params, axes, index"));
    }
    let a = axes.a();
    let n_total = index.n_total() as usize;

    // interval tag per unknown zero
    let mut interval_of = Vec::with_capacity(n_total);
    let mut theta = Vec::with_capacity(n_total);
    for (j, &nj) in index.n().iter().enumerate() {
        let (lo, hi) = (a[j], a[j + 1]);
        for i in 0..nj {
            interval_of.push(j);
            theta.push(lo + (hi - lo) * (i as f64 + 1.0) / (nj as f64 + 1.0));
        }
    }

    let charges: Vec<f64> = params
        .alpha()
        .iter()
        .zip(index.p())
        .map(|(&al, &pj)| al + pj as f64 + 0.5)
        .collect();

    let residual = |theta: &[f64], out: &mut [f64]| {
        for i in 0..theta.len() {
            let mut f = 0.0;
            for l in 0..theta.len() {
                if l != i {
                    f += 2.0 / (theta[i] - theta[l]);
                }
            }
            for (j, &aj) in a.iter().enumerate() {
                f += charges[j] / (theta[i] - aj);
            }
            out[i] = f;
        }
    };

    if n_total > 0 {
        let mut f = alloc::vec![0.0; n_total];
        residual(&theta, &mut f);
        let scale = 1.0 / axes.spread();
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let fnorm = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if fnorm < 1e-12 * scale.max(1.0) {
                converged = true;
                break;
            }
            // Jacobian of the electrostatic system
            let mut jac = alloc::vec![alloc::vec![0.0; n_total]; n_total];
            for i in 0..n_total {
                let mut diag = 0.0;
                for l in 0..n_total {
                    if l != i {
                        let d = 2.0 / ((theta[i] - theta[l]) * (theta[i] - theta[l]));
                        jac[i][l] = d;
                        diag -= d;
                    }
                }
                for (j, &aj) in a.iter().enumerate() {
                    diag -= charges[j] / ((theta[i] - aj) * (theta[i] - aj));
                }
                jac[i][i] = diag;
            }
            let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
            let step = linalg::solve_f64(jac, rhs)
                .ok_or_else(|| Error::non_convergence("singular Newton system"))?;

            // damp until all zeros stay strictly inside their intervals
            // and the residual does not grow
            let mut gamma = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let cand: Vec<f64> = theta
                    .iter()
                    .zip(&step)
                    .map(|(&t, &s)| t + gamma * s)
                    .collect();
                let inside = cand.iter().zip(&interval_of).all(|(&t, &j)| {
                    t > a[j] + 1e-14 * axes.spread() && t < a[j + 1] - 1e-14 * axes.spread()
                });
                let ordered = sorted_within_groups(&cand, &interval_of);
                if inside && ordered {
                    let mut fc = alloc::vec![0.0; n_total];
                    residual(&cand, &mut fc);
                    let fcnorm = fc.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                    if fcnorm <= fnorm * (1.0 - 0.25 * gamma) || fcnorm < 1e-12 * scale.max(1.0) {
                        theta = cand;
                        f = fc;
                        accepted = true;
                        break;
                    }
                }
                gamma *= 0.5;
            }
            if !accepted {
                return Err(Error::non_convergence(
                    "Newton step kept violating the interval constraints",
                ));
            }
        }
        if !converged {
            let fnorm = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if fnorm >= 1e-10 * scale.max(1.0) {
                return Err(Error::non_convergence(alloc::format!(
                    "electrostatic equations stalled at residual {fnorm}"
                )));
            }
        }
    }

    let mut zeros = theta.clone();
    zeros.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut zeros_by_interval: Vec<Vec<f64>> = alloc::vec![Vec::new(); params.k()];
    for (&t, &j) in theta.iter().zip(&interval_of) {
        zeros_by_interval[j].push(t);
    }
    for group in &mut zeros_by_interval {
        group.sort_by(|x, y| x.partial_cmp(y).unwrap());
    }

    // recover lambda: Pi u'' + Q u' + S u  must equal  -Lambda u
    let op = fuchs_operator(params, axes, index.p());
    let u = univar::from_roots(&zeros);
    let du = univar::derivative(&u);
    let ddu = univar::derivative(&du);
    let mut numer = univar::add(
        &univar::mul(&op.pi, &ddu),
        &univar::add(&univar::mul(&op.q, &du), &univar::mul(&op.s, &u)),
    );
    univar::trim(&mut numer);
    let (quot, rem) = univar::div_monic(&numer, &u);
    let mut lambda = alloc::vec![0.0; params.k()];
    for (i, c) in quot.iter().enumerate() {
        if i < lambda.len() {
            lambda[i] = -c;
        }
    }
    let num_scale = numer.iter().fold(1e-300f64, |m, c| m.max(c.abs()));
    let matching_remainder = rem.iter().fold(0.0f64, |m, c| m.max(c.abs())) / num_scale;

    Ok(StieltjesPolynomial {
        params: params.clone(),
        axes: axes.clone(),
        index: index.clone(),
        zeros_by_interval,
        zeros,
        lambda,
        matching_remainder,
    })
}

fn sorted_within_groups(theta: &[f64], interval_of: &[usize]) -> bool {
    for i in 1..theta.len() {
        if interval_of[i] == interval_of[i - 1] && theta[i] <= theta[i - 1] {
            return false;
        }
    }
    true
}

/// Exact planar solve: for k = 1 the monic polynomial part follows from a
/// terminating downward recurrence once the spectral value
/// `lambda_0 = -(m/2)(mu + m/2)` is fixed by the exponent at infinity.
/// Returns the coefficient list of `u` (ascending) and `lambda_0`.
pub fn planar_exact<S: Coeff>(
    params: &DunklParams<S>,
    axes: &EllipsoidAxes<S>,
    index: &HarmonicIndex,
) -> Result<(Vec<S>, S)> {
    if params.k() != 1 {
        return Err(Error::invalid("exact solve is planar-only (k = 1)"));
    }
    let op = fuchs_operator(params, axes, index.p());
    let a = axes.a();
    let n = index.n()[0] as usize;
    let m = index.degree() as i64;

    // lambda_0 = -(m/2)(mu + m/2)
    let half_m = S::from_ratio(m, 2);
    let lambda0 = -(half_m.clone() * (params.mu().clone() + half_m.clone()));

    // operator pieces: Pi = t^2 - (a0+a1) t + a0 a1, Q = q1 t + q0, S const
    let q1 = op.q.get(1).cloned().unwrap_or_else(S::zero);
    let q0 = op.q.first().cloned().unwrap_or_else(S::zero);
    let s_const = op.s.first().cloned().unwrap_or_else(S::zero);
    let sum_a = a[0].clone() + a[1].clone();
    let prod_a = a[0].clone() * a[1].clone();

    let mut c = alloc::vec![S::zero(); n + 1];
    c[n] = S::one();
    for j in (0..n).rev() {
        let j64 = j as i64;
        // D_j c_j + (j+1)(q0 - (a0+a1) j) c_{j+1} + (j+2)(j+1) a0 a1 c_{j+2} = 0
        let d_j = S::from_int(j64 * (j64 - 1))
            + q1.clone() * S::from_int(j64)
            + s_const.clone()
            + lambda0.clone();
        let mut rhs = S::from_int(j64 + 1)
            * (q0.clone() - sum_a.clone() * S::from_int(j64))
            * c[j + 1].clone();
        if j + 2 <= n {
            rhs = rhs + S::from_int((j64 + 2) * (j64 + 1)) * prod_a.clone() * c[j + 2].clone();
        }
        if d_j.is_zero() {
            return Err(Error::invalid(
                "degenerate recurrence denominator in the planar exact solve",
            ));
        }
        c[j] = -(rhs / d_j);
    }
    Ok((c, lambda0))
}

/// The decaying companion solution, normalized so that
/// `t^(mu + m/2) Ecal(t) -> 1` as `t -> inf`.
#[derive(Debug, Clone)]
pub struct SecondSolution {
    base: StieltjesPolynomial,
    tail: TailIntegral,
}

impl SecondSolution {
    pub fn new(base: StieltjesPolynomial) -> Result<Self> {
        let tail = base.tail()?;
        Ok(SecondSolution { base, tail })
    }

    pub fn base(&self) -> &StieltjesPolynomial {
        &self.base
    }

    /// `Ecal(t)` for `t > a_k`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        let integral = self.tail.eval(t)?;
        Ok(self.base.mu_plus_m() * self.base.eval_abs(t) * integral)
    }

    /// `Ecal'(t)`, by differentiating the reduction-of-order identity, which
    /// reuses the Wronskian relation.
    pub fn eval_prime(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        let integral = self.tail.eval(t)?;
        let e_prime = self.base.eval_prime_exterior(t)?;
        let boundary = self.weight_product(t) / self.base.eval_abs(t);
        Ok(self.base.mu_plus_m() * (e_prime * integral - boundary))
    }

    /// `prod_j (t - a_j)^(-alpha_j - 1/2)`, the right-hand side of the
    /// Wronskian identity without its `(mu + m)` factor.
    pub fn weight_product(&self, t: f64) -> f64 {
        self.base
            .a()
            .iter()
            .zip(self.base.params.alpha())
            .map(|(&aj, &al)| math::powf(t - aj, -al - 0.5))
            .product()
    }

    /// Relative residual of the Wronskian identity
    /// `Ecal E' - E Ecal' = (mu + m) prod (t - a_j)^(-alpha_j - 1/2)`.
    pub fn wronskian_residual(&self, t: f64) -> Result<f64> {
        self.check_domain(t)?;
        let lhs = self.eval(t)? * self.base.eval_prime_exterior(t)?
            - self.base.eval_abs(t) * self.eval_prime(t)?;
        let rhs = self.base.mu_plus_m() * self.weight_product(t);
        Ok((lhs - rhs).abs() / rhs.abs())
    }

    /// `Ecal'` by a five-point central difference of `Ecal`, independent of
    /// the Wronskian-based route; used as a cross-check.
    pub fn eval_prime_numeric(&self, t: f64) -> Result<f64> {
        let h = 1e-2 * (t - self.base.a_k()).min(t.abs().max(1.0) * 1e-2);
        let f = |s: f64| self.eval(s);
        let fm2 = f(t - 2.0 * h)?;
        let fm1 = f(t - h)?;
        let fp1 = f(t + h)?;
        let fp2 = f(t + 2.0 * h)?;
        Ok((fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h))
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        if !(t > self.base.a_k()) {
            return Err(Error::domain(alloc::format!(
                "second solution lives on (a_k, inf) = ({}, inf), got t = {t}",
                self.base.a_k()
            )));
        }
        Ok(())
    }
}
