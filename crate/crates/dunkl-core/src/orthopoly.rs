//! Classical one-dimensional special functions: Jacobi polynomials, the
//! Jacobi function of the second kind, Gegenbauer polynomials, and the two
//! normalization constants that translate between the Stieltjes and Jacobi
//! normalizations in the plane.

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::quad::gauss_jacobi;
use crate::scalar::Coeff;
use crate::tail::TailIntegral;
use crate::Result;

/// Jacobi weight exponents, both required to exceed -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::invalid(alloc::format!(
                "Jacobi parameters must exceed -1, got ({alpha}, {beta})"
            )));
        }
        Ok(JacobiParams { alpha, beta })
    }
}

/// `P_n^(alpha,beta)(t)` by the three-term recurrence.
pub fn jacobi_p(n: u32, jp: JacobiParams, t: f64) -> f64 {
    let (a, b) = (jp.alpha, jp.beta);
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = (a + 1.0) + (a + b + 2.0) * 0.5 * (t - 1.0);
    for i in 2..=n {
        let i = i as f64;
        let c = 2.0 * i + a + b;
        let a1 = 2.0 * i * (i + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (a * a - b * b);
        let a3 = (c - 1.0) * c * (c - 2.0);
        let a4 = 2.0 * (i + a - 1.0) * (i + b - 1.0) * c;
        let next = ((a2 + a3 * t) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// Exact coefficient list of `P_n^(alpha,beta)` in the monomial basis,
/// index = power of `t`. Built from the terminating hypergeometric series
/// in `(1 - t)/2`, so it is an independent route from the recurrence.
pub fn jacobi_p_coeffs<S: Coeff>(n: u32, alpha: &S, beta: &S) -> Vec<S> {
    let mut coeffs = alloc::vec![S::zero(); (n + 1) as usize];
    // prefactor (alpha+1)_n / n!
    let mut pref = pochhammer_s(&(alpha.clone() + S::one()), n);
    for i in 1..=n {
        pref = pref / S::from_int(i as i64);
    }
    for j in 0..=n {
        // series coefficient  (-n)_j (n+a+b+1)_j / ((a+1)_j j!)
        let mut c = pref.clone();
        for l in 0..j {
            let l64 = l as i64;
            c = c * (S::from_int(-(n as i64) + l64))
                * (S::from_int(n as i64 + 1 + l64) + alpha.clone() + beta.clone());
            c = c / ((alpha.clone() + S::from_int(1 + l64)) * S::from_int(l64 + 1));
        }
        // ((1 - t)/2)^j  ->  sum_i binom(j, i) (-1)^i t^i / 2^j
        let mut binom = S::one();
        for i in 0..=j {
            let sign = if i % 2 == 0 { S::one() } else { -S::one() };
            let term = c.clone() * binom.clone() * sign / pow_int(&S::from_int(2), j);
            coeffs[i as usize] = coeffs[i as usize].clone() + term;
            if i < j {
                binom = binom * S::from_int((j - i) as i64) / S::from_int((i + 1) as i64);
            }
        }
    }
    coeffs
}

fn pow_int<S: Coeff>(x: &S, n: u32) -> S {
    let mut acc = S::one();
    for _ in 0..n {
        acc = acc * x.clone();
    }
    acc
}

/// Rising factorial `(x)_r` in any coefficient field.
pub fn pochhammer_s<S: Coeff>(x: &S, r: u32) -> S {
    let mut acc = S::one();
    for i in 0..r {
        acc = acc * (x.clone() + S::from_int(i as i64));
    }
    acc
}

/// `a_n = n! 2^n / (alpha+beta+n+1)_n`; `a_n P_n` is monic.
pub fn a_n_const<S: Coeff>(n: u32, alpha: &S, beta: &S) -> S {
    let mut num = pow_int(&S::from_int(2), n);
    for i in 1..=n {
        num = num * S::from_int(i as i64);
    }
    let den = pochhammer_s(
        &(alpha.clone() + beta.clone() + S::from_int(n as i64 + 1)),
        n,
    );
    num / den
}

/// `b_n = 2^(-n-alpha-beta) Gamma(2n+alpha+beta+2) / (Gamma(n+alpha+1) Gamma(n+beta+1))`,
/// the factor scaling `Q_n` to the decaying solution normalized at infinity.
pub fn b_n_const(n: u32, jp: JacobiParams) -> f64 {
    let (a, b) = (jp.alpha, jp.beta);
    let nf = n as f64;
    math::exp(
        -(nf + a + b) * math::ln(2.0) + math::ln_gamma(2.0 * nf + a + b + 2.0)
            - math::ln_gamma(nf + a + 1.0)
            - math::ln_gamma(nf + b + 1.0),
    )
}

/// Jacobi function of the second kind, for `t > 1`, normalized as in the
/// classical theory (so that `b_n Q_n(t) t^(n+alpha+beta+1) -> 1`).
///
/// Computed from the reduction-of-order integral
/// `Q_n(t) ∝ P_n(t) int_t^inf (s-1)^(-alpha-1) (s+1)^(-beta-1) P_n(s)^(-2) ds`,
/// the same kernel that builds the general decaying Fuchsian solution.
pub fn jacobi_q(n: u32, jp: JacobiParams, t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::domain(alloc::format!(
            "Q_n is evaluated on (1, inf), got t = {t}"
        )));
    }
    let zeros = jacobi_zeros(n, jp)?;
    let tail = TailIntegral::new(
        alloc::vec![1.0, -1.0],
        alloc::vec![jp.alpha + 1.0, jp.beta + 1.0],
        zeros.clone(),
    )?;
    let monic_p: f64 = zeros.iter().map(|&z| t - z).product();
    let factor = 2.0 * n as f64 + jp.alpha + jp.beta + 1.0;
    Ok(factor * monic_p * tail.eval(t)? / b_n_const(n, jp))
}

/// Zeros of `P_n^(alpha,beta)`, ascending (empty for n = 0). These are the
/// nodes of the n-point Gauss-Jacobi rule with the same exponents.
pub fn jacobi_zeros(n: u32, jp: JacobiParams) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(gauss_jacobi(n as usize, jp.alpha, jp.beta)?
        .nodes()
        .to_vec())
}

/// Gegenbauer polynomial `C_m^mu(u)` by recurrence.
pub fn gegenbauer_c(m: u32, mu: f64, u: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * mu * u;
    for i in 2..=m {
        let i = i as f64;
        let next = (2.0 * u * (i + mu - 1.0) * cur - (i + 2.0 * mu - 2.0) * prev) / i;
        prev = cur;
        cur = next;
    }
    cur
}
