//! Exact weighted sphere moments and the closed-form evaluation of
//! `int_Sk h^2 f Y dS` for harmonic `Y`.
//!
//! Every exact value is carried as a rational multiple of the shared
//! constant `C := prod_j Gamma(alpha_j + 1/2) / Gamma(mu + 1)`; ratios of
//! Gamma at arguments differing by integers reduce to Pochhammer symbols, so
//! with rational exponents the identities in this module are exact rational
//! statements with no tolerance.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dunkl::{laplacian_poly, operator_apply};
use crate::error::Error;
use crate::math;
use crate::model::DunklParams;
use crate::orthopoly::pochhammer_s;
use crate::poly::SparsePolynomial;
use crate::scalar::Coeff;
use crate::Result;

/// The shared constant `C = prod Gamma(alpha_j + 1/2) / Gamma(mu + 1)` as a
/// float; exact-mode results are rational multiples of it.
pub fn weight_constant(params: &DunklParams<f64>) -> f64 {
    let mut ln = -math::ln_gamma(params.mu() + 1.0);
    for &a in params.alpha() {
        ln += math::ln_gamma(a + 0.5);
    }
    math::exp(ln)
}

/// Cache of sphere moments `int_Sk h^2 x^(2q) dS`, stored in units of `C`.
///
/// Inserting is idempotent, so the cache only needs exclusive access for
/// writes; all values are pure functions of the key.
#[derive(Debug, Clone)]
pub struct MomentTable<S: Coeff> {
    params: DunklParams<S>,
    cache: BTreeMap<Vec<u32>, S>,
}

impl<S: Coeff> MomentTable<S> {
    pub fn new(params: &DunklParams<S>) -> Self {
        MomentTable {
            params: params.clone(),
            cache: BTreeMap::new(),
        }
    }

    pub fn params(&self) -> &DunklParams<S> {
        &self.params
    }

    /// `int_Sk h^2 x^(2q) dS / C = 2 prod_j (alpha_j + 1/2)_(q_j) / (mu + 1)_(|q|)`.
    pub fn moment_ratio(&mut self, q: &[u32]) -> S {
        if let Some(v) = self.cache.get(q) {
            return v.clone();
        }
        let half = S::from_ratio(1, 2);
        let mut num = S::from_int(2);
        for (j, &qj) in q.iter().enumerate() {
            num = num * pochhammer_s(&(self.params.alpha()[j].clone() + half.clone()), qj);
        }
        let total: u32 = q.iter().sum();
        let den = pochhammer_s(&(self.params.mu().clone() + S::one()), total);
        let v = num / den;
        self.cache.insert(q.to_vec(), v.clone());
        v
    }

    /// Number of cached entries (diagnostics, CLI listing).
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.cache.iter()
    }

    /// `int_Sk h^2 f dS / C`: termwise moments, zero for odd exponents.
    pub fn poly_integral_ratio(&mut self, f: &SparsePolynomial<S>) -> S {
        let mut acc = S::zero();
        let mut wanted: Vec<(Vec<u32>, S)> = Vec::new();
        for (m, c) in f.terms() {
            if m.0.iter().any(|&e| e % 2 == 1) {
                continue;
            }
            let q: Vec<u32> = m.0.iter().map(|&e| e / 2).collect();
            wanted.push((q, c.clone()));
        }
        for (q, c) in wanted {
            acc = acc + c * self.moment_ratio(&q);
        }
        acc
    }
}

/// Float-valued monomial moment `int_Sk h^2 x^(2q) dS`.
pub fn sphere_monomial_moment(params: &DunklParams<f64>, q: &[u32]) -> f64 {
    MomentTable::new(params).moment_ratio(q) * weight_constant(params)
}

/// Float-valued `int_Sk h^2 f dS`.
pub fn sphere_integrate_poly(params: &DunklParams<f64>, f: &SparsePolynomial<f64>) -> f64 {
    MomentTable::new(params).poly_integral_ratio(f) * weight_constant(params)
}

/// Right-hand side of the closed-form pairing for homogeneous `f` of degree
/// `l` against a spherical h-harmonic `Y` of degree `m`, in units of `C`:
///
/// `l = m + 2r`:  `Delta_h^r Y(D) f / (2^(l-1) r! (mu+1)_(m+r))`;
/// zero when `l < m` or `l - m` is odd.
pub fn hobson_rhs_ratio<S: Coeff>(
    params: &DunklParams<S>,
    f: &SparsePolynomial<S>,
    y: &SparsePolynomial<S>,
) -> Result<S> {
    if f.is_zero() {
        return Ok(S::zero());
    }
    if !f.is_homogeneous() {
        return Err(Error::invalid("f must be homogeneous"));
    }
    let y_deg = y.total_degree();
    if !y.is_homogeneous() || !laplacian_poly(params, y).is_zero() {
        return Err(Error::invalid("Y must be a homogeneous h-harmonic"));
    }
    let l = f.total_degree();
    if l < y_deg || (l - y_deg) % 2 != 0 {
        return Ok(S::zero());
    }
    let r = (l - y_deg) / 2;

    let mut acted = operator_apply(params, y, None, f);
    for _ in 0..r {
        acted = laplacian_poly(params, &acted);
    }
    // the operator has the same total order as deg f, so the result is constant
    let constant = acted.coefficient(&crate::poly::Monomial::constant(f.dim()));

    // 2^(l-1)
    let mut two_pow = S::one();
    for _ in 0..l.saturating_sub(1) {
        two_pow = two_pow * S::from_int(2);
    }
    if l == 0 {
        // 2^(l-1) = 1/2
        two_pow = S::from_ratio(1, 2);
    }
    let mut r_fact = S::one();
    for i in 1..=r {
        r_fact = r_fact * S::from_int(i as i64);
    }
    let den = two_pow * r_fact * pochhammer_s(&(params.mu().clone() + S::one()), y_deg + r);
    Ok(constant / den)
}

/// Both sides of the pairing in units of `C`: the moment route and the
/// operator route. They agree exactly for exact coefficients.
pub fn hobson_check_ratio<S: Coeff>(
    params: &DunklParams<S>,
    f: &SparsePolynomial<S>,
    y: &SparsePolynomial<S>,
) -> Result<(S, S)> {
    let mut table = MomentTable::new(params);
    let lhs = table.poly_integral_ratio(&f.mul(y));
    let rhs = hobson_rhs_ratio(params, f, y)?;
    Ok((lhs, rhs))
}

/// Termwise application to a graded (truncated) series `f = sum_l f_l`:
/// only the degrees `m + 2r` contribute. Returns the value in units of `C`.
pub fn hobson_series_ratio<S: Coeff>(
    params: &DunklParams<S>,
    graded: &[SparsePolynomial<S>],
    y: &SparsePolynomial<S>,
) -> Result<S> {
    let mut acc = S::zero();
    for f_l in graded {
        if f_l.is_zero() {
            continue;
        }
        acc = acc + hobson_rhs_ratio(params, f_l, y)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn exact_params_k1() -> DunklParams<Q> {
        DunklParams::new(1, alloc::vec![Q::from_ratio(1, 2), Q::from_ratio(1, 2)]).unwrap()
    }

    #[test]
    fn zeroth_moment_is_surface_constant() {
        // q = 0: ratio 2/(mu+1)_0... = 2; value 2C = 2 prod Gamma / Gamma(mu+1)
        let mut table = MomentTable::new(&exact_params_k1());
        assert_eq!(table.moment_ratio(&[0, 0]), Q::from_int(2));
        // float: alpha = 1/2 gives C = Gamma(1)^2/Gamma(2) = 1, moment = 2
        let p = DunklParams::new(1, alloc::vec![0.5, 0.5]).unwrap();
        assert!((sphere_monomial_moment(&p, &[0, 0]) - 2.0).abs() < 1e-13);
        // and it matches the circumference integral of h^2 = |cos sin|
        // over the unit circle: int |cos t sin t| dt = 2
    }

    #[test]
    fn dirichlet_example() {
        // alpha_j = 1/2: moment(q=(1,1)) = 2*1!*1!/3! = 1/3
        let mut table = MomentTable::new(&exact_params_k1());
        // (1)_1 (1)_1 / (2)_2 * 2 = 2/6
        assert_eq!(table.moment_ratio(&[1, 1]), Q::from_ratio(1, 3));
        let p = DunklParams::new(1, alloc::vec![0.5, 0.5]).unwrap();
        assert!((sphere_monomial_moment(&p, &[1, 1]) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn odd_monomials_vanish() {
        let p = exact_params_k1();
        let mut table = MomentTable::new(&p);
        let f = SparsePolynomial::<Q>::var(2, 0)
            .mul(&SparsePolynomial::var(2, 1).pow(2));
        assert!(table.poly_integral_ratio(&f).is_zero());
    }

    #[test]
    fn quartic_difference_integral() {
        // (x0^2 - x1^2)^2 at alpha = (1/2, 1/2): 2/3 (in plain units)
        let p = exact_params_k1();
        let g = SparsePolynomial::<Q>::var(2, 0)
            .pow(2)
            .sub(&SparsePolynomial::var(2, 1).pow(2));
        let mut table = MomentTable::new(&p);
        let ratio = table.poly_integral_ratio(&g.mul(&g));
        // C = 1 for these exponents, so the plain value equals the ratio
        assert_eq!(ratio, Q::from_ratio(2, 3));
    }

    #[test]
    fn pairing_first_degree() {
        // Y = f = x_0, r = 0: both sides (1 + 2 alpha_0)/(mu + 1) in units of C
        let p = DunklParams::new(
            1,
            alloc::vec![Q::from_ratio(1, 3), Q::from_ratio(2, 7)],
        )
        .unwrap();
        let x0 = SparsePolynomial::<Q>::var(2, 0);
        let (lhs, rhs) = hobson_check_ratio(&p, &x0, &x0).unwrap();
        assert_eq!(lhs, rhs);
        let mu = p.mu().clone();
        let expected = (Q::one() + Q::from_int(2) * Q::from_ratio(1, 3)) / (mu + Q::one());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn low_degree_vanishing() {
        // deg f < deg Y, and odd gaps, pair to zero
        let p = exact_params_k1();
        let x0 = SparsePolynomial::<Q>::var(2, 0);
        let y2 = x0
            .pow(2)
            .scaled(&Q::from_int(2))
            .sub(&SparsePolynomial::var(2, 1).pow(2).scaled(&Q::from_int(2)));
        let (lhs, rhs) = hobson_check_ratio(&p, &SparsePolynomial::constant(2, Q::one()), &y2)
            .unwrap();
        assert!(lhs.is_zero() && rhs.is_zero());
        let (lhs, rhs) = hobson_check_ratio(&p, &x0.pow(3), &y2).unwrap();
        assert!(lhs.is_zero() && rhs.is_zero());
    }

    #[test]
    fn norm_squared_shift() {
        // f = ||x||^2 Y with r = 1: exact equality of both routes
        let p = DunklParams::new(
            1,
            alloc::vec![Q::from_ratio(1, 2), Q::from_ratio(3, 2)],
        )
        .unwrap();
        // harmonic of degree 2: (1+2a_1) x0^2 - (1+2a_0) x1^2
        let y = SparsePolynomial::<Q>::var(2, 0)
            .pow(2)
            .scaled(&(Q::one() + Q::from_int(2) * Q::from_ratio(3, 2)))
            .sub(
                &SparsePolynomial::<Q>::var(2, 1)
                    .pow(2)
                    .scaled(&(Q::one() + Q::from_int(2) * Q::from_ratio(1, 2))),
            );
        assert!(laplacian_poly(&p, &y).is_zero());
        let norm_sq = SparsePolynomial::<Q>::var(2, 0)
            .pow(2)
            .add(&SparsePolynomial::var(2, 1).pow(2));
        let f = norm_sq.mul(&y);
        let (lhs, rhs) = hobson_check_ratio(&p, &f, &y).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn series_reduces_to_single_term() {
        let p = exact_params_k1();
        let x0 = SparsePolynomial::<Q>::var(2, 0);
        let single = hobson_rhs_ratio(&p, &x0, &x0).unwrap();
        let graded = alloc::vec![SparsePolynomial::zero(2), x0.clone()];
        assert_eq!(hobson_series_ratio(&p, &graded, &x0).unwrap(), single);
        let zero: Vec<SparsePolynomial<Q>> = alloc::vec![];
        assert!(hobson_series_ratio(&p, &zero, &x0).unwrap().is_zero());
    }

    #[test]
    fn non_harmonic_rejected() {
        let p = exact_params_k1();
        let bad = SparsePolynomial::<Q>::var(2, 0).pow(2);
        let f = SparsePolynomial::<Q>::var(2, 0).pow(2);
        assert!(hobson_rhs_ratio(&p, &f, &bad).is_err());
    }
}
