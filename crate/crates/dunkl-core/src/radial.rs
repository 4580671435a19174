//! The radial-extension function class: finite sums of terms
//! `c * x^q * ||x||^(-2(mu + s))` with integer shifts `s >= 0`.
//!
//! The class contains `||x||^(-2mu)` and every external sphero-conal
//! harmonic, and it is closed under the Dunkl operators, which is what the
//! Kelvin-type relation and the Niven series need. The homogeneity constant
//! `mu` stays symbolic in the exponent (only the integer shift `s` is stored
//! per term), so exactness of the coefficient arithmetic does not require
//! `mu` itself to enter any power computation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::model::DunklParams;
use crate::poly::{Monomial, SparsePolynomial};
use crate::scalar::Coeff;
use crate::Result;

/// Finite sum of `c * x^q * ||x||^(-2(mu+s))` terms.
///
/// Terms with identical `(q, s)` are merged and zero coefficients dropped.
/// Note the representation is not canonical across different shifts, since
/// `x^q ||x||^(-2(mu+s))` equals `sum_i x^(q+2e_i) ||x||^(-2(mu+s+1))`;
/// [`RadialFunction::canonicalize`] rewrites everything at the largest shift
/// present, which makes equality and zero tests meaningful.
#[derive(Debug, Clone)]
pub struct RadialFunction<S: Coeff> {
    params: DunklParams<S>,
    terms: BTreeMap<(u32, Monomial), S>,
}

impl<S: Coeff> RadialFunction<S> {
    pub fn zero(params: &DunklParams<S>) -> Self {
        RadialFunction {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The seed `||x||^(-2mu)`.
    pub fn radial_power(params: &DunklParams<S>) -> Self {
        let mut f = Self::zero(params);
        f.add_term(Monomial::constant(params.dim()), 0, S::one());
        f
    }

    /// `g(x) * ||x||^(-2(mu+s))` for a polynomial `g`.
    pub fn from_poly(params: &DunklParams<S>, g: &SparsePolynomial<S>, s: u32) -> Self {
        let mut f = Self::zero(params);
        for (m, c) in g.terms() {
            f.add_term(m.clone(), s, c.clone());
        }
        f
    }

    pub fn params(&self) -> &DunklParams<S> {
        &self.params
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(q, s, c)` in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32, &S)> {
        self.terms.iter().map(|((s, m), c)| (m, *s, c))
    }

    pub fn add_term(&mut self, q: Monomial, s: u32, c: S) {
        debug_assert_eq!(q.0.len(), self.params.dim());
        if c.is_zero() {
            return;
        }
        match self.terms.entry((s, q)) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, s, c) in other.terms() {
            out.add_term(m.clone(), s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, s, c) in other.terms() {
            out.add_term(m.clone(), s, -c.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::zero(&self.params);
        if factor.is_zero() {
            return out;
        }
        for (m, s, c) in self.terms() {
            out.add_term(m.clone(), s, c.clone() * factor.clone());
        }
        out
    }

    /// Apply the Dunkl operator for coordinate `j`.
    ///
    /// On a term `c x^q ||x||^(-2(mu+s))` the product rule for the
    /// reflection-invariant radial factor gives two terms:
    /// the monomial part `c d_q x^(q - e_j)` with `d_q = q_j` for even `q_j`
    /// and `q_j + 2 alpha_j` for odd `q_j`, plus the radial derivative part
    /// `-2 (mu + s) c x^(q + e_j)` at shift `s + 1`.
    pub fn dunkl(&self, j: usize) -> Self {
        let alpha_j = &self.params.alpha()[j];
        let mu = self.params.mu();
        let mut out = Self::zero(&self.params);
        for (m, s, c) in self.terms() {
            let qj = m.0[j];
            if qj > 0 {
                let factor = if qj % 2 == 0 {
                    S::from_int(qj as i64)
                } else {
                    S::from_int(qj as i64) + S::from_int(2) * alpha_j.clone()
                };
                let mut e = m.0.clone();
                e[j] -= 1;
                out.add_term(Monomial(e), s, c.clone() * factor);
            }
            let nu = mu.clone() + S::from_int(s as i64);
            let mut e = m.0.clone();
            e[j] += 1;
            out.add_term(Monomial(e), s + 1, -(S::from_int(2) * nu * c.clone()));
        }
        out
    }

    /// The Dunkl-Laplacian, sum of squared Dunkl operators.
    pub fn laplacian(&self) -> Self {
        let mut acc = Self::zero(&self.params);
        for j in 0..self.params.dim() {
            acc = acc.add(&self.dunkl(j).dunkl(j));
        }
        acc
    }

    /// Rewrite all terms at the largest shift present by multiplying smaller
    /// shifts with the expanded powers of `||x||^2`. The result is the unique
    /// representation in the basis `{x^q ||x||^(-2(mu+s_max))}`.
    pub fn canonicalize(&self) -> Self {
        let s_max = self.terms.keys().map(|(s, _)| *s).max().unwrap_or(0);
        let dim = self.params.dim();
        let norm_sq: SparsePolynomial<S> = {
            let mut p = SparsePolynomial::zero(dim);
            for i in 0..dim {
                let mut e = alloc::vec![0u32; dim];
                e[i] = 2;
                p.add_term(Monomial(e), S::one());
            }
            p
        };
        let mut out = Self::zero(&self.params);
        for (m, s, c) in self.terms() {
            let raise = s_max - s;
            if raise == 0 {
                out.add_term(m.clone(), s_max, c.clone());
            } else {
                let mut g = SparsePolynomial::zero(dim);
                g.add_term(m.clone(), c.clone());
                for _ in 0..raise {
                    g = g.mul(&norm_sq);
                }
                for (mm, cc) in g.terms() {
                    out.add_term(mm.clone(), s_max, cc.clone());
                }
            }
        }
        out
    }

    /// True exactly when the function is identically zero.
    pub fn is_zero_canonical(&self) -> bool {
        self.canonicalize().terms.is_empty()
    }

    /// Coefficient-level equality after rewriting both sides at a common shift.
    pub fn eq_canonical(&self, other: &Self) -> bool {
        self.sub(other).is_zero_canonical()
    }

    /// Largest canonical coefficient magnitude of `self - other`, relative to
    /// the canonical scale of `self`; the float-mode analogue of
    /// [`RadialFunction::eq_canonical`].
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let diff = self.sub(other).canonicalize();
        let scale = self
            .canonicalize()
            .terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max);
        let err = diff
            .terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max);
        if scale == 0.0 {
            err
        } else {
            err / scale
        }
    }

    /// Pointwise evaluation. Rejected at the origin where the radial factors
    /// are singular; points on coordinate hyperplanes are fine.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let r_sq = math::hypot_sq(x);
        if r_sq == 0.0 {
            return Err(Error::domain("radial functions are singular at the origin"));
        }
        let mu = self.params.mu().to_f64();
        let mut acc = 0.0;
        for (m, s, c) in self.terms() {
            let mut term = c.to_f64() * math::powf(r_sq, -(mu + s as f64));
            for (j, &q) in m.0.iter().enumerate() {
                term *= math::powi(x[j], q as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn map<T: Coeff>(
        &self,
        params: &DunklParams<T>,
        f: impl Fn(&S) -> T,
    ) -> RadialFunction<T> {
        let mut out = RadialFunction::zero(params);
        for (m, s, c) in self.terms() {
            out.add_term(m.clone(), s, f(c));
        }
        out
    }

    /// `|q| - 2s` for every term, which fixes the homogeneity degree
    /// `|q| - 2s - 2mu`; `None` if terms disagree.
    pub fn uniform_degree_offset(&self) -> Option<i64> {
        let mut it = self
            .terms()
            .map(|(m, s, _)| m.degree() as i64 - 2 * s as i64);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Distinct shifts present, ascending (diagnostics, tests).
    pub fn shifts(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms().map(|(_, s, _)| s).collect();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> DunklParams<f64> {
        DunklParams::new(1, alloc::vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn dunkl_of_radial_power() {
        // D_0 ||x||^(-2mu) = -2 mu x_0 ||x||^(-2mu-2)
        let p = params();
        let f = RadialFunction::radial_power(&p);
        let g = f.dunkl(0);
        assert_eq!(g.num_terms(), 1);
        let (m, s, c) = g.terms().next().unwrap();
        assert_eq!((m.0.as_slice(), s), ([1, 0].as_slice(), 1));
        assert_eq!(*c, -2.0 * p.mu());
    }

    #[test]
    fn radial_power_is_harmonic() {
        let f = RadialFunction::radial_power(&params());
        assert!(f.laplacian().is_zero_canonical());
        // also with nontrivial rational parameters, exactly
        use num_rational::BigRational;
        let p = DunklParams::new(
            2,
            alloc::vec![
                BigRational::from_ratio(1, 3),
                BigRational::from_ratio(2, 5),
                BigRational::from_int(1),
            ],
        )
        .unwrap();
        let f = RadialFunction::radial_power(&p);
        assert!(f.laplacian().is_zero_canonical());
    }

    #[test]
    fn eval_matches_formula() {
        let p = params();
        let f = RadialFunction::radial_power(&p); // mu = 1: ||x||^-2
        let v = f.eval(&[3.0, 4.0]).unwrap();
        assert!((v - 1.0 / 25.0).abs() < 1e-15);
        assert!(f.eval(&[0.0, 0.0]).is_err());
        // hyperplane point is allowed
        assert!(f.eval(&[0.0, 2.0]).is_ok());
    }

    #[test]
    fn canonical_equality_sees_norm_identity() {
        // x0^2 r^(-2mu-2) + x1^2 r^(-2mu-2) == r^(-2mu)
        let p = params();
        let mut lhs = RadialFunction::zero(&p);
        lhs.add_term(Monomial(alloc::vec![2, 0]), 1, 1.0);
        lhs.add_term(Monomial(alloc::vec![0, 2]), 1, 1.0);
        let rhs = RadialFunction::radial_power(&p);
        assert!(lhs.eq_canonical(&rhs));
        assert!(!lhs.is_empty());
    }

    #[test]
    fn degree_drops_by_one_under_dunkl() {
        let p = params();
        let f = RadialFunction::radial_power(&p);
        assert_eq!(f.uniform_degree_offset(), Some(0));
        assert_eq!(f.dunkl(0).uniform_degree_offset(), Some(-1));
        assert_eq!(f.dunkl(0).dunkl(1).uniform_degree_offset(), Some(-2));
    }
}
