//! Problem configuration and shared index types.

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::scalar::Coeff;
use crate::Result;

/// Cartesian coordinates in R^(k+1).
pub type Point = Vec<f64>;

/// Largest supported dimension parameter k. Tensor quadrature cost grows
/// exponentially with k; desk-scale verification needs k <= 3.
pub const MAX_K: usize = 8;

/// Weight-function configuration: dimension parameter `k` (the ambient space
/// is R^(k+1)), exponents `alpha`, and the derived homogeneity constant
/// `mu = alpha_0 + ... + alpha_k + (k-1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DunklParams<S: Coeff> {
    k: usize,
    alpha: Vec<S>,
    mu: S,
}

impl<S: Coeff> DunklParams<S> {
    /// Validate and construct. Rejects negative exponents, `k` out of
    /// `[1, MAX_K]`, a length mismatch, and the degenerate planar case
    /// `k = 1, alpha = (0, 0)` for which `mu` would not be positive.
    pub fn new(k: usize, alpha: Vec<S>) -> Result<Self> {
        if k < 1 || k > MAX_K {
            return Err(Error::invalid(format!("k must be in [1, {MAX_K}], got {k}")));
        }
        if alpha.len() != k + 1 {
            return Err(Error::invalid(format!(
                "alpha must have length k+1 = {}, got {}",
                k + 1,
                alpha.len()
            )));
        }
        if alpha.iter().any(|a| a.is_neg()) {
            return Err(Error::invalid("all alpha_j must be nonnegative"));
        }
        let mut mu = S::from_ratio((k as i64) - 1, 2);
        for a in &alpha {
            mu = mu + a.clone();
        }
        if !mu.is_pos() {
            return Err(Error::invalid(
                "mu = alpha_0 + ... + alpha_k + (k-1)/2 must be positive; \
                 the case k = 1 with alpha = (0, 0) is excluded",
            ));
        }
        Ok(DunklParams { k, alpha, mu })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of coordinates, k + 1.
    pub fn dim(&self) -> usize {
        self.k + 1
    }

    pub fn alpha(&self) -> &[S] {
        &self.alpha
    }

    pub fn mu(&self) -> &S {
        &self.mu
    }

    /// Lossy conversion for handing exact parameters to quadrature code.
    pub fn to_f64(&self) -> DunklParams<f64> {
        DunklParams {
            k: self.k,
            alpha: self.alpha.iter().map(Coeff::to_f64).collect(),
            mu: self.mu.to_f64(),
        }
    }
}

/// Confocal family parameters: strictly increasing `a_0 < ... < a_k` and the
/// derived products `A_j = prod_{i != j} (a_j - a_i)`, whose sign alternates
/// from `A_k > 0` downwards.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipsoidAxes<S: Coeff> {
    a: Vec<S>,
    big_a: Vec<S>,
}

impl<S: Coeff> EllipsoidAxes<S> {
    pub fn new(a: Vec<S>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::invalid("need at least two axis parameters"));
        }
        for w in a.windows(2) {
            if !w[0].less_than(&w[1]) {
                return Err(Error::invalid("axis parameters must be strictly increasing"));
            }
        }
        let big_a = (0..a.len())
            .map(|j| {
                let mut prod = S::one();
                for (i, ai) in a.iter().enumerate() {
                    if i != j {
                        prod = prod * (a[j].clone() - ai.clone());
                    }
                }
                prod
            })
            .collect();
        Ok(EllipsoidAxes { a, big_a })
    }

    pub fn k(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[S] {
        &self.a
    }

    /// A_j = prod_{i != j} (a_j - a_i).
    pub fn big_a(&self) -> &[S] {
        &self.big_a
    }

    pub fn to_f64(&self) -> EllipsoidAxes<f64> {
        EllipsoidAxes {
            a: self.a.iter().map(Coeff::to_f64).collect(),
            big_a: self.big_a.iter().map(Coeff::to_f64).collect(),
        }
    }
}

impl EllipsoidAxes<f64> {
    /// a_k - a_0, the natural length scale of the family.
    pub fn spread(&self) -> f64 {
        self.a[self.a.len() - 1] - self.a[0]
    }
}

/// Index of an h-harmonic: `n` counts Stieltjes zeros per interval
/// (length k), `p` is the parity vector (length k+1, entries 0/1).
/// The total degree is `m = 2|n| + |p|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HarmonicIndex {
    n: Vec<u32>,
    p: Vec<u8>,
}

impl HarmonicIndex {
    pub fn new(n: Vec<u32>, p: Vec<u8>) -> Result<Self> {
        if p.len() != n.len() + 1 {
            return Err(Error::invalid(format!(
                "parity vector must have length {} (one more than n), got {}",
                n.len() + 1,
                p.len()
            )));
        }
        if p.iter().any(|&b| b > 1) {
            return Err(Error::invalid("parity entries must be 0 or 1"));
        }
        Ok(HarmonicIndex { n, p })
    }

    pub fn k(&self) -> usize {
        self.n.len()
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn p(&self) -> &[u8] {
        &self.p
    }

    pub fn n_total(&self) -> u32 {
        self.n.iter().sum()
    }

    pub fn p_total(&self) -> u32 {
        self.p.iter().map(|&b| b as u32).sum()
    }

    /// Total degree m = 2|n| + |p|.
    pub fn degree(&self) -> u32 {
        2 * self.n_total() + self.p_total()
    }
}

/// All indices of a given degree `m` for dimension parameter `k`,
/// in a fixed deterministic order.
pub fn indices_of_degree(k: usize, m: u32) -> Vec<HarmonicIndex> {
    let mut out = Vec::new();
    // enumerate parity vectors with |p| <= m and |p| = m (mod 2)
    for bits in 0..(1u32 << (k + 1)) {
        let p: Vec<u8> = (0..=k).map(|j| ((bits >> j) & 1) as u8).collect();
        let p_tot: u32 = p.iter().map(|&b| b as u32).sum();
        if p_tot > m || (m - p_tot) % 2 != 0 {
            continue;
        }
        let n_tot = (m - p_tot) / 2;
        for n in compositions(n_tot, k) {
            out.push(HarmonicIndex { n, p: p.clone() });
        }
    }
    out
}

/// All length-`parts` vectors of nonnegative integers summing to `total`.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return alloc::vec![alloc::vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn mu_values() {
        let p = DunklParams::new(1, alloc::vec![0.5, 0.5]).unwrap();
        assert_eq!(*p.mu(), 1.0);
        let p = DunklParams::new(2, alloc::vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(*p.mu(), 0.5);
    }

    #[test]
    fn excluded_planar_case() {
        let err = DunklParams::new(1, alloc::vec![0.0, 0.0]).unwrap_err();
        match err {
            Error::InvalidParameter(msg) => assert!(msg.contains("mu")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn negative_alpha_rejected() {
        assert!(DunklParams::new(1, alloc::vec![-0.1, 0.5]).is_err());
    }

    #[test]
    fn exact_mu_is_exact() {
        let third = BigRational::from_ratio(1, 3);
        let p = DunklParams::new(2, alloc::vec![third.clone(), third.clone(), third.clone()])
            .unwrap();
        // 1 + 1/2 = 3/2
        assert_eq!(*p.mu(), BigRational::from_ratio(3, 2));
    }

    #[test]
    fn degree_examples() {
        let idx = HarmonicIndex::new(alloc::vec![1], alloc::vec![0, 0]).unwrap();
        assert_eq!(idx.degree(), 2);
        let idx = HarmonicIndex::new(alloc::vec![0], alloc::vec![0, 0]).unwrap();
        assert_eq!(idx.degree(), 0);
        let idx = HarmonicIndex::new(alloc::vec![1, 2], alloc::vec![1, 0, 1]).unwrap();
        assert_eq!(idx.degree(), 8);
    }

    #[test]
    fn axes_ordering_and_products() {
        let ax = EllipsoidAxes::new(alloc::vec![-1.0, 1.0]).unwrap();
        assert_eq!(ax.big_a(), &[-2.0, 2.0]);
        assert!(EllipsoidAxes::new(alloc::vec![1.0, 1.0]).is_err());
        let ax = EllipsoidAxes::new(alloc::vec![0.0, 1.0, 3.0]).unwrap();
        // signs alternate: A_2 > 0, A_1 < 0, A_0 > 0
        assert!(ax.big_a()[2] > 0.0 && ax.big_a()[1] < 0.0 && ax.big_a()[0] > 0.0);
    }

    /// Partial-fraction identity: sum_j prod_{i != j} (t - a_i) / A_j = 1
    /// for every t, sampled at k + 2 points.
    #[test]
    fn partial_fraction_normalization() {
        let ax = EllipsoidAxes::new(alloc::vec![0.0, 1.0, 3.0, 7.0]).unwrap();
        for s in 0..6 {
            let t = -2.0 + 1.3 * s as f64;
            let total: f64 = (0..4)
                .map(|j| {
                    let num: f64 = (0..4)
                        .filter(|&i| i != j)
                        .map(|i| t - ax.a()[i])
                        .product();
                    num / ax.big_a()[j]
                })
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "t = {t}, total = {total}");
        }
    }

    #[test]
    fn index_enumeration_counts() {
        // planar: one index of degree 0, two of each higher degree
        assert_eq!(indices_of_degree(1, 0).len(), 1);
        for m in 1..8 {
            assert_eq!(indices_of_degree(1, m).len(), 2, "m = {m}");
        }
        // k = 2: dimension of degree-m spherical h-harmonics is 2m + 1
        for m in 0..6 {
            assert_eq!(indices_of_degree(2, m).len(), (2 * m + 1) as usize, "m = {m}");
        }
    }
}
