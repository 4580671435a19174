//! Sparse multivariate polynomials over the dual-mode coefficient field.
//!
//! Terms are kept in a `BTreeMap` under graded-lexicographic order, so every
//! iteration (and hence every accumulation downstream) is deterministic.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::scalar::Coeff;
use crate::Result;

/// Exponent vector under graded-lex order: total degree first, then
/// lexicographic comparison of the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(dim: usize) -> Self {
        Monomial(alloc::vec![0; dim])
    }

    pub fn var(dim: usize, j: usize) -> Self {
        let mut e = alloc::vec![0; dim];
        e[j] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parity bit per coordinate.
    pub fn parity(&self) -> Vec<u8> {
        self.0.iter().map(|&q| (q % 2) as u8).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `dim` variables. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolynomial<S: Coeff> {
    dim: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Coeff> SparsePolynomial<S> {
    pub fn zero(dim: usize) -> Self {
        SparsePolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::constant(dim), c);
        p
    }

    pub fn var(dim: usize, j: usize) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::var(dim, j), S::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Add `c * x^m`, merging and dropping exact zeros.
    pub fn add_term(&mut self, m: Monomial, c: S) {
        debug_assert_eq!(m.0.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.dim);
        if factor.is_zero() {
            return out;
        }
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.clone() * factor.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(self.dim, S::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[S]) -> S {
        let mut acc = S::zero();
        for (m, c) in self.terms() {
            let mut term = c.clone();
            for (j, &q) in m.0.iter().enumerate() {
                for _ in 0..q {
                    term = term * x[j].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in self.terms() {
            let mut term = c.to_f64();
            for (j, &q) in m.0.iter().enumerate() {
                term *= crate::math::powi(x[j], q as i32);
            }
            acc += term;
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// Largest coefficient magnitude, for relative residual scales.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Common parity of all exponent vectors.
    ///
    /// Returns `Ok(None)` for mixed parity and an error for the zero
    /// polynomial, whose parity is undefined.
    pub fn parity(&self) -> Result<Option<Vec<u8>>> {
        let mut it = self.terms.keys();
        let first = it
            .next()
            .ok_or_else(|| Error::domain("parity of the zero polynomial is undefined"))?;
        let p = first.parity();
        for m in it {
            if m.parity() != p {
                return Ok(None);
            }
        }
        Ok(Some(p))
    }

    /// Map coefficients into another field.
    pub fn map<T: Coeff>(&self, f: impl Fn(&S) -> T) -> SparsePolynomial<T> {
        let mut out = SparsePolynomial::zero(self.dim);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn to_f64_poly(&self) -> SparsePolynomial<f64> {
        self.map(|c| c.to_f64())
    }

    /// Human-readable rendering, mostly for diagnostics.
    pub fn render(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{}", c.render());
            for (j, &q) in m.0.iter().enumerate() {
                if q > 0 {
                    let _ = write!(s, "*x{j}^{q}");
                }
            }
        }
        s
    }
}

/// All monomials of `dim` variables with total degree `degree` and the given
/// per-coordinate parity, in graded-lex order.
pub fn monomials_with_parity(dim: usize, degree: u32, parity: &[u8]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = alloc::vec![0u32; dim];
    fill(&mut out, &mut current, 0, degree, parity);
    out.sort();
    return out;

    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, j: usize, left: u32, parity: &[u8]) {
        let dim = current.len();
        if j == dim {
            if left == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let mut q = parity[j] as u32;
        while q <= left {
            current[j] = q;
            fill(out, current, j + 1, left - q, parity);
            q += 2;
        }
        current[j] = 0;
    }
}
