//! Gauss-Jacobi quadrature rules via the Golub-Welsch method.
//!
//! Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix of
//! the weight's three-term recurrence; weights come from the first components
//! of the eigenvectors. The tridiagonal QL sweep below tracks only those
//! first components, so rule construction is O(n^2).

use alloc::vec::Vec;

use crate::error::Error;
use crate::math;
use crate::Result;

/// An n-point rule for the weight `(1 - x)^a (1 + x)^b` on (-1, 1),
/// exact on polynomials of degree `2n - 1`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    a: f64,
    b: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weight exponents (a, b) of `(1 - x)^a (1 + x)^b`.
    pub fn exponents(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// `sum w_i f(x_i)`, approximating the weighted integral over (-1, 1).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Iterate over `(node, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Build the n-point Gauss-Jacobi rule for `(1 - x)^a (1 + x)^b`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::invalid("quadrature order must be at least 1"));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::domain(alloc::format!(
            "Jacobi weight exponents must exceed -1, got ({a}, {b})"
        )));
    }
    let mut diag = alloc::vec![0.0f64; n];
    let mut off = alloc::vec![0.0f64; n];
    diag[0] = (b - a) / (a + b + 2.0);
    for i in 1..n {
        let two_i = 2.0 * i as f64;
        diag[i] = (b * b - a * a) / ((two_i + a + b) * (two_i + a + b + 2.0));
        let num;
        let den;
        if i == 1 {
            num = 4.0 * (a + 1.0) * (b + 1.0);
            den = (a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0);
        } else {
            let fi = i as f64;
            num = 4.0 * fi * (fi + a) * (fi + b) * (fi + a + b);
            den = (two_i + a + b) * (two_i + a + b) * (two_i + a + b + 1.0) * (two_i + a + b - 1.0);
        }
        off[i - 1] = math::sqrt(num / den);
    }
    let mut z = alloc::vec![0.0f64; n];
    z[0] = 1.0;
    tridiag_ql(&mut diag, &mut off, &mut z)?;

    let m0 = math::powf(2.0, a + b + 1.0) * math::beta(a + 1.0, b + 1.0);
    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(&z)
        .map(|(&x, &zi)| (x, m0 * zi * zi))
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        a,
        b,
    })
}

/// Gauss-Legendre rule (unit weight).
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Integrate `f` over `[lo, hi]` with an affinely mapped Legendre rule.
pub fn integrate_legendre(rule: &QuadratureRule, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    rule.integrate(|x| f(mid + half * x)) * half
}

fn hypot(a: f64, b: f64) -> f64 {
    math::sqrt(a * a + b * b)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, rotating the first
/// row of the accumulated eigenvector matrix along. `d` holds the diagonal
/// (eigenvalues on exit), `e` the subdiagonal in `e[0..n-1]`.
fn tridiag_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::non_convergence(
                    "tridiagonal QL failed to deflate within 60 sweeps",
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let bq = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bq;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bq;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
