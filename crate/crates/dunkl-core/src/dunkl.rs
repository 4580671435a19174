//! Dunkl operators `D_j = d/dx_j + alpha_j (1 - sigma_j)/x_j` and the
//! Dunkl-Laplacian `Delta_h = sum_j D_j^2`, acting on sparse polynomials and
//! on the radial-extension class.


use crate::model::DunklParams;
use crate::poly::{Monomial, SparsePolynomial};
use crate::radial::RadialFunction;
use crate::scalar::Coeff;

/// Anything the operators `Y(D)` can act on.
pub trait DunklOperand<S: Coeff>: Clone {
    fn dunkl_apply(&self, params: &DunklParams<S>, j: usize) -> Self;
    fn zero_like(&self) -> Self;
    fn scaled_by(&self, c: &S) -> Self;
    fn plus(&self, other: &Self) -> Self;
}

impl<S: Coeff> DunklOperand<S> for SparsePolynomial<S> {
    fn dunkl_apply(&self, params: &DunklParams<S>, j: usize) -> Self {
        dunkl_poly(params, j, self)
    }
    fn zero_like(&self) -> Self {
        SparsePolynomial::zero(self.dim())
    }
    fn scaled_by(&self, c: &S) -> Self {
        self.scaled(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
}

impl<S: Coeff> DunklOperand<S> for RadialFunction<S> {
    fn dunkl_apply(&self, _params: &DunklParams<S>, j: usize) -> Self {
        self.dunkl(j)
    }
    fn zero_like(&self) -> Self {
        RadialFunction::zero(self.params())
    }
    fn scaled_by(&self, c: &S) -> Self {
        self.scaled(c)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
}

/// `D_j f` for a polynomial `f`.
///
/// On a monomial `x^q`: even `q_j` contributes `q_j x^(q - e_j)` (the
/// reflection difference cancels), odd `q_j` contributes
/// `(q_j + 2 alpha_j) x^(q - e_j)`. The division by `x_j` is always exact on
/// this class.
pub fn dunkl_poly<S: Coeff>(
    params: &DunklParams<S>,
    j: usize,
    f: &SparsePolynomial<S>,
) -> SparsePolynomial<S> {
    let alpha_j = &params.alpha()[j];
    let mut out = SparsePolynomial::zero(f.dim());
    for (m, c) in f.terms() {
        let qj = m.0[j];
        if qj == 0 {
            continue;
        }
        let factor = if qj % 2 == 0 {
            S::from_int(qj as i64)
        } else {
            S::from_int(qj as i64) + S::from_int(2) * alpha_j.clone()
        };
        let mut e = m.0.clone();
        e[j] -= 1;
        out.add_term(Monomial(e), c.clone() * factor);
    }
    out
}

/// `Delta_h f` for a polynomial `f`.
pub fn laplacian_poly<S: Coeff>(
    params: &DunklParams<S>,
    f: &SparsePolynomial<S>,
) -> SparsePolynomial<S> {
    let mut acc = SparsePolynomial::zero(f.dim());
    for j in 0..params.dim() {
        acc = acc.add(&dunkl_poly(params, j, &dunkl_poly(params, j, f)));
    }
    acc
}

/// The one-dimensional "Dunkl factorial" `gamma_m = D^m(x^m)` for a single
/// coordinate with exponent `alpha`: the recurrence multiplies by `w` when
/// the current exponent `w` is even and by `w + 2 alpha` when it is odd.
pub fn dunkl_factorial<S: Coeff>(m: u32, alpha: &S) -> S {
    let mut acc = S::one();
    for w in 1..=m {
        let step = if w % 2 == 0 {
            S::from_int(w as i64)
        } else {
            S::from_int(w as i64) + S::from_int(2) * alpha.clone()
        };
        acc = acc * step;
    }
    acc
}

/// Product of per-coordinate Dunkl factorials, `D^q (x^q)`.
pub fn dunkl_factorial_multi<S: Coeff>(params: &DunklParams<S>, q: &[u32]) -> S {
    let mut acc = S::one();
    for (j, &qj) in q.iter().enumerate() {
        acc = acc * dunkl_factorial(qj, &params.alpha()[j]);
    }
    acc
}

/// Substitute `scale_j * D_j` for `x_j` in `y` and apply the resulting
/// operator to `target`. Monomial operator terms are applied in graded-lex
/// order so the accumulation is deterministic. `scale = None` means all ones.
pub fn operator_apply<S: Coeff, T: DunklOperand<S>>(
    params: &DunklParams<S>,
    y: &SparsePolynomial<S>,
    scale: Option<&[S]>,
    target: &T,
) -> T {
    let mut acc = target.zero_like();
    for (m, c) in y.terms() {
        let mut cur = target.clone();
        let mut factor = c.clone();
        for (j, &qj) in m.0.iter().enumerate() {
            for _ in 0..qj {
                cur = cur.dunkl_apply(params, j);
            }
            if let Some(d) = scale {
                for _ in 0..qj {
                    factor = factor * d[j].clone();
                }
            }
        }
        acc = acc.plus(&cur.scaled_by(&factor));
    }
    acc
}

/// Apply `(c_0 D_0^2 + ... + c_k D_k^2)` once; the workhorse of the
/// Niven-series term recursion.
pub fn weighted_laplacian_apply<S: Coeff, T: DunklOperand<S>>(
    params: &DunklParams<S>,
    coeffs: &[S],
    target: &T,
) -> T {
    let mut acc = target.zero_like();
    for (j, cj) in coeffs.iter().enumerate() {
        let dd = target.dunkl_apply(params, j).dunkl_apply(params, j);
        acc = acc.plus(&dd.scaled_by(cj));
    }
    acc
}

/// Sampled evaluation of `D_j f` at a point from pointwise values of `f`,
/// with the derivative part taken by central differences. Used by tests to
/// cross-check the algebraic operators, and by the fundamental-solution
/// module where no closed form of the integrand's derivative is wanted.
pub fn dunkl_numeric(
    alpha: &[f64],
    j: usize,
    f: &dyn Fn(&[f64]) -> f64,
    x: &[f64],
    h: f64,
) -> f64 {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[j] += h;
    xm[j] -= h;
    let deriv = (f(&xp) - f(&xm)) / (2.0 * h);
    let reflect = if x[j].abs() > 1e-9 {
        let mut xr = x.to_vec();
        xr[j] = -xr[j];
        alpha[j] * (f(x) - f(&xr)) / x[j]
    } else {
        // on the hyperplane the difference quotient tends to 2 d_j f
        2.0 * alpha[j] * deriv
    };
    deriv + reflect
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn params(a0: f64, a1: f64) -> DunklParams<f64> {
        DunklParams::new(1, alloc::vec![a0, a1]).unwrap()
    }

    #[test]
    fn dunkl_on_low_monomials() {
        let p = params(0.25, 0.75);
        let x0: SparsePolynomial<f64> = SparsePolynomial::var(2, 0);
        // D_0 x_0 = 1 + 2 alpha_0
        let d = dunkl_poly(&p, 0, &x0);
        assert_eq!(d.coefficient(&Monomial::constant(2)), 1.5);
        // D_0 x_0^2 = 2 x_0
        let d2 = dunkl_poly(&p, 0, &x0.mul(&x0));
        assert_eq!(d2.coefficient(&Monomial::var(2, 0)), 2.0);
    }

    #[test]
    fn dunkl_cube_with_half() {
        // alpha_0 = 1/2: D_0 x_0^3 = (3 + 2 alpha_0) x_0^2 = 4 x_0^2
        let p = params(0.5, 0.5);
        let x0: SparsePolynomial<f64> = SparsePolynomial::var(2, 0);
        let d = dunkl_poly(&p, 0, &x0.pow(3));
        assert_eq!(d.coefficient(&Monomial(alloc::vec![2, 0])), 4.0);
    }

    #[test]
    fn laplacian_examples() {
        // constants are annihilated
        let p = params(0.3, 0.9);
        let c: SparsePolynomial<f64> = SparsePolynomial::constant(2, 5.0);
        assert!(laplacian_poly(&p, &c).is_zero());

        // (1 + 2 alpha_1) x_0^2 - (1 + 2 alpha_0) x_1^2 is h-harmonic
        let x0 = SparsePolynomial::<f64>::var(2, 0);
        let x1 = SparsePolynomial::<f64>::var(2, 1);
        let y = x0
            .pow(2)
            .scaled(&(1.0 + 2.0 * 0.9))
            .sub(&x1.pow(2).scaled(&(1.0 + 2.0 * 0.3)));
        assert!(laplacian_poly(&p, &y).is_zero());

        // classical case: Delta ||x||^2 = 2(k+1) when all alpha vanish
        let p3 = DunklParams::new(2, alloc::vec![0.0, 0.0, 0.0]).unwrap();
        let r2: SparsePolynomial<f64> = (0..3)
            .map(|j| SparsePolynomial::var(3, j).pow(2))
            .fold(SparsePolynomial::zero(3), |a, b| a.add(&b));
        let lap = laplacian_poly(&p3, &r2);
        assert_eq!(lap.coefficient(&Monomial::constant(3)), 6.0);
        assert_eq!(lap.num_terms(), 1);
    }

    #[test]
    fn dunkl_factorial_values() {
        assert_eq!(dunkl_factorial(0, &0.7), 1.0);
        assert_eq!(dunkl_factorial(1, &0.7), 1.0 + 1.4);
        // m = 3: 2 (1 + 2a)(3 + 2a)
        let a = 0.7;
        assert!((dunkl_factorial(3, &a) - 2.0 * (1.0 + 2.0 * a) * (3.0 + 2.0 * a)).abs() < 1e-14);
        // exact
        let a = BigRational::from_ratio(1, 2);
        assert_eq!(dunkl_factorial(3, &a), BigRational::from_int(16));
    }

    #[test]
    fn operator_apply_pairings() {
        let p = params(0.25, 0.5);
        let x0 = SparsePolynomial::<f64>::var(2, 0);
        let x1 = SparsePolynomial::<f64>::var(2, 1);
        let y = x0.mul(&x1);
        // Y(D) applied to x_0 x_1 gives (1+2a_0)(1+2a_1)
        let out = operator_apply(&p, &y, None, &y);
        assert_eq!(out.coefficient(&Monomial::constant(2)), 1.5 * 2.0);
        // Y = x_0 acts as D_0
        let out = operator_apply(&p, &x0, None, &x0.pow(2));
        assert_eq!(out.coefficient(&Monomial::var(2, 0)), 2.0);
        // scaling vector enters once per operator power:
        // 3^2 * D_0^2 x_0^2 = 9 * gamma_2 = 9 * 2 (1 + 2 alpha_0)
        let out = operator_apply(&p, &x0.pow(2), Some(&[3.0, 1.0]), &x0.pow(2));
        assert_eq!(out.coefficient(&Monomial::constant(2)), 27.0);
    }

    #[test]
    fn parity_bit_flips() {
        let p = params(0.25, 0.5);
        let f = SparsePolynomial::<f64>::var(2, 0)
            .pow(2)
            .mul(&SparsePolynomial::var(2, 1));
        let pf = f.parity().unwrap().unwrap();
        let df = dunkl_poly(&p, 0, &f);
        let pdf = df.parity().unwrap().unwrap();
        assert_eq!(pf, alloc::vec![0, 1]);
        assert_eq!(pdf, alloc::vec![1, 1]);
    }

    #[test]
    fn numeric_dunkl_matches_algebraic() {
        let p = params(0.25, 0.5);
        let f = SparsePolynomial::<f64>::var(2, 0)
            .pow(3)
            .add(&SparsePolynomial::var(2, 1).pow(2));
        let df = dunkl_poly(&p, 0, &f);
        let x = [0.7, -0.4];
        let numeric = dunkl_numeric(&[0.25, 0.5], 0, &|y| f.eval_f64(y), &x, 1e-5);
        assert!((numeric - df.eval_f64(&x)).abs() < 1e-8);
    }
}
