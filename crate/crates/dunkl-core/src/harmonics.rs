//! Internal and external ellipsoidal harmonics `F`, `Fcal` and sphero-conal
//! harmonics `G`, `Gcal`, together with the Kelvin-type relation, the
//! normalization constants and the degree-m reproducing kernel.
//!
//! `F` is the product of the quasi-polynomial over all ellipsoidal
//! coordinates. Expanding that product with symmetric-function identities
//! turns it into a closed polynomial form
//!
//! `F(x) = prod_j |A_j|^(p_j/2) x_j^(p_j) * prod_theta (-1)^(k+1)
//!         [prod_j (theta-a_j) - sum_j x_j^2 prod_{l != j} (theta-a_l)]`,
//!
//! which needs no root finding, is valid in every orthant and on the
//! coordinate hyperplanes, and doubles as an independent cross-check of the
//! coordinate route. `G` is read off from `F` on the coordinate ellipsoid:
//! `E(t) G(y_0/d_0, ..., y_k/d_k) = F(y)` there, and `G` extends to all of
//! space by degree-m homogeneity.

use alloc::vec::Vec;

use crate::coords;
use crate::dunkl::{laplacian_poly, operator_apply};
use crate::error::Error;
use crate::integrals::{weight_constant, MomentTable};
use crate::linalg;
use crate::math;
use crate::model::{indices_of_degree, DunklParams, EllipsoidAxes, HarmonicIndex};
use crate::orthopoly::pochhammer_s;
use crate::poly::{monomials_with_parity, Monomial, SparsePolynomial};
use crate::radial::RadialFunction;
use crate::scalar::Coeff;
use crate::stieltjes::{solve_stieltjes, SecondSolution, StieltjesPolynomial};
use crate::Result;

/// Evaluators for one harmonic index: the quasi-polynomial, its decaying
/// companion, and everything derived from them.
#[derive(Debug, Clone)]
pub struct HarmonicEvaluator {
    params: DunklParams<f64>,
    axes: EllipsoidAxes<f64>,
    index: HarmonicIndex,
    e_poly: StieltjesPolynomial,
    second: SecondSolution,
    /// reference ellipsoid parameter used to read G off F
    t_ref: f64,
}

impl HarmonicEvaluator {
    pub fn new(
        params: &DunklParams<f64>,
        axes: &EllipsoidAxes<f64>,
        index: &HarmonicIndex,
    ) -> Result<Self> {
        let e_poly = solve_stieltjes(params, axes, index)?;
        let second = SecondSolution::new(e_poly.clone())?;
        let a = axes.a();
        let t_ref = a[a.len() - 1] + axes.spread();
        Ok(HarmonicEvaluator {
            params: params.clone(),
            axes: axes.clone(),
            index: index.clone(),
            e_poly,
            second,
            t_ref,
        })
    }

    pub fn params(&self) -> &DunklParams<f64> {
        &self.params
    }

    pub fn axes(&self) -> &EllipsoidAxes<f64> {
        &self.axes
    }

    pub fn index(&self) -> &HarmonicIndex {
        &self.index
    }

    pub fn stieltjes(&self) -> &StieltjesPolynomial {
        &self.e_poly
    }

    pub fn second_solution(&self) -> &SecondSolution {
        &self.second
    }

    pub fn degree(&self) -> u32 {
        self.index.degree()
    }

    /// The internal ellipsoidal harmonic, `prod_j E(t_j)`, in its closed
    /// polynomial form.
    pub fn internal_f(&self, x: &[f64]) -> f64 {
        let a = self.axes.a();
        let k = a.len() - 1;
        let mut v = 1.0;
        for (j, &pj) in self.index.p().iter().enumerate() {
            if pj == 1 {
                v *= math::sqrt(self.axes.big_a()[j].abs()) * x[j];
            }
        }
        let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
        for &theta in self.e_poly.zeros() {
            let mut pole_prod = 1.0;
            for &aj in a {
                pole_prod *= theta - aj;
            }
            let mut sum = 0.0;
            for (j, &xj) in x.iter().enumerate() {
                let mut partial = 1.0;
                for (l, &al) in a.iter().enumerate() {
                    if l != j {
                        partial *= theta - al;
                    }
                }
                sum += xj * xj * partial;
            }
            v *= sign * (pole_prod - sum);
        }
        v
    }

    /// The same product through the coordinate transform; agrees with
    /// [`Self::internal_f`] on the open cone and serves as its cross-check.
    pub fn internal_f_via_coords(&self, x: &[f64]) -> Result<f64> {
        let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        let c = coords::cartesian_to_ellipsoidal(&self.axes, &abs)?;
        let mut v = 1.0;
        for &ti in &c.t {
            v *= self.e_poly.eval_abs(ti);
        }
        for (j, &pj) in self.index.p().iter().enumerate() {
            if pj == 1 && x[j] < 0.0 {
                v = -v;
            }
        }
        Ok(v)
    }

    /// The external ellipsoidal harmonic
    /// `Fcal(x) = Ecal(t_0) prod_{j>=1} E(t_j) = (Ecal/E)(t_0) F(x)`,
    /// defined off the degenerate focal ellipsoid.
    pub fn external_f(&self, x: &[f64]) -> Result<f64> {
        let t0 = coords::t0_exterior(&self.axes, x)?;
        let ratio = self.second.eval(t0)? / self.e_poly.eval_abs(t0);
        Ok(ratio * self.internal_f(x))
    }

    /// The sphero-conal harmonic `G`, evaluated through the identity
    /// `E(t) G(y/d) = F(y)` on the reference ellipsoid and extended by
    /// degree-m homogeneity. The result does not depend on the reference.
    pub fn spheroconal_g(&self, x: &[f64]) -> Result<f64> {
        self.spheroconal_g_at_ref(x, self.t_ref)
    }

    /// Same with an explicit reference parameter `t > a_k`; exposed so the
    /// reference-independence can be tested.
    pub fn spheroconal_g_at_ref(&self, x: &[f64], t_ref: f64) -> Result<f64> {
        let r = math::norm(x);
        if r == 0.0 {
            return Err(Error::domain("G is evaluated away from the origin"));
        }
        let d = coords::semi_axes(&self.axes, t_ref)?;
        let scaled: Vec<f64> = x.iter().zip(&d).map(|(&xj, &dj)| dj * xj / r).collect();
        let num = self.internal_f(&scaled);
        let den = self.e_poly.eval_abs(t_ref);
        Ok(math::powi(r, self.degree() as i32) * num / den)
    }

    /// The external sphero-conal harmonic `||x||^(-2mu-2m) G(x)`.
    pub fn external_g(&self, x: &[f64]) -> Result<f64> {
        let r_sq = math::hypot_sq(x);
        if r_sq == 0.0 {
            return Err(Error::domain("Gcal is singular at the origin"));
        }
        let exponent = -(self.params.mu() + self.degree() as f64);
        Ok(math::powf(r_sq, exponent) * self.spheroconal_g(x)?)
    }

    /// `G` as an explicit polynomial, by expanding the homogenized identity
    /// with symmetric functions of the zeros:
    ///
    /// `G(x) = kappa/u(t) * x^p * prod_theta (-1)^(k+1)
    ///   [prod_j (theta-a_j) ||x||^2 - sum_j (t-a_j) x_j^2 prod_{l != j} (theta-a_l)]`
    ///
    /// for any reference `t > a_k` (the dependence cancels against `u(t)`).
    pub fn g_poly(&self) -> Result<SparsePolynomial<f64>> {
        let a = self.axes.a();
        let dim = a.len();
        let k = dim - 1;
        let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let t_ref = self.t_ref;

        let mut kappa = 1.0;
        for (j, &pj) in self.index.p().iter().enumerate() {
            if pj == 1 {
                kappa *= math::sqrt(self.axes.big_a()[j].abs());
            }
        }
        let u_ref = self.e_poly.poly_part(t_ref);
        let mut parity_mono = alloc::vec![0u32; dim];
        for (j, &pj) in self.index.p().iter().enumerate() {
            parity_mono[j] = pj as u32;
        }
        let mut poly = SparsePolynomial::zero(dim);
        poly.add_term(Monomial(parity_mono), kappa / u_ref);

        for &theta in self.e_poly.zeros() {
            let pole_prod: f64 = a.iter().map(|&aj| theta - aj).product();
            let mut bracket = SparsePolynomial::zero(dim);
            for j in 0..dim {
                let mut partial = 1.0;
                for (l, &al) in a.iter().enumerate() {
                    if l != j {
                        partial *= theta - al;
                    }
                }
                let mut e = alloc::vec![0u32; dim];
                e[j] = 2;
                // theta-pole product against ||x||^2 minus the pulled-back term
                bracket.add_term(Monomial(e), sign * (pole_prod - (t_ref - a[j]) * partial));
            }
            poly = poly.mul(&bracket);
        }
        Ok(poly)
    }

    /// `G` recovered instead by solving the interpolation system on a
    /// degree-m parity grid of sphere points; an independent route kept as a
    /// cross-check of the closed expansion and of the pointwise evaluator.
    pub fn g_poly_interpolated(&self) -> Result<SparsePolynomial<f64>> {
        let dim = self.params.dim();
        let m = self.degree();
        let monos = monomials_with_parity(dim, m, self.index.p());
        if monos.is_empty() {
            return Ok(SparsePolynomial::zero(dim));
        }
        // deterministic sample points on the sphere, three per unknown
        let n_samples = 3 * monos.len();
        let mut state = 0x853c49e6748fea9bu64;
        let mut rand = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64)
        };
        let mut rows = Vec::with_capacity(n_samples);
        let mut rhs = Vec::with_capacity(n_samples);
        for _ in 0..n_samples {
            let mut x: Vec<f64> = (0..dim).map(|_| 2.0 * rand() - 1.0).collect();
            let r = math::norm(&x);
            for v in &mut x {
                *v /= r;
            }
            rows.push(
                monos
                    .iter()
                    .map(|mono| {
                        mono.0
                            .iter()
                            .zip(&x)
                            .map(|(&e, &xj)| math::powi(xj, e as i32))
                            .product::<f64>()
                    })
                    .collect::<Vec<f64>>(),
            );
            rhs.push(self.spheroconal_g(&x)?);
        }
        let sol = linalg::lstsq_f64(&rows, &rhs)
            .ok_or_else(|| Error::non_convergence("singular interpolation system for G"))?;
        let mut poly = SparsePolynomial::zero(dim);
        for (mono, c) in monos.into_iter().zip(sol) {
            poly.add_term(mono, c);
        }
        Ok(poly)
    }

    /// `Gcal` in the radial-extension class: the terms of `G` at shift m.
    pub fn external_g_radial(&self) -> Result<RadialFunction<f64>> {
        Ok(RadialFunction::from_poly(
            &self.params,
            &self.g_poly()?,
            self.degree(),
        ))
    }

    /// The normalization `e^2` with `e^2 int h^2 G^2 dS = 1`, via exact
    /// sphere moments of the squared polynomial.
    pub fn e_norm_sq(&self) -> Result<f64> {
        let g = self.g_poly()?;
        let mut table = MomentTable::new(&self.params);
        let ratio = table.poly_integral_ratio(&g.mul(&g));
        Ok(1.0 / (ratio * weight_constant(&self.params)))
    }

    pub fn e_norm(&self) -> Result<f64> {
        Ok(math::sqrt(self.e_norm_sq()?))
    }
}

/// Planar `G` from the coefficients of the monic polynomial part:
/// `kappa * x^p * sum_j c_j (x_0^2 - x_1^2)^j (x_0^2 + x_1^2)^(n-j)` where
/// `kappa = prod_j |A_j|^(p_j/2)` carries the square-root normalization.
pub fn planar_g_from_poly_part(
    poly_part: &[f64],
    parity: &[u8],
    axes: &EllipsoidAxes<f64>,
) -> SparsePolynomial<f64> {
    let mut kappa = 1.0;
    for (j, &pj) in parity.iter().enumerate() {
        if pj == 1 {
            kappa *= math::sqrt(axes.big_a()[j].abs());
        }
    }
    planar_g_expansion(poly_part, parity).scaled(&kappa)
}

fn planar_g_expansion<S: Coeff>(poly_part: &[S], parity: &[u8]) -> SparsePolynomial<S> {
    let dim = 2;
    let x0 = SparsePolynomial::<S>::var(dim, 0);
    let x1 = SparsePolynomial::<S>::var(dim, 1);
    let diff = x0.pow(2).sub(&x1.pow(2));
    let r_sq = x0.pow(2).add(&x1.pow(2));
    let n = poly_part.len() - 1;
    let mut acc = SparsePolynomial::zero(dim);
    for (j, c) in poly_part.iter().enumerate() {
        acc = acc.add(&diff.pow(j as u32).mul(&r_sq.pow((n - j) as u32)).scaled(c));
    }
    for (j, &pj) in parity.iter().enumerate() {
        if pj == 1 {
            acc = acc.mul(&SparsePolynomial::var(dim, j));
        }
    }
    acc
}

/// Exact planar `G` with the common irrational factor
/// `prod_j |A_j|^(p_j/2)` stripped; all identities that are homogeneous in
/// `G` (harmonicity, orthogonality, the operator pairings) are unaffected.
/// The `(x_0^2 - x_1^2)`-based expansion is tied to the axes `(-1, 1)`.
pub fn planar_g_poly_exact<S: Coeff>(
    params: &DunklParams<S>,
    axes: &EllipsoidAxes<S>,
    index: &HarmonicIndex,
) -> Result<SparsePolynomial<S>> {
    if axes.a()[0] != -S::one() || axes.a()[1] != S::one() {
        return Err(Error::invalid(
            "the exact planar expansion requires axes (-1, 1)",
        ));
    }
    let (coeffs, _) = crate::stieltjes::planar_exact(params, axes, index)?;
    Ok(planar_g_expansion(&coeffs, index.p()))
}

/// Exact basis of spherical h-harmonics of degree `m` and parity `p`:
/// the null space of the Dunkl-Laplacian on the monomials of that degree
/// and parity, over the exact coefficient field.
pub fn harmonic_basis_exact<S: Coeff>(
    params: &DunklParams<S>,
    m: u32,
    parity: &[u8],
) -> Vec<SparsePolynomial<S>> {
    let dim = params.dim();
    let monos = monomials_with_parity(dim, m, parity);
    if monos.is_empty() {
        return Vec::new();
    }
    let targets = if m >= 2 {
        monomials_with_parity(dim, m - 2, parity)
    } else {
        Vec::new()
    };
    // rows: one per target monomial; columns: source monomials
    let mut matrix = alloc::vec![alloc::vec![S::zero(); monos.len()]; targets.len().max(1)];
    for (col, mono) in monos.iter().enumerate() {
        let mut basis_poly = SparsePolynomial::zero(dim);
        basis_poly.add_term(mono.clone(), S::one());
        let lap = laplacian_poly(params, &basis_poly);
        for (row, target) in targets.iter().enumerate() {
            matrix[row][col] = lap.coefficient(target);
        }
    }
    let null = linalg::nullspace_exact(matrix);
    null.into_iter()
        .map(|v| {
            let mut poly = SparsePolynomial::zero(dim);
            for (mono, c) in monos.iter().zip(v) {
                poly.add_term(mono.clone(), c);
            }
            poly
        })
        .collect()
}

/// Kelvin-type relation: the external companion of a homogeneous h-harmonic
/// `Y` of degree m is `(-1)^m / (2^m (mu)_m) * Y(D) ||x||^(-2mu)`, computed
/// in the radial-extension class. The result equals
/// `||x||^(-2mu-2m) Y(x)` exactly.
pub fn kelvin_external<S: Coeff>(
    params: &DunklParams<S>,
    y: &SparsePolynomial<S>,
) -> Result<RadialFunction<S>> {
    if !y.is_homogeneous() {
        return Err(Error::invalid("Kelvin relation needs a homogeneous input"));
    }
    if !laplacian_poly(params, y).is_zero() {
        return Err(Error::invalid("Kelvin relation needs an h-harmonic input"));
    }
    let m = y.total_degree();
    let seed = RadialFunction::radial_power(params);
    let acted = operator_apply(params, y, None, &seed);
    let mut scale = pochhammer_s(params.mu(), m);
    for _ in 0..m {
        scale = scale * S::from_int(2);
    }
    let sign = if m % 2 == 0 { S::one() } else { -S::one() };
    Ok(acted.scaled(&(sign / scale)))
}

/// A fixed-degree orthonormal family: every sphero-conal harmonic of degree
/// m with its normalization, ready for kernel evaluation.
pub struct DegreeBasis {
    entries: Vec<(SparsePolynomial<f64>, f64)>,
    degree: u32,
}

impl DegreeBasis {
    pub fn build(
        params: &DunklParams<f64>,
        axes: &EllipsoidAxes<f64>,
        m: u32,
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for index in indices_of_degree(params.k(), m) {
            let ev = HarmonicEvaluator::new(params, axes, &index)?;
            let g = ev.g_poly()?;
            let e2 = ev.e_norm_sq()?;
            entries.push((g, e2));
        }
        Ok(DegreeBasis { entries, degree: m })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SparsePolynomial<f64>, f64)> {
        self.entries.iter().map(|(g, e2)| (g, *e2))
    }

    /// `P_m(x, y) = sum e^2 G(x) G(y)` over the degree-m family.
    pub fn kernel(&self, x: &[f64], y: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|(g, e2)| e2 * g.eval_f64(x) * g.eval_f64(y))
            .sum()
    }
}

/// Reproducing kernel of the degree-m spherical h-harmonics under the
/// weighted sphere inner product, for unit vectors `x`, `y`.
pub fn reproducing_kernel(
    params: &DunklParams<f64>,
    axes: &EllipsoidAxes<f64>,
    m: u32,
    x: &[f64],
    y: &[f64],
) -> Result<f64> {
    for v in [x, y] {
        if (math::hypot_sq(v) - 1.0).abs() > 1e-10 {
            return Err(Error::domain("kernel arguments must lie on the unit sphere"));
        }
    }
    Ok(DegreeBasis::build(params, axes, m)?.kernel(x, y))
}
