//! Float helpers that work in both `std` and `no_std` builds.
//!
//! In `no_std` builds the transcendental functions come from `libm`;
//! with `std` enabled we use the (usually faster) intrinsics.

#[cfg(feature = "std")]
#[inline]
pub fn sqrt(x: f64) -> f64 {
    x.sqrt()
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn ln(x: f64) -> f64 {
    x.ln()
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn exp(x: f64) -> f64 {
    x.exp()
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[cfg(feature = "std")]
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    x.powf(y)
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[cfg(feature = "std")]
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    x.powi(n)
}
#[cfg(not(feature = "std"))]
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

/// Squared Euclidean norm.
#[inline]
pub fn hypot_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Euclidean norm of a coordinate vector.
#[inline]
pub fn norm(x: &[f64]) -> f64 {
    sqrt(hypot_sq(x))
}

/// Lanczos coefficients, g = 7, n = 9. Relative error below 1e-13 on the
/// positive real axis, which is the only range this crate evaluates.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument, got {x}");
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let pi = core::f64::consts::PI;
        return ln(pi / (pi * x).sin()) - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * ln(2.0 * core::f64::consts::PI) + (x + 0.5) * ln(t) - t + ln(acc)
}

/// Gamma function for x > 0.
pub fn gamma(x: f64) -> f64 {
    exp(ln_gamma(x))
}

/// Beta function B(a, b) for a, b > 0.
pub fn beta(a: f64, b: f64) -> f64 {
    exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b))
}

/// Rising factorial (x)_r = x (x+1) ... (x+r-1).
pub fn pochhammer(x: f64, r: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..r {
        acc *= x + i as f64;
    }
    acc
}

#[cfg(not(feature = "std"))]
trait SinExt {
    fn sin(self) -> f64;
}
#[cfg(not(feature = "std"))]
impl SinExt for f64 {
    fn sin(self) -> f64 {
        libm::sin(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_matches_factorials() {
        for n in 1..10u32 {
            let fact: f64 = (1..n).map(|i| i as f64).product();
            assert!((gamma(n as f64) - fact).abs() / fact < 1e-13);
        }
    }

    #[test]
    fn gamma_half_integers() {
        let sqrt_pi = core::f64::consts::PI.sqrt();
        assert!((gamma(0.5) - sqrt_pi).abs() < 1e-13);
        assert!((gamma(1.5) - 0.5 * sqrt_pi).abs() < 1e-14);
        assert!((gamma(2.5) - 0.75 * sqrt_pi).abs() < 1e-13);
    }

    #[test]
    fn beta_symmetry_and_value() {
        assert!((beta(0.5, 0.5) - core::f64::consts::PI).abs() < 1e-12);
        assert!((beta(2.0, 3.0) - 1.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(3.0, 3), 60.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }
}
