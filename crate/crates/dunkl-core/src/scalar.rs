//! The dual-mode coefficient field.
//!
//! Algebraic kernels (polynomials, Dunkl operators, moments, the planar
//! closed forms) are generic over [`Coeff`] so the same code path runs in
//! binary floating point and in exact rational arithmetic. Identities that
//! the theory states exactly can then be tested with zero tolerance.

use alloc::string::{String, ToString};
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient field: `f64` or `BigRational`.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Embed a machine integer.
    fn from_int(n: i64) -> Self;
    /// Embed the rational p/q (q != 0).
    fn from_ratio(p: i64, q: i64) -> Self;
    /// Nearest `f64` (exact for `f64`, rounded for rationals).
    fn to_f64(&self) -> f64;
    /// Render for output; rationals print as `num/den`.
    fn render(&self) -> String;
    /// Strictly negative?
    fn is_neg(&self) -> bool;
    /// Strictly positive?
    fn is_pos(&self) -> bool {
        !self.is_neg() && !self.is_zero()
    }
    /// Total-order comparison (both fields used here are totally ordered
    /// on the values the library produces).
    fn less_than(&self, other: &Self) -> bool;
}

impl Coeff for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn render(&self) -> String {
        let mut s = alloc::format!("{self:e}");
        if !s.contains('e') {
            s.push_str("e0");
        }
        s
    }
    fn is_neg(&self) -> bool {
        *self < 0.0
    }
    fn less_than(&self, other: &Self) -> bool {
        self < other
    }
}

impl Coeff for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn less_than(&self, other: &Self) -> bool {
        self < other
    }
}

/// Convert a `BigRational` to the nearest `f64` without overflowing
/// intermediate integer-to-float conversions.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // fall back to scaling by powers of two
    let neg = r.is_negative();
    let mut a = r.abs();
    let mut exp = 0i32;
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::one();
    while a >= two {
        a = a / two.clone();
        exp += 1;
    }
    while !a.is_zero() && a < one {
        a = a * two.clone();
        exp -= 1;
    }
    let frac = a.numer().to_f64().unwrap_or(f64::NAN) / a.denom().to_f64().unwrap_or(f64::NAN);
    let v = frac * crate::math::powi(2.0, exp);
    if neg {
        -v
    } else {
        v
    }
}

/// Parse a coefficient from text: either `p/q` or a plain integer,
/// or (for the float field) anything `f64::from_str` accepts.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else if let Ok(n) = s.parse::<BigInt>() {
        Some(BigRational::from_integer(n))
    } else {
        // decimal notation, e.g. "0.5" -> 1/2 (exact)
        let (int_part, frac_part) = s.split_once('.')?;
        let neg = int_part.trim_start().starts_with('-');
        let int_part: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::from(0)
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = frac_part.parse().ok()?;
        let den = num_traits::pow::pow(BigInt::from(10), frac_part.len());
        let frac = BigRational::new(num, den);
        let base = BigRational::from_integer(int_part);
        Some(if neg { base - frac } else { base + frac })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2"), Some(BigRational::from_ratio(1, 2)));
        assert_eq!(parse_rational("-3"), Some(BigRational::from_int(-3)));
        assert_eq!(parse_rational("0.25"), Some(BigRational::from_ratio(1, 4)));
        assert_eq!(
            parse_rational("-1.5"),
            Some(BigRational::from_ratio(-3, 2))
        );
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn rational_to_f64_roundtrip() {
        let r = BigRational::from_ratio(355, 113);
        assert!((rational_to_f64(&r) - 355.0 / 113.0).abs() < 1e-15);
    }
}
