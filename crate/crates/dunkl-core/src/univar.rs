//! Dense univariate polynomial helpers (coefficients ascending in the
//! degree), generic over the coefficient field. Used for the Fuchsian
//! operator coefficients and the spectral-parameter recovery.

use alloc::vec::Vec;

use crate::scalar::Coeff;

pub fn trim<S: Coeff>(p: &mut Vec<S>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn add<S: Coeff>(p: &[S], q: &[S]) -> Vec<S> {
    let n = p.len().max(q.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = p.get(i).cloned().unwrap_or_else(S::zero);
        let b = q.get(i).cloned().unwrap_or_else(S::zero);
        out.push(a + b);
    }
    trim(&mut out);
    out
}

pub fn scale<S: Coeff>(p: &[S], c: &S) -> Vec<S> {
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|a| a.clone() * c.clone()).collect()
}

pub fn mul<S: Coeff>(p: &[S], q: &[S]) -> Vec<S> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![S::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    trim(&mut out);
    out
}

pub fn derivative<S: Coeff>(p: &[S]) -> Vec<S> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.clone() * S::from_int(i as i64))
        .collect()
}

pub fn eval<S: Coeff>(p: &[S], t: &S) -> S {
    let mut acc = S::zero();
    for c in p.iter().rev() {
        acc = acc * t.clone() + c.clone();
    }
    acc
}

pub fn eval_f64<S: Coeff>(p: &[S], t: f64) -> f64 {
    let mut acc = 0.0;
    for c in p.iter().rev() {
        acc = acc * t + c.to_f64();
    }
    acc
}

/// Monic polynomial with the given roots.
pub fn from_roots<S: Coeff>(roots: &[S]) -> Vec<S> {
    let mut p = alloc::vec![S::one()];
    for r in roots {
        p = mul(&p, &[-r.clone(), S::one()]);
    }
    p
}

/// Divide `num` by a monic `den`; returns (quotient, remainder).
pub fn div_monic<S: Coeff>(num: &[S], den: &[S]) -> (Vec<S>, Vec<S>) {
    debug_assert!(den.last().is_some_and(|c| *c == S::one()));
    let mut rem: Vec<S> = num.to_vec();
    trim(&mut rem);
    let d = den.len() - 1;
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = alloc::vec![S::zero(); rem.len() - d];
    while rem.len() > d {
        let lead = rem.last().unwrap().clone();
        let pos = rem.len() - 1 - d;
        quot[pos] = lead.clone();
        for i in 0..=d {
            let v = rem[pos + i].clone() - lead.clone() * den[i].clone();
            rem[pos + i] = v;
        }
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_division() {
        // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6
        let p: Vec<f64> = from_roots(&[1.0, 2.0, 3.0]);
        assert_eq!(p, alloc::vec![-6.0, 11.0, -6.0, 1.0]);
        let (q, r) = div_monic(&p, &from_roots(&[2.0]));
        assert_eq!(q, alloc::vec![3.0, -4.0, 1.0]); // (t-1)(t-3)
        assert!(r.is_empty());
        let (_, r) = div_monic(&p, &from_roots(&[5.0]));
        assert_eq!(r.len(), 1); // nonzero remainder
    }

    #[test]
    fn calculus() {
        let p = alloc::vec![1.0, 0.0, 3.0]; // 1 + 3t^2
        assert_eq!(derivative(&p), alloc::vec![0.0, 6.0]);
        assert_eq!(eval(&p, &2.0), 13.0);
    }
}
