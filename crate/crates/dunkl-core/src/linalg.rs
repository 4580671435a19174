//! Small dense linear solves used by the Newton iteration, the polynomial
//! interpolation of sphero-conal harmonics, and the exact null-space
//! construction of h-harmonic bases. Systems here have at most a few dozen
//! unknowns, so plain Gaussian elimination is the right tool.

use alloc::vec::Vec;

use crate::scalar::Coeff;

/// Solve `A x = b` with partial pivoting. Returns `None` for (numerically)
/// singular systems.
pub fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if pivot == 0.0 || !pivot.is_finite() {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in (row + 1)..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Least-squares solve of an overdetermined system via normal equations;
/// adequate for the small well-conditioned interpolation systems here.
pub fn lstsq_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let rows = a.len();
    let cols = a.first()?.len();
    debug_assert_eq!(rows, b.len());
    let mut ata = alloc::vec![alloc::vec![0.0; cols]; cols];
    let mut atb = alloc::vec![0.0; cols];
    for r in 0..rows {
        for i in 0..cols {
            atb[i] += a[r][i] * b[r];
            for j in 0..cols {
                ata[i][j] += a[r][i] * a[r][j];
            }
        }
    }
    solve_f64(ata, atb)
}

/// Exact reduced row echelon form; returns the pivot column of each row.
pub fn rref_exact<S: Coeff>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = S::one() / m[row][col].clone();
        for c in col..cols {
            m[row][c] = m[row][c].clone() * inv.clone();
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    m[r][c] = m[r][c].clone() - f.clone() * m[row][c].clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Exact null-space basis of the matrix (free-variable parametrization).
pub fn nullspace_exact<S: Coeff>(mut m: Vec<Vec<S>>) -> Vec<Vec<S>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let pivots = rref_exact(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = alloc::vec![S::zero(); cols];
        v[f] = S::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}
