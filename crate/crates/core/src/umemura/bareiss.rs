//! Fraction-free (Bareiss) elimination over `BiPoly`.

use crate::arith::BiPoly;

/// Determinant by one-step Bareiss elimination. Every interior division
/// is exact; a zero pivot is replaced by a lower row with sign flip, and a
/// column with no nonzero pivot gives determinant 0.
pub fn bareiss_det(matrix: &[Vec<BiPoly>]) -> BiPoly {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "bareiss_det needs a square matrix");
    if n == 0 {
        return BiPoly::one();
    }
    let mut a = matrix.to_vec();
    let mut negate = false;
    let mut prev = BiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BiPoly::zero(),
            }
        }
        eliminate_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`, read off the
/// Bareiss pivots. Stops after the first zero minor, since elimination
/// without row exchanges cannot continue past it.
pub fn leading_principal_minors(matrix: &[Vec<BiPoly>]) -> Vec<BiPoly> {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut prev = BiPoly::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        minors.push(a[k][k].clone());
        if a[k][k].is_zero() || k + 1 == n {
            break;
        }
        eliminate_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    minors
}

fn eliminate_step(a: &mut [Vec<BiPoly>], k: usize, prev: &BiPoly) {
    let n = a.len();
    let (upper, lower) = a.split_at_mut(k + 1);
    let pivot_row = &upper[k];
    let pivot = &pivot_row[k];
    for row in lower.iter_mut() {
        for j in k + 1..n {
            let cross = &(pivot * &row[j]) - &(&row[k] * &pivot_row[j]);
            row[j] = cross.exact_div(prev).expect("Bareiss interior division is exact");
        }
        row[k] = BiPoly::zero();
    }
}
