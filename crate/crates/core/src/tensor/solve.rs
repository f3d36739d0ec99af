//! LU solve with partial pivoting. A pivot below `tol` times the largest
//! input entry is treated as rank deficiency; for this library that is
//! the signature of a degenerate Frobenius form.

use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Solves `a · x = b` for `x`, where `a` is square and `b` may have any
/// number of right-hand-side columns.
pub fn solve(a: &Matrix, b: &Matrix, tol: f64) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "solve needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} equations but {} right-hand-side rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.rows();
    let k = b.cols();
    let mut lu = a.clone();
    let mut x = b.clone();
    let pivot_floor = tol * a.max_abs();

    for col in 0..n {
        let mut best = col;
        let mut best_mag = lu[(col, col)].norm();
        for row in (col + 1)..n {
            let mag = lu[(row, col)].norm();
            if mag > best_mag {
                best = row;
                best_mag = mag;
            }
        }
        if best_mag <= pivot_floor {
            return Err(Error::SingularMatrix { pivot: best_mag, tol });
        }
        if best != col {
            for j in 0..n {
                let t = lu[(col, j)];
                lu[(col, j)] = lu[(best, j)];
                lu[(best, j)] = t;
            }
            for j in 0..k {
                let t = x[(col, j)];
                x[(col, j)] = x[(best, j)];
                x[(best, j)] = t;
            }
        }
        let pivot = lu[(col, col)];
        for row in (col + 1)..n {
            let factor = lu[(row, col)] / pivot;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for j in col..n {
                let v = lu[(col, j)];
                lu[(row, j)] -= factor * v;
            }
            for j in 0..k {
                let v = x[(col, j)];
                x[(row, j)] -= factor * v;
            }
        }
    }
    for col in (0..n).rev() {
        let pivot = lu[(col, col)];
        for j in 0..k {
            let mut sum = x[(col, j)];
            for m in (col + 1)..n {
                sum -= lu[(col, m)] * x[(m, j)];
            }
            x[(col, j)] = sum / pivot;
        }
    }
    Ok(x)
}

pub fn inverse(a: &Matrix, tol: f64) -> Result<Matrix> {
    solve(a, &Matrix::identity(a.rows()), tol)
}
