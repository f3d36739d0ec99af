//! Simultaneous diagonalization of a commuting family of operators that
//! are self-adjoint with respect to a positive-definite Hermitian form.
//!
//! Strategy: transform by the square root of the form so the family
//! becomes plainly Hermitian, diagonalize a random real-coefficient
//! combination (generic separation), then refine inside near-degenerate
//! eigenvalue blocks using the individual operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eigen::hermitian_eigen;
use super::matrix::{Matrix, Scalar};
use super::solve;
use crate::error::{Error, Result};

/// Fixed seed for the random combination; keeps every run reproducible.
const COMBO_SEED: u64 = 0x5eed_2c0b;

/// Eigenvalues closer than this fraction of the spectral radius are
/// treated as one degenerate block.
const BLOCK_TIE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SimDiag {
    /// Columns are the joint eigenvectors, orthonormal under the form:
    /// `basis† · form · basis = I`.
    pub basis: Matrix,
    /// `diagonals[i][j]` is the eigenvalue of `ops[i]` on column `j`.
    pub diagonals: Vec<Vec<f64>>,
}

pub fn simultaneous_diagonalize(ops: &[Matrix], form: &Matrix, tol: f64) -> Result<SimDiag> {
    if !form.is_square() {
        return Err(Error::DimensionMismatch("form must be square".into()));
    }
    let n = form.rows();
    for op in ops {
        if op.rows() != n || op.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, form is {n}x{n}",
                op.rows(),
                op.cols()
            )));
        }
    }

    let (fvals, fvecs) = hermitian_eigen(form);
    let fscale = fvals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(&min) = fvals.first() {
        if min <= tol * fscale || fscale == 0.0 {
            return Err(Error::FormNotPositive { eigenvalue: min, tol });
        }
    }
    let sqrt_vals: Vec<f64> = fvals.iter().map(|v| v.sqrt()).collect();
    let w = fvecs.mul(&Matrix::diag_real(&sqrt_vals)).mul(&fvecs.adjoint());
    let inv_sqrt: Vec<f64> = sqrt_vals.iter().map(|v| 1.0 / v).collect();
    let w_inv = fvecs.mul(&Matrix::diag_real(&inv_sqrt)).mul(&fvecs.adjoint());

    // preconditions: self-adjoint w.r.t. the form, pairwise commuting
    for op in ops {
        let lhs = form.mul(op);
        let rhs = op.adjoint().mul(form);
        let scale = (form.max_abs() * op.max_abs()).max(1e-300);
        let residual = lhs.sub(&rhs).max_abs() / scale;
        if residual > tol {
            return Err(Error::NotSelfAdjoint { residual, tol });
        }
    }
    for (i, a) in ops.iter().enumerate() {
        for b in ops.iter().skip(i + 1) {
            let scale = (a.max_abs() * b.max_abs()).max(1e-300);
            let residual = a.mul(b).sub(&b.mul(a)).max_abs() / scale;
            if residual > tol {
                return Err(Error::NotCommuting { residual, tol });
            }
        }
    }

    // W · op · W⁻¹ is Hermitian; symmetrize away the rounding
    let transformed: Vec<Matrix> = ops
        .iter()
        .map(|op| {
            let t = w.mul(op).mul(&w_inv);
            t.add(&t.adjoint()).scale(Scalar::new(0.5, 0.0))
        })
        .collect();

    let mut q = Matrix::identity(n);
    if !transformed.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(COMBO_SEED);
        let mut combo = Matrix::zeros(n, n);
        for t in &transformed {
            let c = Scalar::new(rng.gen_range(-1.0..1.0), 0.0);
            combo = combo.add(&t.scale(c));
        }
        let (cvals, cvecs) = hermitian_eigen(&combo);
        q = cvecs;
        let radius = cvals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        for (start, end) in group_runs(&cvals, BLOCK_TIE * radius) {
            refine_block(&transformed, &mut q, start, end, 0, tol);
        }
    }

    // eigenvalue of ops[i] on column j, read off the transformed family
    let mut diagonals = Vec::with_capacity(transformed.len());
    for t in &transformed {
        let d = q.adjoint().mul(t).mul(&q);
        let offdiag = max_offdiag(&d);
        if offdiag > 10.0 * tol.max(1e-12) * d.max_abs().max(1e-300) {
            return Err(Error::NotCommuting { residual: offdiag / d.max_abs().max(1e-300), tol });
        }
        diagonals.push((0..n).map(|j| d[(j, j)].re).collect::<Vec<f64>>());
    }

    // deterministic column order: lexicographic in the diagonal tuples
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        for d in &diagonals {
            match d[a].total_cmp(&d[b]) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    });
    let mut q_sorted = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        q_sorted.set_column(dst, &q.column(src));
    }
    let diagonals = diagonals
        .iter()
        .map(|d| order.iter().map(|&src| d[src]).collect())
        .collect();

    Ok(SimDiag { basis: w_inv.mul(&q_sorted), diagonals })
}

/// Splits a sorted slice into runs of values within `tie` of their neighbor.
fn group_runs(vals: &[f64], tie: f64) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > tie {
            runs.push((start, i));
            start = i;
        }
    }
    runs
}

/// Within the column block `[start, end)` of `q`, rotate until every
/// operator acts diagonally. Operators before `op_index` are already
/// scalar on this block, so each level of recursion advances the index.
fn refine_block(ops: &[Matrix], q: &mut Matrix, start: usize, end: usize, op_index: usize, tol: f64) {
    if end - start <= 1 || op_index >= ops.len() {
        return;
    }
    let k = end - start;
    let n = q.rows();
    let mut block = Matrix::zeros(n, k);
    for j in 0..k {
        block.set_column(j, &q.column(start + j));
    }
    let sub = block.adjoint().mul(&ops[op_index]).mul(&block);
    let scale = sub.max_abs().max(1e-300);
    if max_offdiag(&sub) <= tol.max(1e-13) * scale {
        refine_block(ops, q, start, end, op_index + 1, tol);
        return;
    }
    let (svals, svecs) = hermitian_eigen(&sub);
    let rotated = block.mul(&svecs);
    for j in 0..k {
        q.set_column(start + j, &rotated.column(j));
    }
    let radius = svals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    for (s, e) in group_runs(&svals, BLOCK_TIE * radius) {
        refine_block(ops, q, start + s, start + e, op_index + 1, tol);
    }
}

fn max_offdiag(m: &Matrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Residuals the output is contractually required to satisfy; exposed
/// for tests and reports.
pub fn simdiag_residuals(result: &SimDiag, ops: &[Matrix], form: &Matrix, tol: f64) -> (f64, f64) {
    let p = &result.basis;
    let orth = p.adjoint().mul(form).mul(p).sub(&Matrix::identity(p.rows())).max_abs();
    let mut diag_residual = 0.0f64;
    if !ops.is_empty() {
        let p_inv = solve::inverse(p, tol).expect("basis from simultaneous_diagonalize is invertible");
        for (op, d) in ops.iter().zip(&result.diagonals) {
            let conj = p_inv.mul(op).mul(p);
            let target = Matrix::diag_real(d);
            let scale = conj.max_abs().max(1e-300);
            diag_residual = diag_residual.max(conj.sub(&target).max_abs() / scale);
        }
    }
    (orth, diag_residual)
}
