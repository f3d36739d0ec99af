//! Eigendecomposition of complex Hermitian matrices by cyclic Jacobi
//! rotations. Quadratically convergent and unconditionally stable for
//! the small dense matrices this library works with.

use num_complex::Complex64;

use super::matrix::{Matrix, Scalar};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted ascending and a unitary matrix whose
/// columns are the matching eigenvectors, so `m = v · diag(vals) · v†`.
/// The input is symmetrized as `(m + m†)/2` first; callers are expected
/// to pass matrices that are Hermitian up to rounding.
pub fn hermitian_eigen(m: &Matrix) -> (Vec<f64>, Matrix) {
    assert!(m.is_square(), "hermitian_eigen of a non-square matrix");
    let n = m.rows();
    let mut a = m.add(&m.adjoint()).scale(Scalar::new(0.5, 0.0));
    let mut v = Matrix::identity(n);

    let scale = a.max_abs();
    if n <= 1 || scale == 0.0 {
        let vals = (0..n).map(|i| a[(i, i)].re).collect();
        return (vals, v);
    }
    let stop = 1e-15 * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, stop);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &v.column(src));
    }
    (vals, vecs)
}

/// One Jacobi rotation annihilating `a[(p,q)]`: the complex phase is
/// absorbed first so the remaining 2×2 problem is real symmetric.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, stop: f64) {
    let z = a[(p, q)];
    let zn = z.norm();
    if zn <= stop * 1e-2 {
        return;
    }
    let u = z / zn; // phase of the off-diagonal entry
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;

    let tau = (beta - alpha) / (2.0 * zn);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // combined rotation G = diag(1, conj(u)) · [[c, s], [-s, c]] on columns p, q
    let gpp = Complex64::new(c, 0.0);
    let gpq = Complex64::new(s, 0.0);
    let gqp = -s * u.conj();
    let gqq = c * u.conj();

    let n = a.rows();
    // A ← A·G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    // A ← G†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(alpha - t * zn, 0.0);
    a[(q, q)] = Complex64::new(beta + t * zn, 0.0);
    // V ← V·G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Operator norm (largest singular value), via the spectrum of `m†m`.
pub fn op_norm(m: &Matrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let gram = m.adjoint().mul(m);
    let (vals, _) = hermitian_eigen(&gram);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Smallest singular value; zero for rank-deficient input.
pub fn smallest_singular(m: &Matrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let gram = m.adjoint().mul(m);
    let (vals, _) = hermitian_eigen(&gram);
    vals.first().copied().unwrap_or(0.0).max(0.0).sqrt()
}
