//! Dense complex matrices, row-major, sized for state spaces of a few
//! dozen dimensions at most. Tensor products follow the lexicographic
//! convention: the basis of `V ⊗ W` is ordered with the first factor
//! major, so `kron(a, b)[(i*rb + r, j*cb + s)] = a[(i,j)] * b[(r,s)]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar. Constructors of containers reject non-finite entries.
pub type Scalar = Complex64;

pub fn scalar(re: f64, im: f64) -> Scalar {
    Complex64::new(re, im)
}

pub(crate) fn is_finite(z: &Scalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Matrix::diag(&values.iter().map(|&v| Scalar::new(v, 0.0)).collect::<Vec<_>>())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Checked constructor: validates shape consistency and finiteness.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {c} columns, found {}",
                    row.len()
                )));
            }
            for z in row {
                if !is_finite(z) {
                    return Err(Error::NonFinite("matrix entry".into()));
                }
                entries.push(*z);
            }
        }
        Ok(Matrix { rows: r, cols: c, entries })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Matrix::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| {
            Scalar::new(rows[i][j], 0.0)
        })
    }

    pub fn column_vector(v: &[Scalar]) -> Self {
        Matrix { rows: v.len(), cols: 1, entries: v.to_vec() }
    }

    pub fn row_vector(v: &[Scalar]) -> Self {
        Matrix { rows: 1, cols: v.len(), entries: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Matrix {
        let entries = self.entries.iter().map(Scalar::conj).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        let entries = self.entries.iter().map(|z| z * s).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Matrix power by squaring.
    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut out = Matrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(is_finite)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product, first factor major.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = (a.rows, a.cols);
    let (rb, cb) = (b.rows, b.cols);
    let mut out = Matrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for r in 0..rb {
                for s in 0..cb {
                    out[(i * rb + r, j * cb + s)] = aij * b[(r, s)];
                }
            }
        }
    }
    out
}

/// Kronecker power, `m^{⊗e}`; the 0-th power is the 1×1 identity.
pub fn kron_pow(m: &Matrix, e: usize) -> Matrix {
    let mut out = Matrix::identity(1);
    for _ in 0..e {
        out = kron(&out, m);
    }
    out
}

/// Matrix of the slot permutation on `V^{⊗m}` with `dim V = d`.
///
/// `perm[j]` is the source slot feeding target slot `j`: applied to a
/// tensor `v`, target index tuple `t` picks up the source tuple `s`
/// with `t_j = s_{perm[j]}`.
pub fn tensor_permutation(d: usize, perm: &[usize]) -> Matrix {
    let m = perm.len();
    let size = d.pow(m as u32);
    let mut out = Matrix::zeros(size, size);
    let mut t = vec![0usize; m];
    for row in 0..size {
        // decode row into the target tuple
        let mut rem = row;
        for j in (0..m).rev() {
            t[j] = rem % d;
            rem /= d;
        }
        let mut col = 0usize;
        // s[perm[j]] = t[j]
        let mut s = vec![0usize; m];
        for j in 0..m {
            s[perm[j]] = t[j];
        }
        for &sk in &s {
            col = col * d + sk;
        }
        out[(row, col)] = Scalar::new(1.0, 0.0);
    }
    out
}

/// Relative difference `‖a − b‖_max` scaled by the larger operand's
/// entry magnitude, the residual convention used throughout.
pub fn rel_diff(a: &Matrix, b: &Matrix) -> f64 {
    let scale = a.max_abs().max(b.max_abs()).max(1e-300);
    a.sub(b).max_abs() / scale
}
