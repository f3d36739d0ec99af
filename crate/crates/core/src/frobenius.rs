//! Finite-dimensional commutative Frobenius algebras over ℂ, given by
//! structure constants in a fixed basis, with the derived pairing,
//! copairing, comultiplication, handle operator, and closed-surface
//! invariants.

use crate::error::{Error, Result};
use crate::tensor::matrix::is_finite;
use crate::tensor::{kron, smallest_singular, solve, Matrix, Scalar};

/// A commutative Frobenius algebra: dimension, structure constants
/// `c[i][j][k]` with `μ(b_i, b_j) = Σ_k c[i][j][k] b_k`, the unit vector
/// `η`, and the counit covector `ε`.
///
/// Construction only checks shapes and finiteness; `verify_axioms`
/// reports on the algebraic laws.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusAlgebra {
    dim: usize,
    mul: Vec<Scalar>, // c[i][j][k] at i·n² + j·n + k
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
}

impl FrobeniusAlgebra {
    pub fn new(dim: usize, mul: Vec<Scalar>, unit: Vec<Scalar>, counit: Vec<Scalar>) -> Result<Self> {
        if mul.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants: expected {} entries, found {}",
                dim * dim * dim,
                mul.len()
            )));
        }
        if unit.len() != dim || counit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit/counit: expected {dim} entries, found {}/{}",
                unit.len(),
                counit.len()
            )));
        }
        if !mul.iter().chain(&unit).chain(&counit).all(is_finite) {
            return Err(Error::NonFinite("algebra data".into()));
        }
        Ok(FrobeniusAlgebra { dim, mul, unit, counit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.mul[(i * self.dim + j) * self.dim + k]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let n = self.dim;
        let mut out = vec![Scalar::new(0.0, 0.0); n];
        for i in 0..n {
            if x[i].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let xy = x[i] * y[j];
                if xy.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += xy * self.structure_constant(i, j, k);
                }
            }
        }
        out
    }

    pub fn counit_apply(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.dim);
        x.iter().zip(&self.counit).map(|(a, b)| a * b).sum()
    }

    /// Left multiplication by `x` as a matrix: `φ(x) y = μ(x, y)`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |k, j| {
            (0..n).map(|i| x[i] * self.structure_constant(i, j, k)).sum()
        })
    }

    /// Multiplication as a linear map `V ⊗ V → V` (n × n² matrix,
    /// column index lexicographic in (i, j)).
    pub fn mul_matrix(&self) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n * n, |k, col| self.structure_constant(col / n, col % n, k))
    }

    /// Matrix of the pairing: `B[i][j] = β(b_i, b_j) = ε(μ(b_i, b_j))`.
    pub fn beta_matrix(&self) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| self.structure_constant(i, j, k) * self.counit[k]).sum()
        })
    }

    /// `β(x, y) = ε(μ(x, y))`.
    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "pairing arguments of length {}/{}, algebra dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.counit_apply(&self.multiply(x, y)))
    }

    pub fn verify_axioms(&self, tol: f64) -> AxiomReport {
        let n = self.dim;
        let scale = self.mul.iter().map(|z| z.norm()).fold(1e-300, f64::max);
        let pair_scale = (scale * scale).max(1e-300);

        let mut associativity = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let bi = basis(n, i);
                let bj = basis(n, j);
                let ij = self.multiply(&bi, &bj);
                for k in 0..n {
                    let bk = basis(n, k);
                    let jk = self.multiply(&bj, &bk);
                    let left = self.multiply(&ij, &bk);
                    let right = self.multiply(&bi, &jk);
                    let diff = max_vec_diff(&left, &right);
                    associativity = associativity.max(diff / pair_scale);
                }
            }
        }

        let mut commutativity = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let diff =
                        (self.structure_constant(i, j, k) - self.structure_constant(j, i, k)).norm();
                    commutativity = commutativity.max(diff / scale);
                }
            }
        }

        let unit_scale = self.unit.iter().map(|z| z.norm()).fold(1.0f64, f64::max) * scale;
        let mut unit = 0.0f64;
        for j in 0..n {
            let bj = basis(n, j);
            let prod = self.multiply(&self.unit, &bj);
            unit = unit.max(max_vec_diff(&prod, &bj) / unit_scale.max(1.0));
        }

        let beta = self.beta_matrix();
        let beta_min_singular = smallest_singular(&beta);
        let beta_max_singular = crate::tensor::op_norm(&beta);

        AxiomReport { associativity, commutativity, unit, beta_min_singular, beta_max_singular, tol }
    }

    /// The copairing `γ ∈ V ⊗ V`, the inverse tensor of β, found by
    /// solving `B · X = I` (coordinates `γ[(i,j)] = X[i][j]`).
    pub fn copairing(&self, tol: f64) -> Result<Vec<Scalar>> {
        let beta = self.beta_matrix();
        let x = solve::solve(&beta, &Matrix::identity(self.dim), tol)?;
        let n = self.dim;
        let mut gamma = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                gamma.push(x[(i, j)]);
            }
        }
        Ok(gamma)
    }

    /// Comultiplication `δ = (id ⊗ μ)(γ ⊗ id): V → V ⊗ V` as an
    /// n² × n matrix: `δ(b_k) = Σ_{i,j} γ_{ij} b_i ⊗ μ(b_j, b_k)`.
    pub fn comultiplication(&self, tol: f64) -> Result<Matrix> {
        let n = self.dim;
        let gamma = self.copairing(tol)?;
        let mut delta = Matrix::zeros(n * n, n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let g = gamma[i * n + j];
                    if g.norm_sqr() == 0.0 {
                        continue;
                    }
                    for l in 0..n {
                        delta[(i * n + l, k)] += g * self.structure_constant(j, k, l);
                    }
                }
            }
        }
        Ok(delta)
    }

    /// The handle operator `H = μ ∘ δ: V → V`.
    pub fn handle_operator(&self, tol: f64) -> Result<Matrix> {
        Ok(self.mul_matrix().mul(&self.comultiplication(tol)?))
    }

    /// Invariant of the closed genus-g surface, `ε(H^g(η))`.
    pub fn closed_surface(&self, genus: usize, tol: f64) -> Result<Scalar> {
        if genus == 0 {
            return Ok(self.counit_apply(&self.unit));
        }
        let h = self.handle_operator(tol)?.pow(genus);
        Ok(self.counit_apply(&h.apply(&self.unit)))
    }
}

/// The structures derived from a valid algebra, bundled: pairing matrix,
/// copairing tensor, comultiplication, and handle operator. Construction
/// verifies the snake relation and coassociativity.
#[derive(Clone, Debug)]
pub struct DerivedStructures {
    pub beta: Matrix,
    pub gamma: Vec<Scalar>,
    pub comul: Matrix,
    pub handle: Matrix,
    pub snake_residual: f64,
    pub coassociativity_residual: f64,
}

impl DerivedStructures {
    pub fn compute(a: &FrobeniusAlgebra, tol: f64) -> Result<Self> {
        let n = a.dim();
        let beta = a.beta_matrix();
        let gamma = a.copairing(tol)?;
        let comul = a.comultiplication(tol)?;
        let handle = a.mul_matrix().mul(&comul);

        let snake = snake_matrix(a, &gamma);
        let snake_residual = crate::tensor::rel_diff(&snake, &Matrix::identity(n));

        // (id ⊗ δ) ∘ δ = (δ ⊗ id) ∘ δ
        let id = Matrix::identity(n);
        let left = kron(&id, &comul).mul(&comul);
        let right = kron(&comul, &id).mul(&comul);
        let coassociativity_residual = crate::tensor::rel_diff(&left, &right);

        Ok(DerivedStructures { beta, gamma, comul, handle, snake_residual, coassociativity_residual })
    }
}

/// Per-axiom residuals; failures are entries here, not errors.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub associativity: f64,
    pub commutativity: f64,
    pub unit: f64,
    /// Smallest singular value of the pairing matrix B.
    pub beta_min_singular: f64,
    pub beta_max_singular: f64,
    pub tol: f64,
}

impl AxiomReport {
    pub fn nondegenerate(&self) -> bool {
        self.beta_min_singular > self.tol * self.beta_max_singular.max(1e-300)
    }

    pub fn pass(&self) -> bool {
        self.associativity <= self.tol
            && self.commutativity <= self.tol
            && self.unit <= self.tol
            && self.nondegenerate()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        // NaN residuals count as failures
        let exceeds = |v: f64| v > self.tol || v.is_nan();
        let mut out = Vec::new();
        if exceeds(self.associativity) {
            out.push("associativity");
        }
        if exceeds(self.commutativity) {
            out.push("commutativity");
        }
        if exceeds(self.unit) {
            out.push("unit law");
        }
        if !self.nondegenerate() {
            out.push("nondegeneracy");
        }
        out
    }
}

pub fn basis(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::new(0.0, 0.0); n];
    v[i] = Scalar::new(1.0, 0.0);
    v
}

pub fn max_vec_diff(a: &[Scalar], b: &[Scalar]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Diagonal algebra with `μ(e_i, e_j) = δ_ij e_i` and `ε(e_i) = w_i`;
/// the model case every unitary theory reduces to.
pub fn diagonal_algebra(weights: &[f64]) -> FrobeniusAlgebra {
    let n = weights.len();
    let mut mul = vec![Scalar::new(0.0, 0.0); n * n * n];
    for i in 0..n {
        mul[(i * n + i) * n + i] = Scalar::new(1.0, 0.0);
    }
    let unit = vec![Scalar::new(1.0, 0.0); n];
    let counit = weights.iter().map(|&w| Scalar::new(w, 0.0)).collect();
    FrobeniusAlgebra::new(n, mul, unit, counit).expect("diagonal algebra data is well-formed")
}

/// Group algebra of ℤ/2 on the basis {1, g} with ε(1) = 1, ε(g) = 0.
pub fn group_algebra_z2() -> FrobeniusAlgebra {
    let one = Scalar::new(1.0, 0.0);
    let zero = Scalar::new(0.0, 0.0);
    // c[0][0] = 1, c[0][1] = g, c[1][0] = g, c[1][1] = 1
    let mul = vec![one, zero, zero, one, zero, one, one, zero];
    FrobeniusAlgebra::new(2, mul, vec![one, zero], vec![one, zero]).unwrap()
}

/// Tensor square of the multiplication snake-contracted against γ:
/// `(id ⊗ β)(γ ⊗ id)` as a matrix. Identity when γ inverts β.
pub fn snake_matrix(a: &FrobeniusAlgebra, gamma: &[Scalar]) -> Matrix {
    let n = a.dim();
    let beta = a.beta_matrix();
    Matrix::from_fn(n, n, |i, k| {
        (0..n).map(|j| gamma[i * n + j] * beta[(j, k)]).sum()
    })
}

/// The Frobenius relation `(id ⊗ μ)(δ ⊗ id) = δ ∘ μ` residual, scaled.
pub fn frobenius_relation_residual(a: &FrobeniusAlgebra, tol: f64) -> Result<f64> {
    let n = a.dim();
    let delta = a.comultiplication(tol)?;
    let mu = a.mul_matrix();
    // (id ⊗ μ)(δ ⊗ id): V⊗V → V⊗V
    let lhs = kron(&Matrix::identity(n), &mu).mul(&kron(&delta, &Matrix::identity(n)));
    let rhs = delta.mul(&mu);
    Ok(crate::tensor::rel_diff(&lhs, &rhs))
}
