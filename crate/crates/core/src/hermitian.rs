//! Hermitian structures on the state space and the algebraic content of
//! the Hermitian axiom: the induced forms on duals and tensor products,
//! the conjugate-linear involution J with h(x, J(y)) = β(x, y), the real
//! form of fixed points, and adjoint verification for cobordisms.

use crate::cobordism::{evaluate, Cobordism};
use crate::error::{Error, Result};
use crate::frobenius::{basis, max_vec_diff, FrobeniusAlgebra};
use crate::tensor::{
    hermitian_eigen, kron, kron_pow, solve, ConjugateLinearMap, Matrix, Scalar,
};

/// A nondegenerate Hermitian form, stored as `mat[i][j] = h(b_i, b_j)`,
/// linear in the first argument and conjugate-linear in the second.
/// Positive-definiteness is a queryable property, not an invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianStructure {
    mat: Matrix,
}

impl HermitianStructure {
    pub fn new(mat: Matrix, tol: f64) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "hermitian matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if !mat.all_finite() {
            return Err(Error::NonFinite("hermitian matrix".into()));
        }
        let scale = mat.max_abs().max(1e-300);
        let asymmetry = mat.sub(&mat.adjoint()).max_abs() / scale;
        if asymmetry > tol {
            return Err(Error::DimensionMismatch(format!(
                "matrix is not conjugate-symmetric: residual {asymmetry:.3e}"
            )));
        }
        let mat = mat.add(&mat.adjoint()).scale(Scalar::new(0.5, 0.0));
        let min = crate::tensor::smallest_singular(&mat);
        let max = crate::tensor::op_norm(&mat);
        if min <= tol * max.max(1e-300) {
            return Err(Error::SingularMatrix { pivot: min, tol });
        }
        Ok(HermitianStructure { mat })
    }

    /// For forms built from already-validated forms (tensor products,
    /// duals): skips the checks.
    fn from_valid(mat: Matrix) -> Self {
        HermitianStructure { mat }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// `h(x, y) = Σ_{ij} x_i conj(y_j) mat[i][j]`.
    pub fn evaluate(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let n = self.dim();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut out = Scalar::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                out += x[i] * y[j].conj() * self.mat[(i, j)];
            }
        }
        out
    }

    /// Gram matrix `G = matᵀ`, so that `h(v, w) = conj(w)ᵀ · G · v`.
    pub fn gram(&self) -> Matrix {
        self.mat.transpose()
    }

    /// The conjugate-linear isomorphism `H: V → V*`, `v ↦ h(·, v)`;
    /// in dual-basis coordinates that is `v ↦ mat · conj(v)`.
    pub fn dual_iso(&self) -> ConjugateLinearMap {
        ConjugateLinearMap::new(self.mat.clone())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.mat).0
    }

    pub fn is_positive_definite(&self, tol: f64) -> bool {
        let vals = self.eigenvalues();
        let scale = vals.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
        vals.iter().all(|&v| v > tol * scale)
    }

    /// (positive, negative) eigenvalue counts.
    pub fn signature(&self) -> (usize, usize) {
        let vals = self.eigenvalues();
        let pos = vals.iter().filter(|&&v| v > 0.0).count();
        (pos, vals.len() - pos)
    }
}

/// The form on the dual space: in dual-basis coordinates its matrix is
/// the conjugate inverse of h's, which realizes
/// `h*(h(·,v), h(·,w)) = h(w, v)`.
pub fn induced_dual_form(h: &HermitianStructure, tol: f64) -> Result<HermitianStructure> {
    let inv = solve::inverse(h.matrix(), tol)?;
    Ok(HermitianStructure::from_valid(inv.conj()))
}

/// The form on `V₁ ⊗ V₂`: `h(v₁⊗v₂, w₁⊗w₂) = h₁(v₁,w₁) h₂(v₂,w₂)`,
/// i.e. the Kronecker product of the matrices.
pub fn induced_tensor_form(h1: &HermitianStructure, h2: &HermitianStructure) -> HermitianStructure {
    HermitianStructure::from_valid(kron(h1.matrix(), h2.matrix()))
}

/// Residuals of the four consequences of the Hermitian axiom checked on
/// a candidate involution; all four are always computed.
#[derive(Clone, Debug)]
pub struct HermitianReport {
    /// `J ∘ J = id`
    pub involution: f64,
    /// `J(η) = η`
    pub unit: f64,
    /// `J(μ(x, y)) = μ(J(x), J(y))` over basis pairs
    pub multiplicativity: f64,
    /// `ε` real on J-fixed vectors
    pub counit_realness: f64,
    pub tol: f64,
}

impl HermitianReport {
    pub fn pass(&self) -> bool {
        self.involution <= self.tol
            && self.unit <= self.tol
            && self.multiplicativity <= self.tol
            && self.counit_realness <= self.tol
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.involution > self.tol {
            out.push("involution");
        }
        if self.unit > self.tol {
            out.push("unit fixed");
        }
        if self.multiplicativity > self.tol {
            out.push("multiplicativity");
        }
        if self.counit_realness > self.tol {
            out.push("counit realness");
        }
        out
    }
}

impl std::fmt::Display for HermitianReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "involution {:.3e}, unit {:.3e}, multiplicativity {:.3e}, counit realness {:.3e} (tol {:.1e})",
            self.involution, self.unit, self.multiplicativity, self.counit_realness, self.tol
        )
    }
}

/// Constructs the candidate involution `J = H⁻¹ ∘ B` from
/// `h(x, J(y)) = β(x, y)` — as a matrix acting after conjugation that is
/// `conj(H⁻¹B)` — and checks the four Hermitian-axiom consequences.
/// All four pass exactly when (a, h) is Hermitian TQFT data.
pub fn build_involution(
    a: &FrobeniusAlgebra,
    h: &HermitianStructure,
    tol: f64,
) -> Result<(ConjugateLinearMap, HermitianReport)> {
    if a.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebra dimension {} vs hermitian form dimension {}",
            a.dim(),
            h.dim()
        )));
    }
    let n = a.dim();
    let beta = a.beta_matrix();
    let jmat = solve::solve(h.matrix(), &beta, tol)?.conj();
    let j = ConjugateLinearMap::new(jmat);

    let jscale = j.matrix().max_abs().max(1.0);
    let involution = j.involution_residual() / jscale.powi(2).max(1.0);

    let unit_scale = a.unit().iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let unit = max_vec_diff(&j.apply(a.unit()), a.unit()) / (unit_scale * jscale);

    let cmax = (0..n)
        .flat_map(|i| (0..n).flat_map(move |k| (0..n).map(move |l| (i, k, l))))
        .map(|(i, k, l)| a.structure_constant(i, k, l).norm())
        .fold(1e-300f64, f64::max);
    let mut multiplicativity = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            let bi = basis(n, i);
            let bk = basis(n, k);
            let lhs = j.apply(&a.multiply(&bi, &bk));
            let rhs = a.multiply(&j.apply(&bi), &j.apply(&bk));
            multiplicativity =
                multiplicativity.max(max_vec_diff(&lhs, &rhs) / (cmax * jscale.powi(2)));
        }
    }

    // ε real on the fixed space: check its real spanning set
    let eps_scale = a.counit().iter().map(|z| z.norm()).fold(1e-300f64, f64::max) * (1.0 + jscale);
    let mut counit_realness = 0.0f64;
    for k in 0..n {
        let bk = basis(n, k);
        let jbk = j.apply(&bk);
        let fixed_sum: Vec<Scalar> = bk.iter().zip(&jbk).map(|(x, y)| x + y).collect();
        let i = Scalar::new(0.0, 1.0);
        let fixed_diff: Vec<Scalar> = bk.iter().zip(&jbk).map(|(x, y)| (x - y) * i).collect();
        counit_realness = counit_realness
            .max(a.counit_apply(&fixed_sum).im.abs() / eps_scale)
            .max(a.counit_apply(&fixed_diff).im.abs() / eps_scale);
    }

    let report = HermitianReport { involution, unit, multiplicativity, counit_realness, tol };
    if report.pass() {
        Ok((j, report))
    } else {
        Err(Error::IncompatiblePair(report))
    }
}

/// The real Frobenius algebra of J-fixed points: a real basis of
/// `V₀ = {v : J(v) = v}` together with the (real) restrictions of μ and ε.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub involution: ConjugateLinearMap,
    /// Columns span the fixed space; orthonormal in the real sense.
    pub basis: Matrix,
    /// Structure constants in the fixed basis, `mul[(a·n + b)·n + c]`.
    pub mul: Vec<f64>,
    pub counit: Vec<f64>,
    /// Largest imaginary part discarded when realifying μ and ε.
    pub imag_residual: f64,
    /// Residual of rebuilding the complex algebra from the real data.
    pub complexification_residual: f64,
}

/// Extracts the real form from a verified involution: builds the
/// 2n-vector real spanning set `{b_k + J(b_k), i(b_k − J(b_k))}`,
/// reduces it to rank n by column-pivoted orthogonalization, and
/// expresses μ and ε in the resulting basis.
pub fn extract_real_form(
    a: &FrobeniusAlgebra,
    j: &ConjugateLinearMap,
    tol: f64,
) -> Result<RealForm> {
    if a.dim() != j.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebra dimension {} vs involution dimension {}",
            a.dim(),
            j.dim()
        )));
    }
    let n = a.dim();
    let i = Scalar::new(0.0, 1.0);
    let mut candidates: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n);
    for k in 0..n {
        let bk = basis(n, k);
        let jbk = j.apply(&bk);
        candidates.push(bk.iter().zip(&jbk).map(|(x, y)| x + y).collect());
        candidates.push(bk.iter().zip(&jbk).map(|(x, y)| (x - y) * i).collect());
    }

    // column-pivoted Gram-Schmidt over ℝ (V viewed as ℝ^{2n})
    let real_dot = |u: &[Scalar], v: &[Scalar]| -> f64 {
        u.iter().zip(v).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
    };
    let max_norm = candidates
        .iter()
        .map(|c| real_dot(c, c).sqrt())
        .fold(0.0f64, f64::max);
    let threshold = tol * max_norm.max(1e-300);
    let mut selected: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut remaining = candidates;
    loop {
        let (best_idx, best_norm) = remaining
            .iter()
            .enumerate()
            .map(|(idx, c)| (idx, real_dot(c, c).sqrt()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((0, 0.0));
        if best_norm <= threshold {
            break;
        }
        let mut chosen = remaining.swap_remove(best_idx);
        let inv = 1.0 / best_norm;
        for z in &mut chosen {
            *z *= inv;
        }
        for other in &mut remaining {
            let proj = real_dot(&chosen, other);
            for (o, c) in other.iter_mut().zip(&chosen) {
                *o -= proj * c;
            }
        }
        selected.push(chosen);
    }
    // a conjugate-linear involution fixes a real space of dimension
    // exactly n; any other rank means J was not an involution
    if selected.len() != n {
        return Err(Error::RankDeficient { found: selected.len(), expected: n });
    }

    let mut basis_mat = Matrix::zeros(n, n);
    for (col, v) in selected.iter().enumerate() {
        basis_mat.set_column(col, v);
    }

    // μ, ε in the fixed basis: solve E·X = products, drop the imaginary dust
    let mut products = Matrix::zeros(n, n * n);
    for a_idx in 0..n {
        for b_idx in 0..n {
            let p = a.multiply(&selected[a_idx], &selected[b_idx]);
            for (row, z) in p.iter().enumerate() {
                products[(row, a_idx * n + b_idx)] = *z;
            }
        }
    }
    let coords = solve::solve(&basis_mat, &products, tol)?;
    let cscale = coords.max_abs().max(1.0);
    let mut imag_residual = 0.0f64;
    let mut mul0 = vec![0.0f64; n * n * n];
    for a_idx in 0..n {
        for b_idx in 0..n {
            for c_idx in 0..n {
                let z = coords[(c_idx, a_idx * n + b_idx)];
                imag_residual = imag_residual.max(z.im.abs() / cscale);
                mul0[(a_idx * n + b_idx) * n + c_idx] = z.re;
            }
        }
    }
    let eps_scale = a.counit().iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let mut counit0 = vec![0.0f64; n];
    for (a_idx, v) in selected.iter().enumerate() {
        let e = a.counit_apply(v);
        imag_residual = imag_residual.max(e.im.abs() / eps_scale);
        counit0[a_idx] = e.re;
    }

    // complexification check: the real data pushed back through the
    // basis must reproduce the original structure constants
    let basis_inv = solve::inverse(&basis_mat, tol)?;
    let cscale_in = (0..n * n * n)
        .map(|idx| a.structure_constant(idx / (n * n), (idx / n) % n, idx % n).norm())
        .fold(1.0f64, f64::max);
    let mut complexification_residual = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            let xi_p = basis_inv.column(p);
            let xi_q = basis_inv.column(q);
            // μ̂(b_p, b_q) = E · mul0(ξ(b_p), ξ(b_q)), real-bilinearly
            let mut coords_out = vec![Scalar::new(0.0, 0.0); n];
            for ai in 0..n {
                for bi in 0..n {
                    let w = xi_p[ai] * xi_q[bi];
                    if w.norm_sqr() == 0.0 {
                        continue;
                    }
                    for ci in 0..n {
                        coords_out[ci] += w * mul0[(ai * n + bi) * n + ci];
                    }
                }
            }
            let rebuilt = basis_mat.apply(&coords_out);
            let expected: Vec<Scalar> =
                (0..n).map(|k| a.structure_constant(p, q, k)).collect();
            complexification_residual =
                complexification_residual.max(max_vec_diff(&rebuilt, &expected) / cscale_in);
        }
    }

    Ok(RealForm {
        involution: j.clone(),
        basis: basis_mat,
        mul: mul0,
        counit: counit0,
        imag_residual,
        complexification_residual,
    })
}

/// Residual of the adjoint identity `h_W(Z(M)v, w) = h_V(v, Z(M*)w)`,
/// with the forms on tensor powers induced from h and the empty boundary
/// carrying the standard form on ℂ. Zero (to tolerance) exactly when the
/// Hermitian axiom holds for this pair.
pub fn verify_adjoint(
    a: &FrobeniusAlgebra,
    h: &HermitianStructure,
    m: &Cobordism,
    tol: f64,
) -> Result<f64> {
    if a.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebra dimension {} vs hermitian form dimension {}",
            a.dim(),
            h.dim()
        )));
    }
    let z = evaluate(a, m, tol)?;
    let z_star = evaluate(a, &m.reverse(), tol)?;
    let g_in = kron_pow(h.matrix(), m.num_inputs()).transpose();
    let g_out = kron_pow(h.matrix(), m.num_outputs()).transpose();
    let lhs = g_out.mul(&z);
    let rhs = z_star.adjoint().mul(&g_in);
    let scale = lhs.max_abs().max(rhs.max_abs()).max(1e-300);
    Ok(lhs.sub(&rhs).max_abs() / scale)
}
