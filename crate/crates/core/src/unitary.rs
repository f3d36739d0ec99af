//! Classification of unitary TQFT data: a positive-definite Hermitian
//! pair decomposes into one-dimensional positive Frobenius algebras.
//! The idempotent basis comes from simultaneously diagonalizing the
//! left-multiplication operators of the real form; the handle spectrum
//! and the C*-norm identity follow from the weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frobenius::{max_vec_diff, FrobeniusAlgebra};
use crate::hermitian::{build_involution, extract_real_form, HermitianStructure};
use crate::tensor::{simultaneous_diagonalize, solve, Matrix, Scalar};

/// The data Theorem-level structure assigns to a unitary pair: primitive
/// idempotents `e_i`, positive weights `w_i = ε(e_i)`, and the handle
/// eigenvalues `λ_i = 1/w_i`. Idempotents are ordered by ascending
/// weight, ties broken lexicographically by input-basis coordinates.
#[derive(Clone, Debug)]
pub struct UnitaryClassification {
    pub idempotents: Vec<Vec<Scalar>>,
    pub weights: Vec<f64>,
    pub lambdas: Vec<f64>,
    /// Columns are the idempotents in the input basis.
    pub change_of_basis: Matrix,
    pub residuals: ClassificationResiduals,
}

#[derive(Clone, Debug)]
pub struct ClassificationResiduals {
    /// `μ(e_i, e_j) = δ_ij e_i`
    pub idempotency: f64,
    /// `Σ_i e_i = η`
    pub unit_decomposition: f64,
    /// structure constants and counit rebuilt from the decomposition
    pub reconstruction: f64,
    /// imaginary part discarded from the weights
    pub weight_imag: f64,
}

impl ClassificationResiduals {
    pub fn worst(&self) -> f64 {
        self.idempotency
            .max(self.unit_decomposition)
            .max(self.reconstruction)
            .max(self.weight_imag)
    }
}

pub fn classify(
    a: &FrobeniusAlgebra,
    h: &HermitianStructure,
    tol: f64,
) -> Result<UnitaryClassification> {
    let (j, _report) = build_involution(a, h, tol)?;

    let eigs = h.eigenvalues();
    let escale = eigs.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
    if let Some(&min) = eigs.first() {
        if min <= tol * escale {
            return Err(Error::NotPositiveDefinite { eigenvalue: min, tol });
        }
    }

    let rf = extract_real_form(a, &j, tol)?;
    let n = a.dim();

    // real form data: left multiplications and the restricted pairing
    let mul0 = |p: usize, q: usize, r: usize| rf.mul[(p * n + q) * n + r];
    let ops: Vec<Matrix> = (0..n)
        .map(|p| Matrix::from_fn(n, n, |r, q| Scalar::new(mul0(p, q, r), 0.0)))
        .collect();
    let form = Matrix::from_fn(n, n, |p, q| {
        Scalar::new((0..n).map(|r| mul0(p, q, r) * rf.counit[r]).sum(), 0.0)
    });

    let sd = simultaneous_diagonalize(&ops, &form, tol)?;

    // diagonals form the character table: X[i][p] is the eigenvalue of
    // left multiplication by real-basis vector p on joint eigenvector i;
    // the idempotents are the dual basis of the characters
    let x = Matrix::from_fn(n, n, |i, p| Scalar::new(sd.diagonals[p][i], 0.0));
    let x_inv = solve::inverse(&x, tol)?;

    let mut items: Vec<(f64, Vec<Scalar>)> = Vec::with_capacity(n);
    let mut weight_imag = 0.0f64;
    for i in 0..n {
        // e_i = Σ_p (X⁻¹)[p][i] · (real-form basis vector p), in input coords
        let coords = x_inv.column(i);
        let e = rf.basis.apply(&coords);
        let w = a.counit_apply(&e);
        weight_imag = weight_imag.max(w.im.abs() / w.norm().max(1e-300));
        if w.re <= 0.0 {
            return Err(Error::NotPositiveDefinite { eigenvalue: w.re, tol });
        }
        items.push((w.re, e));
    }

    items.sort_by(|(wa, ea), (wb, eb)| {
        wa.total_cmp(wb).then_with(|| {
            for (za, zb) in ea.iter().zip(eb) {
                let c = za.re.total_cmp(&zb.re).then(za.im.total_cmp(&zb.im));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let weights: Vec<f64> = items.iter().map(|(w, _)| *w).collect();
    let idempotents: Vec<Vec<Scalar>> = items.into_iter().map(|(_, e)| e).collect();
    let lambdas: Vec<f64> = weights.iter().map(|w| 1.0 / w).collect();
    let mut change_of_basis = Matrix::zeros(n, n);
    for (i, e) in idempotents.iter().enumerate() {
        change_of_basis.set_column(i, e);
    }

    let residuals = classification_residuals(a, &idempotents, &weights, &change_of_basis, weight_imag, tol)?;
    Ok(UnitaryClassification { idempotents, weights, lambdas, change_of_basis, residuals })
}

fn classification_residuals(
    a: &FrobeniusAlgebra,
    idempotents: &[Vec<Scalar>],
    weights: &[f64],
    change_of_basis: &Matrix,
    weight_imag: f64,
    tol: f64,
) -> Result<ClassificationResiduals> {
    let n = a.dim();
    let e_scale = idempotents
        .iter()
        .flat_map(|e| e.iter().map(|z| z.norm()))
        .fold(1e-300f64, f64::max);

    let mut idempotency = 0.0f64;
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let prod = a.multiply(ei, ej);
            let expected: Vec<Scalar> = if i == j {
                ei.clone()
            } else {
                vec![Scalar::new(0.0, 0.0); n]
            };
            idempotency = idempotency.max(max_vec_diff(&prod, &expected) / e_scale);
        }
    }

    let mut sum = vec![Scalar::new(0.0, 0.0); n];
    for e in idempotents {
        for (s, z) in sum.iter_mut().zip(e) {
            *s += z;
        }
    }
    let unit_scale = a.unit().iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let unit_decomposition = max_vec_diff(&sum, a.unit()) / unit_scale;

    // rebuild μ and ε from the decomposition and compare
    let e_inv = solve::inverse(change_of_basis, tol)?;
    let c_scale = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .map(|(i, j, k)| a.structure_constant(i, j, k).norm())
        .fold(1.0f64, f64::max);
    let mut reconstruction = 0.0f64;
    for p in 0..n {
        for q in 0..n {
            let xi_p = e_inv.column(p);
            let xi_q = e_inv.column(q);
            let hadamard: Vec<Scalar> = xi_p.iter().zip(&xi_q).map(|(a, b)| a * b).collect();
            let rebuilt = change_of_basis.apply(&hadamard);
            let expected: Vec<Scalar> = (0..n).map(|k| a.structure_constant(p, q, k)).collect();
            reconstruction = reconstruction.max(max_vec_diff(&rebuilt, &expected) / c_scale);
        }
        let eps_hat: Scalar = e_inv
            .column(p)
            .iter()
            .zip(weights)
            .map(|(xi, &w)| xi * w)
            .sum();
        let eps_scale = a.counit().iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        reconstruction = reconstruction.max((eps_hat - a.counit()[p]).norm() / eps_scale);
    }

    Ok(ClassificationResiduals { idempotency, unit_decomposition, reconstruction, weight_imag })
}

/// The handle eigenvalues `{1/ε(e_i)}`, aligned with the classification's
/// idempotent order (weights ascending, so the spectrum is descending).
pub fn handle_spectrum(c: &UnitaryClassification) -> Vec<f64> {
    c.lambdas.clone()
}

/// Closed-surface invariants `Σ_i w_i^{1−g}` for `g = 0, …, g_max`.
pub fn closed_surface_series(c: &UnitaryClassification, g_max: usize) -> Vec<f64> {
    (0..=g_max)
        .map(|g| c.weights.iter().map(|w| w.powi(1 - g as i32)).sum())
        .collect()
}

/// Worst-case deviations from the C*-Frobenius conditions over seeded
/// random samples: positivity `β(J(x), x) > 0` and the norm identity
/// `‖μ(J(x), x)‖ = ‖x‖·‖J(x)‖`, with the operator norm computed in the
/// idempotent representation (max coordinate magnitude).
#[derive(Clone, Debug)]
pub struct CStarReport {
    pub samples: usize,
    /// worst relative deviation of `‖μ(J(x), x)‖` from `‖x‖·‖J(x)‖`
    pub norm_identity: f64,
    /// worst relative deviation of `β(J(x), x)` from `Σ w_i |ξ_i|²`
    pub positivity: f64,
    /// smallest observed value of `β(J(x), x)`
    pub min_positivity_value: f64,
    pub tol: f64,
}

impl CStarReport {
    pub fn pass(&self) -> bool {
        self.norm_identity <= self.tol && self.positivity <= self.tol && self.min_positivity_value > 0.0
    }
}

pub fn cstar_check(
    a: &FrobeniusAlgebra,
    h: &HermitianStructure,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CStarReport> {
    let c = classify(a, h, tol)?;
    let (j, _) = build_involution(a, h, tol)?;
    let e_inv = solve::inverse(&c.change_of_basis, tol)?;
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let sup = |v: &[Scalar]| v.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let mut norm_identity = 0.0f64;
    let mut positivity = 0.0f64;
    let mut min_positivity_value = f64::INFINITY;

    for _ in 0..samples {
        // nonzero sample: idempotent-coordinate sup norm at least 0.1
        let (x, xi) = loop {
            let x: Vec<Scalar> = (0..n)
                .map(|_| Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let xi = e_inv.apply(&x);
            if sup(&xi) >= 0.1 {
                break (x, xi);
            }
        };
        let norm_x = sup(&xi);
        let jx = j.apply(&x);
        let norm_jx = sup(&e_inv.apply(&jx));
        let prod = a.multiply(&jx, &x);
        let norm_prod = sup(&e_inv.apply(&prod));
        let expected_norm = norm_x * norm_jx;
        norm_identity = norm_identity.max((norm_prod - expected_norm).abs() / expected_norm);

        let value = a.pairing(&jx, &x)?;
        let expected: f64 = xi.iter().zip(&c.weights).map(|(z, &w)| w * z.norm_sqr()).sum();
        positivity = positivity.max((value - Scalar::new(expected, 0.0)).norm() / expected);
        min_positivity_value = min_positivity_value.min(value.re);
    }

    Ok(CStarReport { samples, norm_identity, positivity, min_positivity_value, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{basis, diagonal_algebra, group_algebra_z2};
    use crate::tensor::hermitian_eigen;

    fn re(x: f64) -> Scalar {
        Scalar::new(x, 0.0)
    }

    fn beta_form(a: &FrobeniusAlgebra) -> HermitianStructure {
        HermitianStructure::new(a.beta_matrix(), 1e-9).unwrap()
    }

    #[test]
    fn classify_already_diagonal() {
        let a = diagonal_algebra(&[1.0, 2.0]);
        let c = classify(&a, &beta_form(&a), 1e-9).unwrap();
        assert!((c.weights[0] - 1.0).abs() < 1e-10);
        assert!((c.weights[1] - 2.0).abs() < 1e-10);
        assert!(max_vec_diff(&c.idempotents[0], &basis(2, 0)) < 1e-10);
        assert!(max_vec_diff(&c.idempotents[1], &basis(2, 1)) < 1e-10);
        assert!(c.residuals.worst() < 1e-10);
    }

    #[test]
    fn classify_group_algebra() {
        // hand basis change: idempotents (1 ± g)/2, both of weight ½;
        // lexicographic tie-break puts (½, −½) first
        let a = group_algebra_z2();
        let h = HermitianStructure::new(Matrix::identity(2), 1e-9).unwrap();
        let c = classify(&a, &h, 1e-9).unwrap();
        assert!((c.weights[0] - 0.5).abs() < 1e-10);
        assert!((c.weights[1] - 0.5).abs() < 1e-10);
        assert!(max_vec_diff(&c.idempotents[0], &[re(0.5), re(-0.5)]) < 1e-9);
        assert!(max_vec_diff(&c.idempotents[1], &[re(0.5), re(0.5)]) < 1e-9);
        for l in handle_spectrum(&c) {
            assert!((l - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn negative_one_dim_rejected() {
        let a = diagonal_algebra(&[-1.0]);
        let h = HermitianStructure::new(Matrix::diag_real(&[-1.0]), 1e-9).unwrap();
        let err = classify(&a, &h, 1e-9).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn spectrum_pairs_with_weights() {
        let a = diagonal_algebra(&[1.0, 2.0]);
        let c = classify(&a, &beta_form(&a), 1e-9).unwrap();
        let spectrum = handle_spectrum(&c);
        assert!((spectrum[0] - 1.0).abs() < 1e-12);
        assert!((spectrum[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spectrum_matches_handle_operator_eigenvalues() {
        let a = group_algebra_z2();
        let h = HermitianStructure::new(Matrix::identity(2), 1e-9).unwrap();
        let c = classify(&a, &h, 1e-9).unwrap();
        let hop = a.handle_operator(1e-9).unwrap();
        let sym = hop.add(&hop.adjoint()).scale(re(0.5));
        let (eigs, _) = hermitian_eigen(&sym);
        let mut spectrum = handle_spectrum(&c);
        spectrum.sort_by(f64::total_cmp);
        for (got, expect) in eigs.iter().zip(&spectrum) {
            assert!((got - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn all_unit_weights_give_identity_handle() {
        let a = diagonal_algebra(&[1.0, 1.0, 1.0]);
        let c = classify(&a, &beta_form(&a), 1e-9).unwrap();
        assert!(handle_spectrum(&c).iter().all(|l| (l - 1.0).abs() < 1e-10));
    }

    #[test]
    fn round_trip_hidden_weights() {
        for dim in 1..=6 {
            let pair = crate::testgen::random_unitary_pair(dim, 1000 + dim as u64);
            let c = classify(&pair.algebra, &pair.hermitian, 1e-9).unwrap();
            for (got, hidden) in c.weights.iter().zip(&pair.weights) {
                assert!(
                    (got - hidden).abs() / hidden <= 1e-7,
                    "dim {dim}: weight {got} vs hidden {hidden}"
                );
            }
            assert!(c.residuals.worst() < 1e-9);
        }
    }

    #[test]
    fn faithfulness_on_unit() {
        // φ(x)(η) = x for the recovered idempotents
        let a = group_algebra_z2();
        let h = HermitianStructure::new(Matrix::identity(2), 1e-9).unwrap();
        let c = classify(&a, &h, 1e-9).unwrap();
        for e in &c.idempotents {
            let phi_e_unit = a.multiply(e, a.unit());
            assert!(max_vec_diff(&phi_e_unit, e) < 1e-10);
        }
    }

    #[test]
    fn copairing_in_idempotent_coordinates() {
        let pair = crate::testgen::random_unitary_pair(3, 77);
        let a = &pair.algebra;
        let c = classify(a, &pair.hermitian, 1e-9).unwrap();
        let n = a.dim();
        let gamma = a.copairing(1e-9).unwrap();
        let e_inv = solve::inverse(&c.change_of_basis, 1e-9).unwrap();
        // transform γ by E⁻¹ ⊗ E⁻¹ and compare with Σ (1/w_i) e_i ⊗ e_i
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                let mut got = Scalar::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        got += e_inv[(p, i)] * e_inv[(q, j)] * gamma[i * n + j];
                    }
                }
                let expected =
                    if p == q { Scalar::new(1.0 / c.weights[p], 0.0) } else { Scalar::new(0.0, 0.0) };
                worst = worst.max((got - expected).norm());
            }
        }
        assert!(worst < 1e-8, "copairing mismatch {worst}");
    }

    #[test]
    fn cstar_hand_example() {
        // weights (1, 2), x = e₁ + i·e₂: J(x) = e₁ − i·e₂,
        // μ(J(x), x) = e₁ + e₂, all idempotent-norms 1, and
        // β(J(x), x) = ε(e₁ + e₂) = 3
        let a = diagonal_algebra(&[1.0, 2.0]);
        let h = beta_form(&a);
        let (j, _) = build_involution(&a, &h, 1e-9).unwrap();
        let x = vec![re(1.0), Scalar::new(0.0, 1.0)];
        let jx = j.apply(&x);
        assert!(max_vec_diff(&jx, &[re(1.0), Scalar::new(0.0, -1.0)]) < 1e-12);
        let prod = a.multiply(&jx, &x);
        assert!(max_vec_diff(&prod, &[re(1.0), re(1.0)]) < 1e-12);
        let sup = |v: &[Scalar]| v.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        assert!((sup(&prod) - sup(&x) * sup(&jx)).abs() < 1e-12);
        let value = a.pairing(&jx, &x).unwrap();
        assert!((value - re(3.0)).norm() < 1e-12);
    }

    #[test]
    fn cstar_idempotent_and_scaling_cases() {
        let a = diagonal_algebra(&[1.0, 2.0]);
        let e1 = basis(2, 0);
        // ‖μ(e₁, e₁)‖ = ‖e₁‖² = 1
        let prod = a.multiply(&e1, &e1);
        assert!(max_vec_diff(&prod, &e1) < 1e-14);
        // x = 2e₁: β(J(x), x) = 4·w₁ = 4
        let h = beta_form(&a);
        let (j, _) = build_involution(&a, &h, 1e-9).unwrap();
        let x = vec![re(2.0), re(0.0)];
        let value = a.pairing(&j.apply(&x), &x).unwrap();
        assert!((value - re(4.0)).norm() < 1e-12);
    }

    #[test]
    fn cstar_sweep_passes() {
        let pair = crate::testgen::random_unitary_pair(4, 4242);
        let report = cstar_check(&pair.algebra, &pair.hermitian, 200, 7, 1e-9).unwrap();
        assert!(report.pass(), "report: {report:?}");
        assert!(report.norm_identity < 1e-10);
        assert!(report.positivity < 1e-10);
        assert!(report.min_positivity_value > 1e-4);
    }

    #[test]
    fn surface_series_matches_closed_surface() {
        let pair = crate::testgen::random_unitary_pair(3, 99);
        let a = &pair.algebra;
        let c = classify(a, &pair.hermitian, 1e-9).unwrap();
        let series = closed_surface_series(&c, 5);
        for (g, expected) in series.iter().enumerate() {
            let direct = a.closed_surface(g, 1e-9).unwrap();
            assert!(
                (direct - re(*expected)).norm() / expected.abs().max(1.0) < 1e-9,
                "genus {g}: {direct} vs {expected}"
            );
        }
        // g = 1 is the dimension
        assert!((series[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn surface_series_hand_values() {
        let a = diagonal_algebra(&[1.0, 2.0]);
        let c = classify(&a, &beta_form(&a), 1e-9).unwrap();
        let series = closed_surface_series(&c, 3);
        assert!((series[0] - 3.0).abs() < 1e-12); // Σ w
        assert!((series[1] - 2.0).abs() < 1e-12); // n
        assert!((series[2] - 1.5).abs() < 1e-12); // 1 + ½
        assert!((series[3] - 1.25).abs() < 1e-12); // 1 + ¼
    }

    #[test]
    fn positivity_margin_sweep() {
        let pair = crate::testgen::random_unitary_pair(3, 31337);
        let a = &pair.algebra;
        let h = &pair.hermitian;
        let (j, _) = build_involution(a, h, 1e-9).unwrap();
        let c = classify(a, h, 1e-9).unwrap();
        let e_inv = solve::inverse(&c.change_of_basis, 1e-9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let x: Vec<Scalar> = (0..3)
                .map(|_| Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let xi = e_inv.apply(&x);
            if xi.iter().map(|z| z.norm()).fold(0.0f64, f64::max) < 0.1 {
                continue;
            }
            let value = a.pairing(&j.apply(&x), &x).unwrap();
            assert!(value.re > 1e-9, "positivity margin too small: {value}");
            assert!(value.im.abs() < 1e-9 * value.re.max(1.0));
        }
    }
}
