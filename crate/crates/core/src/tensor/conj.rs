//! Conjugate-linear maps, represented by a matrix applied after
//! entrywise conjugation in the ambient basis.

use super::matrix::{Matrix, Scalar};

/// The map `v ↦ mat · conj(v)`. Composing two of these is linear:
/// `(J₁ ∘ J₂)(v) = J₁.mat · conj(J₂.mat) · v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateLinearMap {
    mat: Matrix,
}

impl ConjugateLinearMap {
    pub fn new(mat: Matrix) -> Self {
        assert!(mat.is_square(), "conjugate-linear map needs a square matrix");
        ConjugateLinearMap { mat }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let conj: Vec<Scalar> = v.iter().map(Scalar::conj).collect();
        self.mat.apply(&conj)
    }

    /// The linear matrix of `self ∘ other`.
    pub fn compose(&self, other: &ConjugateLinearMap) -> Matrix {
        self.mat.mul(&other.mat.conj())
    }

    /// Residual of `J ∘ J = id`, relative to the identity.
    pub fn involution_residual(&self) -> f64 {
        let composed = self.compose(self);
        composed.sub(&Matrix::identity(self.dim())).max_abs()
    }
}
