//! Two-dimensional topological quantum field theories as computations:
//! commutative Frobenius algebras over ℂ, cobordisms evaluated as linear
//! maps, and constructive verification of the Hermitian and unitary
//! structure of such theories.
//!
//! The pieces:
//!
//! - [`tensor`]: dense complex matrices, Kronecker products, Hermitian
//!   eigendecomposition, simultaneous diagonalization.
//! - [`frobenius`]: the algebra data model (μ, η, ε) and derived
//!   structures — pairing β, copairing γ, comultiplication δ, handle
//!   operator, closed-surface invariants.
//! - [`cobordism`]: cobordisms as wired unions of connected components,
//!   gluing with Euler-characteristic genus bookkeeping, normal forms,
//!   orientation reversal, and evaluation.
//! - [`hermitian`]: Hermitian forms, the induced involution J with
//!   h(x, J(y)) = β(x, y), real-form extraction, adjoint verification.
//! - [`unitary`]: classification into positive idempotent weights,
//!   handle spectrum, and C*-identity checks.
//! - [`dsl`] / [`algfile`]: the expression language and the JSON
//!   algebra file format.

// index-style loops mirror the tensor-index notation of the math
#![allow(clippy::needless_range_loop)]

pub mod algfile;
pub mod cobordism;
pub mod dsl;
pub mod error;
pub mod frobenius;
pub mod hermitian;
pub mod tensor;
pub mod testgen;
pub mod unitary;

pub use error::{Error, Result};
pub use tensor::{Matrix, Scalar};

/// Default relative tolerance for residual checks; every operation that
/// takes a `tol` accepts an override.
pub const DEFAULT_TOL: f64 = 1e-9;
