//! Dense complex linear algebra substrate: matrices, Kronecker products,
//! conjugate-linear maps, linear solves, Hermitian eigendecomposition,
//! and simultaneous diagonalization of commuting self-adjoint families.

pub mod conj;
pub mod eigen;
pub mod matrix;
pub mod simdiag;
pub mod solve;

pub use conj::ConjugateLinearMap;
pub use eigen::{hermitian_eigen, op_norm, smallest_singular};
pub use matrix::{kron, kron_pow, rel_diff, scalar, tensor_permutation, Matrix, Scalar};
pub use simdiag::{simdiag_residuals, simultaneous_diagonalize, SimDiag};
pub use solve::{inverse, solve};
