//! Dense complex linear algebra at desk scale.

mod decomp;
mod matrix;

pub use decomp::{hermitian_eigenvalues, null_space_basis, orthonormalize, singular_values};
pub use matrix::{ComplexMatrix, C64};

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.kron(b)
}

/// Conjugate transpose.
pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}
