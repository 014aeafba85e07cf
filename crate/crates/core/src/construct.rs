//! New packings from old: tensoring with unitaries, tensoring two packings,
//! and orthogonal complementation.
//!
//! Both tensor constructions build the i-th basis as the blocks
//! `(e_1 ⊗ U_i | … | e_m ⊗ U_i)`, which is exactly `L_i ⊗ U_i`.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::generators::{random_unitaries, Seed};
use crate::linalg::{null_space_basis, ComplexMatrix};
use crate::model::{FieldTag, Packing, Subspace};
use crate::tolerance::Tolerance;

/// n unitaries of a common size r.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryList {
    field: FieldTag,
    size: usize,
    matrices: Vec<ComplexMatrix>,
}

impl UnitaryList {
    pub fn new(field: FieldTag, matrices: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        let size = matrices
            .first()
            .map(ComplexMatrix::rows)
            .ok_or_else(|| Error::Domain("empty unitary list".into()))?;
        if size == 0 {
            return Err(Error::Domain("unitary size must be positive".into()));
        }
        for (index, u) in matrices.iter().enumerate() {
            if u.shape() != (size, size) {
                return Err(Error::Mismatch(format!(
                    "unitary {index} is {}x{}, expected {size}x{size}",
                    u.rows(),
                    u.cols()
                )));
            }
            let deviation = u.orthonormality_defect();
            if deviation > tol.absolute() {
                return Err(Error::NotUnitary { index, deviation });
            }
            field.admits(u, tol)?;
        }
        Ok(UnitaryList {
            field,
            size,
            matrices,
        })
    }

    /// `count` seeded random unitaries of size `r`.
    pub fn random(field: FieldTag, r: usize, count: usize, seed: Seed) -> Result<Self> {
        Self::new(
            field,
            random_unitaries(field, r, count, seed)?,
            Tolerance::default(),
        )
    }

    /// `count` copies of the 1×1 identity.
    pub fn trivial(field: FieldTag, count: usize) -> Self {
        UnitaryList {
            field,
            size: 1,
            matrices: vec![ComplexMatrix::identity(1); count],
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// r
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }
}

fn assemble(field: FieldTag, bases: Vec<Result<ComplexMatrix>>, tol: Tolerance) -> Result<Packing> {
    let bases = bases.into_iter().collect::<Result<Vec<_>>>()?;
    Packing::from_bases(field, bases, tol)
}

/// Replaces each `W_i ∈ Gr(F,k,m)` by the column span of `L_i ⊗ U_i` in
/// Gr(F, rk, rm).
pub fn tensor_with_unitaries(p: &Packing, us: &UnitaryList, tol: Tolerance) -> Result<Packing> {
    tensor_with_unitaries_with(p, us, tol, Execution::default())
}

pub fn tensor_with_unitaries_with(
    p: &Packing,
    us: &UnitaryList,
    tol: Tolerance,
    exec: Execution,
) -> Result<Packing> {
    if us.len() != p.len() {
        return Err(Error::Mismatch(format!(
            "{} unitaries supplied for {} subspaces",
            us.len(),
            p.len()
        )));
    }
    if p.field() == FieldTag::Real && us.field() == FieldTag::Complex {
        p.field()
            .admits(&ComplexMatrix::hstack(us.matrices())?, tol)?;
    }
    let bases = exec.map_range(p.len(), |i| p.subspaces()[i].basis().kron(&us.matrices[i]));
    assemble(p.field(), bases, tol)
}

/// Tensors `p ⊂ Gr(F,k,m)` with `q ⊂ Gr(F,ℓ,r)` index by index, giving a
/// packing in Gr(F, kℓ, rm).
pub fn tensor_packings(p: &Packing, q: &Packing, tol: Tolerance) -> Result<Packing> {
    if p.len() != q.len() {
        return Err(Error::Mismatch(format!(
            "factors have {} and {} subspaces",
            p.len(),
            q.len()
        )));
    }
    if p.field() != q.field() {
        return Err(Error::Mismatch(format!(
            "factors are over {} and {}",
            p.field(),
            q.field()
        )));
    }
    let bases = Execution::default().map_range(p.len(), |i| {
        p.subspaces()[i].basis().kron(q.subspaces()[i].basis())
    });
    assemble(p.field(), bases, tol)
}

/// Orthogonal complements `W_i^⊥ ∈ Gr(F, k, k - m)`.
pub fn complement(p: &Packing, tol: Tolerance) -> Result<Packing> {
    if p.dim() >= p.ambient_dim() {
        return Err(Error::Domain(format!(
            "complement of {}-dimensional subspaces of F^{} is zero-dimensional",
            p.dim(),
            p.ambient_dim()
        )));
    }
    let subspaces = Execution::default().map_slice(p.subspaces(), |w| {
        Subspace::new(p.field(), null_space_basis(&w.basis().adjoint(), tol), tol)
    });
    let subspaces = subspaces
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.map_err(|e| Error::in_subspace(i, e)))
        .collect::<Result<Vec<_>>>()?;
    Packing::new(subspaces)
}
