//! Subspaces of F^k stored by orthonormal basis, and packings of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, ComplexMatrix};
use crate::tolerance::Tolerance;

/// Ground field of a packing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Real => "R",
            FieldTag::Complex => "C",
        }
    }

    /// Checks that `m` is admissible data for this field.
    pub fn admits(self, m: &ComplexMatrix, tol: Tolerance) -> Result<()> {
        if self == FieldTag::Real {
            let max_imag = m.max_imag();
            if max_imag > tol.absolute() {
                return Err(Error::FieldViolation { max_imag });
            }
        }
        Ok(())
    }

    /// Field able to hold data from both: Real only when both are Real.
    pub fn meet(self, other: FieldTag) -> FieldTag {
        if self == FieldTag::Real && other == FieldTag::Real {
            FieldTag::Real
        } else {
            FieldTag::Complex
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(FieldTag::Real),
            "C" | "c" | "complex" => Ok(FieldTag::Complex),
            other => Err(Error::Parse(format!(
                "unknown field {other:?}, expected R or C"
            ))),
        }
    }
}

/// A point of Gr(F, k, m): the column span of a k×m matrix with orthonormal
/// columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    field: FieldTag,
    basis: ComplexMatrix,
}

impl Subspace {
    /// Validates and wraps `basis`. Non-orthonormal input is rejected, never
    /// repaired; use [`Subspace::spanned_by`] to orthonormalize on purpose.
    pub fn new(field: FieldTag, basis: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let (k, m) = basis.shape();
        if m == 0 || m > k {
            return Err(Error::Domain(format!(
                "subspace dimension must satisfy 1 <= m <= k, got k = {k}, m = {m}"
            )));
        }
        let deviation = basis.orthonormality_defect();
        if deviation > tol.absolute() {
            return Err(Error::NotOrthonormal { deviation });
        }
        field.admits(&basis, tol)?;
        Ok(Subspace { field, basis })
    }

    /// Column span of an arbitrary full-rank spanning set.
    pub fn spanned_by(field: FieldTag, spanning: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        field.admits(spanning, tol)?;
        Self::new(field, orthonormalize(spanning, tol)?, tol)
    }

    #[inline]
    pub fn field(&self) -> FieldTag {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// The k×m matrix whose columns are the chosen orthonormal basis.
    #[inline]
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> ComplexMatrix {
        self.basis
    }

    /// Orthogonal projector `L·L*` onto the subspace.
    pub fn projector(&self) -> ComplexMatrix {
        self.basis
            .matmul(&self.basis.adjoint())
            .expect("L·L* is always defined")
    }

    /// Same subspace with the basis right-multiplied by an m×m unitary.
    pub fn rebased(&self, unitary: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        Self::new(
            self.field.meet_with(unitary, tol),
            self.basis.matmul(unitary)?,
            tol,
        )
    }
}

impl FieldTag {
    fn meet_with(self, m: &ComplexMatrix, tol: Tolerance) -> FieldTag {
        if self == FieldTag::Real && m.max_imag() <= tol.absolute() {
            FieldTag::Real
        } else {
            FieldTag::Complex
        }
    }
}

/// Orthogonal projector onto `w`.
pub fn projector(w: &Subspace) -> ComplexMatrix {
    w.projector()
}

/// Basis-independent equality: `max |P1 - P2| <= tol`.
pub fn subspaces_equal(w1: &Subspace, w2: &Subspace, tol: Tolerance) -> Result<bool> {
    if (w1.field, w1.ambient_dim(), w1.dim()) != (w2.field, w2.ambient_dim(), w2.dim()) {
        return Err(Error::Mismatch(format!(
            "cannot compare Gr({},{},{}) with Gr({},{},{})",
            w1.field,
            w1.ambient_dim(),
            w1.dim(),
            w2.field,
            w2.ambient_dim(),
            w2.dim()
        )));
    }
    Ok(w1.projector().max_abs_diff(&w2.projector()) <= tol.absolute())
}

/// An ordered list of n >= 1 subspaces of a common Grassmannian.
#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    field: FieldTag,
    ambient_dim: usize,
    dim: usize,
    subspaces: Vec<Subspace>,
}

impl Packing {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        let first = subspaces
            .first()
            .ok_or_else(|| Error::Domain("a packing needs at least one subspace".into()))?;
        let (field, k, m) = (first.field, first.ambient_dim(), first.dim());
        for (i, w) in subspaces.iter().enumerate() {
            if (w.field, w.ambient_dim(), w.dim()) != (field, k, m) {
                return Err(Error::in_subspace(
                    i,
                    Error::Mismatch(format!(
                        "expected Gr({field},{k},{m}), found Gr({},{},{})",
                        w.field,
                        w.ambient_dim(),
                        w.dim()
                    )),
                ));
            }
        }
        Ok(Packing {
            field,
            ambient_dim: k,
            dim: m,
            subspaces,
        })
    }

    /// Validates each basis and assembles the packing; errors name the
    /// offending subspace index.
    pub fn from_bases(field: FieldTag, bases: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        let subspaces = bases
            .into_iter()
            .enumerate()
            .map(|(i, b)| Subspace::new(field, b, tol).map_err(|e| Error::in_subspace(i, e)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(subspaces)
    }

    #[inline]
    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// k
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// m
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// n
    #[inline]
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    /// Always false: packings hold at least one subspace.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    #[inline]
    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn get(&self, i: usize) -> Result<&Subspace> {
        self.subspaces.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.len(),
        })
    }

    /// Re-checks every model invariant at `tol`.
    pub fn validate(&self, tol: Tolerance) -> Result<()> {
        for (i, w) in self.subspaces.iter().enumerate() {
            Subspace::new(self.field, w.basis.clone(), tol)
                .map_err(|e| Error::in_subspace(i, e))?;
        }
        Ok(())
    }

    /// The k × nm matrix `(L_1 | L_2 | … | L_n)`.
    pub fn synthesis_matrix(&self) -> ComplexMatrix {
        let blocks: Vec<ComplexMatrix> = self.subspaces.iter().map(|w| w.basis.clone()).collect();
        ComplexMatrix::hstack(&blocks).expect("all bases have k rows")
    }

    /// Per-index [`subspaces_equal`].
    pub fn equals(&self, other: &Packing, tol: Tolerance) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        for (a, b) in self.subspaces.iter().zip(&other.subspaces) {
            if !subspaces_equal(a, b, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl IntoIterator for Packing {
    type Item = Subspace;
    type IntoIter = std::vec::IntoIter<Subspace>;

    fn into_iter(self) -> Self::IntoIter {
        self.subspaces.into_iter()
    }
}
