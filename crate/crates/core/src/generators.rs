//! Seed packings and seeded random inputs.
//!
//! # Random streams
//!
//! All randomness comes from ChaCha20 (`rand_chacha` 0.9, `ChaCha20Rng::
//! seed_from_u64`), read 64 bits at a time. A draw `x` becomes the uniform
//! `u = ((x >> 11) + 1) · 2⁻⁵³ ∈ (0, 1]`, and pairs of uniforms become
//! standard normals by the Box–Muller transform
//! `(√(-2 ln u₁) cos 2πu₂, √(-2 ln u₁) sin 2πu₂)`, evaluated with `libm` so
//! the bits do not depend on the platform math library. Matrices are filled
//! row-major; a complex entry takes two consecutive normals (real, then
//! imaginary), a real entry one.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, ComplexMatrix, C64};
use crate::model::{FieldTag, Packing, Subspace};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

/// Standard normal samples from a seeded ChaCha20 stream.
pub struct GaussianStream {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: Seed) -> Self {
        GaussianStream {
            rng: ChaCha20Rng::seed_from_u64(seed.0),
            spare: None,
        }
    }

    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * libm::sin(angle));
        radius * libm::cos(angle)
    }

    /// Gaussian matrix, real or complex according to `field`.
    pub fn matrix(&mut self, field: FieldTag, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| match field {
            FieldTag::Real => C64::new(self.next_normal(), 0.0),
            FieldTag::Complex => {
                let re = self.next_normal();
                C64::new(re, self.next_normal())
            }
        })
    }
}

fn basis_from_real(rows: &[Vec<f64>]) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(rows).expect("static data is rectangular and finite")
}

fn lines(field: FieldTag, vectors: &[Vec<C64>]) -> Packing {
    let k = vectors[0].len();
    let bases = vectors
        .iter()
        .map(|v| ComplexMatrix::from_columns(k, std::slice::from_ref(v)).expect("equal lengths"))
        .collect();
    Packing::from_bases(field, bases, Tolerance::default()).expect("static packing is valid")
}

/// The four lines of R³ spanned by the columns of the 4×4 Sylvester–Hadamard
/// matrix with its first row removed, scaled by 1/√3. An equiangular tight
/// frame.
pub fn hadamard_etf() -> Packing {
    let s = 1.0 / 3f64.sqrt();
    let h = [
        [1.0, -1.0, 1.0, -1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ];
    let columns: Vec<Vec<C64>> = (0..4)
        .map(|j| h.iter().map(|row| C64::new(row[j] * s, 0.0)).collect())
        .collect();
    lines(FieldTag::Real, &columns)
}

/// Hand-chosen orthonormal bases `L_1 … L_4` of the orthogonal complements of
/// the [`hadamard_etf`] lines, kept verbatim (signs included) with
/// `a = 1/√2`, `b = 1/√6`.
pub fn hadamard_complement_paper_bases() -> Packing {
    let a = 0.5f64.sqrt();
    let b = 1.0 / 6f64.sqrt();
    let bases = vec![
        basis_from_real(&[vec![-2.0 * b, 0.0], vec![b, -a], vec![b, a]]),
        basis_from_real(&[vec![-2.0 * b, 0.0], vec![-b, -a], vec![b, -a]]),
        basis_from_real(&[vec![-2.0 * b, 0.0], vec![-b, -a], vec![-b, a]]),
        basis_from_real(&[vec![-2.0 * b, 0.0], vec![b, -a], vec![-b, -a]]),
    ];
    Packing::from_bases(FieldTag::Real, bases, Tolerance::default())
        .expect("static packing is valid")
}

/// The k coordinate lines of F^k.
pub fn onb_lines(field: FieldTag, k: usize) -> Result<Packing> {
    if k == 0 {
        return Err(Error::Domain("onb_lines needs k >= 1".into()));
    }
    let id = ComplexMatrix::identity(k);
    let bases = (0..k).map(|i| id.column_block(i, i + 1)).collect();
    Packing::from_bases(field, bases, Tolerance::default())
}

/// Six lines of C² from three mutually unbiased bases:
/// `(1,0), (0,1), (1,±1)/√2, (1,±i)/√2`.
///
/// Not a worked example from the literature this crate follows; it is the
/// smallest packing that saturates the orthoplex bound and serves as the
/// test witness for that regime.
pub fn mub_c2() -> Packing {
    let s = 0.5f64.sqrt();
    let c = |re: f64, im: f64| C64::new(re, im);
    lines(
        FieldTag::Complex,
        &[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(s, 0.0), c(s, 0.0)],
            vec![c(s, 0.0), c(-s, 0.0)],
            vec![c(s, 0.0), c(0.0, s)],
            vec![c(s, 0.0), c(0.0, -s)],
        ],
    )
}

/// `count` r×r unitaries (real orthogonal over R) drawn from one stream.
pub fn random_unitaries(
    field: FieldTag,
    r: usize,
    count: usize,
    seed: Seed,
) -> Result<Vec<ComplexMatrix>> {
    if r == 0 {
        return Err(Error::Domain("unitary size must be positive".into()));
    }
    let mut stream = GaussianStream::new(seed);
    (0..count)
        .map(|_| orthonormalize(&stream.matrix(field, r, r), Tolerance::default()))
        .collect()
}

/// Orthonormalized r×r Gaussian matrix.
pub fn random_unitary(field: FieldTag, r: usize, seed: Seed) -> Result<ComplexMatrix> {
    Ok(random_unitaries(field, r, 1, seed)?.remove(0))
}

/// `n` independent random m-dimensional subspaces of F^k.
pub fn random_packing(
    field: FieldTag,
    k: usize,
    m: usize,
    n: usize,
    seed: Seed,
) -> Result<Packing> {
    if k == 0 || m == 0 || m > k {
        return Err(Error::Domain(format!(
            "need 1 <= m <= k, got k = {k}, m = {m}"
        )));
    }
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let tol = Tolerance::default();
    let mut stream = GaussianStream::new(seed);
    let subspaces = (0..n)
        .map(|i| {
            Subspace::spanned_by(field, &stream.matrix(field, k, m), tol)
                .map_err(|e| Error::in_subspace(i, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Packing::new(subspaces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_entries_are_exact() {
        let p = hadamard_etf();
        let s = 1.0 / 3f64.sqrt();
        assert_eq!(
            (p.len(), p.ambient_dim(), p.dim(), p.field()),
            (4, 3, 1, FieldTag::Real)
        );
        for w in p.subspaces() {
            for z in w.basis().as_slice() {
                assert!(z.re == s || z.re == -s);
                assert_eq!(z.im, 0.0);
            }
        }
    }

    #[test]
    fn mub_shape() {
        let p = mub_c2();
        assert_eq!(
            (p.len(), p.ambient_dim(), p.dim(), p.field()),
            (6, 2, 1, FieldTag::Complex)
        );
    }

    #[test]
    fn onb_lines_rejects_zero() {
        assert!(onb_lines(FieldTag::Real, 0).is_err());
        assert_eq!(onb_lines(FieldTag::Complex, 5).unwrap().len(), 5);
    }

    #[test]
    fn unitary_of_size_one_is_sign() {
        for s in 0..20 {
            let u = random_unitary(FieldTag::Real, 1, Seed(s)).unwrap();
            assert!((u[(0, 0)].re.abs() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn random_unitaries_are_unitary() {
        for s in 0..100 {
            for field in [FieldTag::Real, FieldTag::Complex] {
                let u = random_unitary(field, 3, Seed(s)).unwrap();
                assert!(u.orthonormality_defect() < 1e-12);
                if field == FieldTag::Real {
                    assert_eq!(u.max_imag(), 0.0);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_bits() {
        let a = random_packing(FieldTag::Complex, 4, 2, 5, Seed(7)).unwrap();
        let b = random_packing(FieldTag::Complex, 4, 2, 5, Seed(7)).unwrap();
        assert_eq!(a, b);
        let c = random_packing(FieldTag::Complex, 4, 2, 5, Seed(8)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let mut g = GaussianStream::new(Seed(1));
        let xs: Vec<f64> = (0..20_000).map(|_| g.next_normal()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn random_packing_rejects_bad_parameters() {
        assert!(random_packing(FieldTag::Real, 2, 3, 1, Seed(0)).is_err());
        assert!(random_packing(FieldTag::Real, 2, 1, 0, Seed(0)).is_err());
    }
}
