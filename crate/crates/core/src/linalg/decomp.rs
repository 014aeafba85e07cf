//! Jacobi-type decompositions for small dense complex matrices.
//!
//! Eigenvalues of Hermitian matrices come from cyclic two-sided Jacobi
//! rotations; singular values and kernels come from one-sided (Hestenes)
//! Jacobi. Both are self-contained and deterministic.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::tolerance::Tolerance;

const MAX_SWEEPS: usize = 100;
/// Off-diagonal threshold of the two-sided sweep, relative to the largest entry.
const EIG_THRESHOLD: f64 = 1e-14;
/// Orthogonality threshold of the one-sided sweep, relative to the column norms.
const SVD_THRESHOLD: f64 = 1e-15;
/// Relative window inside which pivot candidates count as tied.
const PIVOT_TIE: f64 = 1e-8;

fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Tangent of the Jacobi angle annihilating the off-diagonal `w` of the real
/// symmetric block `[[app, w], [w, aqq]]`.
fn jacobi_tangent(app: f64, aqq: f64, w: f64) -> f64 {
    let zeta = (aqq - app) / (2.0 * w);
    let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
    sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
}

/// Eigenvalues of a Hermitian matrix in non-increasing order.
pub fn hermitian_eigenvalues(a: &ComplexMatrix, tol: Tolerance) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "eigenvalues of a non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let violation = a.hermitian_violation();
    if violation > tol.absolute() {
        return Err(Error::NotHermitian { violation });
    }
    let n = a.rows();
    // Work on the exactly Hermitian part.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    for i in 0..n {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
    }

    let scale = m.max_abs();
    let threshold = EIG_THRESHOLD * scale;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let w = apq.norm();
                if w <= threshold {
                    continue;
                }
                // Phase on column/row q makes the (p, q) entry real and positive.
                let phase = apq / w;
                for r in 0..n {
                    m[(r, q)] *= phase.conj();
                }
                for r in 0..n {
                    m[(q, r)] *= phase;
                }
                let t = jacobi_tangent(m[(p, p)].re, m[(q, q)].re, w);
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for r in 0..n {
                    let (x, y) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = x * c - y * s;
                    m[(r, q)] = x * s + y * c;
                }
                for r in 0..n {
                    let (x, y) = (m[(p, r)], m[(q, r)]);
                    m[(p, r)] = x * c - y * s;
                    m[(q, r)] = x * s + y * c;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Result of a one-sided Jacobi sweep on the columns of `a`:
/// `a · v = w` with the columns of `w` mutually orthogonal.
struct OneSided {
    /// Column norms of `w`, i.e. the singular values in column order.
    norms: Vec<f64>,
    /// Columns of the unitary `v`.
    v: Vec<Vec<C64>>,
}

fn one_sided_jacobi(a: &ComplexMatrix) -> OneSided {
    let n = a.cols();
    let mut w = a.columns();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    // Columns this small are rounding noise; rotating them never converges
    // and only lets `v` drift away from the kernel.
    let negligible = (f64::EPSILON * norm_sqr(a.as_slice()).sqrt()).powi(2);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0
                    || alpha.min(beta) <= negligible
                    || g <= SVD_THRESHOLD * (alpha * beta).sqrt()
                {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let t = jacobi_tangent(alpha, beta, g);
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for cols in [&mut w, &mut v] {
                    let (head, tail) = cols.split_at_mut(q);
                    let (x, y) = (&mut head[p], &mut tail[0]);
                    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
                        let yp = *yi * phase;
                        let xv = *xi;
                        *xi = xv * c - yp * s;
                        *yi = xv * s + yp * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    OneSided {
        norms: w.iter().map(|col| norm_sqr(col).sqrt()).collect(),
        v,
    }
}

/// The `min(rows, cols)` singular values of `a`, non-increasing.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let count = a.rows().min(a.cols());
    let jac = if a.rows() < a.cols() {
        one_sided_jacobi(&a.adjoint())
    } else {
        one_sided_jacobi(a)
    };
    let mut sv = jac.norms;
    sv.sort_by(|x, y| y.total_cmp(x));
    sv.truncate(count);
    sv
}

/// Column-pivoted Gram-Schmidt with reorthogonalization.
///
/// Picks at each step the remaining column of largest residual norm (lowest
/// index among near-ties), stops after `limit` columns or once every residual
/// falls to `tol · largest column norm`. Each output column is rotated so its
/// first entry of modulus above `tol` is real and positive.
fn pivoted_gram_schmidt(a: &ComplexMatrix, limit: usize, tol: Tolerance) -> Vec<Vec<C64>> {
    let mut work = a.columns();
    let mut taken = vec![false; work.len()];
    let reference = work.iter().map(|c| norm_sqr(c).sqrt()).fold(0.0, f64::max);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    if reference == 0.0 {
        return basis;
    }

    while basis.len() < limit {
        let norms: Vec<Option<f64>> = work
            .iter()
            .zip(&taken)
            .map(|(c, &t)| (!t).then(|| norm_sqr(c).sqrt()))
            .collect();
        let best = norms.iter().flatten().copied().fold(0.0, f64::max);
        if best <= tol.absolute() * reference {
            break;
        }
        let pivot = norms
            .iter()
            .position(|n| n.is_some_and(|n| n >= best * (1.0 - PIVOT_TIE)))
            .expect("a candidate reaches the maximum");
        taken[pivot] = true;

        let mut q = work[pivot].clone();
        for b in &basis {
            let h = dot(b, &q);
            for (qi, bi) in q.iter_mut().zip(b) {
                *qi -= bi * h;
            }
        }
        let nrm = norm_sqr(&q).sqrt();
        let lead = q
            .iter()
            .find(|z| z.norm() / nrm > tol.absolute())
            .copied()
            .unwrap_or(C64::new(1.0, 0.0));
        let factor = lead.conj() / (lead.norm() * nrm);
        for z in q.iter_mut() {
            *z *= factor;
        }

        for (col, _) in work.iter_mut().zip(&taken).filter(|(_, &t)| !t) {
            let h = dot(&q, col);
            for (ci, qi) in col.iter_mut().zip(&q) {
                *ci -= qi * h;
            }
        }
        basis.push(q);
    }
    basis
}

/// Orthonormal basis of the column span of a full-column-rank matrix.
///
/// Column order follows the pivot order; the leading entry of each column
/// is real-positive, so equal spans with equal pivots give equal output.
pub fn orthonormalize(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let basis = pivoted_gram_schmidt(a, a.cols(), tol);
    if basis.len() < a.cols() {
        return Err(Error::RankDeficient {
            rank: basis.len(),
            expected: a.cols(),
        });
    }
    ComplexMatrix::from_columns(a.rows(), &basis)
}

/// Orthonormal basis of `{x : a·x = 0}`, possibly with zero columns.
///
/// Singular values at or below `tol · σ_max` count as zero. The basis is
/// canonicalized through the kernel projector, so it depends only on the
/// kernel itself.
pub fn null_space_basis(a: &ComplexMatrix, tol: Tolerance) -> ComplexMatrix {
    let n = a.cols();
    let jac = one_sided_jacobi(a);
    let largest = jac.norms.iter().copied().fold(0.0, f64::max);
    let kernel: Vec<&Vec<C64>> = jac
        .norms
        .iter()
        .zip(&jac.v)
        .filter(|(&s, _)| s <= tol.absolute() * largest)
        .map(|(_, v)| v)
        .collect();
    let dim = kernel.len();
    if dim == 0 {
        return ComplexMatrix::zeros(n, 0);
    }
    let projector =
        ComplexMatrix::from_fn(n, n, |i, j| kernel.iter().map(|v| v[i] * v[j].conj()).sum());
    let basis = pivoted_gram_schmidt(&projector, dim, tol.scaled(1e-3));
    debug_assert_eq!(basis.len(), dim);
    ComplexMatrix::from_columns(n, &basis).expect("columns have length n")
}
