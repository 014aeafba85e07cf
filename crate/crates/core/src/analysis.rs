//! Certification of packings: pairwise geometry, the equichordal /
//! strongly simplicial / equiisoclinic taxonomy, tightness, and the simplex
//! and orthoplex bounds together with the regime in which each applies.
//!
//! Subspace indices are 0-based throughout.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{hermitian_eigenvalues, singular_values, ComplexMatrix};
use crate::model::{FieldTag, Packing};
use crate::tolerance::Tolerance;

/// Spectral data of one ordered pair `(i, j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossGramSpectrum {
    pub pair: (usize, usize),
    /// Eigenvalues of `L_i* L_j L_j* L_i`, non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Singular values of `L_i* L_j`, non-increasing: the cosines of the
    /// principal angles. Squaring them gives `eigenvalues`.
    pub cosines: Vec<f64>,
    /// `m - tr(L_i* L_j L_j* L_i)`.
    pub chordal_sq: f64,
}

impl CrossGramSpectrum {
    /// Principal angles in radians, non-decreasing.
    pub fn principal_angles(&self) -> Vec<f64> {
        self.cosines
            .iter()
            .map(|c| c.clamp(0.0, 1.0).acos())
            .collect()
    }
}

/// Outcome of a property that quantifies over pairs `i != j`.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<T> {
    /// Holds, with the shared quantity.
    Holds(T),
    /// Holds because there are no pairs (n = 1).
    Vacuous,
    Fails,
}

impl<T> Verdict<T> {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Fails)
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Verdict::Holds(v) => Some(v),
            _ => None,
        }
    }

    fn gate(self, condition: bool) -> Self {
        if condition {
            self
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// n <= Z(F, k)
    SimplexApplies,
    /// Z(F, k) < n <= 2 (Z(F, k) - 1)
    OrthoplexApplies,
    /// n > 2 (Z(F, k) - 1): no bound applies.
    BeyondOrthoplex,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::SimplexApplies => "SimplexApplies",
            Regime::OrthoplexApplies => "OrthoplexApplies",
            Regime::BeyondOrthoplex => "BeyondOrthoplex",
        }
    }
}

/// Every verdict and bound for one packing.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub field: FieldTag,
    pub ambient_dim: usize,
    pub dim: usize,
    pub count: usize,
    /// Fusion frame bound `A = nm/k` when the packing is tight.
    pub tight: Option<f64>,
    pub equichordal: Verdict<f64>,
    pub strongly_simplicial: Verdict<Vec<f64>>,
    pub equiisoclinic: Verdict<f64>,
    /// Smallest pairwise squared chordal distance; `+∞` when n = 1.
    pub min_chordal_sq: f64,
    /// Absent when n = 1.
    pub simplex_bound: Option<f64>,
    pub orthoplex_bound: f64,
    pub gerzon: u64,
    pub regime: Regime,
    pub simplex_saturated: bool,
    pub orthoplex_saturated: bool,
    pub vacuous: bool,
}

impl CertificationReport {
    pub fn is_tight(&self) -> bool {
        self.tight.is_some()
    }

    pub fn is_equichordal(&self) -> bool {
        self.equichordal.holds()
    }

    pub fn is_strongly_simplicial(&self) -> bool {
        self.strongly_simplicial.holds()
    }

    pub fn is_equiisoclinic(&self) -> bool {
        self.equiisoclinic.holds()
    }
}

fn check_pair(p: &Packing, i: usize) -> Result<()> {
    if i >= p.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: p.len(),
        });
    }
    Ok(())
}

/// The m×m factor `L_i* L_j`.
pub fn cross_gram(p: &Packing, i: usize, j: usize) -> Result<ComplexMatrix> {
    check_pair(p, i)?;
    check_pair(p, j)?;
    p.subspaces()[i]
        .basis()
        .adjoint_mul(p.subspaces()[j].basis())
}

/// The Hermitian m×m product `L_i* L_j L_j* L_i`.
pub fn cross_gram_product(p: &Packing, i: usize, j: usize) -> Result<ComplexMatrix> {
    let x = cross_gram(p, i, j)?;
    x.matmul(&x.adjoint())
}

/// Squared chordal distance `m - tr(P_i P_j)`; zero for `i == j`.
pub fn chordal_distance_sq(p: &Packing, i: usize, j: usize) -> Result<f64> {
    if i == j {
        check_pair(p, i)?;
        return Ok(0.0);
    }
    let x = cross_gram(p, i, j)?;
    let overlap: f64 = x.as_slice().iter().map(|z| z.norm_sqr()).sum();
    Ok(p.dim() as f64 - overlap)
}

pub fn pair_spectrum(p: &Packing, i: usize, j: usize, tol: Tolerance) -> Result<CrossGramSpectrum> {
    if i == j {
        return Err(Error::Domain(format!(
            "pair spectrum needs i != j, got ({i}, {j})"
        )));
    }
    Ok(pair_data(p, i, j, tol)?.0)
}

fn pair_data(
    p: &Packing,
    i: usize,
    j: usize,
    tol: Tolerance,
) -> Result<(CrossGramSpectrum, ComplexMatrix)> {
    let x = cross_gram(p, i, j)?;
    let product = x.matmul(&x.adjoint())?;
    let spectrum = CrossGramSpectrum {
        pair: (i, j),
        eigenvalues: hermitian_eigenvalues(&product, tol)?,
        cosines: singular_values(&x),
        chordal_sq: p.dim() as f64 - product.trace().re,
    };
    Ok((spectrum, product))
}

/// `Σ_i L_i L_i*`.
pub fn fusion_frame_operator(p: &Packing) -> ComplexMatrix {
    let s = p.synthesis_matrix();
    s.matmul(&s.adjoint()).expect("L·L* is always defined")
}

/// The bound `A = nm/k` if `max |Σ P_i - A·I| <= tol`.
pub fn check_tight(p: &Packing, tol: Tolerance) -> Option<f64> {
    let k = p.ambient_dim();
    let a = (p.len() * p.dim()) as f64 / k as f64;
    let residual = fusion_frame_operator(p).max_abs_diff(&ComplexMatrix::identity(k).scale_real(a));
    (residual <= tol.absolute()).then_some(a)
}

/// Everything pairwise, computed once for the i < j pairs in row order.
struct PairTable {
    dim: usize,
    spectra: Vec<CrossGramSpectrum>,
    products: Vec<ComplexMatrix>,
}

impl PairTable {
    fn build(p: &Packing, tol: Tolerance, exec: Execution) -> Result<Self> {
        let n = p.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let rows = exec.map_slice(&pairs, |&(i, j)| pair_data(p, i, j, tol));
        let mut spectra = Vec::with_capacity(rows.len());
        let mut products = Vec::with_capacity(rows.len());
        for row in rows {
            let (s, g) = row?;
            spectra.push(s);
            products.push(g);
        }
        Ok(PairTable {
            dim: p.dim(),
            spectra,
            products,
        })
    }

    fn is_empty(&self) -> bool {
        self.spectra.is_empty()
    }

    fn min_chordal_sq(&self) -> f64 {
        self.spectra
            .iter()
            .map(|s| s.chordal_sq)
            .fold(f64::INFINITY, f64::min)
    }

    fn equichordal(&self, tol: Tolerance) -> Verdict<f64> {
        if self.is_empty() {
            return Verdict::Vacuous;
        }
        let (lo, hi) = self
            .spectra
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s.chordal_sq), hi.max(s.chordal_sq))
            });
        if hi - lo <= tol.absolute() {
            let mean =
                self.spectra.iter().map(|s| s.chordal_sq).sum::<f64>() / self.spectra.len() as f64;
            Verdict::Holds(mean)
        } else {
            Verdict::Fails
        }
    }

    fn strongly_simplicial(&self, tol: Tolerance) -> Verdict<Vec<f64>> {
        if self.is_empty() {
            return Verdict::Vacuous;
        }
        let count = self.spectra.len() as f64;
        let mut common = Vec::with_capacity(self.dim);
        for l in 0..self.dim {
            let values = self.spectra.iter().map(|s| s.eigenvalues[l]);
            let (lo, hi) = values
                .clone()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                    (lo.min(v), hi.max(v))
                });
            if hi - lo > tol.absolute() {
                return Verdict::Fails;
            }
            common.push(values.sum::<f64>() / count);
        }
        let equichordal = self.equichordal(tol).holds();
        Verdict::Holds(common).gate(equichordal)
    }

    fn equiisoclinic(&self, tol: Tolerance) -> Verdict<f64> {
        if self.is_empty() {
            return Verdict::Vacuous;
        }
        let m = self.dim;
        let diag_sum: f64 = self.products.iter().map(|g| g.trace().re).sum();
        let alpha = diag_sum / (m * self.products.len()) as f64;
        let target = ComplexMatrix::identity(m).scale_real(alpha);
        let flat = self
            .products
            .iter()
            .all(|g| g.max_abs_diff(&target) <= tol.absolute());
        let simplicial = self.strongly_simplicial(tol).holds();
        Verdict::Holds(alpha).gate(flat && simplicial)
    }
}

/// Common squared chordal distance if all pairs agree within `tol`.
pub fn check_equichordal(p: &Packing, tol: Tolerance) -> Result<Verdict<f64>> {
    Ok(PairTable::build(p, tol, Execution::default())?.equichordal(tol))
}

/// Common sorted cross-Gram spectrum if all pairs agree entrywise within `tol`.
///
/// A packing is only reported strongly simplicial if it is also equichordal,
/// so the implication holds at every tolerance.
pub fn check_strongly_simplicial(p: &Packing, tol: Tolerance) -> Result<Verdict<Vec<f64>>> {
    Ok(PairTable::build(p, tol, Execution::default())?.strongly_simplicial(tol))
}

/// `α` such that every `L_i* L_j L_j* L_i` is within `tol` of `α·I_m`.
///
/// `α` is the mean diagonal over all pairs. Gated on strong simpliciality.
pub fn check_equiisoclinic(p: &Packing, tol: Tolerance) -> Result<Verdict<f64>> {
    Ok(PairTable::build(p, tol, Execution::default())?.equiisoclinic(tol))
}

/// Gerzon's bound: k² over C, k(k+1)/2 over R.
pub fn gerzon_bound(field: FieldTag, k: usize) -> u64 {
    let k = k as u64;
    match field {
        FieldTag::Complex => k.saturating_mul(k),
        FieldTag::Real => k.saturating_mul(k.saturating_add(1)) / 2,
    }
}

fn check_dims(k: usize, m: usize) -> Result<()> {
    if k == 0 || m == 0 || m > k {
        return Err(Error::Domain(format!(
            "need 1 <= m <= k, got k = {k}, m = {m}"
        )));
    }
    Ok(())
}

/// Simplex bound `m(k - m)n / (k(n - 1))`.
pub fn simplex_bound(k: usize, m: usize, n: usize) -> Result<f64> {
    check_dims(k, m)?;
    if n < 2 {
        return Err(Error::Domain("simplex bound needs n >= 2".into()));
    }
    let (k, m, n) = (k as f64, m as f64, n as f64);
    Ok(m * (k - m) * n / (k * (n - 1.0)))
}

/// Orthoplex bound `m(k - m) / k`.
pub fn orthoplex_bound(k: usize, m: usize) -> Result<f64> {
    check_dims(k, m)?;
    let (k, m) = (k as f64, m as f64);
    Ok(m * (k - m) / k)
}

pub fn regime(field: FieldTag, k: usize, n: usize) -> Regime {
    let z = gerzon_bound(field, k);
    let n = n as u64;
    if n <= z {
        Regime::SimplexApplies
    } else if n <= 2 * (z - 1) {
        Regime::OrthoplexApplies
    } else {
        Regime::BeyondOrthoplex
    }
}

pub fn certify(p: &Packing, tol: Tolerance) -> CertificationReport {
    certify_with(p, tol, Execution::default())
}

/// [`certify`] with an explicit strategy for the pairwise loop.
pub fn certify_with(p: &Packing, tol: Tolerance, exec: Execution) -> CertificationReport {
    let (k, m, n) = (p.ambient_dim(), p.dim(), p.len());
    let table = PairTable::build(p, tol, exec)
        .expect("cross-Gram products of a valid packing are Hermitian");

    let min_chordal_sq = table.min_chordal_sq();
    let simplex = simplex_bound(k, m, n).ok();
    let orthoplex = orthoplex_bound(k, m).expect("packing dimensions are valid");
    let regime = regime(p.field(), k, n);

    let simplex_saturated =
        regime == Regime::SimplexApplies && simplex.is_some_and(|b| tol.within(min_chordal_sq, b));
    let orthoplex_saturated =
        regime == Regime::OrthoplexApplies && tol.within(min_chordal_sq, orthoplex);

    CertificationReport {
        field: p.field(),
        ambient_dim: k,
        dim: m,
        count: n,
        tight: check_tight(p, tol),
        equichordal: table.equichordal(tol),
        strongly_simplicial: table.strongly_simplicial(tol),
        equiisoclinic: table.equiisoclinic(tol),
        min_chordal_sq,
        simplex_bound: simplex,
        orthoplex_bound: orthoplex,
        gerzon: gerzon_bound(p.field(), k),
        regime,
        simplex_saturated,
        orthoplex_saturated,
        vacuous: n == 1,
    }
}

/// Certifies many packings, one work item per packing.
pub fn certify_batch(
    packings: &[Packing],
    tol: Tolerance,
    exec: Execution,
) -> Vec<CertificationReport> {
    exec.map_slice(packings, |p| certify_with(p, tol, Execution::Sequential))
}

/// Spectra of all pairs `i < j` in row order.
pub fn all_pair_spectra(
    p: &Packing,
    tol: Tolerance,
    exec: Execution,
) -> Result<Vec<CrossGramSpectrum>> {
    Ok(PairTable::build(p, tol, exec)?.spectra)
}
