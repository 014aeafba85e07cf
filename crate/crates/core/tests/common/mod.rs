//! Shared witnesses and helpers for the integration tests.
//!
//! Crafted packings, with the property each one exhibits or lacks:
//!
//! | name                        | space | tight | equichordal | strongly simplicial | equiisoclinic |
//! |-----------------------------|-------|-------|-------------|---------------------|---------------|
//! | `equichordal_not_simplicial`| R⁴, m=2 | no  | yes (1)     | no                  | no            |
//! | `unequal_angles`            | R², m=1 | no  | no          | no                  | no            |
//! | `mercedes_benz`             | R², m=1 | 3/2 | yes (3/4)   | yes (1/4)           | yes (1/4)     |
//! | `two_frames_30`             | R², m=1 | 2   | no          | no                  | no            |
//! | `isoclinic_planes`          | R⁴, m=2 | 3/2 | yes (3/2)   | yes (1/4, 1/4)      | yes (1/4)     |
//! | `repeated_plane`            | R³, m=2 | no  | yes (0)     | yes (1, 1)          | yes (1)       |

#![allow(dead_code)]

pub mod checks;

use grasspack::analysis::{certify, CertificationReport};
use grasspack::construct::{tensor_with_unitaries, UnitaryList};
use grasspack::generators::{
    hadamard_complement_paper_bases, hadamard_etf, mub_c2, onb_lines, random_packing,
    random_unitary, Seed,
};
use grasspack::linalg::{ComplexMatrix, C64};
use grasspack::model::{FieldTag, Packing, Subspace};
use grasspack::Tolerance;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn tol() -> Tolerance {
    Tolerance::new(1e-9).unwrap()
}

/// Real basis from rows.
pub fn real(rows: &[&[f64]]) -> ComplexMatrix {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    ComplexMatrix::from_real_rows(&rows).unwrap()
}

/// Lines of R^k through the given (not necessarily unit) vectors.
pub fn real_lines(vectors: &[&[f64]]) -> Packing {
    let bases = vectors
        .iter()
        .map(|v| {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let column: Vec<C64> = v.iter().map(|x| C64::new(x / norm, 0.0)).collect();
            ComplexMatrix::from_columns(v.len(), &[column]).unwrap()
        })
        .collect();
    Packing::from_bases(FieldTag::Real, bases, tol()).unwrap()
}

/// span(e1,e2), span(e1,e3), span((e1+e4)/√2, (e2+e3)/√2) in R⁴: every pair
/// has squared chordal distance 1, but the spectra are (1,0), (1/2,1/2),
/// (1/2,1/2).
pub fn equichordal_not_simplicial() -> Packing {
    let s = 0.5f64.sqrt();
    let bases = vec![
        real(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0], &[0.0, 0.0]]),
        real(&[&[1.0, 0.0], &[0.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]),
        real(&[&[s, 0.0], &[0.0, s], &[0.0, s], &[s, 0.0]]),
    ];
    Packing::from_bases(FieldTag::Real, bases, tol()).unwrap()
}

/// e1, e2 and (e1+e2)/√2 in R².
pub fn unequal_angles() -> Packing {
    real_lines(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])
}

/// Three lines of R² at 60° to each other.
pub fn mercedes_benz() -> Packing {
    let h = 3f64.sqrt() / 2.0;
    real_lines(&[&[1.0, 0.0], &[-0.5, h], &[-0.5, -h]])
}

/// Two orthonormal bases of R², the second rotated by 30°.
pub fn two_frames_30() -> Packing {
    let (c, s) = (3f64.sqrt() / 2.0, 0.5);
    real_lines(&[&[1.0, 0.0], &[0.0, 1.0], &[c, s], &[-s, c]])
}

/// [`mercedes_benz`] tensored with fixed 2×2 rotations: three planes of R⁴
/// with k = 2m, pairwise isoclinic at cos² = 1/4.
pub fn isoclinic_planes() -> Packing {
    let rotation = |t: f64| real(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
    let us = UnitaryList::new(
        FieldTag::Real,
        vec![rotation(0.3), rotation(1.1), rotation(-2.0)],
        tol(),
    )
    .unwrap();
    tensor_with_unitaries(&mercedes_benz(), &us, tol()).unwrap()
}

/// The plane span(e1, e2) of R³ listed three times, with different bases.
pub fn repeated_plane() -> Packing {
    let s = 0.5f64.sqrt();
    let bases = vec![
        real(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]),
        real(&[&[0.0, 1.0], &[1.0, 0.0], &[0.0, 0.0]]),
        real(&[&[s, s], &[s, -s], &[0.0, 0.0]]),
    ];
    Packing::from_bases(FieldTag::Real, bases, tol()).unwrap()
}

/// Hand-built packings with known verdicts.
pub fn crafted() -> Vec<(&'static str, Packing)> {
    vec![
        ("equichordal_not_simplicial", equichordal_not_simplicial()),
        ("unequal_angles", unequal_angles()),
        ("mercedes_benz", mercedes_benz()),
        ("two_frames_30", two_frames_30()),
        ("isoclinic_planes", isoclinic_planes()),
        ("repeated_plane", repeated_plane()),
    ]
}

/// Crafted packings, every generator, and a spread of random packings.
pub fn corpus() -> Vec<(String, Packing)> {
    let mut out: Vec<(String, Packing)> = crafted()
        .into_iter()
        .map(|(n, p)| (n.to_string(), p))
        .collect();
    out.push(("hadamard_etf".into(), hadamard_etf()));
    out.push((
        "hadamard_complement".into(),
        hadamard_complement_paper_bases(),
    ));
    out.push(("mub_c2".into(), mub_c2()));
    for k in 1..=4 {
        out.push((
            format!("onb_lines_R{k}"),
            onb_lines(FieldTag::Real, k).unwrap(),
        ));
        out.push((
            format!("onb_lines_C{k}"),
            onb_lines(FieldTag::Complex, k).unwrap(),
        ));
    }
    let mut params = Params::new(99);
    for i in 0..40 {
        let (field, k, m, n) = params.packing_shape();
        out.push((
            format!("random_{i}"),
            random_packing(field, k, m, n, Seed(i)).unwrap(),
        ));
    }
    out
}

/// Deterministic parameter draws for seeded trials.
pub struct Params(ChaCha8Rng);

impl Params {
    pub fn new(seed: u64) -> Self {
        Params(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn field(&mut self) -> FieldTag {
        if self.0.next_u64() & 1 == 0 {
            FieldTag::Real
        } else {
            FieldTag::Complex
        }
    }

    pub fn seed(&mut self) -> Seed {
        Seed(self.0.next_u64())
    }

    /// `(field, k, m, n)` with k ≤ 6, m ≤ min(k, 3), n ≤ 6.
    pub fn packing_shape(&mut self) -> (FieldTag, usize, usize, usize) {
        let field = self.field();
        let k = self.int(1, 6);
        let m = self.int(1, k.min(3));
        let n = self.int(1, 6);
        (field, k, m, n)
    }
}

/// The same packing with every basis right-multiplied by a random unitary
/// over its own field.
pub fn rebased(p: &Packing, seed: u64) -> Packing {
    let subspaces: Vec<Subspace> = p
        .subspaces()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let u = random_unitary(p.field(), p.dim(), Seed(seed.wrapping_add(i as u64))).unwrap();
            w.rebased(&u, tol()).unwrap()
        })
        .collect();
    Packing::new(subspaces).unwrap()
}

pub fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps
}

pub fn slices_close(a: &[f64], b: &[f64], eps: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| close(*x, *y, eps))
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Every value repeated `r` times, non-increasing.
pub fn replicate(v: &[f64], r: usize) -> Vec<f64> {
    sorted_desc(v.iter().flat_map(|&x| std::iter::repeat_n(x, r)).collect())
}

/// Verdict flags in a fixed order, for verdict-equality comparisons.
pub fn flags(r: &CertificationReport) -> [bool; 4] {
    [
        r.is_tight(),
        r.is_equichordal(),
        r.is_strongly_simplicial(),
        r.is_equiisoclinic(),
    ]
}

/// Agreement of two reports on every verdict, value and flag, numbers to `eps`.
pub fn reports_agree(
    a: &CertificationReport,
    b: &CertificationReport,
    eps: f64,
) -> Result<(), String> {
    let opt = |x: Option<f64>, y: Option<f64>| match (x, y) {
        (Some(x), Some(y)) => close(x, y, eps),
        (None, None) => true,
        _ => false,
    };
    let checks = [
        ("flags", flags(a) == flags(b)),
        ("tight", opt(a.tight, b.tight)),
        (
            "equichordal",
            opt(
                a.equichordal.value().copied(),
                b.equichordal.value().copied(),
            ),
        ),
        (
            "equiisoclinic",
            opt(
                a.equiisoclinic.value().copied(),
                b.equiisoclinic.value().copied(),
            ),
        ),
        (
            "spectrum",
            match (a.strongly_simplicial.value(), b.strongly_simplicial.value()) {
                (Some(x), Some(y)) => slices_close(x, y, eps),
                (None, None) => true,
                _ => false,
            },
        ),
        (
            "min_chordal_sq",
            close(a.min_chordal_sq, b.min_chordal_sq, eps) || a.min_chordal_sq == b.min_chordal_sq,
        ),
        (
            "saturation",
            (a.simplex_saturated, a.orthoplex_saturated)
                == (b.simplex_saturated, b.orthoplex_saturated),
        ),
        ("regime", a.regime == b.regime),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name}: {a:?} vs {b:?}")),
        None => Ok(()),
    }
}

pub fn report(p: &Packing) -> CertificationReport {
    certify(p, tol())
}

/// Whether some pair has every principal angle equal to π/2. Such a pair
/// makes every tensor product with it look the same regardless of the other
/// factor.
pub fn has_orthogonal_pair(p: &Packing) -> bool {
    use grasspack::analysis::cross_gram;
    (0..p.len()).any(|i| (i + 1..p.len()).any(|j| cross_gram(p, i, j).unwrap().max_abs() <= 1e-12))
}
