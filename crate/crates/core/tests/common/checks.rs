//! Construction laws as reusable checks returning a description of the first
//! violation.

use super::*;
use grasspack::analysis::{all_pair_spectra, certify, CrossGramSpectrum};
use grasspack::construct::{complement, tensor_packings, tensor_with_unitaries, UnitaryList};
use grasspack::linalg::singular_values;
use grasspack::Execution;

pub type Check = Result<(), String>;

pub fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn spectra(p: &Packing) -> Vec<CrossGramSpectrum> {
    all_pair_spectra(p, tol(), Execution::Sequential).unwrap()
}

fn opt_close(a: Option<f64>, b: Option<f64>, eps: f64) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => close(a, b, eps),
        (None, None) => true,
        _ => false,
    }
}

/// Every law relating `p` to `p` tensored with `us`:
/// orthonormal output of size (rk, rm), each pair spectrum replicated r
/// times, chordal distances scaled by r, identical verdicts, the same frame
/// bound and α, and a common spectrum replicated r times.
pub fn tensor_unitaries_laws(p: &Packing, us: &UnitaryList) -> Check {
    let eps = tol().absolute();
    let r = us.size();
    let out = tensor_with_unitaries(p, us, tol()).map_err(|e| e.to_string())?;
    ensure(
        (out.ambient_dim(), out.dim(), out.len()) == (r * p.ambient_dim(), r * p.dim(), p.len()),
        || "output dimensions".into(),
    )?;
    for (i, w) in out.subspaces().iter().enumerate() {
        let expected = p.subspaces()[i].basis().kron(&us.matrices()[i]).unwrap();
        ensure(w.basis().max_abs_diff(&expected) == 0.0, || {
            format!("basis {i} is not L ⊗ U")
        })?;
        ensure(w.basis().orthonormality_defect() <= eps, || {
            format!("basis {i} not orthonormal")
        })?;
    }
    for (a, b) in spectra(p).iter().zip(spectra(&out).iter()) {
        ensure(
            slices_close(&b.eigenvalues, &replicate(&a.eigenvalues, r), eps),
            || {
                format!(
                    "pair {:?}: {:?} is not {:?} replicated {r} times",
                    a.pair, b.eigenvalues, a.eigenvalues
                )
            },
        )?;
        ensure(close(b.chordal_sq, r as f64 * a.chordal_sq, eps), || {
            format!(
                "pair {:?}: chordal {} vs {} x {r}",
                a.pair, b.chordal_sq, a.chordal_sq
            )
        })?;
    }
    let (ri, ro) = (certify(p, tol()), certify(&out, tol()));
    ensure(flags(&ri) == flags(&ro), || {
        format!("verdicts {:?} became {:?}", flags(&ri), flags(&ro))
    })?;
    ensure(opt_close(ri.tight, ro.tight, eps), || {
        format!("frame bound {:?} -> {:?}", ri.tight, ro.tight)
    })?;
    ensure(
        opt_close(
            ri.equiisoclinic.value().copied(),
            ro.equiisoclinic.value().copied(),
            eps,
        ),
        || "alpha changed".into(),
    )?;
    ensure(
        opt_close(
            ri.equichordal.value().map(|c| c * r as f64),
            ro.equichordal.value().copied(),
            eps,
        ),
        || "common chordal distance not scaled by r".into(),
    )?;
    match (
        ri.strongly_simplicial.value(),
        ro.strongly_simplicial.value(),
    ) {
        (Some(a), Some(b)) => ensure(slices_close(b, &replicate(a, r), eps), || {
            "common spectrum".into()
        }),
        (None, None) => Ok(()),
        _ => Err("strongly simplicial value presence".into()),
    }
}

/// Laws for the index-wise tensor product of `p` and `q`: singular values of
/// each output pair are all products of the factors' singular values, and
/// (when `iff` is set) each pairwise verdict (equichordal, strongly
/// simplicial, equiisoclinic) holds for the output exactly when it holds for
/// both factors.
pub fn tensor_packings_laws(p: &Packing, q: &Packing, iff: bool) -> Check {
    let eps = tol().absolute();
    let out = tensor_packings(p, q, tol()).map_err(|e| e.to_string())?;
    ensure(
        (out.ambient_dim(), out.dim()) == (p.ambient_dim() * q.ambient_dim(), p.dim() * q.dim()),
        || "output dimensions".into(),
    )?;
    let (sp, sq, so) = (spectra(p), spectra(q), spectra(&out));
    for ((a, b), c) in sp.iter().zip(&sq).zip(&so) {
        let products = sorted_desc(
            a.cosines
                .iter()
                .flat_map(|x| b.cosines.iter().map(move |y| x * y))
                .collect(),
        );
        ensure(slices_close(&c.cosines, &products, eps), || {
            format!(
                "pair {:?}: cosines {:?} vs products {:?}",
                c.pair, c.cosines, products
            )
        })?;
    }
    if iff {
        let (rp, rq, ro) = (certify(p, tol()), certify(q, tol()), certify(&out, tol()));
        let (fp, fq, fo) = (flags(&rp), flags(&rq), flags(&ro));
        let both: Vec<bool> = (1..4).map(|i| fp[i] && fq[i]).collect();
        ensure(fo[1..] == both[..], || {
            format!("verdicts {fo:?}, factors {fp:?} and {fq:?}")
        })?;
    }
    Ok(())
}

/// Eigenvalues below 1 - tol, i.e. the nonzero principal angles, as cos².
pub fn nonzero_angle_spectrum(eigenvalues: &[f64]) -> Vec<f64> {
    eigenvalues
        .iter()
        .copied()
        .filter(|&e| e < 1.0 - tol().absolute())
        .collect()
}

/// Laws for orthogonal complementation: bound A becomes n - A, each pair
/// keeps its nonzero principal angles, and equichordal / strongly simplicial
/// verdicts are unchanged.
pub fn complement_laws(p: &Packing) -> Check {
    let eps = tol().absolute();
    let out = complement(p, tol()).map_err(|e| e.to_string())?;
    ensure(
        (out.ambient_dim(), out.dim()) == (p.ambient_dim(), p.ambient_dim() - p.dim()),
        || "output dimensions".into(),
    )?;
    for (i, (w, c)) in p.subspaces().iter().zip(out.subspaces()).enumerate() {
        ensure(
            w.basis().adjoint_mul(c.basis()).unwrap().max_abs() <= eps,
            || format!("complement {i} is not orthogonal to its subspace"),
        )?;
    }
    for (a, b) in spectra(p).iter().zip(spectra(&out).iter()) {
        let (x, y) = (
            nonzero_angle_spectrum(&a.eigenvalues),
            nonzero_angle_spectrum(&b.eigenvalues),
        );
        ensure(slices_close(&x, &y, eps), || {
            format!("pair {:?}: nonzero angles {:?} vs {:?}", a.pair, x, y)
        })?;
        ensure(close(a.chordal_sq, b.chordal_sq, eps), || {
            format!("pair {:?}: chordal distance", a.pair)
        })?;
    }
    let (ri, ro) = (certify(p, tol()), certify(&out, tol()));
    ensure(
        opt_close(ri.tight.map(|a| p.len() as f64 - a), ro.tight, eps),
        || format!("frame bound {:?} -> {:?}", ri.tight, ro.tight),
    )?;
    ensure(ri.is_equichordal() == ro.is_equichordal(), || {
        "equichordal verdict".into()
    })?;
    ensure(
        ri.is_strongly_simplicial() == ro.is_strongly_simplicial(),
        || "strongly simplicial verdict".into(),
    )?;
    Ok(())
}

/// Singular values of `L_i* L_j` straight from the bases.
pub fn direct_cosines(p: &Packing, i: usize, j: usize) -> Vec<f64> {
    singular_values(
        &p.subspaces()[i]
            .basis()
            .adjoint_mul(p.subspaces()[j].basis())
            .unwrap(),
    )
}
