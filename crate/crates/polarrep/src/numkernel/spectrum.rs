//! Complex spectra with multiplicities and a diagonalizability verdict.

use super::{cplx, re_mat, Mat, RMat, TolerancePolicy, C};
use crate::error::{Error, Result};

/// Eigenvalue report of a square matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// `(eigenvalue, algebraic multiplicity)` sorted lexicographically by `(re, im)`.
    pub eigenvalues: Vec<(C, usize)>,
    /// True iff every geometric multiplicity matches the algebraic one.
    pub diagonalizable: bool,
    /// Borderline rank decisions encountered while matching multiplicities.
    pub warnings: Vec<String>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.iter().map(|&(_, m)| m).sum()
    }
}

fn lex_cmp(a: &C, b: &C) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap()
        .then(a.im.partial_cmp(&b.im).unwrap())
}

fn bounded_schur_diag(m: &Mat) -> Option<Vec<C>> {
    let n = m.nrows();
    for (eps, iters) in [(f64::EPSILON, 40 * n + 200), (1e-13, 80 * n + 400), (1e-11, 160 * n + 800)]
    {
        if let Some(s) = m.clone().try_schur(eps, iters) {
            return Some(s.unpack().1.diagonal().as_slice().to_vec());
        }
    }
    None
}

/// A fixed full unitary used to precondition stalled QR iterations.
fn mixing_unitary(n: usize) -> Mat {
    // deterministic pseudo-random entries, then one QR pass
    let mut state = 0x2545F491_4F6CDD1Du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let raw = Mat::from_fn(n, n, |_, _| C::new(next(), next()));
    raw.qr().q()
}

fn raw_eigenvalues(m: &Mat) -> Result<Vec<C>> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidInput("spectrum of a non-square matrix".into()));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    // The iteration is always explicitly bounded (the convenience entry points
    // iterate without a cap and can cycle). Symmetric eigenvalue patterns of
    // adjoint operators stall the shifted QR occasionally; a complex shift or
    // a unitary similarity breaks the symmetry without changing the spectrum.
    if let Some(vals) = bounded_schur_diag(m) {
        return Ok(vals);
    }
    let scale = m.norm().max(1.0);
    for shift in [C::new(0.137, 0.291), C::new(-0.318, 0.077)] {
        let s = shift * cplx(scale);
        let shifted = m - Mat::from_diagonal_element(n, n, s);
        if let Some(vals) = bounded_schur_diag(&shifted) {
            return Ok(vals.into_iter().map(|z| z + s).collect());
        }
    }
    let q = mixing_unitary(n);
    if let Some(vals) = bounded_schur_diag(&(q.adjoint() * m * &q)) {
        return Ok(vals);
    }
    Err(Error::SearchFailure("eigenvalue iteration did not converge".into()))
}

fn greedy_cluster(vals: &[(C, usize)], tol: f64) -> Vec<(C, usize)> {
    let mut clusters: Vec<(C, usize)> = Vec::new();
    for &(v, mult) in vals {
        match clusters
            .iter_mut()
            .min_by(|a, b| (a.0 - v).norm().partial_cmp(&(b.0 - v).norm()).unwrap())
        {
            Some(best) if (best.0 - v).norm() <= tol => {
                let k = best.1 as f64;
                let m = mult as f64;
                best.0 = (best.0 * cplx(k) + v * cplx(m)) / cplx(k + m);
                best.1 += mult;
            }
            _ => clusters.push((v, mult)),
        }
    }
    clusters.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    clusters
}

fn smallest_singular_value(m: &Mat) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Cluster raw eigenvalues into `(value, multiplicity)` groups and decide
/// diagonalizability by comparing geometric with algebraic multiplicities.
///
/// Greedy nearest-pairing against cluster centroids with `eig_tol`, ties broken
/// by the lexicographic sort of the inputs. A defective eigenvalue of
/// multiplicity k is scattered by the QR iteration over a disc of radius about
/// eps^(1/k), far beyond `eig_tol`; such scattered families are re-merged only
/// when their centroid is itself numerically an eigenvalue, which never holds
/// for genuinely distinct close eigenvalues.
pub fn complex_spectrum(m: &Mat, pol: &TolerancePolicy) -> Result<Spectrum> {
    if !super::all_finite(m) {
        return Err(Error::InvalidInput("non-finite entries in spectrum input".into()));
    }
    let n = m.nrows();
    let mut vals = raw_eigenvalues(m)?;
    vals.sort_by(lex_cmp);
    let scale = vals.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = pol.eig_tol * scale;
    let singles: Vec<(C, usize)> = vals.into_iter().map(|v| (v, 1)).collect();

    let fine = greedy_cluster(&singles, tol);
    let coarse_tol = (1e-3f64).max(10.0 * pol.eig_tol) * scale;
    let coarse = greedy_cluster(&fine, coarse_tol);

    let mat_scale = m.norm().max(1.0);
    let mut warnings = Vec::new();
    let mut clusters: Vec<(C, usize)> = Vec::new();
    for &(centroid, total) in &coarse {
        let members: Vec<(C, usize)> = fine
            .iter()
            .cloned()
            .filter(|&(z, _)| (z - centroid).norm() <= coarse_tol + tol)
            .collect();
        if members.len() <= 1 {
            clusters.extend(members);
            continue;
        }
        // scattered family: merge only if the centroid is an eigenvalue
        let shifted = m - Mat::from_diagonal_element(n, n, centroid);
        if smallest_singular_value(&shifted) <= pol.rank_tol * mat_scale {
            warnings.push(format!(
                "merged {} scattered eigenvalue estimates near {centroid} into one cluster",
                members.len()
            ));
            clusters.push((centroid, total));
        } else {
            clusters.extend(members);
        }
    }
    clusters.sort_by(|a, b| lex_cmp(&a.0, &b.0));

    let mut diagonalizable = true;
    for &(lambda, alg) in &clusters {
        let shifted = m - Mat::from_diagonal_element(n, n, lambda);
        // rank relative to the scale of m itself: the shift can cancel m
        // almost exactly (scalar operators), leaving only noise behind
        let sv = shifted.svd(false, false).singular_values;
        let cut = pol.rank_tol * sv.iter().cloned().fold(0.0, f64::max).max(mat_scale);
        let geom = n - sv.iter().filter(|&&s| s > cut).count();
        if geom != alg {
            diagonalizable = false;
        }
        // Flag rank decisions sitting close to the cutoff instead of silently
        // resolving them.
        if sv.iter().any(|&s| s > cut && s < 10.0 * cut) {
            warnings.push(format!(
                "eigenvalue {lambda} multiplicity decision is within 10x of rank_tol"
            ));
        }
    }
    Ok(Spectrum { eigenvalues: clusters, diagonalizable, warnings })
}

/// Greedy matching of two eigenvalue multisets within `tol`.
pub fn match_spectra(a: &[(C, usize)], b: &[(C, usize)], tol: f64) -> bool {
    let expand = |s: &[(C, usize)]| {
        let mut v: Vec<C> = s.iter().flat_map(|&(z, m)| std::iter::repeat(z).take(m)).collect();
        v.sort_by(lex_cmp);
        v
    };
    let xs = expand(a);
    let mut ys = expand(b);
    if xs.len() != ys.len() {
        return false;
    }
    for x in xs {
        let Some((idx, dist)) = ys
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
        else {
            return false;
        };
        if dist > tol {
            return false;
        }
        ys.remove(idx);
    }
    true
}

/// Spectral block of a real operator: either a real eigenvalue or a pair of
/// complex-conjugate ones presented as a 2x2 rotation-scaling block.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub enum EigBlock {
    Real { value: f64, multiplicity: usize },
    RotationPair { re: f64, im: f64, pairs: usize },
}

/// Group the spectrum of a real matrix into real values and conjugate pairs.
pub fn real_operator_blocks(m: &RMat, pol: &TolerancePolicy) -> Result<(Vec<EigBlock>, Spectrum)> {
    let spec = complex_spectrum(&re_mat(m), pol)?;
    let scale = spec.eigenvalues.iter().map(|(z, _)| z.norm()).fold(1.0, f64::max);
    let tol = pol.eig_tol * scale;
    let mut blocks = Vec::new();
    let mut used = vec![false; spec.eigenvalues.len()];
    for (i, &(z, mult)) in spec.eigenvalues.iter().enumerate() {
        if used[i] {
            continue;
        }
        if z.im.abs() <= tol {
            blocks.push(EigBlock::Real { value: z.re, multiplicity: mult });
            used[i] = true;
            continue;
        }
        // find the conjugate partner
        let partner = spec
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(j, _)| !used[j] && j != i)
            .min_by(|(_, a), (_, b)| {
                (a.0 - z.conj()).norm().partial_cmp(&(b.0 - z.conj()).norm()).unwrap()
            });
        match partner {
            Some((j, &(w, wmult))) if (w - z.conj()).norm() <= 10.0 * tol && wmult == mult => {
                used[i] = true;
                used[j] = true;
                let (re, im) = (z.re, z.im.abs());
                blocks.push(EigBlock::RotationPair { re, im, pairs: mult });
            }
            _ => {
                return Err(Error::Inconsistent(format!(
                    "real operator has unpaired complex eigenvalue {z}"
                )))
            }
        }
    }
    Ok((blocks, spec))
}
