//! Restricted roots of a polar representation on a fixed stable Cartan
//! subspace: singular hyperplanes located by rank-jump scans, co-roots and
//! root functionals normalized against a chamber, type and compactness
//! classification, and root spaces.

use crate::cartan::CartanSubspaceRecord;
use crate::error::{Error, Result};
use crate::liealg::Subspace;
use crate::numkernel::{self as nk, re_mat, CVec, Mat, RMat, RVec, C};
use crate::sympair::RepresentationModel;

const SCAN_RAYS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum RootType {
    Real,
    Imaginary,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum RootSubtype {
    CompactReal,
    NoncompactReal,
    CompactImaginary,
    NoncompactImaginary,
    NotApplicable,
}

/// One singular hyperplane with its co-root, functional and root space.
#[derive(Debug, Clone)]
pub struct RootDatum {
    /// Values of the functional on the frame basis of the noncompact real
    /// locus of c; the complex-linear extension is determined by these.
    pub functional: RVec,
    /// Co-root in V-coordinates: the unit normal of the hyperplane inside the
    /// noncompact real locus.
    pub coroot: CVec,
    /// Basis of the hyperplane in frame coordinates of c.
    pub hyperplane: Mat,
    pub root_type: RootType,
    pub subtype: RootSubtype,
    /// Whether a Cayley transform exists along this root.
    pub cayley_applicable: bool,
    /// Basis of the root space inside the centralizer of the hyperplane.
    pub root_space: Mat,
    /// Basis of the centralizer of the hyperplane.
    pub g_alpha: Mat,
    /// Dimension of the root space.
    pub multiplicity: usize,
    /// Image of this root under the real structure: (root index, sign).
    pub sigma_pair: Option<(usize, i8)>,
}

/// Coordinates attached to a stable Cartan subspace: a complex basis of c
/// whose real span is the -1 eigenspace of the Cartan real structure.
#[derive(Debug, Clone)]
pub struct CartanFrame {
    /// Columns: first the real points in iW, then i times the real points in W.
    pub u_basis: Mat,
    /// Eigenvalue of the real structure on each frame column (+1 then -1).
    pub sigma_signs: Vec<f64>,
    /// Gram matrix of the invariant form on the frame (real positive-definite).
    pub gram: RMat,
}

impl CartanFrame {
    pub fn dim(&self) -> usize {
        self.u_basis.ncols()
    }

    /// Point of the noncompact real locus with the given real coordinates.
    pub fn point(&self, t: &RVec) -> CVec {
        &self.u_basis * nk::re_vec(t)
    }

    /// Complex point of c.
    pub fn point_c(&self, z: &CVec) -> CVec {
        &self.u_basis * z
    }
}

/// Report over one Cartan subspace: roots, centralizer, chamber, residuals.
#[derive(Debug, Clone)]
pub struct RootSystemReport {
    pub roots: Vec<RootDatum>,
    pub frame: CartanFrame,
    /// Basis of the centralizer of c in the algebra (complex coordinates).
    pub m_basis: Mat,
    pub m_dim: usize,
    /// Chamber representative in frame coordinates; all functionals are
    /// positive on it.
    pub chamber_point: RVec,
    pub residuals: RootResiduals,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct RootResiduals {
    /// max |<g_a . c, g_b . c>| over distinct roots.
    pub cross_orthogonality: f64,
    /// max |<c, g_a . c>|.
    pub base_orthogonality: f64,
    /// dim c + sum dim(g_a . c) - dim V.
    pub decomposition_dim_gap: i64,
    /// whether the sigma action closes on the root multiset with the expected
    /// fixed/negated pattern for real/imaginary roots.
    pub sigma_closure_ok: bool,
}

/// Build the frame of a theta-stable record.
pub fn cartan_frame(rep: &RepresentationModel, rec: &CartanSubspaceRecord) -> Result<CartanFrame> {
    if !rec.theta_stable {
        return Err(Error::Precondition("root data needs a theta-stable Cartan subspace".into()));
    }
    let pol = &rep.tol;
    let iw = nk::subspace_intersection_re(&rec.real_basis, &rep.vr_iw_basis(), pol);
    let w = nk::subspace_intersection_re(&rec.real_basis, &rep.vr_w_basis(), pol);
    let r = rec.dim();
    if iw.ncols() + w.ncols() != r {
        return Err(Error::Inconsistent("signature split does not fill the subspace".into()));
    }
    let i = C::new(0.0, 1.0);
    let mut u = Mat::zeros(rep.space_dim, r);
    let mut signs = Vec::with_capacity(r);
    for j in 0..iw.ncols() {
        u.set_column(j, &re_mat(&iw).column(j).into_owned());
        signs.push(1.0);
    }
    for j in 0..w.ncols() {
        u.set_column(iw.ncols() + j, &(re_mat(&w).column(j).into_owned() * i));
        signs.push(-1.0);
    }
    // Gram of the invariant form; real and positive-definite on this locus
    let gram_c = u.transpose() * re_mat(&rep.form) * &u;
    let gram = nk::expect_real(&gram_c, 1e-7 * rep.form.norm().max(1.0))?;
    Ok(CartanFrame { u_basis: u, sigma_signs: signs, gram })
}

fn isotropy_dim(rep: &RepresentationModel, v: &CVec) -> usize {
    let scale = rep.action_scale() * v.norm();
    rep.g_dim() - nk::rank_scaled(&rep.action_map(v), &rep.tol, scale).unwrap_or(0)
}

/// Smallest singular value of the orbit map that is nonzero at generic points;
/// its zero locus is exactly the singular set.
fn scan_value(rep: &RepresentationModel, v: &CVec, generic_kernel: usize) -> f64 {
    let m = rep.action_map(v);
    let sv = m.svd(false, false).singular_values;
    let mut vals: Vec<f64> = sv.as_slice().to_vec();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let idx = rep.g_dim().saturating_sub(generic_kernel).saturating_sub(1);
    vals.get(idx).copied().unwrap_or(0.0)
}

/// Centralizer in the acting algebra of the span of complex columns of V.
fn centralizer_of_span(rep: &RepresentationModel, cols: &Mat) -> Mat {
    let pol = &rep.tol;
    if cols.ncols() == 0 {
        return Mat::identity(rep.g_dim(), rep.g_dim());
    }
    let mut stacked = Mat::zeros(rep.space_dim * cols.ncols(), rep.g_dim());
    for j in 0..cols.ncols() {
        let m = rep.action_map(&cols.column(j).into_owned());
        stacked.rows_mut(j * rep.space_dim, rep.space_dim).copy_from(&m);
    }
    nk::nullspace_scaled(&stacked, pol, rep.action_scale() * cols.norm().max(1.0))
}

/// Singular directions (unit vectors in frame coordinates) found on the arc
/// of one 2-plane section by a grid scan plus golden-section refinement.
fn scan_section(
    rep: &RepresentationModel,
    frame: &CartanFrame,
    a: &RVec,
    b: &RVec,
    m_dim: usize,
) -> Vec<RVec> {
    let eval = |phi: f64| -> f64 {
        let t = a * phi.cos() + b * phi.sin();
        scan_value(rep, &frame.point(&t), m_dim)
    };
    let mut grid: Vec<f64> = (0..SCAN_RAYS)
        .map(|k| eval(std::f64::consts::PI * k as f64 / SCAN_RAYS as f64))
        .collect();
    let scale = grid.iter().cloned().fold(0.0, f64::max).max(1e-300);
    grid.iter_mut().for_each(|x| *x /= scale);
    let mut out = Vec::new();
    for k in 0..SCAN_RAYS {
        let prev = grid[(k + SCAN_RAYS - 1) % SCAN_RAYS];
        let next = grid[(k + 1) % SCAN_RAYS];
        if grid[k] <= prev && grid[k] <= next && grid[k] < 0.5 {
            let step = std::f64::consts::PI / SCAN_RAYS as f64;
            let center = std::f64::consts::PI * k as f64 / SCAN_RAYS as f64;
            let (mut lo, mut hi) = (center - step, center + step);
            let gr = (5f64.sqrt() - 1.0) / 2.0;
            let (mut x1, mut x2) = (hi - gr * (hi - lo), lo + gr * (hi - lo));
            let (mut f1, mut f2) = (eval(x1), eval(x2));
            for _ in 0..80 {
                if f1 < f2 {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = eval(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = eval(x2);
                }
            }
            let phi = 0.5 * (lo + hi);
            let t = a * phi.cos() + b * phi.sin();
            let v = frame.point(&t);
            if isotropy_dim(rep, &v) > m_dim {
                out.push(t);
            }
        }
    }
    out
}

/// Recover the functional (up to scale) of the hyperplane through a singular
/// point from a kernel element transverse to the centralizer of c: on the
/// root space the orbit map is rank one over c, so the images of the frame
/// basis are parallel with ratios given by the functional.
fn functional_at_singular_point(
    rep: &RepresentationModel,
    frame: &CartanFrame,
    m_basis: &Mat,
    t: &RVec,
) -> Option<RVec> {
    let pol = &rep.tol;
    let v = frame.point(t);
    let kernel = nk::nullspace_scaled(&rep.action_map(&v), pol, rep.action_scale() * v.norm());
    // project out the centralizer of c
    let extra = if m_basis.ncols() > 0 {
        let proj = m_basis * (m_basis.adjoint() * &kernel);
        nk::orthonormal_columns(&(kernel - proj), pol)
    } else {
        kernel
    };
    if extra.ncols() == 0 {
        return None;
    }
    let x = extra.column(0).into_owned();
    let act = rep.action_of(&x);
    let r = frame.dim();
    let images: Vec<CVec> = (0..r).map(|k| &act * frame.u_basis.column(k).into_owned()).collect();
    let k0 = (0..r).max_by(|&i, &j| images[i].norm().partial_cmp(&images[j].norm()).unwrap())?;
    let w0 = images[k0].clone();
    if w0.norm() < 1e-10 {
        return None;
    }
    let mut coords = RVec::zeros(r);
    for k in 0..r {
        let c = (w0.adjoint() * &images[k])[(0, 0)] / nk::cplx(w0.norm() * w0.norm());
        let residual = (&images[k] - &w0 * c).norm();
        if residual > 1e-6 * images[k].norm().max(1.0) {
            // crossing point of two hyperplanes; reject
            return None;
        }
        if c.im.abs() > 1e-6 * c.norm().max(1e-300) {
            return None;
        }
        coords[k] = c.re;
    }
    let n = coords.norm();
    if n < 1e-12 {
        return None;
    }
    Some(coords / n)
}

fn dedup_functionals(raw: &mut Vec<RVec>, merge_tol: f64, warnings: &mut Vec<String>) {
    let mut kept: Vec<RVec> = Vec::new();
    for f in raw.drain(..) {
        let mut matched = false;
        for g in &kept {
            let d = (&f - g).norm().min((&f + g).norm());
            if d < 1e-5 {
                matched = true;
                break;
            } else if d < merge_tol {
                matched = true;
                warnings.push(format!("merged two nearby hyperplane normals at distance {d:.3e}"));
                break;
            }
        }
        if !matched {
            kept.push(f);
        }
    }
    *raw = kept;
}

/// The singular hyperplanes of c as subspaces of V (complex span).
pub fn singular_hyperplanes(
    rep: &RepresentationModel,
    rec: &CartanSubspaceRecord,
) -> Result<Vec<Subspace>> {
    let report = root_system(rep, rec)?;
    Ok(report
        .roots
        .iter()
        .map(|root| {
            Subspace::from_span(
                rep.space_dim,
                &(&report.frame.u_basis * &root.hyperplane),
                &rep.tol,
            )
        })
        .collect())
}

/// Normalize a raw functional into a unit co-root and the induced functional,
/// with the sign fixed by positivity on the chamber.
pub fn coroot_and_functional(
    rep: &RepresentationModel,
    frame: &CartanFrame,
    raw: &RVec,
    chamber: &RVec,
) -> Result<(CVec, RVec)> {
    let gram_inv = nk::inverse_re(&frame.gram).map_err(|_| {
        Error::Inconsistent("invariant form degenerate on the noncompact real locus".into())
    })?;
    let coords = &gram_inv * raw;
    let v = frame.point(&coords);
    let q = (v.transpose() * re_mat(&rep.form) * &v)[(0, 0)];
    if q.im.abs() > 1e-8 * q.norm().max(1.0) || q.re <= 0.0 {
        return Err(Error::Inconsistent(format!("co-root has non-positive square {q}")));
    }
    let mut coroot_coords = coords / q.re.sqrt();
    // exact functional alpha(u_k) = <u_k, v_alpha>
    let mut functional = &frame.gram * &coroot_coords;
    if functional.dot(chamber) < 0.0 {
        coroot_coords = -coroot_coords;
        functional = -functional;
    }
    Ok((frame.point(&coroot_coords), functional))
}

/// Centralizer of the hyperplane and the root space inside it: the complement
/// of the centralizer of c, orthogonal for the compact Hermitian form of the
/// algebra (which makes it stable under theta and the centralizer action).
pub fn root_space(
    rep: &RepresentationModel,
    frame: &CartanFrame,
    m_basis: &Mat,
    functional: &RVec,
) -> Result<(Mat, Mat)> {
    let pol = &rep.tol;
    let r = frame.dim();
    let func_row = Mat::from_fn(1, r, |_, j| nk::cplx(functional[j]));
    let hyper_coords = nk::nullspace(&func_row, pol);
    let hyper_cols = &frame.u_basis * &hyper_coords;
    let g_alpha = centralizer_of_span(rep, &hyper_cols);
    let f_g = rep.algebra_form()?;
    let b_theta_g = re_mat(&(-&f_g * &rep.theta_g));
    let rspace =
        nk::complement_wrt_form(&g_alpha, m_basis, &b_theta_g, nk::FormKind::Hermitian, pol)?;
    Ok((g_alpha, rspace))
}

/// Type from the vanishing pattern of the functional on the two halves of the
/// noncompact real locus; compactness of noncomplex roots from the eigenvalue
/// split of the root space under the composed involution.
pub fn classify_root(
    rep: &RepresentationModel,
    frame: &CartanFrame,
    functional: &RVec,
    rspace: &Mat,
) -> Result<(RootType, RootSubtype, bool)> {
    let pol = &rep.tol;
    let scale = functional.norm().max(1e-300);
    let worst_on = |sign: f64| -> f64 {
        frame
            .sigma_signs
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == sign)
            .map(|(k, _)| functional[k].abs())
            .fold(0.0, f64::max)
    };
    let vanish_plus = worst_on(1.0) <= 1e-7 * scale;
    let vanish_minus = worst_on(-1.0) <= 1e-7 * scale;
    if vanish_plus && vanish_minus {
        return Err(Error::Inconsistent("root functional vanishes identically".into()));
    }
    let root_type = if vanish_minus {
        RootType::Real
    } else if vanish_plus {
        RootType::Imaginary
    } else {
        RootType::Complex
    };
    if root_type == RootType::Complex {
        return Ok((RootType::Complex, RootSubtype::NotApplicable, false));
    }
    let omega = re_mat(rep.omega_g());
    let plus = nk::subspace_intersection(rspace, &nk::eigenspace_of_involution(&omega, 1.0, pol), pol);
    let minus =
        nk::subspace_intersection(rspace, &nk::eigenspace_of_involution(&omega, -1.0, pol), pol);
    if plus.ncols() + minus.ncols() != rspace.ncols() {
        return Err(Error::Inconsistent(
            "root space is not stable under the composed involution".into(),
        ));
    }
    let applicable = minus.ncols() > 0;
    let subtype = match root_type {
        RootType::Imaginary => {
            if applicable {
                RootSubtype::NoncompactImaginary
            } else {
                RootSubtype::CompactImaginary
            }
        }
        RootType::Real => {
            if plus.ncols() > 0 {
                RootSubtype::CompactReal
            } else {
                RootSubtype::NoncompactReal
            }
        }
        RootType::Complex => unreachable!(),
    };
    Ok((root_type, subtype, applicable))
}

/// Full restricted-root analysis over one stable Cartan subspace.
pub fn root_system(
    rep: &RepresentationModel,
    rec: &CartanSubspaceRecord,
) -> Result<RootSystemReport> {
    let pol = &rep.tol;
    let frame = cartan_frame(rep, rec)?;
    let r = frame.dim();
    let m_basis = centralizer_of_span(rep, &frame.u_basis);
    let m_dim = m_basis.ncols();
    let mut warnings = rec.warnings.clone();

    if rec.rank == 0 || r == 0 {
        return Ok(RootSystemReport {
            roots: Vec::new(),
            frame,
            m_basis,
            m_dim,
            chamber_point: RVec::zeros(r),
            residuals: RootResiduals { sigma_closure_ok: true, ..Default::default() },
            warnings,
        });
    }

    // raw hyperplane functionals from ray scans over 2-plane sections
    let mut raw: Vec<RVec> = Vec::new();
    if r == 1 {
        // the singular set of a rank-one subspace is the origin
        if isotropy_dim(rep, &frame.point(&RVec::zeros(1))) > m_dim {
            raw.push(RVec::from_vec(vec![1.0]));
        }
    } else {
        let e = |k: usize| RVec::from_fn(r, |i, _| if i == k { 1.0 } else { 0.0 });
        let mut sections: Vec<(RVec, RVec)> = Vec::new();
        for i in 0..r {
            for j in (i + 1)..r {
                sections.push((e(i), e(j)));
            }
        }
        // a tilted section guards against hyperplanes containing an axis plane
        let mut a = RVec::from_fn(r, |i, _| 1.0 / ((i + 2) as f64));
        a /= a.norm();
        let mut b =
            RVec::from_fn(r, |i, _| (if i % 2 == 0 { 0.3 } else { -0.7 }) * ((i + 1) as f64).sqrt());
        b -= &a * a.dot(&b);
        b /= b.norm();
        sections.push((a, b));

        for (a, b) in &sections {
            for t in scan_section(rep, &frame, a, b, m_dim) {
                if let Some(f) = functional_at_singular_point(rep, &frame, &m_basis, &t) {
                    raw.push(f);
                }
            }
        }
        dedup_functionals(&mut raw, 1e-3, &mut warnings);
        // verification: a generic kernel point of each functional is singular
        raw.retain(|f| {
            let ker = nk::nullspace_re(&RMat::from_fn(1, r, |_, j| f[j]), pol);
            if ker.ncols() == 0 {
                return false;
            }
            let mut t = RVec::zeros(r);
            for j in 0..ker.ncols() {
                t += ker.column(j) * (1.0 + 0.31 * j as f64);
            }
            isotropy_dim(rep, &frame.point(&t)) > m_dim
        });
    }

    // chamber: a deterministic direction avoiding all hyperplanes
    let mut chamber = RVec::from_fn(r, |i, _| 1.0 / (1.3 + i as f64));
    let mut found_chamber = false;
    for attempt in 0..64 {
        let ok = raw
            .iter()
            .all(|f| f.dot(&chamber).abs() > 1e-4 * f.norm() * chamber.norm())
            && isotropy_dim(rep, &frame.point(&chamber)) == m_dim;
        if ok {
            found_chamber = true;
            break;
        }
        chamber = RVec::from_fn(r, |i, _| ((attempt * r + i + 1) as f64 * 0.7391).sin() + 1.1);
    }
    if !found_chamber {
        return Err(Error::SearchFailure("no chamber direction found".into()));
    }
    chamber /= chamber.norm();

    // assemble the data per hyperplane
    let mut roots = Vec::new();
    for f_raw in &raw {
        let (coroot, functional) = coroot_and_functional(rep, &frame, f_raw, &chamber)?;
        let (g_alpha, rspace) = root_space(rep, &frame, &m_basis, &functional)?;
        let (root_type, subtype, applicable) = classify_root(rep, &frame, &functional, &rspace)?;
        // injectivity of the orbit map on the root space at the co-root
        if rspace.ncols() > 0 {
            let moved = rep.action_map(&coroot) * &rspace;
            if nk::rank_with_tol(&moved, pol)? < rspace.ncols() {
                warnings.push("orbit map not injective on a root space".into());
            }
        }
        let func_row = Mat::from_fn(1, r, |_, j| nk::cplx(functional[j]));
        let hyperplane = nk::nullspace(&func_row, pol);
        roots.push(RootDatum {
            functional,
            coroot,
            hyperplane,
            root_type,
            subtype,
            cayley_applicable: applicable,
            multiplicity: rspace.ncols(),
            root_space: rspace,
            g_alpha,
            sigma_pair: None,
        });
    }

    // sigma action on the root multiset: on frame coordinates it multiplies by
    // the sign pattern of the frame columns.
    let mut sigma_ok = true;
    let images: Vec<RVec> = roots
        .iter()
        .map(|root| RVec::from_fn(r, |k, _| frame.sigma_signs[k] * root.functional[k]))
        .collect();
    for (i, img) in images.iter().enumerate() {
        let mut found = None;
        for (j, other) in roots.iter().enumerate() {
            if (img - &other.functional).norm() < 1e-5 * img.norm().max(1e-300) {
                found = Some((j, 1i8));
                break;
            }
            if (img + &other.functional).norm() < 1e-5 * img.norm().max(1e-300) {
                found = Some((j, -1i8));
                break;
            }
        }
        if found.is_none() {
            sigma_ok = false;
        }
        match roots[i].root_type {
            RootType::Real => {
                if found != Some((i, 1)) {
                    sigma_ok = false;
                }
            }
            RootType::Imaginary => {
                if found != Some((i, -1)) {
                    sigma_ok = false;
                }
            }
            RootType::Complex => {}
        }
        roots[i].sigma_pair = found;
    }

    // orthogonality and decomposition residuals
    let f_c = re_mat(&rep.form);
    let spans: Vec<Mat> = roots
        .iter()
        .map(|root| {
            let mut cols = Mat::zeros(rep.space_dim, root.root_space.ncols() * r);
            for j in 0..root.root_space.ncols() {
                let act = rep.action_of(&root.root_space.column(j).into_owned());
                for k in 0..r {
                    cols.set_column(j * r + k, &(&act * frame.u_basis.column(k).into_owned()));
                }
            }
            nk::orthonormal_columns(&cols, pol)
        })
        .collect();
    // the invariant pairing is complex-bilinear: transpose, not adjoint
    let mut cross: f64 = 0.0;
    for i in 0..spans.len() {
        for j in (i + 1)..spans.len() {
            cross = cross.max((spans[i].transpose() * &f_c * &spans[j]).norm());
        }
    }
    let mut base: f64 = 0.0;
    for span in &spans {
        base = base.max((frame.u_basis.transpose() * &f_c * span).norm());
    }
    let total: usize = r + spans.iter().map(|s| s.ncols()).sum::<usize>();
    let residuals = RootResiduals {
        cross_orthogonality: cross,
        base_orthogonality: base,
        decomposition_dim_gap: total as i64 - rep.space_dim as i64,
        sigma_closure_ok: sigma_ok,
    };

    Ok(RootSystemReport { roots, frame, m_basis, m_dim, chamber_point: chamber, residuals, warnings })
}

/// Sorted multiset of (type, subtype, multiplicity), a conjugacy invariant.
pub fn root_type_multiset(
    rep: &RepresentationModel,
    rec: &CartanSubspaceRecord,
) -> Result<Vec<(RootType, RootSubtype, usize)>> {
    let report = root_system(rep, rec)?;
    let mut out: Vec<_> = report
        .roots
        .iter()
        .map(|root| (root.root_type, root.subtype, root.multiplicity))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{enumerate_classes, ConjugacyClassTable, SearchBudget};
    use crate::numkernel::TolerancePolicy;
    use crate::sympair::catalog::catalog_rep;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn classes(name: &str, seed: u64) -> (RepresentationModel, ConjugacyClassTable) {
        let rep = catalog_rep(name, &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed, samples: 40, ..Default::default() },
        )
        .unwrap();
        (rep, table)
    }

    #[test]
    fn sl2_split_subspace_has_one_transformable_real_root() {
        let (rep, table) = classes("sl2-adjoint", 3);
        let split =
            table.representatives.iter().find(|r| r.signature() == (0, 1)).unwrap();
        let report = root_system(&rep, split).unwrap();
        assert_eq!(report.roots.len(), 1);
        let root = &report.roots[0];
        assert_eq!(root.root_type, RootType::Real);
        // the composed involution has both eigenvalues on this 2-dim root
        // space, so the root is compact real and transformable
        assert_eq!(root.subtype, RootSubtype::CompactReal);
        assert!(root.cayley_applicable);
        assert_eq!(root.multiplicity, 2);
        assert_eq!(report.m_dim, 1);
        assert!(root.functional.dot(&report.chamber_point) > 0.0);
        // co-root normalization <v, v> = 1
        let q = (root.coroot.transpose() * re_mat(&rep.form) * &root.coroot)[(0, 0)];
        assert!((q.re - 1.0).abs() < 1e-9 && q.im.abs() < 1e-10);
        // the functional vanishes on its own hyperplane
        for j in 0..root.hyperplane.ncols() {
            let z: C = (0..report.frame.dim())
                .map(|k| nk::cplx(root.functional[k]) * root.hyperplane[(k, j)])
                .sum();
            assert!(z.norm() < 1e-9);
        }
    }

    #[test]
    fn sl2_compact_subspace_has_one_noncompact_imaginary_root() {
        let (rep, table) = classes("sl2-adjoint", 4);
        let compact =
            table.representatives.iter().find(|r| r.signature() == (1, 0)).unwrap();
        let report = root_system(&rep, compact).unwrap();
        assert_eq!(report.roots.len(), 1);
        let root = &report.roots[0];
        assert_eq!(root.root_type, RootType::Imaginary);
        assert_eq!(root.subtype, RootSubtype::NoncompactImaginary);
        assert!(root.cayley_applicable);
        assert_eq!(root.multiplicity, 2);
    }

    #[test]
    fn sln_son_has_three_real_root_hyperplanes() {
        let (rep, table) = classes("sln-son:n=3", 5);
        let rec = &table.representatives[0];
        let report = root_system(&rep, rec).unwrap();
        assert_eq!(report.roots.len(), 3);
        for (i, root) in report.roots.iter().enumerate() {
            assert_eq!(root.root_type, RootType::Real);
            assert_eq!(root.multiplicity, 1);
            assert_eq!(root.sigma_pair, Some((i, 1)));
        }
        assert_eq!(report.m_dim, 0);
        assert_eq!(report.residuals.decomposition_dim_gap, 0);
        assert!(report.residuals.cross_orthogonality < 1e-8);
        assert!(report.residuals.base_orthogonality < 1e-8);
        assert!(report.residuals.sigma_closure_ok);
    }

    #[test]
    fn compact_pair_has_one_compact_imaginary_root() {
        let (rep, table) = classes("supq-compact:p=1,q=1", 6);
        let rec = &table.representatives[0];
        let report = root_system(&rep, rec).unwrap();
        assert_eq!(report.roots.len(), 1);
        assert_eq!(report.roots[0].root_type, RootType::Imaginary);
        assert_eq!(report.roots[0].subtype, RootSubtype::CompactImaginary);
        assert!(!report.roots[0].cayley_applicable);
    }

    #[test]
    fn sl2c_adjoint_has_complex_roots_paired_by_sigma() {
        let (rep, table) = classes("sl2c-adjoint", 8);
        assert_eq!(table.representatives.len(), 1);
        let rec = &table.representatives[0];
        assert_eq!(rec.signature(), (1, 1));
        let report = root_system(&rep, rec).unwrap();
        assert_eq!(report.roots.len(), 2);
        for root in &report.roots {
            assert_eq!(root.root_type, RootType::Complex);
            assert_eq!(root.subtype, RootSubtype::NotApplicable);
            assert!(!root.cayley_applicable);
            assert_eq!(root.multiplicity, 2);
        }
        let p0 = report.roots[0].sigma_pair.unwrap();
        assert_eq!(p0.0, 1);
        assert!(report.residuals.sigma_closure_ok);
    }

    #[test]
    fn isotropy_formula_at_generic_noncompact_point() {
        // on a maximally noncompact subspace the generic isotropy along the
        // noncompact locus is m plus the imaginary root spaces
        let (rep, table) = classes("sl2-adjoint", 9);
        let split =
            table.representatives.iter().find(|r| r.signature() == (0, 1)).unwrap();
        let report = root_system(&rep, split).unwrap();
        let imag_mult: usize = report
            .roots
            .iter()
            .filter(|r| r.root_type == RootType::Imaginary)
            .map(|r| r.multiplicity)
            .sum();
        let frame = &report.frame;
        let t = RVec::from_fn(frame.dim(), |k, _| if frame.sigma_signs[k] > 0.0 { 1.0 } else { 0.0 });
        assert!(t.norm() > 0.0);
        let v2 = frame.point(&t);
        assert_eq!(isotropy_dim(&rep, &v2), report.m_dim + imag_mult);
    }

    #[test]
    fn hyperplanes_exposed_as_subspaces() {
        let (rep, table) = classes("sln-son:n=3", 10);
        let rec = &table.representatives[0];
        let hyper = singular_hyperplanes(&rep, rec).unwrap();
        assert_eq!(hyper.len(), 3);
        for h in &hyper {
            assert_eq!(h.dim(), 1); // rank 2 minus 1
        }
    }
}
