//! Cayley transforms between conjugacy classes of Cartan subspaces, greedy
//! searches for extremal (maximally compact / noncompact) representatives,
//! and the polarity check of the restricted compact-group action on the
//! extremal loci.

use crate::cartan::{CartanSubspaceRecord, GroupElement};
use crate::error::{Error, Result};
use crate::numkernel::{self as nk, expm, re_mat, CVec, Mat, RMat, RVec};
use crate::roots::{root_system, RootDatum, RootSystemReport, RootType};
use crate::sympair::RepresentationModel;

/// Which signature step the transform performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CayleyKind {
    /// Raise the noncompact dimension by one along a noncompact imaginary root.
    NoncompactImaginary,
    /// Raise the compact dimension by one along a transformable real root.
    CompactReal,
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct CayleyResiduals {
    /// theta fixes the transform operator.
    pub theta_fixes_element: f64,
    /// sigma inverts the transform operator.
    pub sigma_inverts_element: f64,
    /// the squared operator acts as minus the identity on the source subspace.
    pub square_plus_id_on_c: f64,
    /// the base point travels to its antipode at parameter pi.
    pub antipode: f64,
}

/// A performed Cayley transform with its certificates.
#[derive(Debug, Clone)]
pub struct CayleyRecord {
    pub kind: CayleyKind,
    /// Generator in algebra coordinates, scaled to unit geodesic speed.
    pub generator: CVec,
    pub element: GroupElement,
    pub source: CartanSubspaceRecord,
    pub target: CartanSubspaceRecord,
    pub residuals: CayleyResiduals,
}

/// Realification of a rectangular conjugate-linear map `z -> A conj(z)`.
fn realify_antilinear_rect(a: &Mat) -> RMat {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut out = RMat::zeros(2 * rows, 2 * cols);
    for i in 0..rows {
        for j in 0..cols {
            let z = a[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + cols)] = z.im;
            out[(i + rows, j)] = z.im;
            out[(i + rows, j + cols)] = -z.re;
        }
    }
    out
}

fn realify_linear_rect(a: &Mat) -> RMat {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut out = RMat::zeros(2 * rows, 2 * cols);
    for i in 0..rows {
        for j in 0..cols {
            let z = a[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + cols)] = -z.im;
            out[(i + rows, j)] = z.im;
            out[(i + rows, j + cols)] = z.re;
        }
    }
    out
}

/// Basis (complex columns, real span) of `{X in span(b) : theta X = X and
/// sigma X = -X}`; the admissible transform generators live here.
fn generator_space(rep: &RepresentationModel, b: &Mat) -> Mat {
    let pol = &rep.tol;
    let theta = re_mat(&rep.theta_g);
    // theta(B z) = B z  and  conj(B z) = -B z, realified over z
    let lin = realify_linear_rect(b);
    let theta_anti = realify_antilinear_rect(&(&theta * b.conjugate()));
    let conj_anti = realify_antilinear_rect(&b.conjugate());
    let mut stacked = RMat::zeros(4 * rep.g_dim(), 2 * b.ncols());
    stacked.rows_mut(0, 2 * rep.g_dim()).copy_from(&(&theta_anti - &lin));
    stacked
        .rows_mut(2 * rep.g_dim(), 2 * rep.g_dim())
        .copy_from(&(&conj_anti + &lin));
    // the conditions may cancel exactly on the whole family
    let z_solutions = nk::nullspace_re_scaled(&stacked, pol, 2.0 * b.norm().max(1.0));
    let mut cols = Mat::zeros(rep.g_dim(), z_solutions.ncols());
    let k = b.ncols();
    for j in 0..z_solutions.ncols() {
        let zr = z_solutions.column(j);
        let z = CVec::from_fn(k, |i, _| nk::C::new(zr[i], zr[i + k]));
        cols.set_column(j, &(b * z));
    }
    nk::real_span_basis(&cols, pol)
}

/// Perform one Cayley transform of the requested kind along a root of the
/// given root system.
pub fn cayley_transform(
    rep: &RepresentationModel,
    rec: &CartanSubspaceRecord,
    system: &RootSystemReport,
    root: &RootDatum,
    kind: CayleyKind,
) -> Result<CayleyRecord> {
    let pol = &rep.tol;
    match kind {
        CayleyKind::NoncompactImaginary => {
            if root.root_type != RootType::Imaginary {
                return Err(Error::Precondition("transform kind requires an imaginary root".into()));
            }
        }
        CayleyKind::CompactReal => {
            if root.root_type != RootType::Real {
                return Err(Error::Precondition("transform kind requires a real root".into()));
            }
        }
    }
    if !root.cayley_applicable {
        return Err(Error::NotApplicable(
            "generator space is trivial; the compact subgroup is already transitive on the sphere of this rank-one block"
                .into(),
        ));
    }
    let gens = generator_space(rep, &root.root_space);
    if gens.ncols() == 0 {
        return Err(Error::NotApplicable("generator space is trivial".into()));
    }
    // deterministic choice: dominant left-singular direction of the family
    let mut x = gens.column(0).into_owned();

    let i = nk::C::new(0.0, 1.0);
    let v = match kind {
        CayleyKind::NoncompactImaginary => &root.coroot * i,
        CayleyKind::CompactReal => root.coroot.clone(),
    };

    // scale X to unit geodesic speed: A(X)^2 v should be a negative multiple
    // of v; fall back to a bisection on the return time otherwise
    let act = rep.action_of(&x);
    let av = &act * &v;
    let aav = &act * &av;
    let kappa = (v.adjoint() * &aav)[(0, 0)] / nk::cplx(v.norm() * v.norm());
    let fit = (&aav - &v * kappa).norm();
    if fit <= 1e-6 * aav.norm().max(1.0) && kappa.re < 0.0 && kappa.im.abs() < 1e-6 {
        x /= nk::cplx((-kappa.re).sqrt());
    } else {
        // bisection on t with exp(t A) v = -v
        let period = |t: f64| -> f64 {
            let g = expm(&(&act * nk::cplx(t)));
            (&g * &v + &v).norm()
        };
        let mut best = (f64::INFINITY, 0.0);
        for k in 1..=512 {
            let t = 4.0 * std::f64::consts::PI * k as f64 / 512.0;
            let val = period(t);
            if val < best.0 {
                best = (val, t);
            }
        }
        let (mut lo, mut hi) = (best.1 - 0.05, best.1 + 0.05);
        for _ in 0..60 {
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if period(m1) < period(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let t_star = 0.5 * (lo + hi);
        if period(t_star) > 1e-6 * v.norm() {
            return Err(Error::SearchFailure(format!(
                "could not normalize the transform generator (best antipode residual {:.3e})",
                period(t_star)
            )));
        }
        x *= nk::cplx(t_star / std::f64::consts::PI);
    }

    let act = rep.action_of(&x);
    let half_pi = nk::cplx(std::f64::consts::FRAC_PI_2);
    let on_v = expm(&(&act * half_pi));
    let on_g = expm(&(rep.algebra.ad_matrix(&x)? * half_pi));
    let element = GroupElement { on_g, on_v };

    // certificates on the operator
    let theta = re_mat(&rep.theta_v);
    let theta_conj = &theta * element.on_v.conjugate() * theta.conjugate();
    let theta_fixes = (&theta_conj - &element.on_v).norm() / element.on_v.norm();
    let inv = nk::inverse(&element.on_v)?;
    let sigma_inverts = (element.on_v.conjugate() - &inv).norm() / inv.norm();
    let antipode = (expm(&(&act * nk::cplx(std::f64::consts::PI))) * &v + &v).norm() / v.norm();

    // new real direction: g v_alpha or i g v_alpha, whichever is real
    let moved = &element.on_v * &root.coroot;
    let cand_a = moved.clone();
    let cand_b = &moved * i;
    let im_norm = |w: &CVec| w.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let new_dir = if im_norm(&cand_a) <= im_norm(&cand_b) { cand_a } else { cand_b };
    if im_norm(&new_dir) > 1e-6 * new_dir.norm() {
        return Err(Error::Inconsistent(
            "transformed co-root is not aligned with the real points".into(),
        ));
    }
    let new_dir_re = RVec::from_fn(new_dir.len(), |k, _| new_dir[k].re);

    // real points of the hyperplane inside the source subspace
    let r = rec.dim();
    let u_pinv = (system.frame.u_basis.adjoint() * &system.frame.u_basis)
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::Inconsistent("frame basis is degenerate".into()))?
        * system.frame.u_basis.adjoint();
    let mut alpha_on_basis = RMat::zeros(2, r);
    for j in 0..r {
        let z = &u_pinv * re_mat(&rec.real_basis).column(j).into_owned();
        let val: nk::C = (0..r).map(|k| nk::cplx(root.functional[k]) * z[k]).sum();
        alpha_on_basis[(0, j)] = val.re;
        alpha_on_basis[(1, j)] = val.im;
    }
    let coeffs = nk::nullspace_re(&alpha_on_basis, pol);
    let hyper_real = &rec.real_basis * coeffs;
    if hyper_real.ncols() != r - 1 {
        return Err(Error::Inconsistent(format!(
            "hyperplane meets the real points in dimension {} instead of {}",
            hyper_real.ncols(),
            r - 1
        )));
    }

    let mut span = RMat::zeros(rep.space_dim, r);
    span.columns_mut(0, r - 1).copy_from(&hyper_real);
    span.set_column(r - 1, &new_dir_re);
    let target = CartanSubspaceRecord::from_real_points(rep, &span)?;
    if !target.theta_stable {
        return Err(Error::Inconsistent("transformed subspace is not theta-stable".into()));
    }

    // square acts as -id on the complex span of the source
    let sq = &element.on_v * &element.on_v;
    let square_plus_id =
        (&sq * &system.frame.u_basis + &system.frame.u_basis).norm() / system.frame.u_basis.norm();

    let expected = match kind {
        CayleyKind::NoncompactImaginary => {
            (rec.compact_dim.wrapping_sub(1), rec.noncompact_dim + 1)
        }
        CayleyKind::CompactReal => (rec.compact_dim + 1, rec.noncompact_dim.wrapping_sub(1)),
    };
    if target.signature() != expected {
        return Err(Error::Inconsistent(format!(
            "signature moved from {:?} to {:?}, expected {:?}",
            rec.signature(),
            target.signature(),
            expected
        )));
    }

    let residuals = CayleyResiduals {
        theta_fixes_element: theta_fixes,
        sigma_inverts_element: sigma_inverts,
        square_plus_id_on_c: square_plus_id,
        antipode,
    };
    let tol = 1e-7;
    if theta_fixes > tol * 100.0 || sigma_inverts > tol * 100.0 || square_plus_id > tol * 100.0 {
        return Err(Error::Inconsistent(format!(
            "transform certificates out of tolerance: {residuals:?}"
        )));
    }
    Ok(CayleyRecord { kind, generator: x, element, source: rec.clone(), target, residuals })
}

/// Search direction of [`extremal_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ExtremalDirection {
    MaxCompact,
    MaxNoncompact,
}

/// Greedily apply transforms of the appropriate kind until no applicable root
/// remains; the loop is bounded by the subspace dimension.
pub fn extremal_search(
    rep: &RepresentationModel,
    direction: ExtremalDirection,
    seed: &CartanSubspaceRecord,
) -> Result<(CartanSubspaceRecord, Vec<CayleyRecord>)> {
    if !(seed.sigma_stable && seed.theta_stable) {
        return Err(Error::Precondition("extremal search needs a stable starting subspace".into()));
    }
    let kind = match direction {
        ExtremalDirection::MaxNoncompact => CayleyKind::NoncompactImaginary,
        ExtremalDirection::MaxCompact => CayleyKind::CompactReal,
    };
    let wanted = match direction {
        ExtremalDirection::MaxNoncompact => RootType::Imaginary,
        ExtremalDirection::MaxCompact => RootType::Real,
    };
    let mut current = seed.clone();
    let mut steps = Vec::new();
    for _ in 0..=seed.dim() {
        if current.rank == 0 {
            break;
        }
        let system = root_system(rep, &current)?;
        let Some(root) = system
            .roots
            .iter()
            .find(|root| root.root_type == wanted && root.cayley_applicable)
        else {
            break;
        };
        let record = cayley_transform(rep, &current, &system, root, kind)?;
        current = record.target.clone();
        steps.push(record);
    }
    Ok((current, steps))
}

/// Verdict of the restricted-action polarity check on an extremal locus.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RestrictedPolarReport {
    pub passed: bool,
    pub vacuous: bool,
    pub locus_dim: usize,
    pub section_dim: usize,
    pub compact_orbit_dim: usize,
    pub orthogonality_residual: f64,
    pub containment_residual: f64,
    pub details: String,
}

/// Side selector: check the compact group on the noncompact locus (needs a
/// maximally noncompact subspace) or on the compact locus (dual).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RestrictedSide {
    NoncompactLocus,
    CompactLocus,
}

/// Numerical verification that the compact subgroup acts polarly on the
/// chosen locus with the corresponding part of the extremal subspace as a
/// section: orbit plus section decompose the locus orthogonally, and the
/// noncompact directions act inside the compact orbit.
pub fn restricted_polar_check(
    rep: &RepresentationModel,
    extremal: &CartanSubspaceRecord,
    side: RestrictedSide,
) -> Result<RestrictedPolarReport> {
    let pol = &rep.tol;
    let k_basis = rep.k_basis_re();
    let p_basis = rep.p_basis_re();
    let (locus, section, co_section) = match side {
        RestrictedSide::NoncompactLocus => (
            rep.vr_iw_basis(),
            nk::subspace_intersection_re(&extremal.real_basis, &rep.vr_iw_basis(), pol),
            nk::subspace_intersection_re(&extremal.real_basis, &rep.vr_w_basis(), pol),
        ),
        RestrictedSide::CompactLocus => (
            rep.vr_w_basis(),
            nk::subspace_intersection_re(&extremal.real_basis, &rep.vr_w_basis(), pol),
            nk::subspace_intersection_re(&extremal.real_basis, &rep.vr_iw_basis(), pol),
        ),
    };
    if locus.ncols() == 0 {
        return Ok(RestrictedPolarReport {
            passed: true,
            vacuous: true,
            locus_dim: 0,
            section_dim: 0,
            compact_orbit_dim: 0,
            orthogonality_residual: 0.0,
            containment_residual: 0.0,
            details: "locus is trivial".into(),
        });
    }

    // generic section point: maximize the compact orbit dimension over a
    // deterministic sample of directions
    let generic_point = |basis: &RMat| -> Option<RVec> {
        if basis.ncols() == 0 {
            return None;
        }
        let mut best: Option<(usize, RVec)> = None;
        for trial in 0..16 {
            let t = RVec::from_fn(basis.ncols(), |k, _| {
                (0.7391 * ((trial * basis.ncols() + k + 1) as f64)).sin() + 1.2
            });
            let v = basis * t;
            let dim = nk::rank_re(
                &{
                    let mut m = RMat::zeros(rep.space_dim, k_basis.ncols());
                    for j in 0..k_basis.ncols() {
                        m.set_column(j, &(rep.action_of_re(&k_basis.column(j).into_owned()) * &v));
                    }
                    m
                },
                pol,
            )
            .unwrap_or(0);
            if best.as_ref().map(|(d, _)| dim > *d).unwrap_or(true) {
                best = Some((dim, v));
            }
        }
        best.map(|(_, v)| v)
    };

    let Some(v2) = generic_point(&section) else {
        return Ok(RestrictedPolarReport {
            passed: true,
            vacuous: true,
            locus_dim: locus.ncols(),
            section_dim: 0,
            compact_orbit_dim: 0,
            orthogonality_residual: 0.0,
            containment_residual: 0.0,
            details: "section is trivial".into(),
        });
    };

    let mut k_moves = RMat::zeros(rep.space_dim, k_basis.ncols());
    for j in 0..k_basis.ncols() {
        k_moves.set_column(j, &(rep.action_of_re(&k_basis.column(j).into_owned()) * &v2));
    }
    let orbit = nk::orthonormal_columns_re(&k_moves, pol);

    let sum = nk::subspace_sum_re(&orbit, &section, pol);
    let dims_ok = orbit.ncols() + section.ncols() == locus.ncols() && sum.ncols() == locus.ncols();
    let orthogonality = (section.transpose() * &rep.form * &orbit).norm();

    // containment: the noncompact directions applied to a generic co-section
    // point stay inside the compact orbit directions of v2 (complex spans)
    let containment = if let Some(v1) = generic_point(&co_section) {
        let mut p_moves = Mat::zeros(rep.space_dim, p_basis.ncols());
        for j in 0..p_basis.ncols() {
            p_moves.set_column(
                j,
                &(re_mat(&rep.action_of_re(&p_basis.column(j).into_owned())) * nk::re_vec(&v1)),
            );
        }
        let mut k_span = Mat::zeros(rep.space_dim, k_basis.ncols());
        for j in 0..k_basis.ncols() {
            k_span.set_column(
                j,
                &(re_mat(&rep.action_of_re(&k_basis.column(j).into_owned())) * nk::re_vec(&v2)),
            );
        }
        let k_ortho = nk::orthonormal_columns(&k_span, pol);
        nk::subspace_residual(&k_ortho, &p_moves)
    } else {
        0.0
    };

    let scale = rep.form.norm().max(1.0);
    let passed = dims_ok && orthogonality <= 1e-8 * scale && containment <= 1e-6;
    Ok(RestrictedPolarReport {
        passed,
        vacuous: false,
        locus_dim: locus.ncols(),
        section_dim: section.ncols(),
        compact_orbit_dim: orbit.ncols(),
        orthogonality_residual: orthogonality,
        containment_residual: containment,
        details: if passed {
            "orbit and section decompose the locus orthogonally".into()
        } else {
            format!(
                "counterexample candidate: dims {}+{} vs locus {}, orthogonality {orthogonality:.3e}, containment {containment:.3e}",
                orbit.ncols(),
                section.ncols(),
                locus.ncols()
            )
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{conjugacy_test, enumerate_classes, ConjugacyVerdict, SearchBudget};
    use crate::numkernel::TolerancePolicy;
    use crate::sympair::catalog::catalog_rep;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn sl2_with_classes() -> (RepresentationModel, crate::cartan::ConjugacyClassTable) {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 13, samples: 40, ..Default::default() },
        )
        .unwrap();
        (rep, table)
    }

    #[test]
    fn noncompact_imaginary_transform_moves_compact_to_split() {
        let (rep, table) = sl2_with_classes();
        let compact = table.representatives.iter().find(|r| r.signature() == (1, 0)).unwrap();
        let split = table.representatives.iter().find(|r| r.signature() == (0, 1)).unwrap();
        let system = root_system(&rep, compact).unwrap();
        let root = &system.roots[0];
        let rec = cayley_transform(&rep, compact, &system, root, CayleyKind::NoncompactImaginary)
            .unwrap();
        assert_eq!(rec.target.signature(), (0, 1));
        assert!(rec.residuals.square_plus_id_on_c < 1e-9);
        assert!(rec.residuals.theta_fixes_element < 1e-9);
        assert!(rec.residuals.sigma_inverts_element < 1e-9);
        // lands in the split class
        assert_eq!(
            conjugacy_test(&rep, &rec.target, split, &SearchBudget::with_seed(3)).unwrap(),
            ConjugacyVerdict::Conjugate
        );
    }

    #[test]
    fn compact_real_transform_round_trips() {
        let (rep, table) = sl2_with_classes();
        let compact = table.representatives.iter().find(|r| r.signature() == (1, 0)).unwrap();
        let system = root_system(&rep, compact).unwrap();
        let down =
            cayley_transform(&rep, compact, &system, &system.roots[0], CayleyKind::NoncompactImaginary)
                .unwrap();
        let system2 = root_system(&rep, &down.target).unwrap();
        let root2 = system2.roots.iter().find(|r| r.root_type == RootType::Real).unwrap();
        let up = cayley_transform(&rep, &down.target, &system2, root2, CayleyKind::CompactReal)
            .unwrap();
        assert_eq!(up.target.signature(), (1, 0));
        assert_eq!(
            conjugacy_test(&rep, &up.target, compact, &SearchBudget::with_seed(5)).unwrap(),
            ConjugacyVerdict::Conjugate
        );
    }

    #[test]
    fn transform_is_rejected_on_compact_imaginary_roots() {
        let rep = catalog_rep("supq-compact:p=1,q=1", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 3, samples: 30, ..Default::default() },
        )
        .unwrap();
        let rec = &table.representatives[0];
        let system = root_system(&rep, rec).unwrap();
        let r = cayley_transform(&rep, rec, &system, &system.roots[0], CayleyKind::NoncompactImaginary);
        assert!(matches!(r, Err(Error::NotApplicable(_))));
    }

    #[test]
    fn extremal_search_from_compact_seed() {
        let (rep, table) = sl2_with_classes();
        let compact = table.representatives.iter().find(|r| r.signature() == (1, 0)).unwrap();
        let (out, steps) = extremal_search(&rep, ExtremalDirection::MaxNoncompact, compact).unwrap();
        assert_eq!(out.signature(), (0, 1));
        assert_eq!(steps.len(), 1);
        // already-extremal seed comes back unchanged
        let (again, steps2) = extremal_search(&rep, ExtremalDirection::MaxNoncompact, &out).unwrap();
        assert_eq!(steps2.len(), 0);
        assert_eq!(again.signature(), (0, 1));
    }

    #[test]
    fn compact_pair_is_already_extremal() {
        let rep = catalog_rep("supq-compact:p=1,q=1", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 4, samples: 30, ..Default::default() },
        )
        .unwrap();
        let rec = &table.representatives[0];
        let (out, steps) = extremal_search(&rep, ExtremalDirection::MaxNoncompact, rec).unwrap();
        assert_eq!(steps.len(), 0);
        assert_eq!(out.signature(), rec.signature());
    }

    #[test]
    fn restricted_polar_on_sl2_split() {
        let (rep, table) = sl2_with_classes();
        let split = table.representatives.iter().find(|r| r.signature() == (0, 1)).unwrap();
        let report = restricted_polar_check(&rep, split, RestrictedSide::NoncompactLocus).unwrap();
        assert!(report.passed);
        assert!(!report.vacuous);
        assert_eq!(report.locus_dim, 2);
        assert_eq!(report.section_dim, 1);
        assert_eq!(report.compact_orbit_dim, 1);
    }

    #[test]
    fn restricted_polar_on_compact_pair_is_vacuous() {
        let rep = catalog_rep("supq-compact:p=1,q=1", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 6, samples: 30, ..Default::default() },
        )
        .unwrap();
        let report = restricted_polar_check(
            &rep,
            &table.representatives[0],
            RestrictedSide::NoncompactLocus,
        )
        .unwrap();
        assert!(report.passed);
        assert!(report.vacuous);
    }

    #[test]
    fn restricted_polar_on_sln_son() {
        let rep = catalog_rep("sln-son:n=3", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 8, samples: 40, ..Default::default() },
        )
        .unwrap();
        let rec = &table.representatives[0];
        let report = restricted_polar_check(&rep, rec, RestrictedSide::NoncompactLocus).unwrap();
        assert!(report.passed, "{}", report.details);
        assert_eq!(report.locus_dim, 5);
        assert_eq!(report.section_dim, 2);
        assert_eq!(report.compact_orbit_dim, 3);
    }
}
