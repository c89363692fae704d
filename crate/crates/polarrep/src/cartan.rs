//! Cartan subspaces of a polar representation: regularity of points, the
//! subspace attached to a regular point, containment for singular semisimple
//! points via slice recursion, stabilization under the Cartan real structure,
//! conjugacy testing and class enumeration, and the minimal-vector flow that
//! powers all conjugator searches.

use crate::error::{Error, Result};
use crate::liealg::Subspace;
use crate::numkernel::{
    self as nk, expm_re, hermitian_sqrt, re_mat, CVec, Mat, RMat, RVec, TolerancePolicy,
};
use crate::rng::{streams, SeedSplitter};
use crate::sympair::{construct_cartan_pair, AmbientLink, RepresentationModel};
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// A group element realized as a pair of operators, one on the algebra and one
/// on the representation space. No abstract group is ever materialized.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub on_g: Mat,
    pub on_v: Mat,
}

impl GroupElement {
    pub fn identity(g_dim: usize, v_dim: usize) -> Self {
        GroupElement { on_g: Mat::identity(g_dim, g_dim), on_v: Mat::identity(v_dim, v_dim) }
    }

    pub fn compose(&self, inner: &GroupElement) -> GroupElement {
        GroupElement { on_g: &self.on_g * &inner.on_g, on_v: &self.on_v * &inner.on_v }
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        Ok(GroupElement { on_g: nk::inverse(&self.on_g)?, on_v: nk::inverse(&self.on_v)? })
    }

    /// Apply the V-operator to real columns; errors if the result is not real.
    pub fn apply_v_re(&self, cols: &RMat) -> Result<RMat> {
        nk::expect_real(&(&self.on_v * re_mat(cols)), 1e-7 * cols.norm().max(1.0))
    }
}

// ---------------------------------------------------------------------------
// minimal vectors
// ---------------------------------------------------------------------------

/// Caps and the seed for the randomized searches.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SearchBudget {
    pub seed: u64,
    /// Gaussian samples drawn by the class enumerator.
    pub samples: usize,
    /// Restarts of the compact-group alignment search.
    pub kr_starts: usize,
    /// Iterations per restart of the alignment search.
    pub kr_iters: usize,
    /// Iteration cap of the minimal-vector flow.
    pub flow_iters: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { seed: 0, samples: 200, kr_starts: 32, kr_iters: 250, flow_iters: 10_000 }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        SearchBudget { seed, ..Default::default() }
    }
}

/// Result of the gradient flow toward a minimal vector on the orbit.
#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub v1: RVec,
    /// Accumulated group element with `v1 = element . v0`.
    pub element: GroupElement,
    /// Final relative moment-map residual `max_X |(X v, v)| / (v, v)`.
    pub residual: f64,
    pub iterations: usize,
    /// True when the norm collapsed toward zero: the orbit is not closed and
    /// its closure contains the origin.
    pub collapsed: bool,
}

/// Gradient flow of the squared norm along the noncompact directions of the
/// real group, stopping when the moment-map residual (taken relative to the
/// squared norm) falls below `flow_tol`.
pub fn minimal_vector(
    rep: &RepresentationModel,
    v0: &RVec,
    budget: &SearchBudget,
) -> Result<FlowOutcome> {
    let pol = rep.tol;
    let p_basis = rep.p_basis_re();
    let dirs: Vec<RMat> = (0..p_basis.ncols())
        .map(|j| rep.action_of_re(&p_basis.column(j).into_owned()))
        .collect();
    let mut v = v0.clone();
    let mut element = GroupElement::identity(rep.g_dim(), rep.space_dim);
    let f0 = rep.herm_re(v0, v0).max(f64::MIN_POSITIVE);

    let moments = |v: &RVec| -> Vec<f64> {
        dirs.iter()
            .map(|d| {
                let dv = d * v;
                (dv.transpose() * &rep.herm * v)[(0, 0)]
            })
            .collect()
    };

    let mut step = 0.5;
    for it in 0..budget.flow_iters {
        let f = rep.herm_re(&v, &v);
        if f <= 1e-12 * f0 {
            return Ok(FlowOutcome { v1: v, element, residual: 0.0, iterations: it, collapsed: true });
        }
        let m = moments(&v);
        let residual = m.iter().map(|x| x.abs()).fold(0.0, f64::max) / f;
        if residual <= pol.flow_tol {
            return Ok(FlowOutcome { v1: v, element, residual, iterations: it, collapsed: false });
        }
        // steepest descent along the group: X = -sum_j m_j P_j (normalized)
        let mut x_alg = RVec::zeros(rep.g_dim());
        for (j, &mj) in m.iter().enumerate() {
            x_alg += p_basis.column(j) * (-mj / f);
        }
        let x_op = rep.action_of_re(&x_alg);
        let grad_sq: f64 = m.iter().map(|x| (x / f) * (x / f)).sum();
        // Armijo backtracking on f
        let mut accepted = false;
        for _ in 0..60 {
            let g_step = expm_re(&(&x_op * step));
            let v_new = &g_step * &v;
            let f_new = rep.herm_re(&v_new, &v_new);
            if f_new < f && f_new <= f - 0.25 * step * grad_sq * f {
                let ad_step = expm_re(&(rep.algebra.ad_matrix_re(&x_alg) * step));
                element = GroupElement {
                    on_g: re_mat(&ad_step) * element.on_g,
                    on_v: re_mat(&g_step) * element.on_v,
                };
                v = v_new;
                step = (step * 1.5).min(8.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // line search stalled at noise level; accept with a softer bound
            if residual <= 100.0 * pol.flow_tol {
                return Ok(FlowOutcome { v1: v, element, residual, iterations: it, collapsed: false });
            }
            return Err(Error::FlowFailure(format!(
                "line search stalled at iteration {it} with residual {residual:.3e}"
            )));
        }
    }
    let f = rep.herm_re(&v, &v);
    if f <= 1e-10 * f0 {
        return Ok(FlowOutcome {
            v1: v,
            element,
            residual: 0.0,
            iterations: budget.flow_iters,
            collapsed: true,
        });
    }
    Err(Error::FlowFailure(format!(
        "no convergence within {} iterations (likely a non-semisimple start)",
        budget.flow_iters
    )))
}

// ---------------------------------------------------------------------------
// records
// ---------------------------------------------------------------------------

/// A sigma-stable Cartan subspace, stored through its real points.
#[derive(Debug, Clone)]
pub struct CartanSubspaceRecord {
    /// Orthonormal basis of the real points (columns, V-coordinates).
    pub real_basis: RMat,
    pub sigma_stable: bool,
    pub theta_stable: bool,
    /// Dimension of the intersection with the compact real form W.
    pub compact_dim: usize,
    /// Dimension of the intersection with iW.
    pub noncompact_dim: usize,
    /// dim c minus the dimension of the fixed part.
    pub rank: usize,
    pub fixed_part: RMat,
    pub warnings: Vec<String>,
}

impl CartanSubspaceRecord {
    pub fn dim(&self) -> usize {
        self.real_basis.ncols()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.compact_dim, self.noncompact_dim)
    }

    /// The complex span of the real points.
    pub fn complex_span(&self, pol: &TolerancePolicy) -> Subspace {
        Subspace::from_span(self.real_basis.nrows(), &re_mat(&self.real_basis), pol)
    }

    pub fn contains_re(&self, v: &RVec, tol: f64) -> bool {
        nk::span_residual_re(&self.real_basis, v) <= tol * v.norm().max(1.0)
    }

    /// Build the record from a spanning family of its real points, computing
    /// stability flags, signature and rank data.
    pub fn from_real_points(rep: &RepresentationModel, span: &RMat) -> Result<Self> {
        let pol = &rep.tol;
        let basis = nk::orthonormal_columns_re(span, pol);
        let mut warnings = Vec::new();

        // orthogonality of c against its own orbit directions
        let mut worst: f64 = 0.0;
        for j in 0..basis.ncols() {
            let moved = rep.action_map_re(&basis.column(j).into_owned());
            worst = worst.max((basis.transpose() * &rep.form * moved).norm());
        }
        let scale = rep.form.norm().max(1.0);
        if worst > 1e-5 * scale {
            return Err(Error::Validation(format!(
                "[{}] span is not orthogonal to its own orbit directions (residual {worst:.3e}); not a Cartan subspace",
                rep.name
            )));
        } else if worst > 1e3 * pol.rank_tol * scale {
            warnings.push(format!("orbit-orthogonality residual {worst:.3e}"));
        }

        // semisimplicity of the basis elements through the ambient algebra
        if let Some(link) = &rep.ambient {
            for j in 0..basis.ncols() {
                let emb = &link.embed_v * basis.column(j).into_owned();
                let cv = CVec::from_fn(emb.len(), |i, _| nk::cplx(emb[i]));
                if !link.pair.ambient.is_semisimple_element(&cv, pol)? {
                    warnings.push(format!("basis element {j} failed the semisimplicity test"));
                }
            }
        }

        let theta_image = &rep.theta_v * &basis;
        let theta_res = nk::subspace_residual_re(&basis, &theta_image);
        let theta_stable = theta_res <= 1e-6 * basis.norm().max(1.0);

        let w_part = nk::subspace_intersection_re(&basis, &rep.vr_w_basis(), pol);
        let iw_part = nk::subspace_intersection_re(&basis, &rep.vr_iw_basis(), pol);
        let compact_dim = w_part.ncols();
        let noncompact_dim = iw_part.ncols();
        if theta_stable && compact_dim + noncompact_dim != basis.ncols() {
            return Err(Error::Inconsistent(format!(
                "theta-stable subspace with signature {compact_dim}+{noncompact_dim} != dim {}",
                basis.ncols()
            )));
        }

        let fixed_part = nk::subspace_intersection_re(&basis, &rep.v_fixed_basis(), pol);
        let rank = basis.ncols() - fixed_part.ncols();
        Ok(CartanSubspaceRecord {
            real_basis: basis,
            sigma_stable: true,
            theta_stable,
            compact_dim,
            noncompact_dim,
            rank,
            fixed_part,
            warnings,
        })
    }
}

// ---------------------------------------------------------------------------
// regularity and the Cartan subspace at a regular point
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RegularityReport {
    pub semisimple: bool,
    pub regular: bool,
    pub orbit_dim: usize,
}

/// Semisimplicity via the ambient adjoint test when available, otherwise via
/// the minimal-vector flow; regularity compares the orbit dimension with the
/// generic one.
pub fn regularity(rep: &RepresentationModel, v: &RVec) -> Result<RegularityReport> {
    let orbit_dim = rep.orbit_dim_re(v);
    let semisimple = if let Some(link) = &rep.ambient {
        ambient_semisimple(rep, link, v)?
    } else if v.norm() == 0.0 {
        true
    } else {
        match minimal_vector(rep, v, &SearchBudget::default()) {
            Ok(out) => !out.collapsed,
            Err(Error::FlowFailure(_)) => false,
            Err(e) => return Err(e),
        }
    };
    Ok(RegularityReport {
        semisimple,
        regular: semisimple && orbit_dim == rep.generic_orbit_dim(),
        orbit_dim,
    })
}

fn ambient_semisimple(rep: &RepresentationModel, link: &AmbientLink, v: &RVec) -> Result<bool> {
    let emb = &link.embed_v * v;
    let cv = CVec::from_fn(emb.len(), |i, _| nk::cplx(emb[i]));
    link.pair.ambient.is_semisimple_element(&cv, &rep.tol)
}

/// The Cartan subspace attached to a regular point: the orthocomplement of the
/// orbit tangent space with respect to the invariant form.
pub fn cartan_space_at(rep: &RepresentationModel, v: &RVec) -> Result<CartanSubspaceRecord> {
    let reg = regularity(rep, v)?;
    if !reg.regular {
        return Err(Error::Precondition(format!(
            "point is not regular semisimple (semisimple: {}, orbit dim {} vs generic {})",
            reg.semisimple,
            reg.orbit_dim,
            rep.generic_orbit_dim()
        )));
    }
    let pol = &rep.tol;
    let tangent = nk::orthonormal_columns_re(&rep.action_map_re(v), pol);
    let span = nk::nullspace_re(&(tangent.transpose() * &rep.form), pol);
    if span.ncols() + reg.orbit_dim != rep.space_dim {
        return Err(Error::DegenerateForm(format!(
            "form-orthocomplement of the orbit has dimension {} != {}",
            span.ncols(),
            rep.space_dim - reg.orbit_dim
        )));
    }
    let record = CartanSubspaceRecord::from_real_points(rep, &span)?;
    // the base point must lie in its own Cartan subspace
    if !record.contains_re(v, 1e-6) {
        return Err(Error::Inconsistent("regular point missing from its Cartan subspace".into()));
    }
    Ok(record)
}

// ---------------------------------------------------------------------------
// containment via slice recursion
// ---------------------------------------------------------------------------

/// A sigma-stable Cartan subspace containing the given semisimple real point.
/// Regular points use their own subspace; singular ones are moved to a minimal
/// vector and handled in the slice representation there, where they are fixed.
pub fn cartan_containing(
    rep: &RepresentationModel,
    x: &RVec,
    seed: u64,
) -> Result<CartanSubspaceRecord> {
    let splitter = SeedSplitter::new(seed);
    let mut rng = splitter.stream(streams::REGULARITY);
    cartan_containing_inner(rep, x, &mut rng, 0)
}

fn random_regular(rep: &RepresentationModel, rng: &mut ChaCha12Rng) -> Result<RVec> {
    for _ in 0..256 {
        let v = rep.sample_real(rng);
        if regularity(rep, &v)?.regular {
            return Ok(v);
        }
    }
    Err(Error::SearchFailure("no regular point found in 256 samples".into()))
}

fn cartan_containing_inner(
    rep: &RepresentationModel,
    x: &RVec,
    rng: &mut ChaCha12Rng,
    depth: usize,
) -> Result<CartanSubspaceRecord> {
    if depth > rep.space_dim + 1 {
        return Err(Error::SearchFailure("slice recursion exceeded the rank bound".into()));
    }
    let reg = regularity(rep, x)?;
    if !reg.semisimple {
        return Err(Error::Precondition("point is not semisimple".into()));
    }
    if reg.orbit_dim == 0 {
        // fixed points lie in every Cartan subspace
        let v = random_regular(rep, rng)?;
        let record = cartan_space_at(rep, &v)?;
        if x.norm() > 0.0 && !record.contains_re(x, 1e-6) {
            return Err(Error::Inconsistent("fixed point missing from a Cartan subspace".into()));
        }
        return Ok(record);
    }
    if reg.regular {
        return cartan_space_at(rep, x);
    }

    // move the point to a minimal vector; the slice representation there is
    // defined over the reals and fixes the point
    let flow = minimal_vector(rep, x, &SearchBudget::default())?;
    if flow.collapsed {
        return Err(Error::Precondition("orbit closure reaches the origin; not semisimple".into()));
    }
    let x1 = flow.v1.clone();
    let (slice, embed_n) = slice_representation(rep, &x1)?;
    let x1_slice = embed_n.transpose() * &x1;
    if (&embed_n * &x1_slice - &x1).norm() > 1e-7 * x1.norm().max(1.0) {
        return Err(Error::Inconsistent("minimal vector does not lie in its own slice".into()));
    }
    let inner = cartan_containing_inner(&slice, &x1_slice, rng, depth + 1)?;
    let lifted = &embed_n * &inner.real_basis;
    // pull back along the flow conjugator
    let h_inv = flow.element.inverse()?;
    let pulled = h_inv.apply_v_re(&lifted)?;
    let record = CartanSubspaceRecord::from_real_points(rep, &pulled)?;
    if !record.contains_re(x, 1e-5) {
        return Err(Error::Inconsistent("containment lost while pulling back the slice subspace".into()));
    }
    Ok(record)
}

/// Slice representation at a minimal vector: the isotropy algebra acting on
/// the Hermitian orthocomplement of the orbit tangent space. Returns the
/// representation together with the embedding of the slice into V.
pub fn slice_representation(
    rep: &RepresentationModel,
    x1: &RVec,
) -> Result<(RepresentationModel, RMat)> {
    let pol = &rep.tol;
    let iso = nk::nullspace_re_scaled(
        &rep.action_map_re(x1),
        pol,
        rep.action_scale() * x1.norm(),
    );
    if iso.ncols() == 0 {
        return Err(Error::Inconsistent("slice requested at a point with trivial isotropy".into()));
    }
    let tangent = nk::orthonormal_columns_re(&rep.action_map_re(x1), pol);
    let n_basis = nk::nullspace_re(&(tangent.transpose() * &rep.herm), pol);

    let labels = (0..iso.ncols()).map(|i| format!("s{i}")).collect();
    let algebra = rep.algebra.subalgebra(&iso, labels, pol)?;

    let mut action = Vec::with_capacity(iso.ncols());
    for j in 0..iso.ncols() {
        let a = rep.action_of_re(&iso.column(j).into_owned());
        let image = &a * &n_basis;
        let leak = (&image - &n_basis * (n_basis.transpose() * &image)).norm();
        if leak > 1e-6 * image.norm().max(1.0) {
            return Err(Error::Inconsistent(format!(
                "isotropy action leaves the slice (residual {leak:.3e})"
            )));
        }
        action.push(n_basis.transpose() * image);
    }
    let form = n_basis.transpose() * &rep.form * &n_basis;
    let herm = n_basis.transpose() * &rep.herm * &n_basis;

    // theta restricts to the isotropy algebra of a minimal vector
    let theta_iso_img = &rep.theta_g * &iso;
    let leak = (&theta_iso_img - &iso * (iso.transpose() * &theta_iso_img)).norm();
    let theta_g = if rep.pair_compatible && leak <= 1e-6 * theta_iso_img.norm().max(1.0) {
        iso.transpose() * theta_iso_img
    } else {
        RMat::identity(iso.ncols(), iso.ncols())
    };

    // a compatible real structure on the slice from the two restricted forms
    let n_dim = n_basis.ncols();
    let theta_v = slice_theta(&form, &herm, pol)
        .unwrap_or_else(|_| RMat::identity(n_dim, n_dim));

    let ambient = rep.ambient.as_ref().map(|link| AmbientLink {
        pair: link.pair.clone(),
        embed_g: &link.embed_g * &iso,
        embed_v: &link.embed_v * &n_basis,
    });
    let slice = RepresentationModel::from_parts(
        format!("{}::slice", rep.name),
        algebra,
        action,
        form,
        theta_v,
        theta_g,
        herm,
        ambient,
        pol,
    )?;
    Ok((slice, n_basis))
}

/// Solve `(x, theta y) = -<x, y>` for an involution on a subspace where both
/// restricted forms are available, rescaling the raw solution so it squares to
/// the identity.
fn slice_theta(form: &RMat, herm: &RMat, pol: &TolerancePolicy) -> Result<RMat> {
    let h_inv = nk::inverse_re(herm)?;
    let t_raw = -&h_inv * form;
    let s = &t_raw * &t_raw;
    // s is herm-self-adjoint and positive; rescale by its inverse square root
    let s_sqrt = hermitian_sqrt(&re_mat(&s), &re_mat(herm), pol)?;
    let s_sqrt_inv = nk::inverse(&s_sqrt)?;
    let t = re_mat(&t_raw) * s_sqrt_inv;
    nk::expect_real(&t, 1e-8)
}

// ---------------------------------------------------------------------------
// theta stabilization
// ---------------------------------------------------------------------------

/// Conjugate a sigma-stable Cartan subspace to a theta-stable one.
///
/// A Cartan pair fixing the subspace is produced by flowing one of its regular
/// points to a minimal vector (the flow conjugate of the reference pair then
/// fixes it); the commuting pair returned by [`construct_cartan_pair`] is
/// finally aligned with the reference pair by the positive square root of the
/// composition of the two involutions.
pub fn stabilize_theta(
    rep: &RepresentationModel,
    record: &CartanSubspaceRecord,
    budget: &SearchBudget,
) -> Result<(GroupElement, CartanSubspaceRecord)> {
    if record.theta_stable {
        return Ok((GroupElement::identity(rep.g_dim(), rep.space_dim), record.clone()));
    }
    let splitter = SeedSplitter::new(budget.seed);
    let mut rng = splitter.stream(streams::STABILIZE);

    let mut last_err: Option<Error> = None;
    for _attempt in 0..8 {
        // a regular real point of the subspace
        let mut x = None;
        for _ in 0..64 {
            let coeffs =
                RVec::from_fn(record.dim(), |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
            let cand = &record.real_basis * coeffs;
            if regularity(rep, &cand)?.regular {
                x = Some(cand);
                break;
            }
        }
        let Some(x) = x else {
            last_err = Some(Error::SearchFailure("no regular point found on the subspace".into()));
            continue;
        };
        let flow = match minimal_vector(rep, &x, budget) {
            Ok(f) if !f.collapsed => f,
            Ok(_) => {
                last_err = Some(Error::FlowFailure("flow collapsed on a regular point".into()));
                continue;
            }
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match stabilize_via_flow(rep, record, &flow) {
            Ok(out) => return Ok(out),
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::SearchFailure(format!(
        "theta stabilization failed after 8 attempts: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

fn stabilize_via_flow(
    rep: &RepresentationModel,
    record: &CartanSubspaceRecord,
    flow: &FlowOutcome,
) -> Result<(GroupElement, CartanSubspaceRecord)> {
    let pol = &rep.tol;
    let h_inv = flow.element.inverse()?;

    // mu = h^{-1} (theta) h is a Cartan pair fixing the subspace
    let mu_v = rep.theta_v_anti().conjugate_by(&h_inv.on_v)?;
    let mu_g = rep.theta_g_anti().conjugate_by(&h_inv.on_g)?;
    let span = record.complex_span(pol);
    let c_res = nk::subspace_residual(&span.basis, &mu_v.apply_mat(&re_mat(&record.real_basis)));
    if c_res > 1e-5 * record.real_basis.norm().max(1.0) {
        return Err(Error::Inconsistent(format!(
            "flow-conjugated Cartan pair does not fix the subspace (residual {c_res:.3e})"
        )));
    }

    let pair = construct_cartan_pair(rep, &mu_g, &mu_v)?;

    // align (eta_g, eta_v) with the reference pair by psi = sqrt(theta eta)
    let b_theta_v = re_mat(&rep.herm);
    let theta_eta_v = rep.theta_v_anti().compose(&pair.eta_v);
    let psi_v = hermitian_sqrt(&theta_eta_v, &b_theta_v, pol)?;
    let f_g = rep.algebra_form()?;
    let b_theta_g = re_mat(&(-&f_g * &rep.theta_g));
    let theta_eta_g = rep.theta_g_anti().compose(&pair.eta_g);
    let psi_g = hermitian_sqrt(&theta_eta_g, &b_theta_g, pol)?;

    let psi = GroupElement { on_g: psi_g, on_v: psi_v };
    let moved = psi.apply_v_re(&record.real_basis)?;
    let out = CartanSubspaceRecord::from_real_points(rep, &moved)?;
    if !out.theta_stable {
        return Err(Error::Inconsistent("stabilized subspace is not theta-stable".into()));
    }
    Ok((psi, out))
}

// ---------------------------------------------------------------------------
// conjugacy
// ---------------------------------------------------------------------------

/// Outcome of the bounded conjugacy test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ConjugacyVerdict {
    Conjugate,
    NotConjugate,
    Undetermined,
}

/// Cached conjugacy invariant of a record: its root-type multiset, when it is
/// computable for the representation.
pub type RootInvariant = Option<Vec<(crate::roots::RootType, crate::roots::RootSubtype, usize)>>;

/// Compute the cacheable invariant of a stable record once.
pub fn class_invariant(rep: &RepresentationModel, c: &CartanSubspaceRecord) -> Result<RootInvariant> {
    if rep.pair_compatible && c.theta_stable && c.rank > 0 {
        Ok(Some(crate::roots::root_type_multiset(rep, c)?))
    } else {
        Ok(None)
    }
}

/// Necessary-invariant battery plus a bounded compact-group alignment search.
/// Signatures and root-type multisets decide the negative direction; a found
/// aligner in the maximal compact subgroup decides the positive one.
pub fn conjugacy_test(
    rep: &RepresentationModel,
    c1: &CartanSubspaceRecord,
    c2: &CartanSubspaceRecord,
    budget: &SearchBudget,
) -> Result<ConjugacyVerdict> {
    let i1 = class_invariant(rep, c1)?;
    let i2 = class_invariant(rep, c2)?;
    conjugacy_test_cached(rep, c1, &i1, c2, &i2, budget)
}

/// Same test with precomputed root invariants, so enumeration does not redo
/// the hyperplane scans for every pair.
pub fn conjugacy_test_cached(
    rep: &RepresentationModel,
    c1: &CartanSubspaceRecord,
    inv1: &RootInvariant,
    c2: &CartanSubspaceRecord,
    inv2: &RootInvariant,
    budget: &SearchBudget,
) -> Result<ConjugacyVerdict> {
    if !(c1.theta_stable && c2.theta_stable) {
        return Ok(ConjugacyVerdict::Undetermined);
    }
    if c1.dim() != c2.dim() || c1.signature() != c2.signature() {
        return Ok(ConjugacyVerdict::NotConjugate);
    }
    if let (Some(t1), Some(t2)) = (inv1, inv2) {
        if t1 != t2 {
            return Ok(ConjugacyVerdict::NotConjugate);
        }
    }
    if nk::subspace_residual_re(&c1.real_basis, &c2.real_basis) < 1e-8 {
        return Ok(ConjugacyVerdict::Conjugate);
    }
    if kr_align(rep, &c1.real_basis, &c2.real_basis, budget)?.is_some() {
        return Ok(ConjugacyVerdict::Conjugate);
    }
    Ok(ConjugacyVerdict::Undetermined)
}

/// Search the compact subgroup for an element mapping `span(b1)` onto
/// `span(b2)`; returns the aligning coordinates in the compact algebra.
fn kr_align(
    rep: &RepresentationModel,
    b1: &RMat,
    b2: &RMat,
    budget: &SearchBudget,
) -> Result<Option<RVec>> {
    let k_basis = rep.k_basis_re();
    let kd = k_basis.ncols();
    let cost = |theta: &RVec| -> f64 {
        let mut x = RVec::zeros(rep.g_dim());
        for j in 0..kd {
            x += k_basis.column(j) * theta[j];
        }
        let g = expm_re(&rep.action_of_re(&x));
        let moved = &g * b1;
        let proj = b2 * (b2.transpose() * &moved);
        (moved - proj).norm()
    };
    let success = 1e-7 * (b1.ncols().max(1) as f64).sqrt();
    if kd == 0 {
        return Ok(if cost(&RVec::zeros(0)) <= success { Some(RVec::zeros(0)) } else { None });
    }
    let splitter = SeedSplitter::new(budget.seed);
    let mut rng = splitter.stream(streams::CONJUGACY);
    for start in 0..budget.kr_starts {
        let mut theta = if start == 0 {
            RVec::zeros(kd)
        } else {
            RVec::from_fn(kd, |_, _| {
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
            })
        };
        let mut f = cost(&theta);
        let mut h = 0.5;
        for _ in 0..budget.kr_iters {
            if f <= success {
                return Ok(Some(theta));
            }
            // finite-difference gradient descent with backtracking
            let mut grad = RVec::zeros(kd);
            let eps = 1e-5;
            for j in 0..kd {
                let mut tp = theta.clone();
                tp[j] += eps;
                let mut tm = theta.clone();
                tm[j] -= eps;
                grad[j] = (cost(&tp) - cost(&tm)) / (2.0 * eps);
            }
            let gn = grad.norm();
            if gn < 1e-12 {
                break;
            }
            let mut improved = false;
            for _ in 0..30 {
                let cand = &theta - &grad * (h / gn);
                let fc = cost(&cand);
                if fc < f {
                    theta = cand;
                    f = fc;
                    h = (h * 1.4).min(1.5);
                    improved = true;
                    break;
                }
                h *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if f <= success {
            return Ok(Some(theta));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// class enumeration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct SampleStats {
    pub samples: usize,
    pub regular: usize,
    pub flow_failures: usize,
    pub undetermined_pairs: usize,
    pub cayley_additions: usize,
}

/// Representatives of the conjugacy classes found by sampling plus Cayley
/// closure, with search provenance.
#[derive(Debug, Clone)]
pub struct ConjugacyClassTable {
    pub representatives: Vec<CartanSubspaceRecord>,
    pub hits: Vec<usize>,
    pub signatures: Vec<(usize, usize)>,
    pub stats: SampleStats,
    pub incomplete: bool,
    pub warnings: Vec<String>,
}

/// Sample regular real points, stabilize their Cartan subspaces, deduplicate
/// by the conjugacy test, and close up under Cayley transforms so the extremal
/// classes always appear.
pub fn enumerate_classes(
    rep: &RepresentationModel,
    budget: &SearchBudget,
) -> Result<ConjugacyClassTable> {
    let splitter = SeedSplitter::new(budget.seed);
    let mut rng = splitter.stream(streams::ENUMERATE);
    let mut stats = SampleStats::default();
    let mut warnings = Vec::new();
    let mut incomplete = false;

    let mut reps: Vec<CartanSubspaceRecord> = Vec::new();
    let mut invariants: Vec<RootInvariant> = Vec::new();
    let mut hits: Vec<usize> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn add_candidate(
        rep: &RepresentationModel,
        budget: &SearchBudget,
        cand: CartanSubspaceRecord,
        reps: &mut Vec<CartanSubspaceRecord>,
        invariants: &mut Vec<RootInvariant>,
        hits: &mut Vec<usize>,
        stats: &mut SampleStats,
        incomplete: &mut bool,
    ) -> Result<bool> {
        let cand_inv = class_invariant(rep, &cand)?;
        let mut undetermined = false;
        for (i, existing) in reps.iter().enumerate() {
            match conjugacy_test_cached(rep, existing, &invariants[i], &cand, &cand_inv, budget)? {
                ConjugacyVerdict::Conjugate => {
                    hits[i] += 1;
                    return Ok(false);
                }
                ConjugacyVerdict::Undetermined => {
                    undetermined = true;
                    stats.undetermined_pairs += 1;
                }
                ConjugacyVerdict::NotConjugate => {}
            }
        }
        if undetermined {
            *incomplete = true;
            return Ok(false);
        }
        reps.push(cand);
        invariants.push(cand_inv);
        hits.push(1);
        Ok(true)
    }

    let mut observed_orbit_max = 0usize;
    for _ in 0..budget.samples {
        stats.samples += 1;
        let v = rep.sample_real(&mut rng);
        let reg = regularity(rep, &v)?;
        observed_orbit_max = observed_orbit_max.max(reg.orbit_dim);
        if !reg.regular {
            continue;
        }
        stats.regular += 1;
        let base = match cartan_space_at(rep, &v) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let stabilized = match stabilize_theta(rep, &base, budget) {
            Ok((_, r)) => r,
            Err(Error::FlowFailure(_)) | Err(Error::SearchFailure(_)) => {
                stats.flow_failures += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        add_candidate(rep, budget, stabilized, &mut reps, &mut invariants, &mut hits, &mut stats, &mut incomplete)?;
    }
    if reps.is_empty() {
        return Err(Error::SearchFailure("no regular samples produced a Cartan subspace".into()));
    }
    if observed_orbit_max != rep.generic_orbit_dim() {
        warnings.push(format!(
            "observed maximal orbit dimension {observed_orbit_max} differs from the cached generic value {}",
            rep.generic_orbit_dim()
        ));
    }

    // Cayley closure: apply every applicable transform to every representative
    // until nothing new appears; guarantees the extremal classes are present.
    if rep.pair_compatible {
        for _round in 0..(2 * rep.space_dim + 2) {
            let mut added = false;
            let snapshot = reps.clone();
            for record in &snapshot {
                if record.rank == 0 {
                    continue;
                }
                let system = crate::roots::root_system(rep, record)?;
                for root in &system.roots {
                    for kind in [
                        crate::cayley::CayleyKind::NoncompactImaginary,
                        crate::cayley::CayleyKind::CompactReal,
                    ] {
                        match crate::cayley::cayley_transform(rep, record, &system, root, kind) {
                            Ok(transformed) => {
                                if add_candidate(
                                    rep,
                                    budget,
                                    transformed.target,
                                    &mut reps,
                                    &mut invariants,
                                    &mut hits,
                                    &mut stats,
                                    &mut incomplete,
                                )? {
                                    stats.cayley_additions += 1;
                                    added = true;
                                }
                            }
                            Err(Error::NotApplicable(_)) | Err(Error::Precondition(_)) => {}
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
    }

    // canonical order: compact dimension descending
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| (usize::MAX - reps[i].compact_dim, reps[i].noncompact_dim));
    let representatives: Vec<_> = order.iter().map(|&i| reps[i].clone()).collect();
    let hits: Vec<_> = order.iter().map(|&i| hits[i]).collect();
    let signatures = representatives.iter().map(|r| r.signature()).collect();

    Ok(ConjugacyClassTable { representatives, hits, signatures, stats, incomplete, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympair::catalog::catalog_rep;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn sl2_rep() -> RepresentationModel {
        catalog_rep("sl2-adjoint", &pol()).unwrap()
    }

    /// A stabilized representative with the requested signature.
    fn record_with_signature(
        rep: &RepresentationModel,
        sig: (usize, usize),
    ) -> CartanSubspaceRecord {
        let mut rng = SeedSplitter::new(41).stream(9);
        for _ in 0..300 {
            let v = rep.sample_real(&mut rng);
            if !regularity(rep, &v).unwrap().regular {
                continue;
            }
            let rec = cartan_space_at(rep, &v).unwrap();
            let (_, out) = stabilize_theta(rep, &rec, &SearchBudget::with_seed(41)).unwrap();
            if out.signature() == sig {
                return out;
            }
        }
        panic!("no Cartan subspace with signature {sig:?} found");
    }

    /// A regular point spanning a split (noncompact) stable line.
    fn find_h_coords(rep: &RepresentationModel) -> RVec {
        record_with_signature(rep, (0, 1)).real_basis.column(0).into_owned()
    }

    /// A nonzero isotropic vector: for this fixture the nilpotent cone is the
    /// zero set of the invariant form, located by bisecting between a
    /// positive and a negative direction.
    fn find_nilpotent(rep: &RepresentationModel) -> RVec {
        let x = rep.vr_iw_basis().column(0).into_owned();
        let w = rep.vr_w_basis().column(0).into_owned();
        let q = |t: f64| -> f64 {
            let v = &x * t.cos() + &w * t.sin();
            rep.form_re(&v, &v)
        };
        assert!(q(0.0) > 0.0 && q(std::f64::consts::FRAC_PI_2) < 0.0);
        let (mut lo, mut hi) = (0.0f64, std::f64::consts::FRAC_PI_2);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if q(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        &x * t.cos() + &w * t.sin()
    }

    #[test]
    fn zero_vector_regularity() {
        let rep = sl2_rep();
        let z = RVec::zeros(3);
        let r = regularity(&rep, &z).unwrap();
        assert!(r.semisimple);
        assert_eq!(r.orbit_dim, 0);
        assert!(!r.regular); // V has no nonzero fixed vectors here
    }

    #[test]
    fn nilpotent_direction_collapses_under_the_flow() {
        let rep = sl2_rep();
        let v = find_nilpotent(&rep);
        assert!(!regularity(&rep, &v).unwrap().semisimple);
        let out = minimal_vector(&rep, &v, &SearchBudget::default()).unwrap();
        assert!(out.collapsed);
    }

    #[test]
    fn h_axis_is_regular_with_orbit_dim_two() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let r = regularity(&rep, &h).unwrap();
        assert!(r.semisimple && r.regular);
        assert_eq!(r.orbit_dim, 2);
    }

    #[test]
    fn cartan_space_at_split_axis() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let rec = cartan_space_at(&rep, &h).unwrap();
        assert_eq!(rec.dim(), 1);
        assert!(rec.contains_re(&h, 1e-8));
        assert_eq!(rec.signature(), (0, 1));
        assert_eq!(rec.rank, 1);
        assert!(rec.theta_stable);
    }

    #[test]
    fn cartan_space_rejects_irregular_points() {
        let rep = sl2_rep();
        assert!(matches!(cartan_space_at(&rep, &RVec::zeros(3)), Err(Error::Precondition(_))));
    }

    #[test]
    fn minimal_vector_fixes_minimal_points() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let out = minimal_vector(&rep, &h, &SearchBudget::default()).unwrap();
        assert!(!out.collapsed);
        assert!((out.v1 - &h).norm() < 1e-6);
    }

    #[test]
    fn flow_reaches_minimal_from_perturbed_start() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let mut rng = SeedSplitter::new(9).stream(1);
        let eps = rep.sample_real(&mut rng) * 0.05;
        let v = &h + eps;
        if !regularity(&rep, &v).unwrap().regular {
            return;
        }
        let out = minimal_vector(&rep, &v, &SearchBudget::default()).unwrap();
        assert!(!out.collapsed);
        assert!(out.residual < 1e-8);
        // the conjugator really maps v to the endpoint
        let moved = out
            .element
            .apply_v_re(&RMat::from_column_slice(3, 1, v.as_slice()))
            .unwrap();
        assert!((moved.column(0).into_owned() - &out.v1).norm() < 1e-6 * out.v1.norm().max(1.0));
    }

    #[test]
    fn stabilize_theta_is_identity_on_stable_input() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let rec = cartan_space_at(&rep, &h).unwrap();
        assert!(rec.theta_stable);
        let (g, out) = stabilize_theta(&rep, &rec, &SearchBudget::with_seed(3)).unwrap();
        assert!((g.on_v.clone() - Mat::identity(3, 3)).norm() < 1e-12);
        assert_eq!(out.signature(), rec.signature());
    }

    #[test]
    fn stabilize_theta_on_generic_cartan_subspaces() {
        let rep = sl2_rep();
        let mut rng = SeedSplitter::new(17).stream(2);
        let mut done = 0;
        for _ in 0..40 {
            let v = rep.sample_real(&mut rng);
            if !regularity(&rep, &v).unwrap().regular {
                continue;
            }
            let rec = cartan_space_at(&rep, &v).unwrap();
            let (_, out) = stabilize_theta(&rep, &rec, &SearchBudget::with_seed(5)).unwrap();
            assert!(out.theta_stable);
            assert_eq!(out.compact_dim + out.noncompact_dim, out.dim());
            done += 1;
            if done >= 6 {
                break;
            }
        }
        assert!(done >= 3, "too few regular samples");
    }

    #[test]
    fn enumerate_sl2_finds_two_classes() {
        let rep = sl2_rep();
        for seed in [1u64, 2, 3] {
            let table = enumerate_classes(
                &rep,
                &SearchBudget { seed, samples: 60, ..Default::default() },
            )
            .unwrap();
            assert_eq!(table.signatures, vec![(1, 0), (0, 1)], "seed {seed}");
            assert!(!table.incomplete);
        }
    }

    #[test]
    fn conjugacy_distinguishes_signatures() {
        let rep = sl2_rep();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 7, samples: 60, ..Default::default() },
        )
        .unwrap();
        let a = &table.representatives[0];
        let b = &table.representatives[1];
        assert_eq!(
            conjugacy_test(&rep, a, b, &SearchBudget::with_seed(7)).unwrap(),
            ConjugacyVerdict::NotConjugate
        );
        assert_eq!(
            conjugacy_test(&rep, a, a, &SearchBudget::with_seed(7)).unwrap(),
            ConjugacyVerdict::Conjugate
        );
    }

    #[test]
    fn conjugacy_finds_rotated_copies() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let rec = cartan_space_at(&rep, &h).unwrap();
        let k = rep.k_basis_re();
        assert_eq!(k.ncols(), 1);
        let g = expm_re(&(rep.action_of_re(&k.column(0).into_owned()) * 0.4));
        let rotated =
            CartanSubspaceRecord::from_real_points(&rep, &(&g * &rec.real_basis)).unwrap();
        assert!(rotated.theta_stable);
        assert_eq!(
            conjugacy_test(&rep, &rec, &rotated, &SearchBudget::with_seed(11)).unwrap(),
            ConjugacyVerdict::Conjugate
        );
    }

    #[test]
    fn enumerate_compact_pair_finds_one_class() {
        let rep = catalog_rep("supq-compact:p=1,q=1", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 5, samples: 40, ..Default::default() },
        )
        .unwrap();
        assert_eq!(table.signatures, vec![(1, 0)]);
    }

    #[test]
    fn enumerate_sln_son_finds_one_split_class() {
        let rep = catalog_rep("sln-son:n=3", &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 2, samples: 50, ..Default::default() },
        )
        .unwrap();
        assert_eq!(table.signatures, vec![(0, 2)]);
    }

    #[test]
    fn cartan_containing_regular_matches_cartan_space_at() {
        let rep = sl2_rep();
        let h = find_h_coords(&rep);
        let a = cartan_containing(&rep, &h, 3).unwrap();
        let b = cartan_space_at(&rep, &h).unwrap();
        assert!(nk::subspace_residual_re(&a.real_basis, &b.real_basis) < 1e-8);
    }

    #[test]
    fn cartan_containing_zero_returns_some_subspace() {
        let rep = sl2_rep();
        let rec = cartan_containing(&rep, &RVec::zeros(3), 3).unwrap();
        assert_eq!(rec.dim(), 1);
    }

    #[test]
    fn cartan_containing_singular_semisimple_point() {
        let rep = catalog_rep("sln-son:n=3", &pol()).unwrap();
        let mut rng = SeedSplitter::new(23).stream(3);
        let v = random_regular(&rep, &mut rng).unwrap();
        let base = cartan_space_at(&rep, &v).unwrap();
        let (_, rec) = stabilize_theta(&rep, &base, &SearchBudget::with_seed(23)).unwrap();
        assert_eq!(rec.dim(), 2);
        // an exact singular semisimple point: the kernel direction of a root
        // functional inside the real points
        let report = crate::roots::root_system(&rep, &rec).unwrap();
        let root = &report.roots[0];
        let ker = nk::nullspace_re(
            &RMat::from_fn(1, 2, |_, j| root.functional[j]),
            &pol(),
        );
        let x_c = report.frame.point(&ker.column(0).into_owned());
        let x = RVec::from_fn(rep.space_dim, |i, _| x_c[i].re);
        let r = regularity(&rep, &x).unwrap();
        assert!(r.semisimple && !r.regular && r.orbit_dim > 0);
        let out = cartan_containing(&rep, &x, 29).unwrap();
        assert_eq!(out.dim(), 2);
        assert!(out.contains_re(&x, 1e-5));
    }
}
