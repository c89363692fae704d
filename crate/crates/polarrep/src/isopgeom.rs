//! Numerical submanifold geometry of group orbits: tangent/normal splits,
//! shape (Weingarten) operators with block spectra, the flat-normal-connection
//! test through equivariant fields, the isoparametric verdict, and the
//! closed-orbit comparison probe between an action and a subaction.

use crate::cartan::{minimal_vector, regularity, SearchBudget};
use crate::error::{Error, Result};
use crate::numkernel::{
    self as nk, expm_re, match_spectra, real_operator_blocks, EigBlock,
    RMat, RVec, Spectrum,
};
use crate::rng::{streams, SeedSplitter};
use crate::sympair::RepresentationModel;
use rand::Rng;

/// Tangent frame of an orbit at a point: independent algebra directions and
/// the corresponding tangent vectors, plus the induced metric data.
#[derive(Debug, Clone)]
pub struct OrbitFrame {
    /// Indices into the algebra basis whose motions span the tangent space.
    pub algebra_indices: Vec<usize>,
    /// Tangent vectors `X_j . v` for the selected directions (columns).
    pub tangent: RMat,
    /// Gram matrix of the invariant form on the tangent frame.
    pub metric: RMat,
    pub metric_inv: RMat,
    /// Orthonormal basis of the normal space `(g . v)^perp` w.r.t. the form.
    pub normal: RMat,
    /// (positive, negative) inertia of the induced metric.
    pub metric_signature: (usize, usize),
}

impl OrbitFrame {
    /// Tangential part of a vector, projected along the form.
    pub fn project_tangent(&self, w: &RVec, rep: &RepresentationModel) -> RVec {
        &self.tangent * (&self.metric_inv * (self.tangent.transpose() * &rep.form * w))
    }

    pub fn normal_part(&self, w: &RVec, rep: &RepresentationModel) -> RVec {
        w - self.project_tangent(w, rep)
    }
}

/// Build the orbit frame at a point, selecting a greedy independent subset of
/// algebra directions. Fails with a degenerate-metric error when the induced
/// metric on the tangent space is singular.
pub fn orbit_frame(rep: &RepresentationModel, v: &RVec) -> Result<OrbitFrame> {
    let pol = &rep.tol;
    let moves = rep.action_map_re(v);
    let dim = nk::rank_re(&moves, pol)?;
    // greedy column selection
    let mut indices = Vec::new();
    let mut chosen = RMat::zeros(rep.space_dim, 0);
    for j in 0..moves.ncols() {
        if indices.len() == dim {
            break;
        }
        let col = moves.column(j).into_owned();
        let trial = nk::hstack_re(&chosen, &RMat::from_column_slice(rep.space_dim, 1, col.as_slice()));
        if nk::rank_re(&trial, pol)? > indices.len() {
            indices.push(j);
            chosen = trial;
        }
    }
    let tangent = chosen;
    let metric = tangent.transpose() * &rep.form * &tangent;
    if nk::rank_re(&metric, pol)? < tangent.ncols() {
        return Err(Error::DegenerateForm(
            "induced metric on the orbit tangent space is degenerate".into(),
        ));
    }
    let metric_inv = nk::inverse_re(&metric)?;
    let normal = nk::nullspace_re(&(tangent.transpose() * &rep.form), pol);
    let (pos, neg) = if metric.nrows() == 0 {
        (0, 0)
    } else {
        let eig = metric.clone().symmetric_eigen();
        let pos = eig.eigenvalues.iter().filter(|&&x| x > 0.0).count();
        (pos, eig.eigenvalues.len() - pos)
    };
    Ok(OrbitFrame {
        algebra_indices: indices,
        tangent,
        metric,
        metric_inv,
        normal,
        metric_signature: (pos, neg),
    })
}

/// Shape operator data for one normal direction.
#[derive(Debug, Clone)]
pub struct WeingartenData {
    /// Matrix in the tangent frame.
    pub matrix: RMat,
    pub blocks: Vec<EigBlock>,
    pub spectrum: Spectrum,
    /// `|<A X, Y> - <X, A Y>|` over the frame; the operator is always
    /// symmetric for the induced metric.
    pub self_adjoint_residual: f64,
}

/// Weingarten operator of the orbit through `v` along the normal `xi`,
/// using the equivariant extension of the normal vector.
pub fn weingarten_operator(
    rep: &RepresentationModel,
    v: &RVec,
    xi: &RVec,
) -> Result<WeingartenData> {
    let reg = regularity(rep, v)?;
    if !reg.regular {
        return Err(Error::Precondition("Weingarten operator needs a regular base point".into()));
    }
    let frame = orbit_frame(rep, v)?;
    weingarten_in_frame(rep, &frame, xi)
}

fn weingarten_in_frame(
    rep: &RepresentationModel,
    frame: &OrbitFrame,
    xi: &RVec,
) -> Result<WeingartenData> {
    // xi must be normal
    let res = nk::span_residual_re(&frame.normal, xi);
    if res > 1e-6 * xi.norm().max(1.0) {
        return Err(Error::Precondition(format!(
            "direction is not normal to the orbit (residual {res:.3e})"
        )));
    }
    let d = frame.tangent.ncols();
    let mut a = RMat::zeros(d, d);
    for (col, &j) in frame.algebra_indices.iter().enumerate() {
        let moved = &rep.action[j] * xi;
        let tangential = frame.project_tangent(&moved, rep);
        // coordinates in the tangent frame
        let coords = &frame.metric_inv * (frame.tangent.transpose() * &rep.form * &tangential);
        a.set_column(col, &(-coords));
    }
    let sym = &frame.metric * &a;
    let self_adjoint_residual = (&sym - sym.transpose()).norm();
    let (blocks, spectrum) = real_operator_blocks(&a, &rep.tol)?;
    Ok(WeingartenData { matrix: a, blocks, spectrum, self_adjoint_residual })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FlatnessReport {
    pub flat: bool,
    /// Largest normal component of a motion of an equivariant normal field,
    /// relative to the field scale.
    pub residual: f64,
}

/// The normal connection is flat iff every equivariant normal field is
/// parallel: all motions of normal directions stay tangent.
pub fn normal_flatness_check(rep: &RepresentationModel, v: &RVec) -> Result<FlatnessReport> {
    let frame = orbit_frame(rep, v)?;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..frame.normal.ncols() {
        let xi = frame.normal.column(i).into_owned();
        for a in &rep.action {
            let w = a * &xi;
            scale = scale.max(w.norm());
            worst = worst.max(frame.normal_part(&w, rep).norm());
        }
    }
    let residual = worst / scale;
    Ok(FlatnessReport { flat: residual <= 1e-7, residual })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum IsoparametricVerdict {
    Isoparametric,
    NotIsoparametric,
    DegenerateMetric,
}

/// Full orbit-geometry report at a regular point.
#[derive(Debug, Clone)]
pub struct OrbitGeometryReport {
    pub base_point: RVec,
    pub tangent_dim: usize,
    pub normal_dim: usize,
    pub metric_signature: (usize, usize),
    /// Eigenvalue blocks of the shape operator per normal basis direction.
    pub weingarten_blocks: Vec<Vec<EigBlock>>,
    pub normal_flat: bool,
    pub flatness_residual: f64,
    pub all_diagonalizable: bool,
    pub spectra_constant: bool,
    /// Number of orbit points sampled for the constancy test.
    pub orbit_samples: usize,
    pub verdict: IsoparametricVerdict,
    pub warnings: Vec<String>,
}

/// Check the two isoparametric conditions at a regular point: flat normal
/// connection, and shape operators along parallel normal fields that are
/// diagonalizable over the complex numbers with constant eigenvalues. The
/// constancy is verified at sampled orbit points with equivariantly
/// transported normals.
pub fn isoparametric_verdict(
    rep: &RepresentationModel,
    v: &RVec,
    orbit_samples: usize,
    seed: u64,
) -> Result<OrbitGeometryReport> {
    let reg = regularity(rep, v)?;
    if !reg.regular || !reg.semisimple {
        return Err(Error::Precondition(format!(
            "isoparametric verdict needs a regular semisimple point (semisimple {}, orbit dim {})",
            reg.semisimple, reg.orbit_dim
        )));
    }
    let mut warnings = Vec::new();
    let frame = match orbit_frame(rep, v) {
        Ok(f) => f,
        Err(Error::DegenerateForm(_)) => {
            return Ok(OrbitGeometryReport {
                base_point: v.clone(),
                tangent_dim: reg.orbit_dim,
                normal_dim: rep.space_dim - reg.orbit_dim,
                metric_signature: (0, 0),
                weingarten_blocks: Vec::new(),
                normal_flat: false,
                flatness_residual: f64::NAN,
                all_diagonalizable: false,
                spectra_constant: false,
                orbit_samples: 0,
                verdict: IsoparametricVerdict::DegenerateMetric,
                warnings: vec!["induced metric is degenerate at the base point".into()],
            })
        }
        Err(e) => return Err(e),
    };

    let flat = normal_flatness_check(rep, v)?;

    // base spectra
    let mut base: Vec<WeingartenData> = Vec::new();
    for i in 0..frame.normal.ncols() {
        base.push(weingarten_in_frame(rep, &frame, &frame.normal.column(i).into_owned())?);
    }
    let all_diagonalizable = base.iter().all(|w| w.spectrum.diagonalizable);

    // constancy along the orbit: transport the normals equivariantly
    let splitter = SeedSplitter::new(seed);
    let mut rng = splitter.stream(streams::ISOPARAM);
    let mut constant = true;
    let mut used = 0;
    for _ in 0..orbit_samples {
        let z = RVec::from_fn(rep.g_dim(), |_, _| {
            0.3 * rng.sample::<f64, _>(rand_distr::StandardNormal)
        });
        let g = expm_re(&rep.action_of_re(&z));
        let v2 = &g * v;
        let frame2 = match orbit_frame(rep, &v2) {
            Ok(f) => f,
            Err(_) => {
                warnings.push("skipped an orbit sample with degenerate frame".into());
                continue;
            }
        };
        used += 1;
        for (i, w0) in base.iter().enumerate() {
            let xi2 = &g * frame.normal.column(i).into_owned();
            let w2 = match weingarten_in_frame(rep, &frame2, &xi2) {
                Ok(w) => w,
                Err(_) => {
                    constant = false;
                    continue;
                }
            };
            let scale = w0
                .spectrum
                .eigenvalues
                .iter()
                .map(|(z, _)| z.norm())
                .fold(1.0, f64::max);
            if !match_spectra(
                &w0.spectrum.eigenvalues,
                &w2.spectrum.eigenvalues,
                10.0 * rep.tol.eig_tol * scale,
            ) {
                constant = false;
            }
        }
    }

    let verdict = if flat.flat && all_diagonalizable && constant {
        IsoparametricVerdict::Isoparametric
    } else {
        IsoparametricVerdict::NotIsoparametric
    };
    Ok(OrbitGeometryReport {
        base_point: v.clone(),
        tangent_dim: frame.tangent.ncols(),
        normal_dim: frame.normal.ncols(),
        metric_signature: frame.metric_signature,
        weingarten_blocks: base.into_iter().map(|w| w.blocks).collect(),
        normal_flat: flat.flat,
        flatness_residual: flat.residual,
        all_diagonalizable,
        spectra_constant: constant,
        orbit_samples: used,
        verdict,
        warnings,
    })
}

/// Second fundamental form evaluated on two algebra directions: the normal
/// part of the motion of one tangent field along the other.
pub fn second_fundamental_form(
    rep: &RepresentationModel,
    v: &RVec,
    x: &RVec,
    y: &RVec,
) -> Result<RVec> {
    let frame = orbit_frame(rep, v)?;
    let w = rep.action_of_re(x) * (rep.action_of_re(y) * v);
    Ok(frame.normal_part(&w, rep))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ProbeSample {
    pub minimal_found: bool,
    pub full_orbit_dim: usize,
    pub sub_orbit_dim: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ProbeReport {
    pub samples: Vec<ProbeSample>,
    pub all_equal: bool,
    pub flow_failures: usize,
}

/// Compare orbit dimensions of the full action and a subalgebra action at
/// minimal vectors of the sampled points. The subalgebra orbit always sits
/// inside the full orbit, so equal dimensions certify equal closed orbits at
/// the sample.
pub fn orbit_closure_probe(
    rep: &RepresentationModel,
    sub_basis: &RMat,
    samples: &[RVec],
) -> Result<ProbeReport> {
    let pol = &rep.tol;
    // the span must be a subalgebra
    rep.algebra
        .subalgebra(sub_basis, (0..sub_basis.ncols()).map(|i| format!("u{i}")).collect(), pol)?;
    let mut out = Vec::new();
    let mut flow_failures = 0;
    for v in samples {
        let (v1, minimal_found) = if rep.p_basis_re().ncols() == 0 {
            (v.clone(), true)
        } else {
            match minimal_vector(rep, v, &SearchBudget::default()) {
                Ok(f) if !f.collapsed => (f.v1, true),
                Ok(_) | Err(Error::FlowFailure(_)) => {
                    flow_failures += 1;
                    (v.clone(), false)
                }
                Err(e) => return Err(e),
            }
        };
        let full = rep.orbit_dim_re(&v1);
        let sub_map = rep.action_map_re(&v1) * sub_basis;
        let sub = nk::rank_re_scaled(&sub_map, pol, rep.action_scale() * v1.norm())?;
        out.push(ProbeSample { minimal_found, full_orbit_dim: full, sub_orbit_dim: sub, equal: full == sub });
    }
    let all_equal = out.iter().all(|s| s.equal);
    Ok(ProbeReport { samples: out, all_equal, flow_failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::numkernel::TolerancePolicy;
    use crate::sympair::catalog::{catalog_rep, nonpolar_control_rep, so3_on_r3};

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn regular_point(rep: &RepresentationModel, seed: u64) -> RVec {
        let mut rng = SeedSplitter::new(seed).stream(1);
        for _ in 0..512 {
            let v = rep.sample_real(&mut rng);
            if regularity(rep, &v).unwrap().regular && orbit_frame(rep, &v).is_ok() {
                return v;
            }
        }
        panic!("no regular point with nondegenerate frame found");
    }

    #[test]
    fn position_normal_gives_minus_identity() {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let v = regular_point(&rep, 3);
        let w = weingarten_operator(&rep, &v, &v).unwrap();
        let d = w.matrix.nrows();
        assert!((&w.matrix + RMat::identity(d, d)).norm() < 1e-8);
        assert!(w.self_adjoint_residual < 1e-9);
    }

    #[test]
    fn weingarten_requires_normal_directions() {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let v = regular_point(&rep, 4);
        let frame = orbit_frame(&rep, &v).unwrap();
        let tangent_dir = frame.tangent.column(0).into_owned();
        assert!(matches!(
            weingarten_operator(&rep, &v, &tangent_dir),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn weingarten_rejects_irregular_base() {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let v = RVec::zeros(3);
        assert!(matches!(weingarten_operator(&rep, &v, &v), Err(Error::Precondition(_))));
    }

    #[test]
    fn polar_orbits_have_flat_normal_connection() {
        for name in ["sl2-adjoint", "sln-son:n=3"] {
            let rep = catalog_rep(name, &pol()).unwrap();
            let v = regular_point(&rep, 5);
            let flat = normal_flatness_check(&rep, &v).unwrap();
            assert!(flat.flat, "{name}: residual {}", flat.residual);
            assert!(flat.residual < 1e-9, "{name}");
        }
    }

    #[test]
    fn weingarten_spectrum_matches_root_prediction_on_sl2() {
        // eigenvalues are -alpha(xi)/alpha(v) on the root-space block; for a
        // rank-one subspace the normal space is the subspace itself
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let table = crate::cartan::enumerate_classes(
            &rep,
            &crate::cartan::SearchBudget { seed: 6, samples: 40, ..Default::default() },
        )
        .unwrap();
        let rec = table
            .representatives
            .iter()
            .find(|r| r.signature() == (0, 1))
            .unwrap();
        let report = crate::roots::root_system(&rep, rec).unwrap();
        let v = rec.real_basis.column(0).into_owned() * 1.7;
        let xi = rec.real_basis.column(0).into_owned() * 0.6;
        let w = weingarten_operator(&rep, &v, &xi).unwrap();
        assert_eq!(w.matrix.nrows(), 2);
        // predicted eigenvalue: -alpha(xi)/alpha(v) with multiplicity 2
        let frame = &report.frame;
        let u_pinv = (frame.u_basis.adjoint() * &frame.u_basis)
            .lu()
            .try_inverse()
            .unwrap()
            * frame.u_basis.adjoint();
        let alpha = |x: &RVec| -> nk::C {
            let z = &u_pinv * nk::re_vec(x);
            (0..frame.dim()).map(|k| nk::cplx(report.roots[0].functional[k]) * z[k]).sum()
        };
        let lam = -(alpha(&xi) / alpha(&v));
        assert!(lam.im.abs() < 1e-9);
        match w.blocks.as_slice() {
            [EigBlock::Real { value, multiplicity: 2 }] => {
                assert!((value - lam.re).abs() < 1e-8, "{value} vs {lam}");
            }
            other => panic!("unexpected blocks {other:?}"),
        }
    }

    #[test]
    fn isoparametric_on_polar_fixture() {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let v = regular_point(&rep, 7);
        let report = isoparametric_verdict(&rep, &v, 6, 7).unwrap();
        assert_eq!(report.verdict, IsoparametricVerdict::Isoparametric);
        assert!(report.normal_flat);
        assert!(report.all_diagonalizable);
        assert!(report.spectra_constant);
    }

    #[test]
    fn negative_fixture_is_not_isoparametric() {
        let rep = nonpolar_control_rep(&pol()).unwrap();
        let mut hits = 0;
        let mut total = 0;
        let mut rng = SeedSplitter::new(11).stream(2);
        while total < 10 {
            let v = rep.sample_real(&mut rng);
            let reg = regularity(&rep, &v).unwrap();
            if !reg.regular {
                continue;
            }
            match isoparametric_verdict(&rep, &v, 6, 11) {
                Ok(r) => {
                    total += 1;
                    if r.verdict == IsoparametricVerdict::NotIsoparametric {
                        hits += 1;
                    }
                }
                Err(Error::Precondition(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        }
        assert!(hits * 10 >= total * 9, "only {hits}/{total} non-isoparametric");
    }

    #[test]
    fn second_fundamental_form_matches_finite_differences() {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let v = regular_point(&rep, 8);
        let frame = orbit_frame(&rep, &v).unwrap();
        let mut rng = SeedSplitter::new(13).stream(3);
        for _ in 0..10 {
            let x = RVec::from_fn(rep.g_dim(), |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
            let y = RVec::from_fn(rep.g_dim(), |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
            let analytic = second_fundamental_form(&rep, &v, &x, &y).unwrap();
            // central differences of the orbit map exp(sX) exp(tY) v
            let h = 1e-5;
            let point = |s: f64, t: f64| -> RVec {
                expm_re(&(rep.action_of_re(&x) * s)) * (expm_re(&(rep.action_of_re(&y) * t)) * &v)
            };
            let mixed = (point(h, h) - point(h, -h) - point(-h, h) + point(-h, -h)) / (4.0 * h * h);
            let fd = frame.normal_part(&mixed, &rep);
            let denom = analytic.norm().max(1e-12);
            assert!(
                (fd - &analytic).norm() / denom < 1e-5,
                "finite differences disagree with the analytic form"
            );
        }
    }

    #[test]
    fn probe_full_against_itself_is_equal() {
        let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
        let full = RMat::identity(3, 3);
        let samples: Vec<RVec> = (0..4).map(|k| regular_point(&rep, 20 + k)).collect();
        let report = orbit_closure_probe(&rep, &full, &samples).unwrap();
        assert!(report.all_equal);
    }

    #[test]
    fn probe_so3_against_so2_detects_smaller_orbits() {
        let rep = so3_on_r3(&pol()).unwrap();
        let sub = RMat::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
        let samples = vec![RVec::from_vec(vec![0.3, -1.1, 0.7])];
        let report = orbit_closure_probe(&rep, &sub, &samples).unwrap();
        assert!(!report.all_equal);
        assert_eq!(report.samples[0].full_orbit_dim, 2);
        assert_eq!(report.samples[0].sub_orbit_dim, 1);
    }
}
