//! Deterministic analysis reports: the full pipeline (classes, roots, Cayley
//! transforms, extremal subspaces, restricted polarity, isoparametric
//! verdicts, invariant checks) serialized into a stable JSON document.
//!
//! Reports are byte-identical for identical (model, seed, tolerances,
//! version): all randomness flows through counter-split streams of the seed
//! and assembly is single-threaded in stable index order.

use crate::cartan::{
    enumerate_classes, minimal_vector, regularity, CartanSubspaceRecord, ConjugacyClassTable,
    SearchBudget,
};
use crate::cayley::{
    extremal_search, restricted_polar_check, CayleyRecord, ExtremalDirection, RestrictedSide,
};
use crate::error::{Error, Result};
use crate::isopgeom::{isoparametric_verdict, normal_flatness_check, orbit_closure_probe, IsoparametricVerdict};
use crate::numkernel::{Mat, RMat, RVec, TolerancePolicy};
use crate::rng::{streams, SeedSplitter};
use crate::roots::{root_system, RootSystemReport};
use crate::sympair::RepresentationModel;
use serde::Serialize;

pub const REPORT_SCHEMA: &str = "polarrep-report/1";

fn mat_json(m: &Mat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn rmat_json(m: &RMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)], 0.0]).collect()).collect()
}

fn rvec_json(v: &RVec) -> Vec<f64> {
    v.as_slice().to_vec()
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub name: String,
    pub seed: u64,
    pub tolerances: TolerancePolicy,
    pub version: String,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    pub ambient_dim: usize,
    pub g_dim: usize,
    pub v_dim: usize,
    pub generic_orbit_dim: usize,
    pub combined_dims: Option<(usize, usize, usize, usize)>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub signature: (usize, usize),
    pub dim: usize,
    pub rank: usize,
    pub hits: usize,
    pub real_basis: Vec<Vec<[f64; 2]>>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassesSection {
    pub count: usize,
    pub signatures: Vec<(usize, usize)>,
    pub incomplete: bool,
    pub stats: crate::cartan::SampleStats,
    pub classes: Vec<ClassJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootJson {
    pub functional: Vec<f64>,
    pub coroot: Vec<[f64; 2]>,
    pub root_type: crate::roots::RootType,
    pub subtype: crate::roots::RootSubtype,
    pub multiplicity: usize,
    pub cayley_applicable: bool,
    pub sigma_pair: Option<(usize, i8)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootsJson {
    pub class_index: usize,
    pub m_dim: usize,
    pub chamber: Vec<f64>,
    pub roots: Vec<RootJson>,
    pub residuals: crate::roots::RootResiduals,
}

#[derive(Debug, Clone, Serialize)]
pub struct CayleyJson {
    pub kind: crate::cayley::CayleyKind,
    pub source_signature: (usize, usize),
    pub target_signature: (usize, usize),
    pub operator: Vec<Vec<[f64; 2]>>,
    pub residuals: crate::cayley::CayleyResiduals,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalJson {
    pub max_noncompact_signature: Option<(usize, usize)>,
    pub max_compact_signature: Option<(usize, usize)>,
    pub transforms: Vec<CayleyJson>,
    pub restricted_polar_noncompact: Option<crate::cayley::RestrictedPolarReport>,
    pub restricted_polar_compact: Option<crate::cayley::RestrictedPolarReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoJson {
    pub base_point: Vec<f64>,
    pub verdict: IsoparametricVerdict,
    pub tangent_dim: usize,
    pub metric_signature: (usize, usize),
    pub normal_flat: bool,
    pub flatness_residual: f64,
    pub all_diagonalizable: bool,
    pub spectra_constant: bool,
    pub weingarten_blocks: Vec<Vec<crate::numkernel::EigBlock>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportFile {
    pub schema: &'static str,
    pub provenance: Provenance,
    pub pair: PairSummary,
    pub cartan_classes: Option<ClassesSection>,
    pub roots: Vec<RootsJson>,
    pub extremal: Option<ExtremalJson>,
    pub isoparametric: Vec<IsoJson>,
    pub checks: Vec<CheckEntry>,
    pub incomplete: bool,
    pub errors: Vec<StageError>,
}

impl ReportFile {
    pub fn to_json_bytes(&self) -> Result<Vec<u8>> {
        let mut bytes = serde_json::to_vec_pretty(self)?;
        bytes.push(b'\n');
        Ok(bytes)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub samples: usize,
    pub iso_points: usize,
    pub orbit_samples: usize,
    pub checks_only: bool,
}

impl AnalysisOptions {
    pub fn new(seed: u64) -> Self {
        AnalysisOptions { seed, samples: 200, iso_points: 5, orbit_samples: 10, checks_only: false }
    }
}

fn class_json(table: &ConjugacyClassTable) -> ClassesSection {
    ClassesSection {
        count: table.representatives.len(),
        signatures: table.signatures.clone(),
        incomplete: table.incomplete,
        stats: table.stats.clone(),
        classes: table
            .representatives
            .iter()
            .zip(&table.hits)
            .map(|(rec, &hits)| ClassJson {
                signature: rec.signature(),
                dim: rec.dim(),
                rank: rec.rank,
                hits,
                real_basis: rmat_json(&rec.real_basis),
                warnings: rec.warnings.clone(),
            })
            .collect(),
    }
}

fn roots_json(index: usize, report: &RootSystemReport) -> RootsJson {
    RootsJson {
        class_index: index,
        m_dim: report.m_dim,
        chamber: rvec_json(&report.chamber_point),
        roots: report
            .roots
            .iter()
            .map(|root| RootJson {
                functional: rvec_json(&root.functional),
                coroot: (0..root.coroot.len())
                    .map(|i| [root.coroot[i].re, root.coroot[i].im])
                    .collect(),
                root_type: root.root_type,
                subtype: root.subtype,
                multiplicity: root.multiplicity,
                cayley_applicable: root.cayley_applicable,
                sigma_pair: root.sigma_pair,
            })
            .collect(),
        residuals: report.residuals.clone(),
    }
}

fn cayley_json(rec: &CayleyRecord) -> CayleyJson {
    CayleyJson {
        kind: rec.kind,
        source_signature: rec.source.signature(),
        target_signature: rec.target.signature(),
        operator: mat_json(&rec.element.on_v),
        residuals: rec.residuals.clone(),
    }
}

/// The invariant battery: named residuals with their tolerances.
pub fn run_checks(
    rep: &RepresentationModel,
    table: Option<&ConjugacyClassTable>,
    seed: u64,
) -> Result<Vec<CheckEntry>> {
    let pol = &rep.tol;
    let mut checks = Vec::new();
    let mut push = |name: &str, residual: f64, tolerance: f64| {
        checks.push(CheckEntry { name: name.into(), residual, tolerance, pass: residual <= tolerance });
    };

    // algebra identities
    let alg_report = rep.algebra.validate(pol)?;
    push("algebra.antisymmetry", alg_report.antisymmetry, 1e-9);
    push("algebra.jacobi", alg_report.jacobi, 1e-8);
    if let Some(link) = &rep.ambient {
        let ambient_report = link.pair.ambient.validate(pol)?;
        push("ambient.jacobi", ambient_report.jacobi, 1e-8);
        push("ambient.realization", ambient_report.realization, 1e-8);
    }

    // representation identities
    let mut invariance: f64 = 0.0;
    for a in &rep.action {
        invariance = invariance.max((a.transpose() * &rep.form + &rep.form * a).norm());
    }
    push("representation.form_invariance", invariance, 1e-8 * rep.form.norm().max(1.0));
    if rep.pair_compatible {
        let mut equivariance: f64 = 0.0;
        for j in 0..rep.g_dim() {
            let lhs = &rep.theta_v * &rep.action[j];
            let tx = rep.theta_g.column(j).into_owned();
            let rhs = rep.action_of_re(&tx) * &rep.theta_v;
            equivariance = equivariance.max((lhs - rhs).norm());
        }
        push("representation.theta_equivariance", equivariance, 1e-8 * rep.action_scale());
        if rep.space_dim > 0 {
            let herm_eig = rep.herm.clone().symmetric_eigen();
            let min_eig = herm_eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
            push("representation.hermitian_positive", (-min_eig).max(0.0), 0.0);
        }
    }

    // orthogonality suite over the class table
    if let Some(table) = table {
        let mut base: f64 = 0.0;
        let mut cross: f64 = 0.0;
        for rec in &table.representatives {
            if rec.rank == 0 {
                continue;
            }
            let report = root_system(rep, rec)?;
            base = base.max(report.residuals.base_orthogonality);
            cross = cross.max(report.residuals.cross_orthogonality);
        }
        push("roots.base_orthogonality", base, 1e-8 * rep.form.norm().max(1.0));
        push("roots.cross_orthogonality", cross, 1e-8 * rep.form.norm().max(1.0));
    }

    // flow and geometry residuals at a regular sample
    let splitter = SeedSplitter::new(seed);
    let mut rng = splitter.stream(streams::PROBE);
    for _ in 0..64 {
        let v = rep.sample_real(&mut rng);
        if !regularity(rep, &v)?.regular {
            continue;
        }
        if let Ok(flow) = minimal_vector(rep, &v, &SearchBudget::with_seed(seed)) {
            push("flow.moment_residual", flow.residual, pol.flow_tol * 100.0);
        }
        if rep.pair_compatible {
            if let Ok(flat) = normal_flatness_check(rep, &v) {
                push("orbit.normal_flatness", flat.residual, 1e-7);
            }
        }
        break;
    }
    Ok(checks)
}

/// Run the full pipeline and assemble the report. Stage failures are recorded
/// in the report instead of aborting it.
pub fn run_analysis(rep: &RepresentationModel, opts: &AnalysisOptions) -> ReportFile {
    let mut errors: Vec<StageError> = Vec::new();
    let mut incomplete = false;
    let budget = SearchBudget { seed: opts.seed, samples: opts.samples, ..Default::default() };

    let combined = rep
        .ambient
        .as_ref()
        .and_then(|link| crate::sympair::combined_decomposition(&link.pair).ok())
        .map(|d| d.dims());

    let pair = PairSummary {
        ambient_dim: rep.ambient.as_ref().map(|l| l.pair.ambient.dim).unwrap_or(0),
        g_dim: rep.g_dim(),
        v_dim: rep.space_dim,
        generic_orbit_dim: rep.generic_orbit_dim(),
        combined_dims: combined,
        warnings: rep.warnings.clone(),
    };

    // classes
    let table = if rep.pair_compatible && !opts.checks_only {
        match enumerate_classes(rep, &budget) {
            Ok(t) => {
                incomplete |= t.incomplete;
                Some(t)
            }
            Err(e) => {
                errors.push(StageError { stage: "enumerate_classes".into(), message: e.to_string() });
                incomplete = true;
                None
            }
        }
    } else if rep.pair_compatible {
        // the checks battery still needs the table for the orthogonality suite
        match enumerate_classes(rep, &SearchBudget { samples: opts.samples.min(60), ..budget }) {
            Ok(t) => Some(t),
            Err(e) => {
                errors.push(StageError { stage: "enumerate_classes".into(), message: e.to_string() });
                None
            }
        }
    } else {
        None
    };

    // checks battery (always included)
    let checks = match run_checks(rep, table.as_ref(), opts.seed) {
        Ok(c) => c,
        Err(e) => {
            errors.push(StageError { stage: "checks".into(), message: e.to_string() });
            incomplete = true;
            Vec::new()
        }
    };

    if opts.checks_only {
        return ReportFile {
            schema: REPORT_SCHEMA,
            provenance: Provenance {
                name: rep.name.clone(),
                seed: opts.seed,
                tolerances: rep.tol,
                version: env!("CARGO_PKG_VERSION").into(),
                samples: opts.samples,
            },
            pair,
            cartan_classes: table.as_ref().map(class_json),
            roots: Vec::new(),
            extremal: None,
            isoparametric: Vec::new(),
            checks,
            incomplete,
            errors,
        };
    }

    // roots per class
    let mut roots = Vec::new();
    if let Some(table) = &table {
        for (i, rec) in table.representatives.iter().enumerate() {
            if rec.rank == 0 {
                continue;
            }
            match root_system(rep, rec) {
                Ok(r) => roots.push(roots_json(i, &r)),
                Err(e) => {
                    errors.push(StageError { stage: format!("roots[{i}]"), message: e.to_string() });
                    incomplete = true;
                }
            }
        }
    }

    // extremal subspaces, transforms, restricted polarity
    let extremal = table.as_ref().and_then(|table| {
        let seed_rec = table.representatives.first()?;
        let mut transforms = Vec::new();
        let run = |dir: ExtremalDirection,
                   errors: &mut Vec<StageError>,
                   transforms: &mut Vec<CayleyJson>|
         -> Option<CartanSubspaceRecord> {
            match extremal_search(rep, dir, seed_rec) {
                Ok((rec, steps)) => {
                    transforms.extend(steps.iter().map(cayley_json));
                    Some(rec)
                }
                Err(e) => {
                    errors.push(StageError {
                        stage: format!("extremal_search[{dir:?}]"),
                        message: e.to_string(),
                    });
                    None
                }
            }
        };
        let max_noncompact = run(ExtremalDirection::MaxNoncompact, &mut errors, &mut transforms);
        let max_compact = run(ExtremalDirection::MaxCompact, &mut errors, &mut transforms);
        let rp_n = max_noncompact
            .as_ref()
            .and_then(|rec| restricted_polar_check(rep, rec, RestrictedSide::NoncompactLocus).ok());
        let rp_c = max_compact
            .as_ref()
            .and_then(|rec| restricted_polar_check(rep, rec, RestrictedSide::CompactLocus).ok());
        Some(ExtremalJson {
            max_noncompact_signature: max_noncompact.map(|r| r.signature()),
            max_compact_signature: max_compact.map(|r| r.signature()),
            transforms,
            restricted_polar_noncompact: rp_n,
            restricted_polar_compact: rp_c,
        })
    });

    // isoparametric verdicts at sampled regular points
    let mut isoparametric = Vec::new();
    {
        let splitter = SeedSplitter::new(opts.seed);
        let mut rng = splitter.stream(streams::ISOPARAM);
        let mut found = 0;
        let mut attempts = 0;
        while found < opts.iso_points && attempts < 64 * opts.iso_points.max(1) {
            attempts += 1;
            let v = rep.sample_real(&mut rng);
            match regularity(rep, &v) {
                Ok(r) if r.regular => {}
                _ => continue,
            }
            match isoparametric_verdict(rep, &v, opts.orbit_samples, opts.seed) {
                Ok(r) => {
                    found += 1;
                    isoparametric.push(IsoJson {
                        base_point: rvec_json(&v),
                        verdict: r.verdict,
                        tangent_dim: r.tangent_dim,
                        metric_signature: r.metric_signature,
                        normal_flat: r.normal_flat,
                        flatness_residual: r.flatness_residual,
                        all_diagonalizable: r.all_diagonalizable,
                        spectra_constant: r.spectra_constant,
                        weingarten_blocks: r.weingarten_blocks,
                    });
                }
                Err(Error::Precondition(_)) | Err(Error::DegenerateForm(_)) => continue,
                Err(e) => {
                    errors.push(StageError { stage: "isoparametric".into(), message: e.to_string() });
                    incomplete = true;
                    break;
                }
            }
        }
    }

    // a report with any recorded stage error is by definition partial
    incomplete |= !errors.is_empty();
    ReportFile {
        schema: REPORT_SCHEMA,
        provenance: Provenance {
            name: rep.name.clone(),
            seed: opts.seed,
            tolerances: rep.tol,
            version: env!("CARGO_PKG_VERSION").into(),
            samples: opts.samples,
        },
        pair,
        cartan_classes: table.as_ref().map(class_json),
        roots,
        extremal,
        isoparametric,
        checks,
        incomplete,
        errors,
    }
}

/// Focused report for the closed-orbit comparison verb: the full action
/// against its maximal compact subalgebra.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReportFile {
    pub schema: &'static str,
    pub name: String,
    pub seed: u64,
    pub sub_dim: usize,
    pub report: crate::isopgeom::ProbeReport,
}

pub fn run_probe(rep: &RepresentationModel, seed: u64, samples: usize) -> Result<ProbeReportFile> {
    let sub = rep.k_basis_re();
    let splitter = SeedSplitter::new(seed);
    let mut rng = splitter.stream(streams::PROBE);
    let mut pts = Vec::new();
    let mut attempts = 0;
    while pts.len() < samples && attempts < 64 * samples.max(1) {
        attempts += 1;
        let v = rep.sample_real(&mut rng);
        if regularity(rep, &v)?.semisimple {
            pts.push(v);
        }
    }
    let report = orbit_closure_probe(rep, &sub, &pts)?;
    Ok(ProbeReportFile {
        schema: REPORT_SCHEMA,
        name: rep.name.clone(),
        seed,
        sub_dim: sub.ncols(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympair::catalog::catalog_rep;

    #[test]
    fn analysis_report_is_deterministic() {
        let rep = catalog_rep("sl2-adjoint", &TolerancePolicy::default()).unwrap();
        let opts = AnalysisOptions { samples: 40, iso_points: 2, ..AnalysisOptions::new(7) };
        let a = run_analysis(&rep, &opts).to_json_bytes().unwrap();
        let b = run_analysis(&rep, &opts).to_json_bytes().unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn analysis_finds_two_classes_for_sl2() {
        let rep = catalog_rep("sl2-adjoint", &TolerancePolicy::default()).unwrap();
        let opts = AnalysisOptions { samples: 40, iso_points: 2, ..AnalysisOptions::new(7) };
        let report = run_analysis(&rep, &opts);
        let classes = report.cartan_classes.unwrap();
        assert_eq!(classes.signatures, vec![(1, 0), (0, 1)]);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        assert!(report.checks.iter().all(|c| c.pass), "{:?}", report.checks);
        let ext = report.extremal.unwrap();
        assert_eq!(ext.max_noncompact_signature, Some((0, 1)));
        assert_eq!(ext.max_compact_signature, Some((1, 0)));
        assert!(ext.restricted_polar_noncompact.unwrap().passed);
    }

    #[test]
    fn checks_only_passes_on_catalog_fixture() {
        let rep = catalog_rep("sln-son:n=3", &TolerancePolicy::default()).unwrap();
        let opts = AnalysisOptions {
            samples: 40,
            checks_only: true,
            ..AnalysisOptions::new(1)
        };
        let report = run_analysis(&rep, &opts);
        assert!(!report.checks.is_empty());
        assert!(report.checks.iter().all(|c| c.pass), "{:?}", report.checks);
        assert!(report.roots.is_empty());
    }

    #[test]
    fn probe_runs_on_builtin() {
        let rep = catalog_rep("sl2-adjoint", &TolerancePolicy::default()).unwrap();
        let out = run_probe(&rep, 3, 4).unwrap();
        assert_eq!(out.report.samples.len(), 4);
    }
}
