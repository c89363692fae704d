//! JSON model files: an ambient algebra given by structure constants with the
//! involution triple, parsed into a validated symmetric pair.
//!
//! Failures are classified so the command line can map them to distinct exit
//! codes: syntax errors, schema violations, and mathematical validation
//! errors are different failures.

use crate::error::Error;
use crate::liealg::LieAlgebraModel;
use crate::numkernel::{Antilinear, Mat, TolerancePolicy, C};
use crate::sympair::{build_pair, catalog, SymmetricPairModel};
use serde::{Deserialize, Serialize};

pub const MODEL_SCHEMA: &str = "polarrep-model/1";

/// Complex scalars serialize as `[re, im]`; bare numbers are accepted on
/// input as real values.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    pub fn to_c(self) -> C {
        match self {
            Entry::Real(x) => C::new(x, 0.0),
            Entry::Complex([re, im]) => C::new(re, im),
        }
    }
}

pub type MatrixJson = Vec<Vec<Entry>>;

/// Involution matrices: `tau` is linear, `sigma` and `theta` act
/// conjugate-linearly through their matrices (`v -> T conj(v)`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionsJson {
    pub tau: MatrixJson,
    pub sigma: MatrixJson,
    pub theta: MatrixJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema: String,
    /// Basis labels of the ambient algebra.
    pub basis: Vec<String>,
    /// Sparse triples `[i, j, k, value]`: the bracket of basis elements i, j
    /// has coefficient value on element k. Missing antisymmetric partners are
    /// filled in automatically.
    pub structure_constants: Vec<(usize, usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_realization: Option<Vec<MatrixJson>>,
    pub involutions: InvolutionsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<TolerancePolicy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Classified loading failure, mapped to exit codes by the command line.
#[derive(Debug)]
pub enum LoadError {
    /// Malformed JSON; carries line/column information.
    Parse(String),
    /// Well-formed JSON that does not match the model schema.
    Schema(String),
    /// A structurally valid model that fails its mathematical identities.
    Validation(Error),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(m) => write!(f, "parse error: {m}"),
            LoadError::Schema(m) => write!(f, "schema error: {m}"),
            LoadError::Validation(e) => write!(f, "{e}"),
        }
    }
}

impl LoadError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Parse(_) => 2,
            LoadError::Schema(_) => 3,
            LoadError::Validation(_) => 4,
        }
    }
}

fn parse_matrix(m: &MatrixJson, dim: usize, what: &str) -> std::result::Result<Mat, LoadError> {
    if m.len() != dim || m.iter().any(|row| row.len() != dim) {
        return Err(LoadError::Schema(format!(
            "{what} must be a {dim}x{dim} matrix matching the basis length"
        )));
    }
    Ok(Mat::from_fn(dim, dim, |i, j| m[i][j].to_c()))
}

/// Parse and validate a model file into a symmetric pair.
pub fn model_from_str(
    text: &str,
) -> std::result::Result<(SymmetricPairModel, TolerancePolicy, Option<u64>), LoadError> {
    // two-phase parse so syntax and schema failures stay distinguishable
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| LoadError::Parse(format!("{e} (line {}, column {})", e.line(), e.column())))?;
    let file: ModelFile =
        serde_json::from_value(value).map_err(|e| LoadError::Schema(e.to_string()))?;
    if file.schema != MODEL_SCHEMA {
        return Err(LoadError::Schema(format!(
            "unsupported schema '{}', expected '{MODEL_SCHEMA}'",
            file.schema
        )));
    }
    let pol = file.tolerances.unwrap_or_default();
    pol.validate().map_err(LoadError::Validation)?;
    let dim = file.basis.len();
    let realization = match &file.matrix_realization {
        None => None,
        Some(mats) => {
            if mats.len() != dim {
                return Err(LoadError::Schema(
                    "matrix_realization must have one matrix per basis element".into(),
                ));
            }
            let size = mats[0].len();
            let mut out = Vec::with_capacity(dim);
            for (idx, m) in mats.iter().enumerate() {
                if m.len() != size || m.iter().any(|row| row.len() != size) {
                    return Err(LoadError::Schema(format!(
                        "matrix_realization[{idx}] is not square of size {size}"
                    )));
                }
                out.push(Mat::from_fn(size, size, |i, j| m[i][j].to_c()));
            }
            Some(out)
        }
    };
    let tau = parse_matrix(&file.involutions.tau, dim, "involutions.tau")?;
    let sigma = parse_matrix(&file.involutions.sigma, dim, "involutions.sigma")?;
    let theta = parse_matrix(&file.involutions.theta, dim, "involutions.theta")?;

    let alg = LieAlgebraModel::from_structure_constants(
        file.basis.clone(),
        &file.structure_constants,
        realization,
    )
    .map_err(LoadError::Validation)?;
    alg.validate(&pol).map_err(LoadError::Validation)?;
    let mut pair = build_pair(alg, tau, Antilinear::new(sigma), Antilinear::new(theta), &pol)
        .map_err(LoadError::Validation)?;
    if pair.name.is_empty() {
        pair.name = "model".into();
    }
    Ok((pair, pol, file.seed))
}

/// Where a model comes from: a file path or a builtin catalog spec.
#[derive(Debug, Clone)]
pub enum ModelSource {
    Path(std::path::PathBuf),
    Builtin(String),
}

/// Load a symmetric pair from a file or the builtin catalog.
pub fn load_model(
    source: &ModelSource,
    pol_override: Option<TolerancePolicy>,
) -> std::result::Result<(SymmetricPairModel, TolerancePolicy, Option<u64>), LoadError> {
    match source {
        ModelSource::Path(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| LoadError::Parse(format!("cannot read {}: {e}", path.display())))?;
            let (pair, pol, seed) = model_from_str(&text)?;
            match pol_override {
                Some(p) => {
                    // re-run with the overriding tolerances
                    let mut file: ModelFile = serde_json::from_str(&text)
                        .map_err(|e| LoadError::Schema(e.to_string()))?;
                    file.tolerances = Some(p);
                    let text = serde_json::to_string(&file)
                        .map_err(|e| LoadError::Schema(e.to_string()))?;
                    model_from_str(&text)
                }
                None => Ok((pair, pol, seed)),
            }
        }
        ModelSource::Builtin(spec) => {
            let pol = pol_override.unwrap_or_default();
            pol.validate().map_err(LoadError::Validation)?;
            let pair = catalog::catalog_pair(spec, &pol).map_err(|e| match e {
                Error::NotFound(m) => LoadError::Schema(format!("unknown builtin: {m}")),
                other => LoadError::Validation(other),
            })?;
            Ok((pair, pol, None))
        }
    }
}

/// Serialize a symmetric pair back into the model file format; useful for
/// generating examples and for round-trip tests.
pub fn model_file_from_pair(pair: &SymmetricPairModel, seed: Option<u64>) -> ModelFile {
    let dim = pair.ambient.dim;
    let real_matrix = |m: &crate::numkernel::RMat| -> MatrixJson {
        (0..dim).map(|i| (0..dim).map(|j| Entry::Real(m[(i, j)])).collect()).collect()
    };
    let cmatrix = |m: &Mat| -> MatrixJson {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| Entry::Complex([m[(i, j)].re, m[(i, j)].im])).collect())
            .collect()
    };
    let identity: MatrixJson = (0..dim)
        .map(|i| (0..dim).map(|j| Entry::Real(if i == j { 1.0 } else { 0.0 })).collect())
        .collect();
    ModelFile {
        schema: MODEL_SCHEMA.into(),
        basis: pair.ambient.basis_labels.clone(),
        structure_constants: pair.ambient.structure_constant_triples(),
        matrix_realization: pair
            .ambient
            .matrix_realization
            .as_ref()
            .map(|mats| mats.iter().map(cmatrix).collect()),
        involutions: InvolutionsJson {
            tau: real_matrix(&pair.tau_hat),
            sigma: identity,
            theta: real_matrix(&pair.theta_hat),
        },
        tolerances: Some(pair.tol),
        seed,
    }
}

/// Validation entry point used by the command line: returns the per-identity
/// residual summary of a loaded model.
pub fn validate_model(
    source: &ModelSource,
    pol_override: Option<TolerancePolicy>,
) -> std::result::Result<ValidationSummary, LoadError> {
    let (pair, pol, _) = load_model(source, pol_override)?;
    let alg_report = pair.ambient.validate(&pol).map_err(LoadError::Validation)?;
    let rep = crate::sympair::isotropy_representation(&pair).map_err(LoadError::Validation)?;
    Ok(ValidationSummary {
        name: pair.name.clone(),
        ambient_dim: pair.ambient.dim,
        g_dim: pair.g_dim(),
        v_dim: pair.v_dim(),
        generic_orbit_dim: rep.generic_orbit_dim(),
        antisymmetry_residual: alg_report.antisymmetry,
        jacobi_residual: alg_report.jacobi,
        realization_residual: alg_report.realization,
        warnings: pair.warnings.clone(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSummary {
    pub name: String,
    pub ambient_dim: usize,
    pub g_dim: usize,
    pub v_dim: usize,
    pub generic_orbit_dim: usize,
    pub antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub realization_residual: f64,
    pub warnings: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn builtin_loads() {
        let (pair, _, _) =
            load_model(&ModelSource::Builtin("sl2-adjoint".into()), None).unwrap();
        assert_eq!(pair.ambient.dim, 6);
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        let r = model_from_str("{ not json");
        match r {
            Err(LoadError::Parse(msg)) => assert!(msg.contains("line")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_a_schema_error() {
        let text = r#"{"schema": "polarrep-model/1", "basis": [], "structure_constants": [],
                       "involutions": {"tau": [], "sigma": [], "theta": []}, "surprise": 1}"#;
        assert!(matches!(model_from_str(text), Err(LoadError::Schema(_))));
    }

    #[test]
    fn pair_round_trips_through_json() {
        let pair = catalog::catalog_pair("sl2-adjoint", &pol()).unwrap();
        let file = model_file_from_pair(&pair, Some(7));
        let text = serde_json::to_string_pretty(&file).unwrap();
        let (loaded, _, seed) = model_from_str(&text).unwrap();
        assert_eq!(seed, Some(7));
        assert_eq!(loaded.ambient.dim, pair.ambient.dim);
        assert_eq!(loaded.v_dim(), pair.v_dim());
        // brackets agree
        let x = crate::numkernel::RVec::from_fn(6, |i, _| (i as f64) - 2.5);
        let y = crate::numkernel::RVec::from_fn(6, |i, _| 1.0 / (1.0 + i as f64));
        let a = pair.ambient.bracket_re(&x, &y);
        let b = loaded.ambient.bracket_re(&x, &y);
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn non_commuting_involutions_fail_validation_with_named_identity() {
        let pair = catalog::catalog_pair("sl2-adjoint", &pol()).unwrap();
        let mut file = model_file_from_pair(&pair, None);
        // corrupt theta so it no longer commutes with tau
        if let Entry::Real(x) = file.involutions.theta[0][1] {
            file.involutions.theta[0][1] = Entry::Real(x + 0.2);
        } else {
            file.involutions.theta[0][1] = Entry::Real(0.2);
        }
        let text = serde_json::to_string(&file).unwrap();
        match model_from_str(&text) {
            Err(LoadError::Validation(Error::Validation(msg))) => {
                assert!(msg.contains("residual"), "{msg}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn validate_model_summary() {
        let s = validate_model(&ModelSource::Builtin("sln-son:n=3".into()), None).unwrap();
        assert_eq!(s.v_dim, 5);
        assert!(s.jacobi_residual < 1e-10);
    }
}
