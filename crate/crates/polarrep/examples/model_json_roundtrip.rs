//! Serialize a builtin symmetric pair to the JSON model format, reload it,
//! and validate the round trip.
//!
//!     cargo run --example model_json_roundtrip -- [builtin] [path]

use polarrep::model_io::{load_model, model_file_from_pair, validate_model, ModelSource};
use polarrep::numkernel::TolerancePolicy;
use polarrep::sympair::catalog::catalog_pair;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "sl2-adjoint".into());
    let path = std::env::args()
        .nth(2)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("polarrep_model_example.json"));

    let pol = TolerancePolicy::default();
    let pair = catalog_pair(&name, &pol).expect("builtin model");
    let file = model_file_from_pair(&pair, Some(7));
    let text = serde_json::to_string_pretty(&file).expect("serialize");
    std::fs::write(&path, &text).expect("write model file");
    println!("wrote {} ({} bytes)", path.display(), text.len());

    let source = ModelSource::Path(path.clone());
    let (loaded, _, seed) = load_model(&source, None).expect("reload");
    println!(
        "reloaded: ambient dim {}, V dim {}, embedded seed {:?}",
        loaded.ambient.dim,
        loaded.v_dim(),
        seed
    );

    let summary = validate_model(&source, None).expect("validation");
    println!(
        "validation: jacobi residual {:.2e}, realization residual {:.2e}, generic orbit dim {}",
        summary.jacobi_residual, summary.realization_residual, summary.generic_orbit_dim
    );
}
