//! Thin command-line front end over the library: model loading and the
//! analysis pipelines, with deterministic JSON reports on stdout or disk.

use clap::{Args, Parser, Subcommand};
use polarrep::model_io::{load_model, LoadError, ModelSource};
use polarrep::numkernel::TolerancePolicy;
use polarrep::report::{run_analysis, run_probe, AnalysisOptions};
use polarrep::sympair::catalog;
use polarrep::sympair::{isotropy_representation, RepresentationModel};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polarrep", version, about = "Cartan subspaces, restricted roots, Cayley transforms and isoparametric checks of polar orthogonal representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ModelArgs {
    /// Builtin model spec, e.g. sl2-adjoint, sln-son:n=3, supq:p=1,q=1,
    /// supq-compact:p=1,q=1, sl2c-adjoint, so3-doubled, so3-r3
    #[arg(long, conflicts_with = "model")]
    builtin: Option<String>,
    /// Path to a JSON model file
    #[arg(long)]
    model: Option<PathBuf>,
    /// Relative singular-value cutoff for rank decisions
    #[arg(long)]
    tol_rank: Option<f64>,
    /// Eigenvalue-matching tolerance
    #[arg(long)]
    tol_eig: Option<f64>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Load a model and report its validation summary
    Validate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full pipeline: classes, roots, transforms, extremal subspaces,
    /// restricted polarity, isoparametric verdicts, invariant checks
    Analyze {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Seed for all randomized stages
        #[arg(long)]
        seed: u64,
        /// Gaussian samples drawn by the class enumerator
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Run only the invariant checks; exit nonzero if any residual fails
        #[arg(long)]
        checks_only: bool,
        /// Exit nonzero if any pipeline stage records an error
        #[arg(long)]
        strict: bool,
    },
    /// Restricted-root data per conjugacy class
    Roots {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 120)]
        samples: usize,
    },
    /// Cayley transforms and extremal Cartan subspaces
    Cayley {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 120)]
        samples: usize,
    },
    /// Isoparametric verdicts at sampled regular points
    Isoparam {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        seed: u64,
        /// Number of regular base points to test
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Compare closed orbits of the action and its maximal compact subaction
    ProbeClosures {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

fn tolerance_override(args: &ModelArgs) -> Option<TolerancePolicy> {
    if args.tol_rank.is_none() && args.tol_eig.is_none() {
        return None;
    }
    let mut pol = TolerancePolicy::default();
    if let Some(t) = args.tol_rank {
        pol.rank_tol = t;
    }
    if let Some(t) = args.tol_eig {
        pol.eig_tol = t;
    }
    Some(pol)
}

fn source(args: &ModelArgs) -> Result<ModelSource, String> {
    match (&args.builtin, &args.model) {
        (Some(b), None) => Ok(ModelSource::Builtin(b.clone())),
        (None, Some(p)) => Ok(ModelSource::Path(p.clone())),
        _ => Err("exactly one of --builtin or --model is required".into()),
    }
}

/// Builtins that are plain representations load directly; everything else
/// goes through the symmetric-pair loader.
fn rep_from_source(args: &ModelArgs) -> Result<RepresentationModel, LoadError> {
    let pol = tolerance_override(args).unwrap_or_default();
    if let Some(name) = &args.builtin {
        let bare = name.split(':').next().unwrap_or_default();
        if catalog::builtin_rep_names().contains(&bare) {
            return catalog::catalog_rep(name, &pol).map_err(LoadError::Validation);
        }
    }
    let (pair, _, _) =
        load_model(&source(args).map_err(LoadError::Schema)?, tolerance_override(args))?;
    isotropy_representation(&pair).map_err(LoadError::Validation)
}

fn emit(output: &OutputArgs, bytes: &[u8]) -> std::io::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)
        }
    }
}

fn fail(code: i32, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}

fn emit_json(output: &OutputArgs, doc: &serde_json::Value) -> Result<(), ExitCode> {
    let mut bytes = serde_json::to_vec_pretty(doc).expect("serialize document");
    bytes.push(b'\n');
    emit(output, &bytes).map_err(|e| fail(1, &e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { model, output } => {
            let src = match source(&model) {
                Ok(s) => s,
                Err(m) => return fail(3, &m),
            };
            match polarrep::model_io::validate_model(&src, tolerance_override(&model)) {
                Ok(summary) => {
                    let doc = serde_json::to_value(&summary).expect("serialize summary");
                    match emit_json(&output, &doc) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(code) => code,
                    }
                }
                Err(e) => fail(e.exit_code(), &e.to_string()),
            }
        }
        Command::Analyze { model, output, seed, samples, checks_only, strict } => {
            let rep = match rep_from_source(&model) {
                Ok(r) => r,
                Err(e) => return fail(e.exit_code(), &e.to_string()),
            };
            let opts = AnalysisOptions { samples, checks_only, ..AnalysisOptions::new(seed) };
            let report = run_analysis(&rep, &opts);
            let bytes = report.to_json_bytes().expect("serialize report");
            if let Err(e) = emit(&output, &bytes) {
                return fail(1, &e.to_string());
            }
            if checks_only && report.checks.iter().any(|c| !c.pass) {
                return ExitCode::from(1);
            }
            if strict && (!report.errors.is_empty() || report.incomplete) {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Command::Roots { model, output, seed, samples } => {
            let rep = match rep_from_source(&model) {
                Ok(r) => r,
                Err(e) => return fail(e.exit_code(), &e.to_string()),
            };
            let opts = AnalysisOptions { samples, iso_points: 0, ..AnalysisOptions::new(seed) };
            let report = run_analysis(&rep, &opts);
            let doc = serde_json::json!({
                "schema": polarrep::report::REPORT_SCHEMA,
                "provenance": report.provenance,
                "cartan_classes": report.cartan_classes,
                "roots": report.roots,
                "errors": report.errors,
            });
            match emit_json(&output, &doc) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            }
        }
        Command::Cayley { model, output, seed, samples } => {
            let rep = match rep_from_source(&model) {
                Ok(r) => r,
                Err(e) => return fail(e.exit_code(), &e.to_string()),
            };
            let opts = AnalysisOptions { samples, iso_points: 0, ..AnalysisOptions::new(seed) };
            let report = run_analysis(&rep, &opts);
            let doc = serde_json::json!({
                "schema": polarrep::report::REPORT_SCHEMA,
                "provenance": report.provenance,
                "cartan_classes": report.cartan_classes,
                "extremal": report.extremal,
                "errors": report.errors,
            });
            match emit_json(&output, &doc) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            }
        }
        Command::Isoparam { model, output, seed, points } => {
            let rep = match rep_from_source(&model) {
                Ok(r) => r,
                Err(e) => return fail(e.exit_code(), &e.to_string()),
            };
            let opts =
                AnalysisOptions { samples: 40, iso_points: points, ..AnalysisOptions::new(seed) };
            let report = run_analysis(&rep, &opts);
            let doc = serde_json::json!({
                "schema": polarrep::report::REPORT_SCHEMA,
                "provenance": report.provenance,
                "isoparametric": report.isoparametric,
                "errors": report.errors,
            });
            match emit_json(&output, &doc) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            }
        }
        Command::ProbeClosures { model, output, seed, samples } => {
            let rep = match rep_from_source(&model) {
                Ok(r) => r,
                Err(e) => return fail(e.exit_code(), &e.to_string()),
            };
            match run_probe(&rep, seed, samples) {
                Ok(out_doc) => {
                    let doc = serde_json::to_value(&out_doc).expect("serialize probe");
                    match emit_json(&output, &doc) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(code) => code,
                    }
                }
                Err(e) => fail(1, &e.to_string()),
            }
        }
    }
}
