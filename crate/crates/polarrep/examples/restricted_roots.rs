//! Restricted-root data on each conjugacy class of a builtin model: singular
//! hyperplanes, co-roots, type classification and root-space multiplicities.
//!
//!     cargo run --example restricted_roots -- [builtin] [seed]

use polarrep::cartan::{enumerate_classes, SearchBudget};
use polarrep::numkernel::TolerancePolicy;
use polarrep::roots::root_system;
use polarrep::sympair::catalog::catalog_rep;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "sln-son:n=3".into());
    let seed: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let pol = TolerancePolicy::default();
    let rep = catalog_rep(&name, &pol).expect("builtin model");
    let table = enumerate_classes(&rep, &SearchBudget { seed, samples: 80, ..Default::default() })
        .expect("enumeration");

    for (i, rec) in table.representatives.iter().enumerate() {
        println!("class {i} with signature {:?}:", rec.signature());
        if rec.rank == 0 {
            println!("  rank zero, no roots");
            continue;
        }
        let report = root_system(&rep, rec).expect("root system");
        println!("  centralizer of c has dimension {}", report.m_dim);
        println!("  chamber representative: {:?}", report.chamber_point.as_slice());
        for (j, root) in report.roots.iter().enumerate() {
            println!(
                "  root {j}: type {:?} / {:?}, multiplicity {}, transformable: {}, functional {:?}",
                root.root_type,
                root.subtype,
                root.multiplicity,
                root.cayley_applicable,
                root.functional.as_slice()
            );
            if let Some((k, sign)) = root.sigma_pair {
                println!("          real-structure image: root {k} with sign {sign}");
            }
        }
        println!(
            "  residuals: <c, g_a.c> = {:.2e}, cross = {:.2e}, dim gap = {}",
            report.residuals.base_orthogonality,
            report.residuals.cross_orthogonality,
            report.residuals.decomposition_dim_gap
        );
    }
}
