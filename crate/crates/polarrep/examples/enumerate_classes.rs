//! Enumerate the conjugacy classes of Cartan subspaces of a builtin model:
//! random regular points are stabilized and deduplicated, then closed up
//! under Cayley transforms so the extremal classes always appear.
//!
//!     cargo run --example enumerate_classes -- [builtin] [seed]

use polarrep::cartan::{enumerate_classes, SearchBudget};
use polarrep::numkernel::TolerancePolicy;
use polarrep::sympair::catalog::catalog_rep;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "sl2-adjoint".into());
    let seed: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(7);
    let pol = TolerancePolicy::default();
    let rep = catalog_rep(&name, &pol).expect("builtin model");
    println!(
        "{name}: dim V = {}, acting algebra dim = {}, generic orbit dim = {}",
        rep.space_dim,
        rep.g_dim(),
        rep.generic_orbit_dim()
    );

    let budget = SearchBudget { seed, samples: 120, ..Default::default() };
    let table = enumerate_classes(&rep, &budget).expect("enumeration");
    println!(
        "found {} conjugacy class(es) from {} samples ({} regular, {} added by transforms)",
        table.representatives.len(),
        table.stats.samples,
        table.stats.regular,
        table.stats.cayley_additions
    );
    for (i, rec) in table.representatives.iter().enumerate() {
        println!(
            "  class {i}: signature (compact, noncompact) = {:?}, dim = {}, rank = {}, hits = {}",
            rec.signature(),
            rec.dim(),
            rec.rank,
            table.hits[i]
        );
    }
    if table.incomplete {
        println!("  note: some pairs stayed undetermined within the search budget");
    }
}
