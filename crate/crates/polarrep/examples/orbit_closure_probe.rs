//! Compare closed orbits of an action and a subaction: flow each sample to a
//! minimal vector and compare orbit dimensions there. The maximal compact
//! subalgebra of the split rank-one model reaches the full orbit dimension on
//! the noncompact locus; a planar rotation subalgebra in 3-space does not.
//!
//!     cargo run --example orbit_closure_probe

use polarrep::isopgeom::orbit_closure_probe;
use polarrep::numkernel::{RMat, RVec, TolerancePolicy};
use polarrep::rng::SeedSplitter;
use polarrep::sympair::catalog::{catalog_rep, so3_on_r3};

fn main() {
    let pol = TolerancePolicy::default();

    // full action against itself: dimensions agree everywhere
    let rep = catalog_rep("sl2-adjoint", &pol).expect("builtin model");
    let mut rng = SeedSplitter::new(3).stream(1);
    let samples: Vec<RVec> = (0..4).map(|_| rep.sample_real(&mut rng)).collect();
    let full = RMat::identity(rep.g_dim(), rep.g_dim());
    let report = orbit_closure_probe(&rep, &full, &samples).expect("probe");
    println!("full vs itself: all equal = {}", report.all_equal);

    // the compact subalgebra against the full action
    let sub = rep.k_basis_re();
    let report = orbit_closure_probe(&rep, &sub, &samples).expect("probe");
    for (i, s) in report.samples.iter().enumerate() {
        println!(
            "sample {i}: full orbit dim {}, compact-subalgebra orbit dim {} (minimal vector found: {})",
            s.full_orbit_dim, s.sub_orbit_dim, s.minimal_found
        );
    }

    // negative control: rotations of 3-space against the planar subalgebra
    let rep = so3_on_r3(&pol).expect("control model");
    let sub = RMat::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
    let samples = vec![RVec::from_vec(vec![0.3, -1.1, 0.7])];
    let report = orbit_closure_probe(&rep, &sub, &samples).expect("probe");
    println!(
        "rotations of 3-space vs planar subalgebra: equal = {} (dims {} vs {})",
        report.all_equal, report.samples[0].full_orbit_dim, report.samples[0].sub_orbit_dim
    );
}
