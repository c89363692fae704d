//! Cayley transforms on the rank-one split model: move the compact Cartan
//! subspace to the split one and back, checking the operator certificates,
//! then run the greedy extremal searches.
//!
//!     cargo run --example cayley_transforms

use polarrep::cartan::{conjugacy_test, enumerate_classes, ConjugacyVerdict, SearchBudget};
use polarrep::cayley::{cayley_transform, extremal_search, CayleyKind, ExtremalDirection};
use polarrep::numkernel::TolerancePolicy;
use polarrep::roots::{root_system, RootType};
use polarrep::sympair::catalog::catalog_rep;

fn main() {
    let pol = TolerancePolicy::default();
    let rep = catalog_rep("sl2-adjoint", &pol).expect("builtin model");
    let budget = SearchBudget { seed: 11, samples: 80, ..Default::default() };
    let table = enumerate_classes(&rep, &budget).expect("enumeration");
    let compact = table.representatives.iter().find(|r| r.signature() == (1, 0)).unwrap();
    let split = table.representatives.iter().find(|r| r.signature() == (0, 1)).unwrap();

    // compact -> split along the noncompact imaginary root
    let system = root_system(&rep, compact).expect("roots");
    let root = &system.roots[0];
    println!("compact class root: {:?} / {:?}", root.root_type, root.subtype);
    let down = cayley_transform(&rep, compact, &system, root, CayleyKind::NoncompactImaginary)
        .expect("transform");
    println!(
        "transform {:?}: signature {:?} -> {:?}",
        down.kind,
        down.source.signature(),
        down.target.signature()
    );
    println!(
        "certificates: theta-fixed {:.2e}, sigma-inverted {:.2e}, square+id on c {:.2e}",
        down.residuals.theta_fixes_element,
        down.residuals.sigma_inverts_element,
        down.residuals.square_plus_id_on_c
    );
    let verdict = conjugacy_test(&rep, &down.target, split, &budget).expect("conjugacy");
    println!("target lies in the split class: {:?}", verdict == ConjugacyVerdict::Conjugate);

    // and back up along the transformable real root
    let system2 = root_system(&rep, &down.target).expect("roots");
    let real_root = system2.roots.iter().find(|r| r.root_type == RootType::Real).unwrap();
    let up = cayley_transform(&rep, &down.target, &system2, real_root, CayleyKind::CompactReal)
        .expect("dual transform");
    println!(
        "dual transform returns to signature {:?}; round trip in the original class: {:?}",
        up.target.signature(),
        conjugacy_test(&rep, &up.target, compact, &budget).unwrap() == ConjugacyVerdict::Conjugate
    );

    // greedy extremal searches from the compact seed
    for dir in [ExtremalDirection::MaxNoncompact, ExtremalDirection::MaxCompact] {
        let (extremal, steps) = extremal_search(&rep, dir, compact).expect("extremal search");
        println!(
            "extremal {:?}: signature {:?} after {} step(s)",
            dir,
            extremal.signature(),
            steps.len()
        );
    }
}
