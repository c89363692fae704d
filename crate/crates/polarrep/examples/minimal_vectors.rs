//! The minimal-vector gradient flow: descend the squared norm along the
//! noncompact group directions until the moment-map residual vanishes.
//! Closed orbits end at a minimal vector; nilpotent directions collapse to
//! the origin.
//!
//!     cargo run --example minimal_vectors

use polarrep::cartan::{minimal_vector, regularity, SearchBudget};
use polarrep::numkernel::{RVec, TolerancePolicy};
use polarrep::rng::SeedSplitter;
use polarrep::sympair::catalog::catalog_rep;

fn main() {
    let pol = TolerancePolicy::default();
    let rep = catalog_rep("sl2-adjoint", &pol).expect("builtin model");
    let budget = SearchBudget::default();

    let mut rng = SeedSplitter::new(5).stream(1);
    for k in 0..4 {
        let v = rep.sample_real(&mut rng);
        let reg = regularity(&rep, &v).expect("regularity");
        let out = minimal_vector(&rep, &v, &budget).expect("flow");
        println!(
            "sample {k}: semisimple {}, |v| = {:.4} -> |v1| = {:.4}, iterations {}, residual {:.2e}, collapsed {}",
            reg.semisimple,
            v.norm(),
            out.v1.norm(),
            out.iterations,
            out.residual,
            out.collapsed
        );
    }

    // a nilpotent direction: bisect the invariant form to an isotropic vector
    let x = rep.vr_iw_basis().column(0).into_owned();
    let w = rep.vr_w_basis().column(0).into_owned();
    let q = |t: f64| -> f64 {
        let v: RVec = &x * t.cos() + &w * t.sin();
        rep.form_re(&v, &v)
    };
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
    let nilpotent: RVec = &x * t.cos() + &w * t.sin();
    let out = minimal_vector(&rep, &nilpotent, &budget).expect("flow");
    println!(
        "isotropic direction: semisimple {}, flow collapsed toward the origin: {} (final norm {:.2e})",
        regularity(&rep, &nilpotent).unwrap().semisimple,
        out.collapsed,
        out.v1.norm()
    );
}
