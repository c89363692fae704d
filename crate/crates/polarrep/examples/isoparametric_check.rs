//! Isoparametric verdicts for orbits: flat normal connection plus shape
//! operators that stay diagonalizable with constant eigenvalues along the
//! orbit. Polar models pass at every regular point; the non-polar control
//! fails the flatness condition.
//!
//!     cargo run --example isoparametric_check -- [builtin] [points]

use polarrep::cartan::regularity;
use polarrep::isopgeom::{isoparametric_verdict, orbit_frame, weingarten_operator};
use polarrep::numkernel::TolerancePolicy;
use polarrep::rng::SeedSplitter;
use polarrep::sympair::catalog::catalog_rep;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "sl2-adjoint".into());
    let points: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(5);
    let pol = TolerancePolicy::default();
    let rep = catalog_rep(&name, &pol).expect("builtin model");

    let mut rng = SeedSplitter::new(17).stream(1);
    let mut shown = 0;
    while shown < points {
        let v = rep.sample_real(&mut rng);
        if !regularity(&rep, &v).expect("regularity").regular || orbit_frame(&rep, &v).is_err() {
            continue;
        }
        let report = isoparametric_verdict(&rep, &v, 8, 17).expect("verdict");
        println!(
            "point {shown}: verdict {:?} (tangent dim {}, metric signature {:?})",
            report.verdict, report.tangent_dim, report.metric_signature
        );
        println!(
            "  flat normal connection: {} (residual {:.2e}); diagonalizable: {}; constant spectra: {}",
            report.normal_flat,
            report.flatness_residual,
            report.all_diagonalizable,
            report.spectra_constant
        );
        if shown == 0 {
            // show the shape operator along the position normal: always -id
            let w = weingarten_operator(&rep, &v, &v).expect("shape operator");
            println!("  shape operator along the position normal has blocks {:?}", w.blocks);
        }
        shown += 1;
    }
}
