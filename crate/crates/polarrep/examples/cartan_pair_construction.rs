//! Repair a Cartan pair that does not commute with the real form: the square
//! of the composed involution is positive, and conjugating by its positive
//! fourth root produces a commuting pair with the same fixed subspace data.
//!
//!     cargo run --example cartan_pair_construction

use polarrep::numkernel::{self as nk, CVec, TolerancePolicy, C};
use polarrep::rng::SeedSplitter;
use polarrep::sympair::catalog::catalog_rep;
use polarrep::sympair::construct_cartan_pair;
use rand::Rng;

fn main() {
    let pol = TolerancePolicy::default();
    let rep = catalog_rep("sl2-adjoint", &pol).expect("builtin model");

    let mut rng = SeedSplitter::new(13).stream(1);
    let z = CVec::from_fn(rep.g_dim(), |_, _| {
        C::new(
            0.3 * rng.sample::<f64, _>(rand_distr::StandardNormal),
            0.3 * rng.sample::<f64, _>(rand_distr::StandardNormal),
        )
    });
    // conjugate the reference pair by a complex group element
    let g_v = nk::expm(&rep.action_of(&z));
    let g_g = nk::expm(&rep.algebra.ad_matrix(&z).expect("ad"));
    let mu_v = rep.theta_v_anti().conjugate_by(&g_v).expect("conjugate");
    let mu_g = rep.theta_g_anti().conjugate_by(&g_g).expect("conjugate");

    let before = mu_v.m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    println!("input pair: worst commutation defect with the real form = {before:.3e}");

    let out = construct_cartan_pair(&rep, &mu_g, &mu_v).expect("construction");
    println!(
        "output pair: commutation residuals {:.3e} (algebra) / {:.3e} (space)",
        out.residuals.commutes_with_sigma_g, out.residuals.commutes_with_sigma_v
    );
    println!(
        "involution residual {:.3e}; form on the fixed real points is negative-definite (max eigenvalue {:.3e})",
        out.residuals.involution_v, out.residuals.form_on_real_points_max_eig
    );

    // feeding the output back returns it unchanged
    let again = construct_cartan_pair(&rep, &out.eta_g, &out.eta_v).expect("idempotence");
    println!(
        "idempotent: {}",
        (&again.eta_v.m - &out.eta_v.m).norm() < 1e-8
    );
}
