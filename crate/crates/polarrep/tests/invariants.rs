//! Cross-module structural invariants: flows land on enumerated classes,
//! representatives share dimension and rank, extremal signatures are unique,
//! stabilization preserves the subspace up to its own conjugator, the checks
//! battery passes on every catalog model, and constructed Cartan pairs are
//! aligned by the square-root conjugator.

use polarrep::cartan::{
    cartan_space_at, conjugacy_test, enumerate_classes, minimal_vector, regularity,
    stabilize_theta, ConjugacyVerdict, SearchBudget,
};
use polarrep::numkernel::{self as nk, hermitian_sqrt, re_mat, CVec, TolerancePolicy, C};
use polarrep::report::run_checks;
use polarrep::rng::SeedSplitter;
use polarrep::sympair::catalog::catalog_rep;
use polarrep::sympair::{construct_cartan_pair, RepresentationModel};
use rand::Rng;

fn pol() -> TolerancePolicy {
    TolerancePolicy::default()
}

#[test]
fn closed_orbit_samples_land_on_standard_subspaces() {
    // flow 50 random semisimple points; each endpoint's Cartan subspace must
    // be conjugate to an enumerated representative
    let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
    let budget = SearchBudget { seed: 51, samples: 60, ..Default::default() };
    let table = enumerate_classes(&rep, &budget).unwrap();
    let mut rng = SeedSplitter::new(53).stream(1);
    let mut flowed = 0;
    while flowed < 50 {
        let v = rep.sample_real(&mut rng);
        if !regularity(&rep, &v).unwrap().regular {
            continue;
        }
        let out = minimal_vector(&rep, &v, &budget).unwrap();
        assert!(!out.collapsed);
        let rec = cartan_space_at(&rep, &out.v1).unwrap();
        assert!(rec.theta_stable, "minimal-vector Cartan subspace must be stable");
        let matched = table.representatives.iter().any(|cls| {
            matches!(
                conjugacy_test(&rep, cls, &rec, &budget),
                Ok(ConjugacyVerdict::Conjugate)
            )
        });
        assert!(matched, "endpoint not conjugate to any enumerated class");
        flowed += 1;
    }
}

#[test]
fn representatives_share_dimension_and_rank() {
    for name in ["sl2-adjoint", "sln-son:n=3", "supq:p=1,q=1", "sl2c-adjoint"] {
        let rep = catalog_rep(name, &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 5, samples: 50, ..Default::default() },
        )
        .unwrap();
        let dim0 = table.representatives[0].dim();
        let rank0 = table.representatives[0].rank;
        for rec in &table.representatives {
            assert_eq!(rec.dim(), dim0, "{name}");
            assert_eq!(rec.rank, rank0, "{name}");
        }
    }
}

#[test]
fn tables_have_unique_extremal_signatures() {
    for name in ["sl2-adjoint", "sln-son:n=3", "supq:p=1,q=1", "supq-compact:p=1,q=1"] {
        let rep = catalog_rep(name, &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 6, samples: 50, ..Default::default() },
        )
        .unwrap();
        let max_compact = table.signatures.iter().map(|s| s.0).max().unwrap();
        let max_noncompact = table.signatures.iter().map(|s| s.1).max().unwrap();
        assert_eq!(
            table.signatures.iter().filter(|s| s.0 == max_compact).count(),
            1,
            "{name}: max-compact signature not unique: {:?}",
            table.signatures
        );
        assert_eq!(
            table.signatures.iter().filter(|s| s.1 == max_noncompact).count(),
            1,
            "{name}: max-noncompact signature not unique: {:?}",
            table.signatures
        );
    }
}

#[test]
fn stabilization_moves_the_subspace_by_its_own_conjugator() {
    let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
    let mut rng = SeedSplitter::new(57).stream(2);
    let mut done = 0;
    while done < 5 {
        let v = rep.sample_real(&mut rng);
        if !regularity(&rep, &v).unwrap().regular {
            continue;
        }
        let rec = cartan_space_at(&rep, &v).unwrap();
        if rec.theta_stable {
            continue;
        }
        let (g, out) = stabilize_theta(&rep, &rec, &SearchBudget::with_seed(57)).unwrap();
        // pulling the output back along the conjugator recovers the input span
        let g_inv = g.inverse().unwrap();
        let pulled = g_inv.apply_v_re(&out.real_basis).unwrap();
        let residual = nk::subspace_residual_re(
            &nk::orthonormal_columns_re(&rec.real_basis, &pol()),
            &pulled,
        );
        assert!(residual < 1e-6, "pullback residual {residual:.3e}");
        done += 1;
    }
}

#[test]
fn checks_battery_passes_on_every_catalog_model() {
    for name in [
        "sl2-adjoint",
        "sl2c-adjoint",
        "sln-son:n=3",
        "supq:p=1,q=1",
        "supq-compact:p=1,q=1",
    ] {
        let rep = catalog_rep(name, &pol()).unwrap();
        let table = enumerate_classes(
            &rep,
            &SearchBudget { seed: 3, samples: 40, ..Default::default() },
        )
        .unwrap();
        let checks = run_checks(&rep, Some(&table), 3).unwrap();
        for c in &checks {
            assert!(c.pass, "{name}: check {} residual {:.3e} > {:.3e}", c.name, c.residual, c.tolerance);
        }
    }
}

/// Conjugate the reference pair by a random complex element.
fn random_pair(
    rep: &RepresentationModel,
    rng: &mut impl Rng,
) -> (nk::Antilinear, nk::Antilinear) {
    let z = CVec::from_fn(rep.g_dim(), |_, _| {
        C::new(
            0.3 * rng.sample::<f64, _>(rand_distr::StandardNormal),
            0.3 * rng.sample::<f64, _>(rand_distr::StandardNormal),
        )
    });
    let g_v = nk::expm(&rep.action_of(&z));
    let g_g = nk::expm(&rep.algebra.ad_matrix(&z).unwrap());
    (
        rep.theta_g_anti().conjugate_by(&g_g).unwrap(),
        rep.theta_v_anti().conjugate_by(&g_v).unwrap(),
    )
}

#[test]
fn constructed_pairs_are_aligned_by_the_square_root_conjugator() {
    // two commuting Cartan pairs; the positive square root of the composed
    // involutions maps one onto the other on both levels
    let rep = catalog_rep("sl2-adjoint", &pol()).unwrap();
    let mut rng = SeedSplitter::new(61).stream(3);
    let (mu_g1, mu_v1) = random_pair(&rep, &mut rng);
    let (mu_g2, mu_v2) = random_pair(&rep, &mut rng);
    let out1 = construct_cartan_pair(&rep, &mu_g1, &mu_v1).unwrap();
    let out2 = construct_cartan_pair(&rep, &mu_g2, &mu_v2).unwrap();

    let b2_v = -re_mat(&rep.form) * &out2.eta_v.m;
    let omega_v = out2.eta_v.compose(&out1.eta_v);
    let psi_v = hermitian_sqrt(&omega_v, &b2_v, &pol()).unwrap();
    let moved = out1.eta_v.conjugate_by(&psi_v).unwrap();
    let res = (&moved.m - &out2.eta_v.m).norm() / out2.eta_v.m.norm();
    assert!(res < 1e-8, "alignment residual {res:.3e}");
}

#[test]
fn same_involution_determines_the_real_structure() {
    // conjugating an input pair by an element fixed by the real form and by
    // the output involution changes the input pair but must reproduce the
    // same output: a Cartan pair is determined by its involution
    let rep = catalog_rep("sln-son:n=3", &pol()).unwrap();
    let mut rng = SeedSplitter::new(67).stream(4);
    let (mu_g, mu_v) = random_pair(&rep, &mut rng);
    let out = construct_cartan_pair(&rep, &mu_g, &mu_v).unwrap();

    // a real element fixed by eta: the output commutes with the real form so
    // its matrix is real, and the fixed real points solve M x = x; pick the
    // direction that moves the input the most
    let m_eta = nk::expect_real(&out.eta_g.m, 1e-7).unwrap();
    let eta_fixed = nk::real_eigenspace_of_involution(&m_eta, 1.0, &pol());
    assert!(eta_fixed.ncols() > 0);
    let k_vec = (0..eta_fixed.ncols())
        .map(|j| eta_fixed.column(j).into_owned())
        .max_by(|a, b| {
            let defect = |k: &nk::RVec| {
                let act = re_mat(&rep.action_of_re(k));
                (&act * &mu_v.m - &mu_v.m * act.conjugate()).norm()
            };
            defect(a).partial_cmp(&defect(b)).unwrap()
        })
        .unwrap()
        * 0.6;
    let g_v = nk::expm(&rep.action_of(&nk::re_vec(&k_vec)));
    let g_g = nk::expm(&rep.algebra.ad_matrix(&nk::re_vec(&k_vec)).unwrap());

    let mu_g2 = mu_g.conjugate_by(&g_g).unwrap();
    let mu_v2 = mu_v.conjugate_by(&g_v).unwrap();
    assert!((&mu_v2.m - &mu_v.m).norm() > 1e-3, "input pair did not move");
    let out2 = construct_cartan_pair(&rep, &mu_g2, &mu_v2).unwrap();
    let eta_gap = (&out2.eta_g.m - &out.eta_g.m).norm();
    assert!(eta_gap < 1e-7, "involutions differ by {eta_gap:.3e}");
    let gap = (&out2.eta_v.m - &out.eta_v.m).norm();
    assert!(gap < 1e-7, "real structures differ by {gap:.3e}");
}
