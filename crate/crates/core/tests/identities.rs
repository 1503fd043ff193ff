use std::f64::consts::PI;
use std::sync::OnceLock;

use zqlab::error::Error;
use zqlab::identities::*;
use zqlab::specfun::meijer_g04_42;

fn lab() -> &'static Lab {
    static LAB: OnceLock<Lab> = OnceLock::new();
    LAB.get_or_init(|| Lab::new().unwrap())
}

fn cfg(id: IdentityId) -> VerifierConfig {
    VerifierConfig::default_for(id)
}

fn run(id: IdentityId, p: Params) -> Vec<IdentityReport> {
    run_identity(lab(), id, p, &cfg(id)).unwrap()
}

fn x(v: f64) -> Params {
    Params {
        x: Some(v),
        ..Params::default()
    }
}

fn y(v: f64) -> Params {
    Params {
        y: Some(v),
        ..Params::default()
    }
}

fn assert_pass(r: &IdentityReport) {
    assert!(
        r.pass,
        "{} {:?}: residual {:e} > {:e}",
        r.identity_id, r.params, r.residual_abs, r.tolerance
    );
    assert_eq!(r.residual_abs, (r.lhs - r.rhs).abs());
}

#[test]
fn every_identity_passes_at_its_reference_point() {
    for id in IdentityId::ALL {
        let reports = run(id, Params::default());
        assert!(!reports.is_empty());
        for r in &reports {
            assert_pass(r);
        }
    }
}

#[test]
fn mutation_controls_flip_every_identity() {
    for id in IdentityId::ALL {
        let c = cfg(id).with_mutation(id.mutation_key(), 1.01);
        let reports = run_identity(lab(), id, Params::default(), &c).unwrap();
        assert!(
            reports.iter().any(|r| !r.pass),
            "{id}: 1% mutation of {} did not fail",
            id.mutation_key()
        );
    }
}

#[test]
fn lambda_corollaries_at_other_points() {
    let r = &run(IdentityId::LambdaExp, y(2.0))[0];
    assert_pass(r);
    let r = &run(IdentityId::LambdaGauss, y(0.5))[0];
    assert_pass(r);
    // scaling the ζ(1/2) term by 1.01 at y = 1 exceeds 1e-3
    let c = cfg(IdentityId::LambdaExp).with_mutation("zeta_half_term", 1.01);
    let r = verify_lambda_exp(lab(), 1.0, &c).unwrap();
    assert!(r.residual_abs > 1e-3);
}

#[test]
fn riesz_lhs_is_the_finite_sum() {
    let r = &run(IdentityId::LambdaRiesz, y(10.5))[0];
    let lam = [0, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1];
    let direct: f64 = (1..=10)
        .map(|n| lam[n] as f64 * (1.0 - n as f64 / 10.5).sqrt())
        .sum();
    assert!((r.lhs - direct).abs() < 1e-15);
    assert!(matches!(
        verify_lambda_riesz(lab(), 10.0, &cfg(IdentityId::LambdaRiesz)),
        Err(Error::ParameterDomain(_))
    ));
}

#[test]
fn large_n_kernel_models() {
    let n = 1e4;
    // Gaussian: e^{−z}(I_{−1/4}+I_{1/4})(z) ~ 8√y/(π^{3/2}n), y = 1
    let z = PI * PI * n * n / 32.0;
    let model = 8.0 / (PI.powf(1.5) * n);
    assert!((gauss_kernel(z).unwrap() / model - 1.0).abs() < 0.01);
    // Riesz: bracket ~ 4/(π√(ny)), y = 10.5
    let yv = 10.5;
    let z = PI * n * yv / 4.0;
    let bracket = riesz_bracket_excess(z).unwrap() + 2.0 / (PI * z).sqrt();
    assert!((bracket / (4.0 / (PI * (n * yv).sqrt())) - 1.0).abs() < 0.02);
}

#[test]
fn k0_hypergeometric_argument_stays_below_one() {
    for n in [1.0, 10.0, 1e3, 1e5] {
        let v = k0_hypergeometric(n, 1e-3).unwrap();
        assert!(v.is_finite() && v > 1.0);
    }
}

#[test]
fn cohen_lambda_points_and_constant_drop() {
    for v in [0.7, 1.3, 2.9] {
        let r = &run(IdentityId::CohenLambda, x(v))[0];
        assert_pass(r);
        assert!(r.residual_abs <= 1e-8);
    }
    let c = cfg(IdentityId::CohenLambda).with_mutation("zeta_half_term", 0.0);
    assert!(verify_cohen_lambda(lab(), 1.3, &c).unwrap().residual_abs > 1e-3);
}

#[test]
fn rg_lambda_points_and_contour_oracle() {
    for v in [0.5, 1.0, 2.0] {
        let r = &run(IdentityId::RgLambda, x(v))[0];
        assert_pass(r);
        assert!(r.rhs_components["first_term_contour_oracle_diff"] < 1e-8);
    }
}

#[test]
fn mu_ramanujan_points() {
    let a = |v: f64| Params {
        alpha: Some(v),
        ..Params::default()
    };
    for v in [1.0, 2.0] {
        let r = &run(IdentityId::MuRamanujan, a(v))[0];
        assert!(r.residual_abs <= 1e-3);
    }
    let r = &run(IdentityId::MuRamanujan, a(PI.sqrt()))[0];
    assert_eq!(r.lhs, 0.0);
    assert!(r.rhs.abs() <= 1e-9);
    assert_pass(r);
}

#[test]
fn cohen_sigma_second_point_and_domain() {
    let p = Params {
        a: Some(0.4),
        b: Some(-0.3),
        x: Some(1.7),
        ..Params::default()
    };
    assert_pass(&run(IdentityId::CohenSigma, p)[0]);
    let c = cfg(IdentityId::CohenSigma);
    assert!(matches!(
        verify_cohen_sigma(lab(), 0.0, 0.2, 2.5, &c),
        Err(Error::ParameterDomain(_))
    ));
    assert!(matches!(
        verify_cohen_sigma(lab(), 0.3, 0.2, 2.0, &c),
        Err(Error::ParameterDomain(_))
    ));
    assert!(matches!(
        verify_cohen_sigma(lab(), 0.8, 0.5, 2.5, &c),
        Err(Error::ParameterDomain(_))
    ));
}

#[test]
fn rg_sigma_truncation_and_degeneracy() {
    let c = cfg(IdentityId::RgSigma);
    for (a, b) in [(0.0, 0.2), (0.3, 0.3), (0.2, -0.2)] {
        assert!(matches!(
            verify_rg_sigma(lab(), a, b, 1.0, &c),
            Err(Error::DegenerateParameters(_))
        ));
    }
    // LHS term at n = 20: K_{a/2}K_{b/2}(40) ~ e^{−80}
    let t = zqlab::specfun::bessel_k(0.2, 40.0).unwrap()
        * zqlab::specfun::bessel_k(0.05, 40.0).unwrap();
    assert!(t < 1e-30);
    // Meijer-G series: n = 3 already negligible at x = 1
    let (a, b) = (0.4, 0.1);
    let g = meijer_g04_42(
        [0.5, (1.0 - a) / 2.0, (1.0 - b) / 2.0, (1.0 - a - b) / 2.0],
        [(1.0 - a - b) / 4.0, (3.0 - a - b) / 4.0],
        1.0 / (4.0 * 9.0 * PI.powi(4)),
    )
    .unwrap();
    assert!(g.value.re.abs() < 1e-10);
}

#[test]
fn cohen_d2_details() {
    let r = &run(IdentityId::CohenD2, x(2.5))[0];
    assert_pass(r);
    assert!(r.rhs_components["stieltjes_radius_gap"] < 1e-8);
    assert!(r.rhs_components["zeta_d2_m1_radius_gap"] < 1e-8);
    let r = &run(IdentityId::CohenD2, x(1.0 / (4.0 * PI * PI)))[0];
    assert_eq!(r.rhs_components["r1"], 0.0);
}

#[test]
fn rg_d2_points_and_large_x_constant() {
    for v in [1.0, 2.0] {
        let r = &run(IdentityId::RgD2, x(v))[0];
        assert_pass(r);
        assert!(r.rhs_components["res1_radius_gap"] < 1e-9);
    }
    let big = 30.0;
    let r = &run(IdentityId::RgD2, x(big))[0];
    let g = zqlab::specfun::EULER_GAMMA;
    let constant = (g - (4.0 * PI * PI / big).ln()).powi(2);
    // the K₀² series is ~e^{−120}; γ − log(4π²/x) cancels, so allow rounding
    assert!((r.lhs - constant).abs() <= 1e-13 * constant);
}

#[test]
fn d2_residue_constants() {
    let rs = run(IdentityId::D2Residues, Params::default());
    assert_eq!(rs.len(), 4);
    assert!((rs[3].lhs - 1.0 / (PI * PI)).abs() < 1e-8);
    for r in &rs {
        assert_pass(r);
        assert!(r.rhs_components["radius_gap"] < 1e-9);
    }
}

#[test]
fn lemma_suite_fifteen_points() {
    let rs = run(IdentityId::Lemmas, Params::default());
    assert_eq!(rs.len(), 15);
    for r in &rs {
        assert_pass(r);
        assert!(r.residual_abs <= 1e-8);
    }
}

#[test]
fn baselines() {
    let rs = run(IdentityId::Baselines, Params::default());
    assert!(rs[0].residual_abs <= 1e-10);
    assert!(rs[1].residual_abs <= 1e-6);
    let r = koshliakov(1.0, &cfg(IdentityId::Baselines)).unwrap();
    assert!(r.residual_abs <= 1e-12);
    assert!(matches!(
        voronoi_d(lab(), 2.0, &cfg(IdentityId::Baselines)),
        Err(Error::ParameterDomain(_))
    ));
}

#[test]
fn zero_count_stability_for_absolutely_convergent_identities() {
    for (id, p) in [
        (IdentityId::CohenLambda, x(1.3)),
        (IdentityId::RgLambda, x(1.0)),
        (IdentityId::RgSigma, Params::default()),
        (IdentityId::RgD2, x(1.0)),
        (IdentityId::CohenD2, x(2.5)),
    ] {
        let mut c = cfg(id);
        c.zero_count = 40;
        let r40 = &run_identity(lab(), id, p, &c).unwrap()[0];
        c.zero_count = 80;
        let r80 = &run_identity(lab(), id, p, &c).unwrap()[0];
        assert!((r40.residual_abs - r80.residual_abs).abs() < 1e-10, "{id}");
    }
}

#[test]
fn zero_count_beyond_table_is_an_error() {
    let mut c = cfg(IdentityId::CohenLambda);
    c.zero_count = 101;
    assert!(matches!(
        verify_cohen_lambda(lab(), 1.3, &c),
        Err(Error::ParameterDomain(_))
    ));
}

#[test]
fn test_function_mellin_pairs() {
    let fns = [
        TestFunction::exp(1.0).unwrap(),
        TestFunction::gauss(0.7).unwrap(),
        TestFunction::k0(1.3).unwrap(),
        TestFunction::riesz(10.5, 0.5).unwrap(),
    ];
    for f in fns {
        for s in [1.5, 2.5] {
            let r = f.mellin_residual(s, 1e-12).unwrap();
            assert!(r <= 1e-8, "{}: residual {r:e} at s = {s}", f.label());
        }
    }
    assert!(TestFunction::riesz(1.0, 0.0).is_err());
    assert!(TestFunction::exp(-1.0).is_err());
}

#[test]
fn cn_sums_pair() {
    let rs = run(IdentityId::CnSums, Params::default());
    assert_eq!(rs.len(), 2);
    assert!((rs[0].lhs - 0.5).abs() <= 2e-3);
    assert!((rs[1].lhs + zqlab::specfun::EULER_GAMMA / 2.0).abs() <= 5e-3);
    for r in &rs {
        assert!(r.rhs_components["error_at_1e3"] > r.residual_abs);
    }
}

#[test]
fn identity_ids_round_trip() {
    for id in IdentityId::ALL {
        assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        let j = serde_json::to_string(&id).unwrap();
        assert_eq!(j, format!("\"{}\"", id.as_str()));
    }
    assert!("bogus".parse::<IdentityId>().is_err());
}

#[test]
fn reports_serialize() {
    let r = &run(IdentityId::RgLambda, x(1.0))[0];
    let j = serde_json::to_value(r).unwrap();
    for k in [
        "identity_id",
        "params",
        "lhs",
        "rhs",
        "rhs_components",
        "residual_abs",
        "residual_rel",
        "truncation",
        "pass",
        "wall_time_ms",
    ] {
        assert!(j.get(k).is_some(), "{k}");
    }
    let back: IdentityReport = serde_json::from_value(j).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn experimental_kernel_is_coarse_but_consistent() {
    let r = experimental_d2_kernel(lab(), &cfg(IdentityId::RgD2)).unwrap();
    assert_eq!(r.tolerance, 0.1);
    assert_pass(&r);
    assert!(r.notes.iter().any(|n| n.contains("experimental")));
}
