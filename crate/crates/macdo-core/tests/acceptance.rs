//! The acceptance gate: one test per advertised guarantee, each printing a
//! single pass line and enforcing the stated tolerance and, where given,
//! the stated runtime budget.

use std::time::Instant;

use num_complex::Complex64;
use serde_json::Value;

use macdo_core::factorise::{
    aw_integral, factorisation_sides_n2, factorisation_sides_n3, integer_g_inverse,
    macdonald_at_integer_g, reconstruction_n2, reconstruction_n3, round_trip_n2, round_trip_n3,
    torus_gram, AWParams, QuadratureConfig,
};
use macdo_core::macdonald::macdonald_p;
use macdo_core::separated::{
    chi_closed_forms, phi_at_t_power_n, phi_via_chi, phi_via_lauricella, separation_residual,
    spectral_equations_hold,
};
use macdo_core::suites::{run_suite, SuiteParams};
use macdo_core::weights::{weights_up_to_size, weights_with_max_part, DominantWeight};

fn w(parts: &[i64]) -> DominantWeight {
    DominantWeight::new(parts.to_vec()).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&path).expect("fixture present"))
        .expect("well-formed fixture")
}

fn fixture_terms(v: &Value) -> Vec<(String, String)> {
    v["terms"]
        .as_array()
        .expect("terms array")
        .iter()
        .map(|t| {
            (
                t["key"].as_str().unwrap().to_string(),
                t["coeff"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

fn rel_err(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-30)
}

const N2_SET: [&[i64]; 4] = [&[0, 0], &[0, 1], &[0, 2], &[1, 2]];
const N3_SET: [&[i64]; 4] = [&[0, 0, 0], &[0, 0, 1], &[0, 1, 1], &[0, 0, 2]];

#[test]
fn criterion_01_golden_macdonald_tables_exact() {
    let start = Instant::now();
    let names = [
        "p_0_0_0", "p_0_0_1", "p_0_1_1", "p_1_1_1", "p_0_0_2", "p_0_1_2", "p_1_1_2", "p_0_2_2",
        "p_0_0_3",
    ];
    for name in names {
        let fix = fixture(name);
        let parts: Vec<i64> = fix["lambda"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect();
        let p = macdonald_p(&w(&parts)).unwrap();
        let got: Vec<(String, String)> = p
            .iter()
            .map(|(mu, coeff)| (mu.to_string(), coeff.to_string()))
            .collect();
        assert_eq!(got, fixture_terms(&fix), "coefficients of {name}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget 10 s");
    println!("criterion 1 (golden P tables, exact): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_eigenfunctions_exact() {
    let start = Instant::now();
    let report = run_suite("eigen", &SuiteParams::default()).unwrap();
    assert!(report.all_pass(), "\n{}", report.render_text());
    assert_eq!(
        report.cases.len(),
        weights_up_to_size(2, 4).len()
            + weights_up_to_size(3, 4).len()
            + weights_up_to_size(4, 3).len()
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget 5 min");
    println!(
        "criterion 2 (eigenfunction identities, {} weights, exact): PASS in {elapsed:?}",
        report.cases.len()
    );
}

#[test]
fn criterion_03_golden_separated_tables_both_routes() {
    let names = [
        "phi_0_0_0",
        "phi_0_0_1",
        "phi_0_1_1",
        "phi_0_0_2",
        "phi_0_1_2",
        "phi_0_2_2",
        "phi_0_0_3",
    ];
    for name in names {
        let fix = fixture(name);
        let parts: Vec<i64> = fix["lambda"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect();
        let lam = w(&parts);
        let want = fixture_terms(&fix);
        for (route, phi) in [
            ("coefficient route", phi_via_chi(&lam).unwrap()),
            ("multiple-sum route", phi_via_lauricella(&lam).unwrap()),
        ] {
            let got: Vec<(String, String)> = (phi.k_min()..=phi.k_max())
                .map(|k| (k.to_string(), phi.chi(k).to_string()))
                .collect();
            assert_eq!(got, want, "{name} via the {route}");
        }
    }
    let mut checked = 0;
    for n in [2usize, 3, 4] {
        for lam in weights_with_max_part(n, 4) {
            let phi = phi_via_chi(&lam).unwrap();
            let (lo, hi) = chi_closed_forms(&lam).unwrap();
            assert_eq!(phi.chi(phi.k_min()), lo, "lowest coefficient of [{lam}]");
            assert_eq!(phi.chi(phi.k_max()), hi, "highest coefficient of [{lam}]");
            assert_eq!(
                phi_at_t_power_n(&lam).unwrap(),
                phi.eval_at_t_power(n as i64),
                "principal value of [{lam}]"
            );
            checked += 1;
        }
    }
    println!("criterion 3 (golden separated tables, both routes; {checked} closed-form checks): PASS");
}

#[test]
fn criterion_04_separation_equation_and_spectral_problem_exact() {
    for n in [2usize, 3] {
        for lam in weights_with_max_part(n, 3) {
            assert!(
                separation_residual(&lam).unwrap().is_zero(),
                "separation residual of [{lam}]"
            );
            assert!(
                spectral_equations_hold(&lam).unwrap(),
                "spectral equations of [{lam}]"
            );
        }
    }
    println!("criterion 4 (separation equation and spectral problem, exact): PASS");
}

#[test]
fn criterion_05_askey_wilson_quadrature() {
    let start = Instant::now();
    let report = run_suite("aw", &SuiteParams::default()).unwrap();
    assert!(report.all_pass(), "\n{}", report.render_text());
    assert_eq!(report.cases.len(), 50, "25 draws at each of two q values");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30 s");
    println!("criterion 5 (quadrature vs closed product, 1e-9): PASS in {elapsed:?}");
}

#[test]
fn criterion_06_two_variable_factorisation() {
    let cfg = QuadratureConfig::default();
    for parts in N2_SET {
        let lam = w(parts);
        let (lhs, rhs) =
            factorisation_sides_n2(&lam, 0.5, 0.5, c(1.0), 0.2, 0.5, &cfg).unwrap();
        let err = rel_err(lhs, rhs);
        assert!(err <= 1e-8, "lambda=[{lam}]: err {err:.3e}");
    }
    println!("criterion 6 (two-variable factorisation, 1e-8): PASS");
}

#[test]
fn criterion_07_three_variable_factorisation() {
    let cfg = QuadratureConfig::default();
    for parts in N3_SET {
        let lam = w(parts);
        let (lhs, rhs) =
            factorisation_sides_n3(&lam, 0.5, 0.5, 0.8, 0.2, 0.5, &cfg).unwrap();
        let err = rel_err(lhs, rhs);
        assert!(err <= 1e-6, "lambda=[{lam}]: err {err:.3e}");
    }
    println!("criterion 7 (three-variable factorisation, 1e-6): PASS");
}

#[test]
fn criterion_08_inverse_round_trips_and_reconstructions() {
    let cfg = QuadratureConfig::default().with_points(512);
    for parts in N2_SET {
        let lam = w(parts);
        let (lhs, rhs) = round_trip_n2(&lam, 0.8, 0.45, c(1.0), 0.2, 0.5, &cfg).unwrap();
        let err = rel_err(lhs, rhs);
        assert!(err <= 1e-6, "n=2 round trip lambda=[{lam}]: err {err:.3e}");
        let (lhs, rhs) = reconstruction_n2(&lam, 0.8, 0.45, c(1.0), 0.2, 0.5, &cfg).unwrap();
        let err = rel_err(lhs, rhs);
        assert!(err <= 1e-6, "n=2 reconstruction lambda=[{lam}]: err {err:.3e}");
    }
    for parts in N3_SET {
        let lam = w(parts);
        let (lhs, rhs) = round_trip_n3(&lam, 0.9, 0.6, 1.0, 0.2, 0.5, &cfg).unwrap();
        let err = rel_err(lhs, rhs);
        assert!(err <= 1e-6, "n=3 round trip lambda=[{lam}]: err {err:.3e}");
        let (lhs, rhs) = reconstruction_n3(&lam, 0.9, 0.6, 1.0, 0.2, 0.5, &cfg).unwrap();
        let err = rel_err(lhs, rhs);
        assert!(err <= 1e-6, "n=3 reconstruction lambda=[{lam}]: err {err:.3e}");
    }
    println!("criterion 8 (inverse round trips and reconstructions, 1e-6): PASS");
}

#[test]
fn criterion_09_integer_coupling_inverse_exact() {
    for g in [1i64, 2] {
        for lam in weights_with_max_part(3, 2) {
            let got = integer_g_inverse(g, &lam).unwrap();
            let want = macdonald_at_integer_g(&lam, g).unwrap();
            assert!(
                got.sub(&want).is_zero(),
                "integer coupling g={g}, lambda=[{lam}]"
            );
        }
    }
    println!("criterion 9 (integer-coupling inverse, exact): PASS");
}

#[test]
fn criterion_10_torus_orthogonality() {
    let cfg = QuadratureConfig::default().with_points(512);
    let lams = weights_up_to_size(2, 3);
    let polys: Vec<_> = lams.iter().map(|l| macdonald_p(l).unwrap()).collect();
    let gram = torus_gram(&polys, 0.4, 0.5, &cfg).unwrap();
    for i in 0..lams.len() {
        assert!(gram[i][i].re > 0.0, "norm of [{}]", lams[i]);
        for j in (i + 1)..lams.len() {
            let bound = 1e-7 * (gram[i][i].re * gram[j][j].re).sqrt();
            assert!(
                gram[i][j].norm() < bound,
                "pairing of [{}] and [{}]: {:.3e} vs {:.3e}",
                lams[i],
                lams[j],
                gram[i][j].norm(),
                bound
            );
        }
    }
    println!(
        "criterion 10 (torus orthogonality, {} distinct pairs): PASS",
        lams.len() * (lams.len() - 1) / 2
    );
}

#[test]
fn criterion_11_doubling_resolution_changes_nothing() {
    let base = QuadratureConfig::default();
    let mut doubled = base.clone();
    doubled.points *= 2;
    doubled.trunc *= 2;

    let aw = AWParams {
        a: c(0.4),
        b: c(-0.3),
        c: c(0.55),
        d: Complex64::new(0.2, 0.35),
        q: 0.3,
    };
    let (v1, _) = aw_integral(&aw, &base).unwrap();
    let (v2, _) = aw_integral(&aw, &doubled).unwrap();
    assert!(rel_err(v1, v2) <= 1e-9, "quadrature value drifted: {:.3e}", rel_err(v1, v2));

    let lam = w(&[1, 2]);
    let (f1, _) = factorisation_sides_n2(&lam, 0.5, 0.5, c(1.0), 0.2, 0.5, &base).unwrap();
    let (f2, _) = factorisation_sides_n2(&lam, 0.5, 0.5, c(1.0), 0.2, 0.5, &doubled).unwrap();
    assert!(rel_err(f1, f2) <= 1e-8, "n=2 factorisation drifted: {:.3e}", rel_err(f1, f2));

    let lam = w(&[0, 0, 2]);
    let (g1, _) = factorisation_sides_n3(&lam, 0.5, 0.5, 0.8, 0.2, 0.5, &base).unwrap();
    let (g2, _) = factorisation_sides_n3(&lam, 0.5, 0.5, 0.8, 0.2, 0.5, &doubled).unwrap();
    assert!(rel_err(g1, g2) <= 1e-6, "n=3 factorisation drifted: {:.3e}", rel_err(g1, g2));

    let lam = w(&[0, 1]);
    let small = QuadratureConfig::default().with_points(512);
    let mut large = small.clone();
    large.points *= 2;
    large.trunc *= 2;
    let (r1, _) = round_trip_n2(&lam, 0.8, 0.45, c(1.0), 0.2, 0.5, &small).unwrap();
    let (r2, _) = round_trip_n2(&lam, 0.8, 0.45, c(1.0), 0.2, 0.5, &large).unwrap();
    assert!(rel_err(r1, r2) <= 1e-6, "round trip drifted: {:.3e}", rel_err(r1, r2));

    let lams = [w(&[0, 1]), w(&[0, 2])];
    let polys: Vec<_> = lams.iter().map(|l| macdonald_p(l).unwrap()).collect();
    let gram_small = torus_gram(&polys, 0.4, 0.5, &small).unwrap();
    let gram_large = torus_gram(&polys, 0.4, 0.5, &large).unwrap();
    for g in [&gram_small, &gram_large] {
        let bound = 1e-7 * (g[0][0].re * g[1][1].re).sqrt();
        assert!(g[0][1].norm() < bound, "pairing left the tolerance band");
    }
    println!("criterion 11 (doubling nodes and truncation is inert): PASS");
}
