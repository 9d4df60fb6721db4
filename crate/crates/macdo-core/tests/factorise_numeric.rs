//! Numeric checks for the contour engine and the factorising operators:
//! the Askey-Wilson calibration integral, kernel normalisations on the
//! constant polynomial, forward factorisation at sample points, round
//! trips through the inverse kernels, the exact integer-coupling inverse,
//! and torus orthogonality.

use num_complex::Complex64;

use macdo_core::error::Error;
use macdo_core::factorise::{
    aw_continued, aw_integral, factorisation_sides_n2, factorisation_sides_n3,
    integer_g_inverse, macdonald_at_integer_g, reconstruction_n2, reconstruction_n3,
    round_trip_n2, round_trip_n3, torus_inner_product, AWParams, QuadratureConfig,
};
use macdo_core::macdonald::macdonald_p;
use macdo_core::weights::DominantWeight;

fn w(parts: &[i64]) -> DominantWeight {
    DominantWeight::new(parts.to_vec()).unwrap()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn assert_close(lhs: Complex64, rhs: Complex64, rel: f64, what: &str) {
    let scale = lhs.norm().max(rhs.norm()).max(1e-30);
    let err = (lhs - rhs).norm() / scale;
    assert!(
        err <= rel,
        "{what}: lhs = {lhs}, rhs = {rhs}, relative error {err:.3e} > {rel:.1e}"
    );
}

#[test]
fn askey_wilson_integral_matches_closed_form() {
    let params = AWParams {
        a: c(0.4),
        b: c(-0.3),
        c: c(0.55),
        d: Complex64::new(0.2, 0.35),
        q: 0.3,
    };
    let (integral, closed) = aw_integral(&params, &cfg()).unwrap();
    assert_close(integral, closed, 1e-9, "unit-circle quadruple");
}

#[test]
fn askey_wilson_residue_corrections_extend_past_the_circle() {
    // One parameter outside the unit circle: the plain quadrature is no
    // longer the value, but the corrected cycle still matches the closed
    // form.
    let params = AWParams {
        a: c(1.35),
        b: c(0.5),
        c: c(-0.25),
        d: c(0.4),
        q: 0.3,
    };
    let (integral, closed) = aw_continued(&params, &cfg()).unwrap();
    assert_close(integral, closed, 1e-9, "one escaped pole");

    // Two parameters outside, one of them past the first ladder rung, so
    // the k = 1 correction fires as well.
    let params = AWParams {
        a: c(2.6),
        b: c(-1.2),
        c: c(0.3),
        d: c(0.15),
        q: 0.45,
    };
    let (integral, closed) = aw_continued(&params, &cfg()).unwrap();
    assert_close(integral, closed, 1e-8, "escaped poles on two rungs");
}

#[test]
fn askey_wilson_rejects_moduli_outside_the_circle() {
    let params = AWParams {
        a: c(1.2),
        b: c(0.5),
        c: c(0.3),
        d: c(0.1),
        q: 0.3,
    };
    match aw_integral(&params, &cfg()) {
        Err(Error::ContourNotCircle { moduli }) => {
            assert!(moduli.iter().any(|m| *m >= 1.0));
        }
        other => panic!("expected contour rejection, got {other:?}"),
    }
}

#[test]
fn forward_kernels_fix_the_constant_polynomial() {
    // For the empty weight both factorisations read M(1) = 1: the kernel
    // normalisation is exactly the reciprocal of the plain integral.
    let quad = cfg();
    let (lhs, rhs) =
        factorisation_sides_n2(&w(&[0, 0]), 0.5, 0.5, c(1.0), 0.2, 0.5, &quad).unwrap();
    assert_close(lhs, c(1.0), 1e-9, "two-variable kernel on 1");
    assert_close(rhs, c(1.0), 1e-12, "two-variable separated side for 0");

    let (lhs, rhs) =
        factorisation_sides_n3(&w(&[0, 0, 0]), 0.5, 0.5, 0.8, 0.2, 0.5, &quad).unwrap();
    assert_close(lhs, c(1.0), 1e-9, "three-variable kernel on 1");
    assert_close(rhs, c(1.0), 1e-12, "three-variable separated side for 0");
}

#[test]
fn two_variable_factorisation_at_sample_points() {
    let quad = cfg();
    for lambda in [&[0i64, 1][..], &[0, 2], &[1, 2]] {
        let (lhs, rhs) =
            factorisation_sides_n2(&w(lambda), 0.5, 0.5, c(1.0), 0.2, 0.5, &quad).unwrap();
        assert_close(lhs, rhs, 1e-8, &format!("weight {lambda:?} at xi = 1"));
        let (lhs, rhs) =
            factorisation_sides_n2(&w(lambda), 0.55, 0.7, c(0.9), 0.35, 0.6, &quad).unwrap();
        assert_close(lhs, rhs, 1e-8, &format!("weight {lambda:?} at xi = 0.9"));
    }
}

#[test]
fn three_variable_factorisation_at_sample_points() {
    let quad = cfg();
    for lambda in [&[0i64, 0, 1][..], &[0, 1, 1], &[0, 0, 2]] {
        let (lhs, rhs) =
            factorisation_sides_n3(&w(lambda), 0.5, 0.5, 0.8, 0.2, 0.5, &quad).unwrap();
        assert_close(lhs, rhs, 1e-6, &format!("weight {lambda:?}"));
    }
}

#[test]
fn inverse_kernel_round_trips_and_reconstructions() {
    let quad = cfg().with_points(512);
    for lambda in [&[0i64, 1][..], &[1, 2]] {
        let lam = w(lambda);
        let (lhs, rhs) = round_trip_n2(&lam, 0.8, 0.45, c(1.0), 0.2, 0.5, &quad).unwrap();
        assert_close(lhs, rhs, 1e-6, &format!("round trip {lambda:?}"));
        let (lhs, rhs) = reconstruction_n2(&lam, 0.8, 0.45, c(1.0), 0.2, 0.5, &quad).unwrap();
        assert_close(lhs, rhs, 1e-6, &format!("reconstruction {lambda:?}"));
    }
    let lam = w(&[0, 0, 1]);
    let (lhs, rhs) = round_trip_n3(&lam, 0.9, 0.6, 1.0, 0.2, 0.5, &quad).unwrap();
    assert_close(lhs, rhs, 1e-6, "three-variable round trip");
    let (lhs, rhs) = reconstruction_n3(&lam, 0.9, 0.6, 1.0, 0.2, 0.5, &quad).unwrap();
    assert_close(lhs, rhs, 1e-6, "three-variable reconstruction");
}

#[test]
fn complex_coordinates_are_rejected() {
    let quad = cfg();
    let err = macdo_core::factorise::apply_m_xi(
        &|_, _| Ok(c(1.0)),
        Complex64::new(0.5, 0.2),
        c(0.5),
        c(1.0),
        0.2,
        0.5,
        &quad,
    )
    .unwrap_err();
    assert!(matches!(err, Error::BranchAmbiguity { .. }), "got {err:?}");
}

#[test]
fn integer_coupling_inverse_is_exact() {
    for g in [1i64, 2] {
        for lambda in [&[0i64, 0, 0][..], &[0, 0, 1], &[0, 1, 1], &[0, 0, 2]] {
            let lam = w(lambda);
            let recovered = integer_g_inverse(g, &lam).unwrap();
            let expected = macdonald_at_integer_g(&lam, g).unwrap();
            assert!(
                recovered.sub(&expected).is_zero(),
                "g = {g}, weight {lambda:?}: got {recovered}, want {expected}"
            );
        }
    }
}

#[test]
fn torus_pairing_vanishes_for_distinct_weights() {
    let quad = cfg().with_points(256);
    let pa = macdonald_p(&w(&[0, 1])).unwrap();
    let pb = macdonald_p(&w(&[0, 2])).unwrap();
    let cross = torus_inner_product(&pa, &pb, 0.4, 0.5, &quad).unwrap();
    let na = torus_inner_product(&pa, &pa, 0.4, 0.5, &quad).unwrap();
    let nb = torus_inner_product(&pb, &pb, 0.4, 0.5, &quad).unwrap();
    assert!(na.re > 0.0 && nb.re > 0.0);
    let ratio = cross.norm() / (na.re * nb.re).sqrt();
    assert!(ratio < 1e-7, "normalised cross pairing {ratio:.3e}");
}
