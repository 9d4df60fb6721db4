//! Cross-checks of the q-series layer: the Pochhammer product rule on a
//! grid of bases, the q-Vandermonde summation against its closed form for
//! every terminating order up to four, numeric order reduction against
//! direct summation on seeded draws, and the two evaluation routes of the
//! q-beta function.

use macdo_core::exact::{gens, RatFunc, VarSet, Vars};
use macdo_core::qseries::{
    order_reduce_numeric, phi_numeric, phi_terminating, poch_exact, poch_inf, q_beta, q_gamma,
    SeriesSpec,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn v() -> Vars {
    VarSet::coefficients()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn pochhammer_splits_multiplicatively_on_a_base_grid() {
    let vars = v();
    let one = RatFunc::one(&vars);
    let mut bases = Vec::new();
    for i in -2..=2 {
        for j in -2..=2 {
            bases.push(gens::q_t_monomial(&vars, i, j));
        }
    }
    bases.push(&one + &gens::t_pow(&vars, 1));
    bases.push(&gens::t_pow(&vars, 1) / &(&one + &gens::q(&vars)));
    for a in &bases {
        for m in 0..=5i64 {
            for k in 0..=5i64 {
                let whole = poch_exact(a, m + k).unwrap();
                let split = &poch_exact(a, m).unwrap()
                    * &poch_exact(&(a * &gens::q_pow(&vars, m)), k).unwrap();
                assert_eq!(whole, split, "(a;q)_(m+k) split at a={a}, m={m}, k={k}");
            }
        }
    }
}

#[test]
fn q_vandermonde_sums_in_closed_form() {
    // 2phi1(q^-n, q^-m; c; q, q) = (c q^m; q)_n q^(-mn) / (c; q)_n for m >= n.
    let vars = v();
    let one = RatFunc::one(&vars);
    let cs = [
        gens::t_pow(&vars, 1),
        gens::q_t_monomial(&vars, 1, 1),
        gens::q_t_monomial(&vars, -1, 2),
        &gens::t_pow(&vars, 1) / &(&one + &gens::q(&vars)),
    ];
    for cc in &cs {
        for m in 0..=4i64 {
            for n in 0..=m {
                let spec = SeriesSpec {
                    upper: vec![gens::q_pow(&vars, -n), gens::q_pow(&vars, -m)],
                    lower: vec![cc.clone()],
                    arg: gens::q(&vars),
                };
                let lhs = phi_terminating(&spec).unwrap();
                let rhs = &(&poch_exact(&(cc * &gens::q_pow(&vars, m)), n).unwrap()
                    * &gens::q_pow(&vars, -m * n))
                    / &poch_exact(cc, n).unwrap();
                assert_eq!(lhs, rhs, "q-Vandermonde at c={cc}, m={m}, n={n}");
            }
        }
    }
}

#[test]
fn order_reduction_matches_direct_summation_on_seeded_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut draw = |rng: &mut ChaCha8Rng| {
        let modulus = rng.gen::<f64>() * 0.7;
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        Complex64::from_polar(modulus, angle)
    };
    for case in 0..20 {
        let q = c(0.2 + 0.4 * rng.gen::<f64>());
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let y = draw(&mut rng);
        let m = rng.gen_range(0..=3i64);
        let direct = phi_numeric(&[a, b * q.powi(m as i32)], &[b], q, y, 600, 1e-13).unwrap();
        let reduced = order_reduce_numeric(&[a], &[b], m, y, q, 600, 1e-13).unwrap();
        assert!(
            (direct - reduced).norm() <= 1e-9 * direct.norm().max(1.0),
            "case {case}: direct {direct} vs reduced {reduced}"
        );
    }
    for case in 0..5 {
        let q = c(0.2 + 0.3 * rng.gen::<f64>());
        let a = [draw(&mut rng), draw(&mut rng)];
        let b = [draw(&mut rng), draw(&mut rng)];
        let y = draw(&mut rng);
        let m = rng.gen_range(0..=2i64);
        let upper = [a[0], a[1], b[1] * q.powi(m as i32)];
        let direct = phi_numeric(&upper, &b, q, y, 600, 1e-13).unwrap();
        let reduced = order_reduce_numeric(&a, &b, m, y, q, 600, 1e-13).unwrap();
        assert!(
            (direct - reduced).norm() <= 1e-9 * direct.norm().max(1.0),
            "three-by-two case {case}: direct {direct} vs reduced {reduced}"
        );
    }
}

#[test]
fn infinite_products_are_stable_under_deeper_truncation() {
    for &(a_re, a_im, q) in &[
        (0.5, 0.0, 0.3),
        (-0.7, 0.2, 0.5),
        (0.9, -0.3, 0.6),
        (0.0, 0.85, 0.4),
    ] {
        let a = Complex64::new(a_re, a_im);
        let qc = c(q);
        let shallow = poch_inf(a, qc, 200, 1e-12).unwrap();
        let deep = poch_inf(a, qc, 400, 1e-12).unwrap();
        assert!(
            (shallow - deep).norm() <= 1e-11 * deep.norm(),
            "truncation drift at a={a}, q={q}"
        );
    }
}

#[test]
fn q_beta_routes_agree() {
    // Gamma-function assembly against the raw infinite-product ratio
    // B_q(a,b) = (1-q) (q;q)_inf (q^(a+b);q)_inf / ((q^a;q)_inf (q^b;q)_inf).
    let cases = [
        (0.3f64, {
            let g: f64 = 0.5f64.ln() / 0.3f64.ln();
            (g, 2.0 * g)
        }),
        (0.4, (1.3, 0.8)),
        (0.5, (0.6, 0.6)),
    ];
    for (q, (a, b)) in cases {
        let via_gamma = q_beta(a, b, q, 400, 1e-13).unwrap();
        let qc = c(q);
        let prod = |x: f64| poch_inf(c(q.powf(x)), qc, 400, 1e-13).unwrap();
        let direct =
            (1.0 - q) * (poch_inf(qc, qc, 400, 1e-13).unwrap() * prod(a + b) / (prod(a) * prod(b)))
                .re;
        assert!(
            via_gamma > 0.0 && (via_gamma - direct).abs() <= 1e-10 * direct.abs(),
            "q-beta routes at q={q}, a={a}, b={b}: {via_gamma} vs {direct}"
        );
        let gamma_shift = q_gamma(a + 1.0, q, 400, 1e-13).unwrap();
        let recurrence = (1.0 - q.powf(a)) / (1.0 - q) * q_gamma(a, q, 400, 1e-13).unwrap();
        assert!(
            (gamma_shift - recurrence).abs() <= 1e-10 * recurrence.abs(),
            "q-gamma recurrence at q={q}, x={a}"
        );
    }
}
