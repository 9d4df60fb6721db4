//! Property tests for the exact layer: ring axioms on random Laurent
//! polynomials, cross-multiplication equality of rational functions, and
//! agreement between exact canonical forms and floating evaluation.

use macdo_core::exact::{rat, LaurentPoly, RatFunc, VarSet, Vars};
use macdo_core::macdonald::macdonald_p;
use macdo_core::separated::phi_via_chi;
use macdo_core::weights::DominantWeight;
use num_complex::Complex64;
use proptest::prelude::*;

fn vars() -> Vars {
    VarSet::coefficients()
}

fn poly_from_terms(terms: &[(i32, i32, i64)]) -> LaurentPoly {
    let v = vars();
    let mut acc = LaurentPoly::zero(&v);
    for &(eq, et, c) in terms {
        acc = &acc + &LaurentPoly::monomial(&v, vec![eq, et], rat(c, 1));
    }
    acc
}

fn term() -> impl Strategy<Value = (i32, i32, i64)> {
    (-3..=3i32, -3..=3i32, (-4..=4i64).prop_filter("nonzero", |c| *c != 0))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(term(), 0..5).prop_map(|t| poly_from_terms(&t))
}

// Rational-function canonicalisation runs a polynomial remainder sequence,
// whose cost grows quickly with the degree of the product of all
// denominators involved, so the fraction samples stay small.
fn small_term() -> impl Strategy<Value = (i32, i32, i64)> {
    (-2..=2i32, -2..=2i32, (-3..=3i64).prop_filter("nonzero", |c| *c != 0))
}

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(small_term(), 0..4).prop_map(|t| poly_from_terms(&t))
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(small_term(), 1..3)
        .prop_map(|t| poly_from_terms(&t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_is_associative_and_commutative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_distributes_over_addition(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in poly(), b in poly()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn common_factors_cancel_in_canonical_form(
        n in poly(),
        d in nonzero_poly(),
        k in nonzero_poly(),
    ) {
        let plain = RatFunc::new(n.clone(), d.clone()).unwrap();
        let scaled = RatFunc::new(&n * &k, &d * &k).unwrap();
        prop_assert_eq!(plain, scaled);
    }

    #[test]
    fn equality_is_an_equivalence(r in ratfunc(), k1 in nonzero_poly(), k2 in nonzero_poly()) {
        let a = RatFunc::new(r.num() * &k1, r.den() * &k1).unwrap();
        let b = RatFunc::new(r.num() * &k2, r.den() * &k2).unwrap();
        prop_assert_eq!(&r, &r);
        prop_assert_eq!(&a, &r);
        prop_assert_eq!(&r, &a);
        prop_assert_eq!(&a, &b);
    }

    #[test]
    fn field_axioms_hold_for_rational_functions(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            let quot = &a / &b;
            prop_assert_eq!(&quot * &b, a);
        }
    }

    #[test]
    fn canonical_form_preserves_floating_value(
        n in poly(),
        d in nonzero_poly(),
        k in nonzero_poly(),
    ) {
        // The canonical form of (n*k)/(d*k) must evaluate to the same
        // number as the raw quotient, away from zeros and poles.
        let assign = [Complex64::new(0.37, 0.21), Complex64::new(0.53, -0.18)];
        let dv = d.eval_complex(&assign) * k.eval_complex(&assign);
        prop_assume!(dv.norm() > 1e-4);
        let nv = n.eval_complex(&assign) * k.eval_complex(&assign);
        prop_assume!(nv.norm() > 1e-4);
        let raw = nv / dv;
        let r = RatFunc::new(&n * &k, &d * &k).unwrap();
        prop_assume!(r.den().eval_complex(&assign).norm() > 1e-6);
        let canon = r.eval_complex(&assign).unwrap();
        prop_assert!(
            (canon - raw).norm() <= 1e-12 * raw.norm().max(1.0),
            "canonical {canon} vs raw {raw}"
        );
    }
}

#[test]
fn division_by_zero_is_reported() {
    let v = vars();
    let zero = LaurentPoly::zero(&v);
    assert!(RatFunc::new(LaurentPoly::one(&v), zero).is_err());
}

/// Quantities whose expansions carry only integer powers of `t` are fixed
/// under the sign flip of its square root.
#[test]
fn even_tau_quantities_are_fixed_by_the_sign_flip() {
    let weights: [&[i64]; 8] = [
        &[0, 2],
        &[1, 2],
        &[0, 0, 1],
        &[0, 1, 1],
        &[0, 0, 2],
        &[0, 1, 2],
        &[1, 2, 2],
        &[0, 0, 0, 2],
    ];
    for parts in weights {
        let lam = DominantWeight::new(parts.to_vec()).unwrap();
        let p = macdonald_p(&lam).unwrap();
        for (mu, c) in p.iter() {
            assert_eq!(
                &c.negate_tau(),
                c,
                "coefficient of m[{mu}] in P[{lam}] has an odd half-power of t"
            );
        }
        let phi = phi_via_chi(&lam).unwrap();
        for k in phi.k_min()..=phi.k_max() {
            let c = phi.chi(k);
            assert_eq!(
                c.negate_tau(),
                c,
                "coefficient of y^{k} in the separated polynomial of [{lam}]"
            );
        }
    }
}
