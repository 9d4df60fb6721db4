//! Exact finite-difference inverse of the three-variable separating
//! transform at integer coupling.
//!
//! When `t = q^g` for an integer `g >= 1` the inverse contour integral
//! collapses to a finite sum of argument shifts.  In the quotient
//! coordinates
//! ```text
//!     r = (x1 x2)^(1/2) / x3 ,   y = (x1 / x2)^(1/2) ,
//! ```
//! so that `x1/x3 = r y` and `x2/x3 = r / y`, the operator reads
//! ```text
//!     (M^-1 f)(x) = sum_{k=0}^{g} xi_k(r, y)
//!                       f(q^(g+k) x1/x3, q^(2g-k) x2/x3, x3)
//! ```
//! with coefficients (writing `t = q^g` throughout)
//! ```text
//!     xi_k = (-1)^k q^(-k(k-1)/2) [g k]_q y^(-2k) (1 - q^(g-2k) y^-2)
//!            (t r y, t y / r; q)_k (t r / y, t / (r y); q)_(g-k)
//!            / ( (t^2; q)_g (q^-k y^-2; q)_(g+1) ) .
//! ```
//! The `k = 0` term is part of the sum: dropping it breaks the constant
//! weight, for which the surviving terms telescope to exactly 1.
//!
//! The `y`-dependent denominators `(q^-k y^-2; q)_(g+1)` all divide the
//! ladder product `B(y) = prod_{j=-g}^{g} (1 - q^j y^-2)`, and the full sum
//! is a polynomial in `r` and `y`, so each term is cleared by `B` up front
//! (its own ladder moves into the complement factors of the numerator) and
//! `B` is divided off the summed numerator exactly at the end.  That final
//! division is the cancellation witness; rational arithmetic alone cannot
//! see it because the common factors mix the main variables.
//!
//! Every monomial `r^a y^b` of the result satisfies `a = b (mod 2)`, so the
//! image pulls back to single-valued powers
//! `x1^((a+b)/2) x2^((a-b)/2) x3^(-a)`; the overall `x3^|lambda|` from the
//! homogeneous degree is restored at the same time.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rat, RatFunc, VarSet, Vars, Q, TAU};
use crate::macdonald::macdonald_p;
use crate::qseries::{gauss_binomial, poch_exact, poch_many};
use crate::separated::phi_via_chi;
use crate::weights::{to_monomial_basis, DominantWeight, SymmetricPoly};

use super::kernels::normalisation_n3_exact;

/// Monomial `q^eq r^er y^ey` in the difference-operator variables.
fn monomial(vars: &Vars, eq: i64, er: i64, ey: i64) -> RatFunc {
    let mut e = vec![0i32; vars.len()];
    e[Q] = eq as i32;
    e[2] = er as i32;
    e[3] = ey as i32;
    RatFunc::from_poly(LaurentPoly::monomial(vars, e, Rat::one()))
}

/// The ladder factor `1 - q^j y^-2` as a plain polynomial.
fn ladder_factor(vars: &Vars, j: i64) -> LaurentPoly {
    let mut e = vec![0i32; vars.len()];
    e[Q] = j as i32;
    e[3] = -2;
    &LaurentPoly::one(vars) - &LaurentPoly::monomial(vars, e, Rat::one())
}

/// The shift coefficient `xi_k(r, y)` at coupling `g`, multiplied by the
/// clearing product `B(y)`; its denominator involves only `q`.
fn xi_scaled(vars: &Vars, g: i64, k: i64) -> Result<RatFunc> {
    let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
    let mut head = vec![0i32; vars.len()];
    head[Q] = (-k * (k - 1) / 2) as i32;
    head[3] = (-2 * k) as i32;
    let head = RatFunc::from_poly(LaurentPoly::monomial(vars, head, sign));
    let binom = gauss_binomial(g, k)?.promote(vars);
    let bracket = &RatFunc::one(vars) - &monomial(vars, g - 2 * k, 0, -2);
    let rising = poch_many(&[monomial(vars, g, 1, 1), monomial(vars, g, -1, 1)], k)?;
    let falling = poch_many(
        &[monomial(vars, g, 1, -1), monomial(vars, g, -1, -1)],
        g - k,
    )?;
    // B / (q^-k y^-2; q)_(g+1): the ladder exponents outside [-k, g-k].
    let mut complement = RatFunc::one(vars);
    for j in (-g..-k).chain(g - k + 1..=g) {
        complement = &complement * &RatFunc::from_poly(ladder_factor(vars, j));
    }
    let den = poch_exact(&monomial(vars, 2 * g, 0, 0), g)?;
    let num = &(&(&head * &binom) * &bracket) * &(&(&rising * &falling) * &complement);
    Ok(&num / &den)
}

/// `P_lambda` with `t` specialised to `q^g`.
pub fn macdonald_at_integer_g(lambda: &DominantWeight, g: i64) -> Result<SymmetricPoly> {
    let p = macdonald_p(lambda)?;
    let mut out = SymmetricPoly::zero(p.n());
    for (w, c) in p.iter() {
        out.set(w.clone(), c.tau_to_q_power(g)?);
    }
    Ok(out)
}

/// Applies the finite-difference inverse at coupling `g` to the separated
/// product `c_lambda y3^|lambda| phi_lambda(y1) phi_lambda(y2)` and returns
/// the reconstructed symmetric polynomial, exactly.
pub fn integer_g_inverse(g: i64, lambda: &DominantWeight) -> Result<SymmetricPoly> {
    if lambda.n() != 3 {
        return Err(Error::InvalidWeight {
            detail: format!(
                "the finite-difference inverse acts on three variables; got {} parts",
                lambda.n()
            ),
        });
    }
    if g < 1 {
        return Err(Error::InvalidWeight {
            detail: format!("integer coupling must be at least 1; got {g}"),
        });
    }
    let vars = VarSet::with_mains(&["r", "y"]);
    let phi = phi_via_chi(lambda)?;
    let k_min = phi.k_min();
    let coeffs = phi
        .coefficients()
        .iter()
        .map(|c| Ok(c.tau_to_q_power(g)?.promote(&vars)))
        .collect::<Result<Vec<_>>>()?;
    let norm = normalisation_n3_exact(lambda)?
        .tau_to_q_power(g)?
        .promote(&vars);

    // phi(q^shift x_i/x3) expanded in r and y: the first argument has
    // x1/x3 = r y, the second x2/x3 = r / y.
    let phi_shifted = |shift: i64, y_sign: i64| -> RatFunc {
        let mut acc = RatFunc::zero(&vars);
        for (i, c) in coeffs.iter().enumerate() {
            let m = k_min + i as i64;
            acc = &acc + &(c * &monomial(&vars, shift * m, m, y_sign * m));
        }
        acc
    };

    let mut total = RatFunc::zero(&vars);
    for k in 0..=g {
        let xi = xi_scaled(&vars, g, k)?;
        let image = &phi_shifted(g + k, 1) * &phi_shifted(2 * g - k, -1);
        total = &total + &(&xi * &image);
    }
    total = &total * &norm;

    if !total.den().is_coefficient_only() {
        return Err(Error::CancellationFailure {
            detail: "cleared difference-operator image kept r or y in its denominator".into(),
        });
    }
    let mut clearing = LaurentPoly::one(&vars);
    for j in -g..=g {
        clearing = &clearing * &ladder_factor(&vars, j);
    }
    let poly = total.num().exact_div(&clearing).ok_or_else(|| {
        Error::CancellationFailure {
            detail: "difference-operator image is not divisible by the ladder product".into(),
        }
    })?;

    let xvars = VarSet::x_vars(3);
    let size = lambda.size();
    let mut image = LaurentPoly::zero(&xvars);
    for (m, c) in poly.terms() {
        let (a, b) = (m.0[2], m.0[3]);
        if (a + b) % 2 != 0 {
            return Err(Error::HalfPowerParity { r_exp: a, y_exp: b });
        }
        debug_assert_eq!(m.0[TAU], 0);
        let mut e = vec![0i32; xvars.len()];
        e[Q] = m.0[Q];
        e[2] = (a + b) / 2;
        e[3] = (a - b) / 2;
        e[4] = size as i32 - a;
        image = &image + &LaurentPoly::monomial(&xvars, e, c.clone());
    }
    let result = to_monomial_basis(&image, 3)?;
    let den = total.den().promote(&VarSet::coefficients());
    let den_inv = RatFunc::new(LaurentPoly::one(den.vars()), den)?;
    Ok(result.scale(&den_inv))
}
